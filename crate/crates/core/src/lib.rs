pub mod cfsets;
pub mod classify;
pub mod cli;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod mrdcodes;
pub mod projspace;
pub mod sesqui;

pub use error::{Error, Result};
pub use gf::{Fe, FieldTower};
