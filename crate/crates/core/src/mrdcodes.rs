//! Field reduction F_{q^n}^3 → M_{3,n}(F_q) and rank-distance codes.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cfsets::ExteriorSet;
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldTower};
use crate::linalg::{self, Mat3};
use crate::projspace::Subplane;

/// A rows × cols matrix over F_q, row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Fe>,
}

impl FqMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            entries: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn from_entries(
        field: &FieldTower,
        rows: usize,
        cols: usize,
        entries: Vec<Fe>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if entries.iter().any(|&x| !field.is_in_subfield(x)) {
            return Err(Error::NotInSubfield);
        }
        Ok(FqMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    fn zip_with(&self, other: &FqMatrix, op: impl Fn(Fe, Fe) -> Fe) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn add(&self, field: &FieldTower, other: &FqMatrix) -> FqMatrix {
        self.zip_with(other, |a, b| field.add(a, b))
    }

    pub fn sub(&self, field: &FieldTower, other: &FqMatrix) -> FqMatrix {
        self.zip_with(other, |a, b| field.sub(a, b))
    }

    pub fn scale(&self, field: &FieldTower, c: Fe) -> FqMatrix {
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| field.mul(c, x)).collect(),
        }
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        self.entries.chunks(self.cols).map(<[Fe]>::to_vec).collect()
    }
}

/// Rank over F_q by elimination.
pub fn rank_fq(field: &FieldTower, m: &FqMatrix) -> usize {
    linalg::rank(field, &m.row_vecs())
}

/// Coordinates over the basis {1, α, …, α^{n−1}}, α the class of x,
/// optionally preceded by a change of coordinates Ψ of F_{q^n}^3.
#[derive(Clone, Debug)]
pub struct FieldReduction {
    n: usize,
    // element encoding → coordinates, for e > 1
    table: Option<Vec<Vec<Fe>>>,
    psi: Option<Mat3>,
}

impl FieldReduction {
    pub fn polynomial(field: &FieldTower) -> Self {
        let n = field.n() as usize;
        let table = (field.e() > 1).then(|| {
            let sub = field.subfield_elements();
            let g = field.generator();
            let powers: Vec<Fe> = (0..n).map(|i| field.pow(g, i as u64)).collect();
            let mut table = vec![Vec::new(); field.order() as usize];
            let q = sub.len();
            for code in 0..(q as u64).pow(n as u32) {
                let mut c = code;
                let coords: Vec<Fe> = (0..n)
                    .map(|_| {
                        let d = sub[(c % q as u64) as usize];
                        c /= q as u64;
                        d
                    })
                    .collect();
                let x = coords
                    .iter()
                    .zip(&powers)
                    .fold(Fe::ZERO, |acc, (&ci, &pi)| {
                        field.add(acc, field.mul(ci, pi))
                    });
                table[x.encoded() as usize] = coords;
            }
            table
        });
        FieldReduction {
            n,
            table,
            psi: None,
        }
    }

    /// The reduction after Ψ = U^{-1}, U the scaled frame basis of `pi`.
    /// The vectors of `pi` then reduce to exactly the rank-1 matrices.
    pub fn adapted_to(field: &FieldTower, pi: &Subplane) -> Result<Self> {
        let u = linalg::transpose(pi.basis());
        let psi = linalg::inverse3(field, &u)?;
        Ok(FieldReduction {
            psi: Some(psi),
            ..Self::polynomial(field)
        })
    }

    pub fn coordinates(&self, field: &FieldTower, x: Fe) -> Vec<Fe> {
        match &self.table {
            Some(t) => t[x.encoded() as usize].clone(),
            None => field
                .coeffs(x)
                .into_iter()
                .take(self.n)
                .map(|d| field.from_int(d as i64))
                .collect(),
        }
    }

    pub fn reduce(&self, field: &FieldTower, v: &[Fe; 3]) -> FqMatrix {
        let w = match &self.psi {
            Some(psi) => linalg::mat_vec(field, psi, v),
            None => *v,
        };
        let entries = w.iter().flat_map(|&x| self.coordinates(field, x)).collect();
        FqMatrix {
            rows: 3,
            cols: self.n,
            entries,
        }
    }
}

/// Polynomial-basis field reduction of a vector.
pub fn field_reduce(field: &FieldTower, v: &[Fe; 3]) -> FqMatrix {
    FieldReduction::polynomial(field).reduce(field, v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum ScalarSet {
    /// ρ ∈ F_q^*.
    #[value(name = "subfield")]
    #[serde(rename = "subfield")]
    SubfieldUnits,
    /// ρ ∈ F_{q^n}^*.
    #[value(name = "all")]
    #[serde(rename = "all")]
    AllUnits,
}

#[derive(Clone, Debug)]
pub struct RankCode {
    matrices: Vec<FqMatrix>,
    rows: usize,
    cols: usize,
    q: u32,
    claimed_distance: usize,
}

impl RankCode {
    pub fn new(matrices: Vec<FqMatrix>, q: u32, claimed_distance: usize) -> Result<Self> {
        let first = matrices.first().ok_or(Error::TooSmall)?;
        let (rows, cols) = (first.rows, first.cols);
        let mut matrices = matrices;
        matrices.sort();
        matrices.dedup();
        Ok(RankCode {
            matrices,
            rows,
            cols,
            q,
            claimed_distance,
        })
    }

    pub fn matrices(&self) -> &[FqMatrix] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn claimed_distance(&self) -> usize {
        self.claimed_distance
    }

    pub fn contains(&self, m: &FqMatrix) -> bool {
        self.matrices.binary_search(m).is_ok()
    }
}

/// {reduce(ρv) : ⟨v⟩ ∈ X, ρ in the scalar set} ∪ {0}, in coordinates where
/// `pi` is the rank-1 locus.
pub fn build_code(
    field: &FieldTower,
    x: &ExteriorSet,
    pi: &Subplane,
    scalars: ScalarSet,
) -> Result<RankCode> {
    if field.q() <= 2 || field.n() < 3 {
        return Err(Error::HypothesisViolation(format!(
            "the code needs q > 2 and n >= 3 (q = {}, n = {})",
            field.q(),
            field.n()
        )));
    }
    let red = FieldReduction::adapted_to(field, pi)?;
    let rhos: Vec<Fe> = match scalars {
        ScalarSet::SubfieldUnits => field
            .subfield_elements()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect(),
        ScalarSet::AllUnits => field.nonzero_elements().collect(),
    };
    let mut set: BTreeSet<FqMatrix> = BTreeSet::new();
    set.insert(FqMatrix::zero(3, field.n() as usize));
    for p in x.points() {
        for &rho in &rhos {
            let v = p.coords().map(|c| field.mul(rho, c));
            set.insert(red.reduce(field, &v));
        }
    }
    RankCode::new(set.into_iter().collect(), field.q(), 2)
}

/// Minimum rank of M − M' over distinct pairs.
pub fn min_rank_distance(field: &FieldTower, code: &RankCode) -> Result<usize> {
    let ms = code.matrices();
    if ms.len() < 2 {
        return Err(Error::TooSmall);
    }
    let full = code.rows.min(code.cols);
    Ok((0..ms.len())
        .into_par_iter()
        .map(|i| {
            ms[i + 1..]
                .iter()
                .map(|b| rank_fq(field, &ms[i].sub(field, b)))
                .min()
                .unwrap_or(full)
        })
        .min()
        .unwrap_or(full))
}

/// A pair whose sum leaves the code, if any.
pub fn additive_witness(field: &FieldTower, code: &RankCode) -> Option<(usize, usize)> {
    let set: HashSet<&FqMatrix> = code.matrices().iter().collect();
    let ms = code.matrices();
    (0..ms.len()).find_map(|i| {
        (i..ms.len())
            .find(|&j| !set.contains(&ms[i].add(field, &ms[j])))
            .map(|j| (i, j))
    })
}

/// Closed under addition and F_q-scaling.
pub fn is_fq_linear(field: &FieldTower, code: &RankCode) -> bool {
    if additive_witness(field, code).is_some() {
        return false;
    }
    let sub = field.subfield_elements();
    code.matrices()
        .iter()
        .all(|m| sub.iter().all(|&c| code.contains(&m.scale(field, c))))
}

/// q^{cols·(rows−s+1)}.
pub fn singleton_bound(rows: u32, cols: u32, q: u32, s: u32) -> Result<u128> {
    if rows > cols || s < 1 || s > rows || q < 2 {
        return Err(Error::BadParams(format!(
            "need rows <= cols, 1 <= s <= rows, q >= 2 (rows={rows}, cols={cols}, s={s}, q={q})"
        )));
    }
    (q as u128)
        .checked_pow(cols * (rows - s + 1))
        .ok_or_else(|| Error::BadParams("bound overflows".into()))
}
