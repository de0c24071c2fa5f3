//! Report headers and writers.
//!
//! Wire encoding: an element of F_{q^n} = F_p[x]/(f) with coordinates
//! c_0 + c_1 x + … + c_{d−1} x^{d−1} is the integer Σ c_i p^i; matrices are
//! listed row-major. The modulus f is given low degree first in every header.

use std::io::Write;

use serde::Serialize;

use super::census::{CensusRecord, Summary};
use crate::classify::LineKind;
use crate::gf::FieldTower;

pub const TOOL: &str = "sigma-conics";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const ENCODING: &str =
    "sum c_i p^i over the polynomial basis, low degree first; matrices row-major";

#[derive(Clone, Debug, Serialize)]
pub struct ReportHeader {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'static str,
    pub p: u32,
    pub e: u32,
    pub n: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub encoding: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ReportHeader {
    pub fn new(field: &FieldTower, subcommand: &'static str) -> Self {
        ReportHeader {
            tool: TOOL,
            version: VERSION,
            subcommand,
            p: field.p(),
            e: field.e(),
            n: field.n(),
            m: field.m(),
            modulus: field.modulus().to_vec(),
            encoding: ENCODING,
            mode: None,
            family: None,
            count: None,
            seed: None,
        }
    }

    /// `# key=value` lines for CSV and code files.
    pub fn comment_lines(&self) -> String {
        let json = serde_json::to_value(self).expect("plain data");
        let mut out = String::new();
        if let serde_json::Value::Object(map) = json {
            for (k, v) in map {
                let v = match v {
                    serde_json::Value::String(s) => s,
                    other => other.to_string(),
                };
                out.push_str(&format!("# {k}={v}\n"));
            }
        }
        out
    }
}

pub fn write_json_line<W: Write + ?Sized, T: Serialize>(
    w: &mut W,
    value: &T,
) -> std::io::Result<()> {
    serde_json::to_writer(&mut *w, value)?;
    w.write_all(b"\n")
}

pub fn write_header_line<W: Write + ?Sized>(
    w: &mut W,
    header: &ReportHeader,
) -> std::io::Result<()> {
    write_json_line(w, &serde_json::json!({ "header": header }))
}

pub fn write_summary_line<W: Write + ?Sized>(w: &mut W, summary: &Summary) -> std::io::Result<()> {
    write_json_line(w, &serde_json::json!({ "summary": summary }))
}

/// Header comments followed by `kind,gamma,count` rows.
pub fn write_csv_summary<W: Write + ?Sized>(
    w: &mut W,
    header: &ReportHeader,
    summary: &Summary,
) -> std::io::Result<()> {
    w.write_all(header.comment_lines().as_bytes())?;
    writeln!(w, "# records={}", summary.records)?;
    writeln!(w, "# violations={}", summary.violations)?;
    writeln!(
        w,
        "# steiner_checks={} steiner_failures={}",
        summary.steiner_checks, summary.steiner_failures
    )?;
    writeln!(
        w,
        "# fixed_in_q_plus_one={} collinear={}",
        summary.fixed_in_q_plus_one, summary.fixed_in_q_plus_one_collinear
    )?;
    let mut csv = csv::Writer::from_writer(&mut *w);
    csv.write_record(["kind", "gamma", "count"])?;
    for (kind, hist) in &summary.histogram {
        for (g, c) in hist {
            csv.write_record([kind.as_str(), &g.to_string(), &c.to_string()])?;
        }
    }
    csv.flush()
}

/// One CSV row per census record, for single-matrix reports.
pub fn write_csv_records<W: Write + ?Sized>(
    w: &mut W,
    header: &ReportHeader,
    records: &[CensusRecord],
) -> std::io::Result<()> {
    w.write_all(header.comment_lines().as_bytes())?;
    let mut csv = csv::Writer::from_writer(&mut *w);
    csv.write_record([
        "matrix",
        "rank",
        "kind",
        "gamma",
        "epsilon",
        "family",
        "fixed_in",
        "fixed_out",
        "violations",
    ])?;
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in records {
        let matrix: Vec<String> = r.matrix.iter().map(u32::to_string).collect();
        csv.write_record([
            matrix.join(" "),
            r.rank.to_string(),
            r.kind.clone(),
            r.gamma.to_string(),
            r.epsilon.map(|e| e.to_string()).unwrap_or_default(),
            r.family.clone(),
            opt(r.fixed_in),
            opt(r.fixed_out),
            r.violations.join("; "),
        ])?;
    }
    csv.flush()
}

/// Classification of a form on PG(1, q^n).
#[derive(Clone, Debug, Serialize)]
pub struct LineRecord {
    pub p: u32,
    pub e: u32,
    pub n: u32,
    pub m: u32,
    pub matrix: Vec<u32>,
    pub rank: usize,
    pub kind: Option<LineKind>,
    pub gamma: usize,
    pub points: Vec<Vec<u32>>,
    pub degenerate: bool,
    pub subline: Option<bool>,
    pub violations: Vec<String>,
}
