//! Command-line harness.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or bad parameters,
//! 3 a theorem check failed, 4 resource cap exceeded.

pub mod census;
pub mod report;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cfsets::{
    cf_canonical, embed_subplane_in_component, exterior_set, steiner_generate, verify_exterior,
    PencilCollineation,
};
use crate::classify::{classify_line_form, classify_plane_form, PlaneKind};
use crate::error::Error;
use crate::gf::{Fe, FieldTower};
use crate::mrdcodes::{build_code, is_fq_linear, min_rank_distance, singleton_bound, ScalarSet};
use crate::projspace::is_fq_subline;
use crate::sesqui::LineForm;
use census::{matrix_from_encoded, run_census, Kernel, MatrixFamily, Source, Summary};
use report::{LineRecord, ReportHeader};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "sigma-conics",
    version,
    about = "Absolute points of correlations of PG(1,q^n) and PG(2,q^n)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u32,
    /// q = p^e.
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Extension degree of F_{q^n} over F_q.
    #[arg(long)]
    pub n: u32,
    /// σ: x ↦ x^{q^m}, gcd(m, n) = 1.
    #[arg(long, default_value_t = 1)]
    pub m: u32,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Report file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    pub mode: Mode,
    /// Number of samples in random mode.
    #[arg(long)]
    pub count: Option<u64>,
    /// Seed; required in random mode.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the form with the given matrix (4 entries for PG(1), 9 for PG(2)).
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        matrix: Vec<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify every matrix of a family and check the cardinality theorems.
    Census {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = MatrixFamily::Invertible)]
        family: MatrixFamily,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the exterior set and rank-distance code; `--out` receives the code.
    Mrd {
        #[command(flatten)]
        field: FieldArgs,
        /// Replacement set T ⊆ F_q^*, encoded, containing 1.
        #[arg(long = "T", value_delimiter = ',', num_args = 1.., default_value = "1")]
        t: Vec<u64>,
        #[arg(long, value_enum, default_value_t = ScalarSet::AllUnits)]
        scalars: ScalarSet,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare Steiner generation with Γ for one matrix or a sweep of singular ones.
    SteinerCheck {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        matrix: Option<Vec<u64>>,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLargeForExhaustive { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<bool, Failure>;

/// Parses `args` (program name first) and runs the command. Reports go to
/// `--out` or to `stdout`; diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Classify {
            field,
            matrix,
            output,
        } => cmd_classify(&field, &matrix, &output, stdout),
        Command::Census {
            field,
            source,
            family,
            output,
        } => cmd_census(&field, &source, family, &output, stdout),
        Command::Mrd {
            field,
            t,
            scalars,
            output,
        } => cmd_mrd(&field, &t, scalars, &output, stdout),
        Command::SteinerCheck {
            field,
            matrix,
            source,
            output,
        } => cmd_steiner(&field, matrix.as_deref(), &source, &output, stdout),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VIOLATION,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Cap(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_CAP
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_IO
        }
    }
}

fn build_field(a: &FieldArgs) -> Result<FieldTower, Failure> {
    Ok(FieldTower::new(a.p, a.e, a.n, a.m)?)
}

fn with_output<R>(
    output: &OutputArgs,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<R, Failure>,
) -> Result<R, Failure> {
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            let r = body(&mut w)?;
            w.flush()?;
            Ok(r)
        }
        None => body(stdout),
    }
}

fn source_of(s: &SourceArgs) -> Result<Source, Failure> {
    match s.mode {
        Mode::Exhaustive => Ok(Source::Exhaustive),
        Mode::Random => {
            let seed = s
                .seed
                .ok_or_else(|| Failure::Usage("random mode needs --seed".into()))?;
            let count = s
                .count
                .ok_or_else(|| Failure::Usage("random mode needs --count".into()))?;
            Ok(Source::Random { count, seed })
        }
    }
}

fn header_for(
    field: &FieldTower,
    sub: &'static str,
    source: Source,
    family: MatrixFamily,
) -> ReportHeader {
    let mut h = ReportHeader::new(field, sub);
    h.family = Some(family_name(family));
    match source {
        Source::Exhaustive => h.mode = Some("exhaustive".into()),
        Source::Random { count, seed } => {
            h.mode = Some("random".into());
            h.count = Some(count);
            h.seed = Some(seed);
        }
    }
    h
}

fn family_name(f: MatrixFamily) -> String {
    f.to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

fn cmd_classify(
    args: &FieldArgs,
    matrix: &[u64],
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> Outcome {
    let field = build_field(args)?;
    let header = ReportHeader::new(&field, "classify");
    match matrix.len() {
        9 => {
            let a = matrix_from_encoded(&field, matrix)?;
            let rec = Kernel::new(&field).record(&a);
            let clean = rec.violations.is_empty();
            with_output(output, stdout, |w| {
                match output.format {
                    Format::Jsonl => {
                        report::write_header_line(w, &header)?;
                        report::write_json_line(w, &rec)?;
                    }
                    Format::Csv => {
                        report::write_csv_records(w, &header, std::slice::from_ref(&rec))?
                    }
                }
                Ok(clean)
            })
        }
        4 => {
            let rec = line_record(&field, matrix)?;
            let clean = rec.violations.is_empty();
            with_output(output, stdout, |w| {
                match output.format {
                    Format::Jsonl => {
                        report::write_header_line(w, &header)?;
                        report::write_json_line(w, &rec)?;
                    }
                    Format::Csv => {
                        w.write_all(header.comment_lines().as_bytes())?;
                        let mut csv = csv::Writer::from_writer(&mut *w);
                        csv.write_record(["rank", "kind", "gamma", "degenerate", "violations"])
                            .map_err(io::Error::from)?;
                        let kind = rec.kind.map(|k| format!("{k:?}")).unwrap_or_default();
                        csv.write_record([
                            rec.rank.to_string(),
                            kind,
                            rec.gamma.to_string(),
                            rec.degenerate.to_string(),
                            rec.violations.join("; "),
                        ])
                        .map_err(io::Error::from)?;
                        csv.flush()?;
                    }
                }
                Ok(clean)
            })
        }
        k => Err(Failure::Usage(format!(
            "--matrix takes 4 or 9 entries, got {k}"
        ))),
    }
}

fn line_record(field: &FieldTower, matrix: &[u64]) -> Result<LineRecord, Failure> {
    let form = LineForm::from_encoded(field, matrix)?;
    let gamma = form.absolute_points();
    let q1 = field.q() as usize + 1;
    let mut violations = Vec::new();
    let subline = (gamma.len() == q1 && gamma.len() != field.order() as usize + 1)
        .then(|| matches!(is_fq_subline(field, &gamma), Ok(true)));
    if subline == Some(false) {
        violations.push("q+1 absolute points off an F_q-subline".to_string());
    }
    let (kind, degenerate) = match classify_line_form(&form) {
        Ok(c) => (Some(c.kind), c.degenerate),
        Err(e) => {
            violations.push(e.to_string());
            (None, form.is_degenerate())
        }
    };
    Ok(LineRecord {
        p: field.p(),
        e: field.e(),
        n: field.n(),
        m: field.m(),
        matrix: form.encoded(),
        rank: form.rank(),
        kind,
        gamma: gamma.len(),
        points: gamma
            .iter()
            .map(|p| p.coords().iter().map(|x| x.encoded()).collect())
            .collect(),
        degenerate,
        subline,
        violations,
    })
}

fn census_report(
    field: &FieldTower,
    header: &ReportHeader,
    family: MatrixFamily,
    source: Source,
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<Summary, Failure> {
    if source == Source::Exhaustive {
        let size = census::exhaustive_size(field, family);
        if size > census::EXHAUSTIVE_CAP {
            return Err(Error::TooLargeForExhaustive {
                count: size,
                cap: census::EXHAUSTIVE_CAP,
            }
            .into());
        }
    }
    let kernel = Kernel::new(field);
    let to_file = output.out.is_some();
    let summary = with_output(output, stdout, |w| {
        let summary = match output.format {
            Format::Jsonl => {
                report::write_header_line(w, header)?;
                let s = run_census(&kernel, family, source, |r| {
                    report::write_json_line(w, r).map_err(|e| Error::BadParams(e.to_string()))
                })?;
                report::write_summary_line(w, &s)?;
                s
            }
            Format::Csv => {
                let s = run_census(&kernel, family, source, |_| Ok(()))?;
                report::write_csv_summary(w, header, &s)?;
                s
            }
        };
        Ok(summary)
    })?;
    if to_file {
        report::write_summary_line(stdout, &summary)?;
    }
    Ok(summary)
}

fn cmd_census(
    args: &FieldArgs,
    source: &SourceArgs,
    family: MatrixFamily,
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> Outcome {
    let field = build_field(args)?;
    let source = source_of(source)?;
    let header = header_for(&field, "census", source, family);
    let summary = census_report(&field, &header, family, source, output, stdout)?;
    Ok(summary.violations == 0)
}

#[derive(Serialize)]
struct SteinerReport {
    rank: usize,
    kind: String,
    vertices: Option<[Vec<u32>; 2]>,
    gamma: usize,
    generated: usize,
    equal: bool,
}

fn cmd_steiner(
    args: &FieldArgs,
    matrix: Option<&[u64]>,
    source: &SourceArgs,
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> Outcome {
    let field = build_field(args)?;
    let Some(matrix) = matrix else {
        let source = source_of(source)?;
        let header = header_for(&field, "steiner-check", source, MatrixFamily::Singular);
        let s = census_report(
            &field,
            &header,
            MatrixFamily::Singular,
            source,
            output,
            stdout,
        )?;
        return Ok(s.steiner_failures == 0);
    };
    let a = matrix_from_encoded(&field, matrix)?;
    let form = crate::sesqui::PlaneForm::new(&field, a);
    let class = classify_plane_form(&form)?;
    if !matches!(
        class.kind,
        PlaneKind::Cf { .. } | PlaneKind::DegenerateCf { .. }
    ) {
        return Err(Failure::Usage(format!(
            "Steiner generation needs rank 2 with distinct radicals (got {}, rank {})",
            class.kind.name(),
            class.rank
        )));
    }
    let phi = PencilCollineation::from_form(&form)?;
    let generated = steiner_generate(&field, &phi);
    let (r, l) = phi.vertices();
    let enc =
        |p: &crate::projspace::Point2| p.coords().iter().map(|x| x.encoded()).collect::<Vec<_>>();
    let rep = SteinerReport {
        rank: class.rank,
        kind: class.kind.name().to_string(),
        vertices: Some([enc(&r), enc(&l)]),
        gamma: class.gamma.len(),
        generated: generated.len(),
        equal: generated == class.gamma,
    };
    let header = ReportHeader::new(&field, "steiner-check");
    with_output(output, stdout, |w| {
        report::write_header_line(w, &header)?;
        report::write_json_line(w, &rep)?;
        Ok(rep.equal)
    })
}

#[derive(Serialize)]
struct MrdReport {
    t: Vec<u32>,
    scalars: ScalarSet,
    subplane_points: usize,
    exterior_points: usize,
    exterior_verified: bool,
    cardinality: usize,
    rows: usize,
    cols: usize,
    min_distance: usize,
    singleton_bound: u128,
    meets_bound: bool,
    linear: bool,
    violations: Vec<String>,
}

fn cmd_mrd(
    args: &FieldArgs,
    t: &[u64],
    scalars: ScalarSet,
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> Outcome {
    let field = build_field(args)?;
    if field.q() <= 2 || field.n() < 3 {
        return Err(Error::HypothesisViolation(format!(
            "needs q > 2 and n >= 3 (q = {}, n = {})",
            field.q(),
            field.n()
        ))
        .into());
    }
    let t: Vec<Fe> = t.iter().map(|&v| field.elem(v)).collect::<Result<_, _>>()?;
    let cf = cf_canonical(&field, field.m())?;
    let pi = embed_subplane_in_component(&field, &cf)?;
    let x = exterior_set(&field, &cf, &t)?;
    let exterior_verified = verify_exterior(&field, x.points(), &pi);
    let code = build_code(&field, &x, &pi, scalars)?;
    let (rows, cols) = code.shape();
    let min_distance = min_rank_distance(&field, &code)?;
    let bound = singleton_bound(
        rows as u32,
        cols as u32,
        field.q(),
        code.claimed_distance() as u32,
    )?;
    let mut violations = Vec::new();
    if !exterior_verified {
        violations.push("a line through two points of X meets the subplane".to_string());
    }
    if min_distance < code.claimed_distance() {
        violations.push(format!(
            "minimum rank distance {min_distance} < {}",
            code.claimed_distance()
        ));
    }
    if scalars == ScalarSet::AllUnits && code.len() as u128 != bound {
        violations.push(format!("{} matrices, bound {bound}", code.len()));
    }
    let rep = MrdReport {
        t: t.iter().map(|x| x.encoded()).collect(),
        scalars,
        subplane_points: pi.len(),
        exterior_points: x.len(),
        exterior_verified,
        cardinality: code.len(),
        rows,
        cols,
        min_distance,
        singleton_bound: bound,
        meets_bound: code.len() as u128 == bound,
        linear: is_fq_linear(&field, &code),
        violations,
    };
    let clean = rep.violations.is_empty();
    let header = ReportHeader::new(&field, "mrd");
    if let Some(path) = &output.out {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(header.comment_lines().as_bytes())?;
        writeln!(w, "# rows={rows} cols={cols}")?;
        for m in code.matrices() {
            let line: Vec<String> = m
                .entries()
                .iter()
                .map(|x| x.encoded().to_string())
                .collect();
            writeln!(w, "{}", line.join(","))?;
        }
        w.flush()?;
    }
    match output.format {
        Format::Jsonl => {
            report::write_header_line(stdout, &header)?;
            report::write_json_line(stdout, &rep)?;
        }
        Format::Csv => {
            stdout.write_all(header.comment_lines().as_bytes())?;
            let mut csv = csv::Writer::from_writer(&mut *stdout);
            csv.serialize(MrdRow::from(&rep)).map_err(io::Error::from)?;
            csv.flush()?;
        }
    }
    Ok(clean)
}

#[derive(Serialize)]
struct MrdRow {
    t: String,
    cardinality: usize,
    min_distance: usize,
    singleton_bound: String,
    meets_bound: bool,
    linear: bool,
    exterior_verified: bool,
}

impl From<&MrdReport> for MrdRow {
    fn from(r: &MrdReport) -> Self {
        MrdRow {
            t: r.t.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
            cardinality: r.cardinality,
            min_distance: r.min_distance,
            singleton_bound: r.singleton_bound.to_string(),
            meets_bound: r.meets_bound,
            linear: r.linear,
            exterior_verified: r.exterior_verified,
        }
    }
}
