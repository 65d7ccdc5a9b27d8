//! Command-line front end. [`run`] takes the full argument vector and returns
//! the exit code with the rendered report, so the binary is a thin wrapper.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 invalid input or a
//! request outside the computable range, 3 a case with no known answer.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::loops::{self, LoopError, YSpaceReport};
use crate::manifold::{self, ManifoldError, SphereBundle};
use crate::pitables::{pi_manifold, SphereTable, TableError};
use crate::rational::{self, quadratic, RationalError};
use crate::series::{Rational, DEFAULT_CUTOFF};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "loopsplit", about = "Loop spaces and rational homotopy of S^2-bundles over 4-manifolds")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Sphere homotopy table replacing the shipped one.
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bundle data, cohomology ring and the case split.
    Describe { input: PathBuf },
    /// Loop-space decomposition of M.
    Decompose {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: usize,
    },
    /// Homotopy groups pi_2(M) .. pi_K(M).
    Pi {
        input: PathBuf,
        #[arg(long)]
        max: u32,
    },
    /// Poincare series of H_*(Omega M; Q).
    Series {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: usize,
    },
    /// Ranks of pi_*(Omega M) (x) Q, coformality and ellipticity.
    Rational {
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        cutoff: usize,
    },
    /// Quadratic presentation of H^*(M; Q) and its Koszul dual.
    Koszul {
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
    },
    /// Sullivan model of M.
    Model {
        input: PathBuf,
        /// Coefficient k in db = a^2 + k c^2 (d = 1 only), e.g. 5/4.
        #[arg(long)]
        k: Option<String>,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
    },
    /// Whether two loop spaces are homotopy equivalent.
    Compare { a: PathBuf, b: PathBuf },
}

/// Input file contents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldSpec {
    pub intersection_form: Vec<Vec<i64>>,
    #[serde(default)]
    pub w2: Vec<u8>,
    pub p1: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl ManifoldSpec {
    pub fn bundle(&self) -> Result<SphereBundle, ManifoldError> {
        SphereBundle::from_classes(self.intersection_form.clone(), &self.w2, self.p1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub d: usize,
    pub spin: bool,
    pub w2: Vec<u8>,
    pub p1: i64,
    pub alpha: Vec<i64>,
    pub ell: i64,
    /// `I` or `II` for `d >= 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
}

impl InputSummary {
    fn new(spec: &ManifoldSpec, sb: &SphereBundle) -> Self {
        InputSummary {
            name: spec.name.clone(),
            d: sb.d(),
            spin: sb.bundle.is_spin(),
            w2: sb.bundle.w2.clone(),
            p1: sb.bundle.p1,
            alpha: sb.bundle.alpha.clone(),
            ell: sb.bundle.ell,
            case: loops::y_space_report(sb).ok().map(|r| format!("{:?}", r.case)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportError {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<InputSummary>,
    pub result: Option<Value>,
    pub warnings: Vec<String>,
    pub error: Option<ReportError>,
    /// Text rendering of the result, one entry per line.
    pub lines: Vec<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            inputs: Vec::new(),
            result: None,
            warnings: Vec::new(),
            error: None,
            lines: Vec::new(),
        }
    }
}

/// Library errors collected under one type with their exit codes.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Failure { code: 1, kind: "usage", message }
    }

    fn invalid(kind: &'static str, message: String) -> Self {
        Failure { code: 2, kind, message }
    }
}

impl From<ManifoldError> for Failure {
    fn from(e: ManifoldError) -> Self {
        match e {
            ManifoldError::Unsupported(_) => Failure { code: 3, kind: "unsupported", message: e.to_string() },
            _ => Failure::invalid("invalid_input", e.to_string()),
        }
    }
}

impl From<LoopError> for Failure {
    fn from(e: LoopError) -> Self {
        match e {
            LoopError::UnsupportedCase { .. } => Failure { code: 3, kind: "unsupported_case", message: e.to_string() },
            LoopError::Manifold(m) => m.into(),
            LoopError::UnsupportedNode(_) => Failure::invalid("unsupported_node", e.to_string()),
        }
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        match e {
            TableError::Io(_) => Failure::usage(e.to_string()),
            TableError::UnsupportedDegree { .. } => Failure { code: 3, kind: "unsupported_degree", message: e.to_string() },
            TableError::Parse { .. } | TableError::CoverageViolation { .. } => Failure::invalid("bad_table", e.to_string()),
            TableError::OutOfRange { .. } | TableError::Truncated { .. } => Failure::invalid("out_of_range", e.to_string()),
        }
    }
}

impl From<RationalError> for Failure {
    fn from(e: RationalError) -> Self {
        match e {
            RationalError::Loop(l) => l.into(),
            RationalError::Manifold(m) => m.into(),
            RationalError::Unsupported(_) => Failure { code: 3, kind: "unsupported", message: e.to_string() },
            RationalError::NotQuadratic(_) => Failure::invalid("not_quadratic", e.to_string()),
            RationalError::RequiresKoszul { .. } => Failure::invalid("requires_koszul", e.to_string()),
            _ => Failure::invalid("rational", e.to_string()),
        }
    }
}

fn load_spec(path: &Path) -> Result<ManifoldSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::invalid("invalid_input", format!("{}: {e}", path.display())))
}

fn load(path: &Path, report: &mut Report) -> Result<SphereBundle, Failure> {
    let spec = load_spec(path)?;
    let sb = spec.bundle()?;
    report.inputs.push(InputSummary::new(&spec, &sb));
    Ok(sb)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn t_squared(sb: &SphereBundle) -> String {
    let mut terms: Vec<String> = sb
        .bundle
        .alpha
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| match a {
            1 => format!("t*x{}", i + 1),
            -1 => format!("-t*x{}", i + 1),
            _ => format!("{a}*t*x{}", i + 1),
        })
        .collect();
    match sb.bundle.ell {
        0 => {}
        1 => terms.push("y".into()),
        -1 => terms.push("-y".into()),
        l => terms.push(format!("{l}*y")),
    }
    if terms.is_empty() {
        "t^2 = 0".into()
    } else {
        format!("t^2 = {}", terms.join(" + ").replace("+ -", "- "))
    }
}

fn describe(sb: &SphereBundle, report: &mut Report) -> Result<(), Failure> {
    let ring = sb.ring();
    let betti = ring.betti();
    let mut result = json!({
        "d": sb.d(),
        "spin": sb.bundle.is_spin(),
        "alpha": sb.bundle.alpha,
        "ell": sb.bundle.ell,
        "t_squared": t_squared(sb),
        "betti": betti,
        "pairing_determinant": ring.pairing_determinant().to_string(),
        "rationally_elliptic": rational::is_rationally_elliptic(sb),
    });
    report.lines.push(format!("d = {}, spin = {}", sb.d(), sb.bundle.is_spin()));
    report
        .lines
        .push(format!("alpha = [{}], ell = {}", join(&sb.bundle.alpha), sb.bundle.ell));
    report.lines.push(format!("ring: {}", t_squared(sb)));
    report.lines.push(format!("betti: {}", join(&betti)));
    if sb.d() == 0 {
        let cells = manifold::d0_cell_structure(sb)?;
        result["k"] = json!(cells.k);
        result["cells"] = json!(cells.render());
        result["auxiliary_x"] = json!(cells.auxiliary_x());
        report.lines.push(format!("M ~ {}", cells.render()));
        report.lines.push(format!("X ~ {}", cells.auxiliary_x()));
    } else {
        let y: YSpaceReport = loops::y_space_report(sb)?;
        report.lines.push(format!(
            "case {:?}: beta = [{}], <beta^2,[N]> = {} ({:?}); {}",
            y.case,
            join(&y.beta),
            y.beta_square,
            y.parity,
            y.route
        ));
        report.lines.push(format!("Y ~ {}", y.y_cells));
        result["y_space"] = serde_json::to_value(&y).expect("serializable");
    }
    report
        .lines
        .push(format!("rationally elliptic: {}", rational::is_rationally_elliptic(sb)));
    report.result = Some(result);
    Ok(())
}

fn decompose(sb: &SphereBundle, cutoff: usize, report: &mut Report) -> Result<(), Failure> {
    let dec = loops::decompose(sb)?;
    let factors = loops::expr_factors(&dec.expr, cutoff)?;
    if let Some(ext) = &dec.extension {
        report.warnings.push(format!("extension: {ext}"));
    }
    if factors.truncated {
        report
            .warnings
            .push(format!("factor list truncated above S^{}", factors.max_sphere_dim));
    }
    report.lines.push(dec.expr.to_string());
    if factors.render() != dec.expr.to_string() {
        report.lines.push(format!("factors: {}", factors.render()));
    }
    report.result = Some(json!({
        "expression": dec.expr.to_string(),
        "ast": dec.expr,
        "factors": factors,
    }));
    Ok(())
}

fn pi(sb: &SphereBundle, table: &SphereTable, max: u32, report: &mut Report) -> Result<(), Failure> {
    if max < 2 {
        return Err(Failure::usage("--max must be at least 2".into()));
    }
    let factors = loops::loop_factors(sb, max as usize)?;
    let mut groups = serde_json::Map::new();
    let mut failure = None;
    for k in 2..=max {
        match pi_manifold(&factors, table, k) {
            Ok(g) => {
                report.lines.push(format!("pi_{k}(M) = {g}"));
                groups.insert(
                    k.to_string(),
                    json!({"text": g.to_string(), "free_rank": g.free_rank, "torsion": g.torsion}),
                );
            }
            Err(e) => {
                failure = Some(Failure::from(e));
                break;
            }
        }
    }
    report.result = Some(json!({ "groups": groups }));
    failure.map_or(Ok(()), Err)
}

fn series(sb: &SphereBundle, cutoff: usize, report: &mut Report) -> Result<(), Failure> {
    let dec = loops::decompose(sb)?;
    let s = loops::loop_homology_series(&dec.expr, cutoff)?
        .to_integers()
        .expect("loop homology has integer coefficients");
    let coeffs: Vec<String> = s.iter().map(ToString::to_string).collect();
    report.lines.push(coeffs.join(", "));
    let mut result = json!({ "cutoff": cutoff, "coefficients": coeffs });
    if sb.d() >= 1 {
        let p = quadratic::QuadraticPresentation::from_ring_unchecked(&sb.ring());
        let dual: Vec<String> = quadratic::naive_dual_series(&p, cutoff)
            .to_integers()
            .expect("integer series")
            .iter()
            .map(ToString::to_string)
            .collect();
        let agrees = dual == coeffs;
        report.lines.push(format!("1/A(-t) agrees: {agrees}"));
        result["cohomology_reciprocal"] = json!(dual);
        result["agrees"] = json!(agrees);
    }
    report.result = Some(result);
    Ok(())
}

fn rational_cmd(sb: &SphereBundle, cutoff: usize, report: &mut Report) -> Result<(), Failure> {
    let factors = loops::loop_factors(sb, cutoff)?;
    let ranks = rational::ranks_from_decomposition(&factors, cutoff)?;
    report.lines.push(format!("ranks: {}", join(ranks.as_slice())));
    let elliptic = rational::is_rationally_elliptic(sb);
    let mut result = json!({
        "cutoff": cutoff,
        "ranks": ranks.as_slice(),
        "rationally_elliptic": elliptic,
    });
    if sb.d() >= 1 {
        let check = rational::coformality_check(sb, cutoff)?;
        if let Some(lie) = &check.lie_dims {
            report.lines.push(format!("koszul dual ranks: {}", join(lie)));
        }
        let mut line = format!(
            "coformal: {} ({})",
            check.verdict == rational::Coformality::Coformal,
            check.witness
        );
        if let Some(m) = &check.mismatch {
            line.push_str(&format!(
                "; 1/A(-t) = {} but H_{}(Omega M) has rank {}",
                m.naive, m.degree, m.actual
            ));
        }
        report.lines.push(line);
        result["coformality"] = serde_json::to_value(&check).expect("serializable");
    }
    report.lines.push(format!("rationally elliptic: {elliptic}"));
    report.result = Some(result);
    Ok(())
}

fn koszul(sb: &SphereBundle, cutoff: usize, report: &mut Report) -> Result<(), Failure> {
    let p = quadratic::quadratic_presentation(&sb.ring())?;
    let hilbert = quadratic::hilbert_series(&p, cutoff)
        .to_i64s()
        .expect("small integer dimensions");
    let dual = quadratic::koszul_dual_series(&p, cutoff)?;
    let relations: Vec<String> = p.relations.iter().map(|r| quadratic::render_relation(&p, r)).collect();
    report.lines.push(format!("generators: {}", p.generators.join(", ")));
    report.lines.push(format!("relations: {}", relations.join("; ")));
    report.lines.push(format!("hilbert: {}", join(&hilbert)));
    report.lines.push(format!("dual: {}", join(&dual.series)));
    report.lines.push(format!(
        "direct dual dims (weights 0..={}): {}",
        dual.checked_through,
        join(&dual.direct_dims)
    ));
    report.result = Some(json!({
        "generators": p.generators,
        "relations": relations,
        "hilbert": hilbert,
        "dual": dual,
    }));
    Ok(())
}

fn model(sb: &SphereBundle, k: Option<&str>, cutoff: u32, report: &mut Report) -> Result<(), Failure> {
    let mut m = rational::model_for(sb)?;
    if let Some(k) = k {
        if sb.d() != 1 {
            return Err(Failure::usage("--k only applies to d = 1".into()));
        }
        let k: Rational = k.parse().map_err(|_| Failure::usage(format!("bad rational {k:?}")))?;
        m.model = rational::sullivan::d1_total_space(k);
    }
    if !m.complete {
        report
            .warnings
            .push("model is truncated to its degree <= 3 stage; cohomology above degree 4 is not that of M".into());
    }
    let cohomology = rational::cdga_cohomology(&m.model, cutoff)?;
    report.lines.push(format!("model: {}", m.description));
    for (g, line) in m.model.generators().iter().zip(m.model.describe()) {
        report.lines.push(format!("  |{}| = {}, {}", g.name, g.degree, line));
    }
    report.lines.push(format!("cohomology: {}", join(&cohomology)));
    report.result = Some(json!({
        "description": m.description,
        "complete": m.complete,
        "model": m.model.to_json(),
        "cohomology": cohomology,
    }));
    Ok(())
}

fn compare(a: &SphereBundle, b: &SphereBundle, report: &mut Report) -> Result<(), Failure> {
    let da = loops::decompose(a)?;
    let db = loops::decompose(b)?;
    let equivalent = da.expr == db.expr;
    let rigidity = manifold::loop_rigidity_equivalent(a, b).ok();
    if let Some(r) = rigidity {
        debug_assert_eq!(r, equivalent);
    }
    report.lines.push(format!("loop spaces equivalent: {equivalent}"));
    report.lines.push(format!("A: {}", da.expr));
    report.lines.push(format!("B: {}", db.expr));
    report.result = Some(json!({
        "equivalent": equivalent,
        "a": da.expr.to_string(),
        "b": db.expr.to_string(),
        "rigidity": rigidity,
    }));
    Ok(())
}

fn dispatch(cli: &Cli, report: &mut Report) -> Result<(), Failure> {
    let table = match &cli.table {
        Some(path) => SphereTable::load(path)?,
        None => SphereTable::default_table(),
    };
    match &cli.command {
        Command::Describe { input } => describe(&load(input, report)?, report),
        Command::Decompose { input, cutoff } => decompose(&load(input, report)?, *cutoff, report),
        Command::Pi { input, max } => pi(&load(input, report)?, &table, *max, report),
        Command::Series { input, cutoff } => series(&load(input, report)?, *cutoff, report),
        Command::Rational { input, cutoff } => rational_cmd(&load(input, report)?, *cutoff, report),
        Command::Koszul { input, cutoff } => koszul(&load(input, report)?, *cutoff, report),
        Command::Model { input, k, cutoff } => model(&load(input, report)?, k.as_deref(), *cutoff, report),
        Command::Compare { a, b } => {
            let a = load(a, report)?;
            let b = load(b, report)?;
            compare(&a, &b, report)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Describe { .. } => "describe",
        Command::Decompose { .. } => "decompose",
        Command::Pi { .. } => "pi",
        Command::Series { .. } => "series",
        Command::Rational { .. } => "rational",
        Command::Koszul { .. } => "koszul",
        Command::Model { .. } => "model",
        Command::Compare { .. } => "compare",
    }
}

/// Serializes a report. JSON is pretty-printed with sorted keys inside
/// results; text mode prints the result lines, then warnings and errors.
pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("serializable") + "\n",
        Format::Text => {
            let mut out = String::new();
            for line in &r.lines {
                out.push_str(line);
                out.push('\n');
            }
            for w in &r.warnings {
                out.push_str(&format!("warning: {w}\n"));
            }
            if let Some(e) = &r.error {
                out.push_str(&format!("error: {}\n", e.message));
            }
            out
        }
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let mut report = Report::new(command_name(&cli.command));
    let code = match dispatch(&cli, &mut report) {
        Ok(()) => 0,
        Err(f) => {
            report.error = Some(ReportError {
                kind: f.kind.into(),
                message: f.message,
            });
            f.code
        }
    };
    (code, emit_report(&report, cli.format))
}
