use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use coxlen_core::affine::{AffineElement, AffineGroup};
use coxlen_core::experiments::{self, Check, DEFAULT_SEED};
use coxlen_core::expr::{format_element, parse_expr, parse_lattice};
use coxlen_core::length::{
    integral_expression, length_bounds, minimal_coroot_subspaces, move_origin_element,
    real_dimension, word_length, LengthReport,
};
use coxlen_core::linalg::{to_i64, Scalar, Vector};
use coxlen_core::oracle::AffineOracle;
use coxlen_core::universal::{uc_reflection_length, uc_reflection_length_unrestricted, UCWord};
use coxlen_core::Error;

const SCHEMA: &str = "coxlen/1";

#[derive(Parser)]
#[command(name = "coxlen", version, about = "Reflection length in affine Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Offset window for oracle searches (|i| <= window).
    #[arg(long, global = true)]
    window: Option<i64>,

    /// Longest factorization the oracle looks for.
    #[arg(long, global = true)]
    max_len: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// List every minimal coroot subspace (dimension).
    #[arg(long, global = true)]
    all_minimal: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots, coroots, simple system and exponents.
    Roots { spec: String },
    /// Reflection length of an element such as "t[1,0]*r(2,0)".
    Length { spec: String, element: String },
    /// Dimension of a coroot lattice vector such as "[1,-1]".
    Dimension { spec: String, lambda: String },
    /// A factorization of an element into reflections.
    Factor { spec: String, element: String },
    /// Run one of the batch experiments.
    Experiment {
        #[arg(value_enum)]
        name: ExperimentName,
        /// Root system, for experiments that take one.
        #[arg(long = "type", default_value = "A2")]
        system: String,
        /// Half-width of the lambda box.
        #[arg(long, default_value_t = 2)]
        radius: i64,
        /// Largest power n for uc-powers.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Cases per property for the property sweep.
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
    /// Reflection length in the universal Coxeter group on a, b, c.
    Uc {
        word: String,
        /// Also run the search that does not use Dyer's criterion.
        #[arg(long)]
        cross_check: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentName {
    Census,
    Equivalence,
    Solomon,
    FLambda,
    A3Crossing,
    UcPowers,
    FiniteFactors,
    Properties,
}

/// A command's result: JSON body, optional CSV table, and checks.
struct Output {
    json: Value,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    checks: Vec<Check>,
}

impl Output {
    fn new(json: Value) -> Self {
        Output {
            json,
            table: None,
            checks: vec![],
        }
    }

    fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header, rows));
        self
    }

    fn checks(mut self, checks: Vec<Check>) -> Self {
        self.checks = checks;
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(failed) => {
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let mut body = Map::new();
            body.insert("schema".into(), json!(SCHEMA));
            let mut err = Map::new();
            err.insert("message".into(), json!(format!("{e:#}")));
            if let Some(core) = e.downcast_ref::<Error>() {
                err.insert("kind".into(), json!(error_kind(core)));
                if let Error::Parse { position, .. } = core {
                    err.insert("position".into(), json!(position));
                }
            } else {
                err.insert("kind".into(), json!("io"));
            }
            body.insert("error".into(), Value::Object(err));
            println!("{}", Value::Object(body));
            ExitCode::from(1)
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::InvalidRootSystem(_) => "invalid-root-system",
        Error::Uncertified { .. } => "uncertified",
        Error::Envelope(_) => "envelope",
        Error::CheckFailed(_) => "check-failed",
        Error::Internal(_) => "internal",
        _ => "invalid-input",
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let out = match &cli.command {
        Command::Roots { spec } => cmd_roots(spec)?,
        Command::Length { spec, element } => cmd_length(cli, spec, element)?,
        Command::Dimension { spec, lambda } => cmd_dimension(cli, spec, lambda)?,
        Command::Factor { spec, element } => cmd_factor(cli, spec, element)?,
        Command::Experiment {
            name,
            system,
            radius,
            max_n,
            cases,
        } => cmd_experiment(cli, *name, system, *radius, *max_n, *cases)?,
        Command::Uc { word, cross_check } => cmd_uc(word, *cross_check)?,
    };
    let text = match cli.format {
        Format::Json => {
            let mut body = Map::new();
            body.insert("schema".into(), json!(SCHEMA));
            match out.json {
                Value::Object(m) => body.extend(m),
                other => {
                    body.insert("result".into(), other);
                }
            }
            if !out.checks.is_empty() {
                body.insert("passed".into(), json!(experiments::all_passed(&out.checks)));
                body.insert("checks".into(), serde_json::to_value(&out.checks)?);
            }
            serde_json::to_string_pretty(&Value::Object(body))? + "\n"
        }
        Format::Csv => {
            let Some((header, rows)) = &out.table else {
                bail!("this command has no CSV form; use --format json");
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    let failed = !experiments::all_passed(&out.checks);
    for c in out.checks.iter().filter(|c| !c.passed) {
        eprintln!("{}", json!({"schema": SCHEMA, "failure": c}));
    }
    Ok(failed)
}

fn scalar_json(x: &Scalar) -> Value {
    match to_i64(x) {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

fn vector_json(v: &Vector) -> Value {
    Value::Array(v.0.iter().map(scalar_json).collect())
}

fn to_json(x: impl Serialize) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn cmd_roots(spec: &str) -> anyhow::Result<Output> {
    let g = experiments::group(spec)?;
    let phi = g.root_system();
    let mut roots = Vec::new();
    let mut rows = Vec::new();
    for (i, (a, c)) in phi.positive_roots().iter().zip(phi.positive_coroots()).enumerate() {
        roots.push(json!({
            "index": i + 1,
            "root": vector_json(a),
            "coroot": vector_json(c),
            "coroot_coords": phi.coroot_coords(i),
            "height": phi.height(i),
        }));
        rows.push(vec![(i + 1).to_string(), a.to_string(), c.to_string(), phi.height(i).to_string()]);
    }
    let simple: Vec<usize> = phi
        .simple_roots()
        .iter()
        .filter_map(|a| phi.root_index(a).map(|(i, _)| i + 1))
        .collect();
    Ok(Output::new(json!({
        "system": phi.spec().to_string(),
        "rank": phi.rank(),
        "ambient_dim": phi.ambient_dim(),
        "positive_count": phi.positive_count(),
        "simple": simple,
        "exponents": phi.exponents(),
        "positive_roots": roots,
    }))
    .table(vec!["index", "root", "coroot", "height"], rows))
}

fn report_json(g: &AffineGroup, w: &AffineElement, r: &LengthReport) -> Value {
    json!({
        "system": g.root_system().spec().to_string(),
        "element": format_element(g, w),
        "lower": r.lower,
        "upper": r.upper,
        "exact": r.exact,
        "certificate": r.certificate,
        "witness": r.witness.as_ref().map(ToString::to_string),
    })
}

fn report_row(g: &AffineGroup, w: &AffineElement, r: &LengthReport) -> Vec<String> {
    vec![
        format_element(g, w),
        r.lower.to_string(),
        r.upper.map_or(String::new(), |u| u.to_string()),
        r.exact.to_string(),
        r.certificate.to_string(),
        r.witness.as_ref().map_or(String::new(), ToString::to_string),
    ]
}

const REPORT_HEADER: [&str; 6] = ["element", "lower", "upper", "exact", "certificate", "witness"];

/// Bounds (or the exact value for a reflection word with independent
/// roots), refined by the oracle when `--window` is given.
fn length_report(cli: &Cli, g: &AffineGroup, src: &str) -> anyhow::Result<(AffineElement, LengthReport)> {
    let expr = parse_expr(src)?;
    let w = expr.evaluate(g)?;
    let theory = match expr.as_word() {
        Some(word) => word_length(g, &word)?,
        None => length_bounds(g, &w)?,
    };
    if theory.exact {
        return Ok((w, theory));
    }
    match cli.window {
        Some(window) => {
            let oracle = AffineOracle::new(g)?;
            let max_len = cli.max_len.or(theory.upper);
            Ok((w.clone(), oracle.affine_length(&w, window, max_len)?))
        }
        None => Ok((w, theory)),
    }
}

fn cmd_length(cli: &Cli, spec: &str, src: &str) -> anyhow::Result<Output> {
    let g = experiments::group(spec)?;
    let (w, r) = length_report(cli, &g, src)?;
    Ok(Output::new(report_json(&g, &w, &r)).table(REPORT_HEADER.to_vec(), vec![report_row(&g, &w, &r)]))
}

fn cmd_factor(cli: &Cli, spec: &str, src: &str) -> anyhow::Result<Output> {
    let g = experiments::group(spec)?;
    let (w, r) = length_report(cli, &g, src)?;
    let mut body = report_json(&g, &w, &r);
    if !w.translation().is_zero() {
        let (_, u_word) = move_origin_element(&g, w.translation())?;
        body["move_origin"] = json!(u_word.to_string());
    }
    body["witness_length"] = json!(r.witness.as_ref().map(|x| x.len()));
    Ok(Output::new(body).table(REPORT_HEADER.to_vec(), vec![report_row(&g, &w, &r)]))
}

fn cmd_dimension(cli: &Cli, spec: &str, src: &str) -> anyhow::Result<Output> {
    let g = experiments::group(spec)?;
    let lam = parse_lattice(src)?;
    if lam.len() != g.rank() {
        return Err(Error::DimensionMismatch {
            expected: g.rank(),
            found: lam.len(),
        }
        .into());
    }
    let real = real_dimension(&g, &lam);
    let wit = integral_expression(&g, &lam)?;
    let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
    let mut body = json!({
        "system": g.root_system().spec().to_string(),
        "lambda": lam,
        "ambient": vector_json(&g.root_system().lattice_to_ambient(&lam)),
        "k": wit.k,
        "real_dimension": real.k,
        "roots": one_based(&wit.roots),
        "coefficients": wit.coefficients,
    });
    let mut rows = vec![];
    if cli.all_minimal {
        let planes = minimal_coroot_subspaces(&g, &lam);
        for p in &planes {
            rows.push(vec![
                lam.to_string(),
                wit.k.to_string(),
                format!("{:?}", one_based(&p.basis)),
                format!("{:?}", one_based(&p.roots)),
            ]);
        }
        body["minimal_subspaces"] = planes
            .iter()
            .map(|p| json!({"basis": one_based(&p.basis), "roots": one_based(&p.roots)}))
            .collect();
    } else {
        rows.push(vec![
            lam.to_string(),
            wit.k.to_string(),
            format!("{:?}", one_based(&real.roots)),
            String::new(),
        ]);
    }
    Ok(Output::new(body).table(vec!["lambda", "k", "basis", "roots"], rows))
}

fn cmd_uc(word: &str, cross_check: bool) -> anyhow::Result<Output> {
    let w: UCWord = word.parse()?;
    let rep = uc_reflection_length(&w)?;
    let mut body = to_json(&rep)?;
    let mut checks = vec![];
    if cross_check {
        let u = uc_reflection_length_unrestricted(&w, rep.lr);
        body["unrestricted"] = json!(u);
        checks.push(Check::new("dyer=unrestricted", u == Some(rep.lr), format!("{u:?}")));
    }
    let row = vec![rep.word.to_string(), rep.reduced.to_string(), rep.ls.to_string(), rep.lr.to_string()];
    Ok(Output::new(body)
        .table(vec!["word", "reduced", "ls", "lr"], vec![row])
        .checks(checks))
}

fn opt(x: Option<usize>) -> String {
    x.map_or(String::new(), |v| v.to_string())
}

fn cmd_experiment(
    cli: &Cli,
    name: ExperimentName,
    system: &str,
    radius: i64,
    max_n: usize,
    cases: usize,
) -> anyhow::Result<Output> {
    let window = cli.window;
    Ok(match name {
        ExperimentName::Census => {
            let c = experiments::census(system, radius, window)?;
            let rows = c
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.lambda.to_string(),
                        r.k.to_string(),
                        r.lower.to_string(),
                        opt(r.upper),
                        r.certificate.to_string(),
                    ]
                })
                .collect();
            let checks = c.checks.clone();
            Output::new(to_json(&c)?)
                .table(vec!["lambda", "k", "lower", "upper", "certificate"], rows)
                .checks(checks)
        }
        ExperimentName::Equivalence => {
            let e = experiments::equivalent_definitions(system, radius, window.unwrap_or(6))?;
            let rows = e
                .rows
                .iter()
                .map(|r| vec![r.lambda.to_string(), r.real.to_string(), r.integral.to_string(), opt(r.origin)])
                .collect();
            let checks = e.checks.clone();
            Output::new(to_json(&e)?)
                .table(vec!["lambda", "real", "integral", "origin"], rows)
                .checks(checks)
        }
        ExperimentName::Solomon => {
            let s = experiments::solomon(system)?;
            let rows = s
                .polynomial
                .0
                .iter()
                .enumerate()
                .map(|(i, c)| vec![i.to_string(), c.to_string()])
                .collect();
            let checks = s.checks.clone();
            let mut body = to_json(&s)?;
            body["expanded"] = json!(s.polynomial.to_string());
            Output::new(body).table(vec!["length", "count"], rows).checks(checks)
        }
        ExperimentName::FLambda => {
            let f = experiments::f_lambda(system, radius, window.unwrap_or(4))?;
            let rows = f
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.lambda.to_string(),
                        r.k.to_string(),
                        r.polynomial.as_ref().map_or(String::new(), ToString::to_string),
                        r.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            let checks = f.checks.clone();
            Output::new(to_json(&f)?)
                .table(vec!["lambda", "k", "polynomial", "error"], rows)
                .checks(checks)
        }
        ExperimentName::A3Crossing => {
            let c = experiments::a3_crossing()?;
            let n = c.report.occurrences.len();
            let body = json!({
                "total": c.report.total,
                "both_crossing": c.report.both_crossing,
                "coverage": format!("{}/{n}", c.report.coverage),
                "occurrences": c.report.occurrences,
                "factorizations": c.report.factorizations.iter()
                    .map(|f| f.iter().map(|p| p + 1).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            let rows = c
                .report
                .factorizations
                .iter()
                .map(|f| f.iter().map(|p| (p + 1).to_string()).collect())
                .collect();
            Output::new(body)
                .table(vec!["first", "second", "third"], rows)
                .checks(c.checks)
        }
        ExperimentName::UcPowers => {
            let u = experiments::uc_powers(max_n, 2)?;
            let rows = u
                .rows
                .iter()
                .map(|r| vec![r.n.to_string(), r.word.to_string(), r.ls.to_string(), r.lr.to_string(), opt(r.unrestricted)])
                .collect();
            let checks = u.checks.clone();
            Output::new(to_json(&u)?)
                .table(vec!["n", "word", "ls", "lr", "unrestricted"], rows)
                .checks(checks)
        }
        ExperimentName::FiniteFactors => {
            let f = experiments::finite_factors(radius, window.unwrap_or(4))?;
            let checks = f.checks.clone();
            let row = vec![f.samples.to_string(), f.max_exact.to_string(), f.expected.to_string()];
            Output::new(to_json(&f)?)
                .table(vec!["samples", "max_exact", "expected"], vec![row])
                .checks(checks)
        }
        ExperimentName::Properties => {
            let checks = experiments::property_sweep(cli.seed, cases)?;
            let rows = checks
                .iter()
                .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()])
                .collect();
            Output::new(json!({"seed": cli.seed, "cases": cases}))
                .table(vec!["property", "passed", "detail"], rows)
                .checks(checks)
        }
    })
}
