//! Command-line front end. Every command produces a [`SuiteResult`]; the
//! rendering (JSON, CSV or text) is chosen by `--format`.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::autgroup::{cubic_aut_report, AutGroupReport};
use crate::centralizer::{centralizer_report, CentralizerReport};
use crate::classify::{classes, ClassReport, Cubic};
use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::poly::MonicPoly;
use crate::smooth::{canonical_form, default_scan_degrees, smoothness_report, ScanFields, SmoothnessReport};
use crate::verify::{self, Check, SuiteResult};

/// Exit code for usage errors and rejected inputs.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "fillcurve", version, about = "Plane-filling curves of degree q+2 over F_q")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the verification suites for each q.
    Verify {
        /// Comma-separated field orders, e.g. 2,3 (each 2..5, or 7 for automorphism checks only).
        #[arg(long = "q", value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Also scan singular points over F_{q^6}.
        #[arg(long)]
        deep: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Orbits of irreducible cubics under t -> rho t + mu.
    Classify {
        #[arg(long = "q")]
        q: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The curve attached to t^3 - (c t^2 + b t + a): its form, smoothness and automorphisms.
    Curve {
        #[arg(long = "q")]
        q: u64,
        /// Coefficients "c,b,a" of t^3 - (c t^2 + b t + a). Elements are
        /// integers mod p, the generator t (also w), powers like w^2, or [c0,c1,..].
        #[arg(long, allow_hyphen_values = true)]
        cubic: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Centralizer report for the companion of a monic irreducible polynomial.
    Centralizer {
        #[arg(long = "q")]
        q: u64,
        /// Degree of the polynomial.
        #[arg(long)]
        n: usize,
        /// Lower coefficients "c0,..,c_{n-1}" of t^n + c_{n-1} t^{n-1} + .. + c0.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format (default: json for verify, text otherwise).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the output to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A finished command: the result plus its CSV and text renderings.
pub struct Outcome {
    pub result: SuiteResult,
    pub text: String,
    pub csv: String,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.result).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone(),
            Format::Text => self.text.clone(),
        }
    }
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Verify { out, .. }
            | Command::Classify { out, .. }
            | Command::Curve { out, .. }
            | Command::Centralizer { out, .. } => out,
        }
    }

    pub fn default_format(&self) -> Format {
        match self {
            Command::Verify { .. } => Format::Json,
            _ => Format::Text,
        }
    }

    /// Canonical echo of the command, without output options.
    pub fn echo(&self) -> String {
        match self {
            Command::Verify { q, deep, .. } => {
                let qs: Vec<String> = q.iter().map(u64::to_string).collect();
                format!("verify --q {}{}", qs.join(","), if *deep { " --deep" } else { "" })
            }
            Command::Classify { q, .. } => format!("classify --q {q}"),
            Command::Curve { q, cubic, .. } => format!("curve --q {q} --cubic {cubic}"),
            Command::Centralizer { q, n, poly, .. } => format!("centralizer --q {q} --n {n} --poly {poly}"),
        }
    }

    pub fn execute(&self) -> Result<Outcome> {
        let echo = self.echo();
        match self {
            Command::Verify { q, deep, .. } => cmd_verify(q, *deep, echo),
            Command::Classify { q, .. } => cmd_classify(*q, echo),
            Command::Curve { q, cubic, .. } => cmd_curve(*q, cubic, echo),
            Command::Centralizer { q, n, poly, .. } => cmd_centralizer(*q, *n, poly, echo),
        }
    }
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

fn checks_text(out: &mut String, r: &SuiteResult) {
    for c in &r.checks {
        match &c.witness {
            None => writeln!(out, "PASS {}", c.name).unwrap(),
            Some(w) => writeln!(out, "FAIL {}: {w}", c.name).unwrap(),
        }
    }
    writeln!(out, "{} checks: {} passed, {} failed", r.counts.total, r.counts.passed, r.counts.failed).unwrap();
}

fn checks_csv(r: &SuiteResult) -> String {
    csv_rows(
        &["name", "status", "witness"],
        r.checks.iter().map(|c| {
            let status = if c.passed() { "pass" } else { "fail" };
            [c.name.clone(), status.to_string(), c.witness.clone().unwrap_or_default()]
        }),
    )
}

fn key_values_csv(value: &serde_json::Value) -> String {
    let rows = value.as_object().into_iter().flatten().map(|(k, v)| {
        let v = match v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Null => String::new(),
            other => other.to_string(),
        };
        [k.clone(), v]
    });
    csv_rows(&["key", "value"], rows)
}

fn field(q: u64) -> Result<Arc<Field>> {
    Field::with_order(q)
}

pub fn cmd_verify(qs: &[u64], deep: bool, echo: String) -> Result<Outcome> {
    let result = verify::cmd_verify(qs, deep, echo)?;
    let mut text = String::new();
    checks_text(&mut text, &result);
    let csv = checks_csv(&result);
    Ok(Outcome { result, text, csv })
}

#[derive(Serialize)]
struct ClassRow {
    representative: String,
    polynomial: String,
    size: usize,
    labels: Vec<String>,
    members: Vec<String>,
}

#[derive(Serialize)]
struct ClassJson {
    q: u64,
    irreducible_cubics: usize,
    classes: Vec<ClassRow>,
}

fn class_json(r: &ClassReport, f: &Field) -> ClassJson {
    ClassJson {
        q: r.q,
        irreducible_cubics: r.total(),
        classes: r
            .classes
            .iter()
            .map(|c| ClassRow {
                representative: c.representative.format_triple(f),
                polynomial: c.representative.format(f),
                size: c.members.len(),
                labels: c.labels.iter().map(|l| l.to_string()).collect(),
                members: c.members.iter().map(|m| m.format_triple(f)).collect(),
            })
            .collect(),
    }
}

pub fn cmd_classify(q: u64, echo: String) -> Result<Outcome> {
    let f = field(q)?;
    let report = class_json(&classes(&f), &f);
    let checks = vec![Check::from_witness(format!("q={q}/classify/classes"), verify::check_classes(&f))];
    let mut text = format!(
        "q = {q}: {} classes covering {} irreducible cubics t^3-(c*t^2+b*t+a)\n",
        report.classes.len(),
        report.irreducible_cubics
    );
    for c in &report.classes {
        writeln!(text, "{:<36} size {:<4} labels {}", c.polynomial, c.size, c.labels.join(",")).unwrap();
    }
    let csv = csv_rows(
        &["c,b,a", "polynomial", "size", "labels"],
        report
            .classes
            .iter()
            .map(|c| [c.representative.clone(), c.polynomial.clone(), c.size.to_string(), c.labels.join(";")]),
    );
    let result = SuiteResult::new(echo, checks).with_report(&report);
    checks_text(&mut text, &result);
    Ok(Outcome { result, text, csv })
}

#[derive(Serialize)]
struct CurveJson {
    q: u64,
    cubic: String,
    irreducible: bool,
    form: String,
    smoothness: SmoothnessReport,
    automorphisms: Option<AutGroupReport>,
}

pub fn cmd_curve(q: u64, cubic: &str, echo: String) -> Result<Outcome> {
    let f = field(q)?;
    let c = Cubic::parse(&f, cubic)?;
    let fields = ScanFields::new(&f, &default_scan_degrees(q))?;
    let smooth = smoothness_report(c, &f, &fields)?;
    let irreducible = c.is_irreducible(&f);
    let aut = if irreducible { Some(cubic_aut_report(c, &f, false)?) } else { None };

    let name = |s: &str| format!("q={q}/curve/{s}");
    let mut checks = vec![Check::from_witness(
        name("criterion_vs_scan"),
        (!smooth.consistent).then(|| format!("criterion={} scan={:?}", smooth.criterion, smooth.scan)),
    )];
    if !irreducible {
        let rational = smooth.scan.iter().any(|l| l.m == 1 && !l.points.is_empty());
        checks.push(Check::from_witness(
            name("rational_singular_point"),
            (!rational).then(|| "no singular point over F_q".to_string()),
        ));
    }
    if let Some(a) = &aut {
        checks.push(Check::from_witness(
            name("automorphism_structure"),
            (!a.structure_holds()).then(|| serde_json::to_string(a).expect("serializable")),
        ));
    }

    let report = CurveJson {
        q,
        cubic: c.format(&f),
        irreducible,
        form: canonical_form(c, q as u32, &f).format(&f),
        smoothness: smooth,
        automorphisms: aut,
    };
    let mut text = String::new();
    writeln!(text, "cubic      {}", report.cubic).unwrap();
    writeln!(text, "F          {}", report.form).unwrap();
    writeln!(text, "smooth     {}", report.smoothness.criterion).unwrap();
    for layer in &report.smoothness.scan {
        let pts = if layer.points.is_empty() { "none".to_string() } else { layer.points.join(" ") };
        writeln!(text, "singular over F_{q}^{}: {pts}", layer.m).unwrap();
    }
    if let Some(a) = &report.automorphisms {
        writeln!(text, "|Aut|      {}", a.order).unwrap();
        writeln!(text, "quotient   {:?} (singer subgroup of order {})", a.quotient, a.singer_order).unwrap();
    }
    let mut flat = serde_json::Map::new();
    flat.insert("cubic".into(), report.cubic.clone().into());
    flat.insert("form".into(), report.form.clone().into());
    flat.insert("smooth".into(), report.smoothness.criterion.into());
    for layer in &report.smoothness.scan {
        flat.insert(format!("singular_m{}", layer.m), layer.points.join(" ").into());
    }
    if let Some(a) = &report.automorphisms {
        flat.insert("aut_order".into(), a.order.into());
    }
    let csv = key_values_csv(&serde_json::Value::Object(flat));
    let result = SuiteResult::new(echo, checks).with_report(&report);
    checks_text(&mut text, &result);
    Ok(Outcome { result, text, csv })
}

pub fn cmd_centralizer(q: u64, n: usize, poly: &str, echo: String) -> Result<Outcome> {
    let f = field(q)?;
    let p = MonicPoly::parse(&f, poly)?;
    if p.degree() != n {
        return Err(Error::Parse(format!("--n {n} but {} coefficients given", p.degree())));
    }
    let report: CentralizerReport = centralizer_report(&p, &f)?;
    let checks = vec![Check::from_witness(format!("q={q}/centralizer/n={n}"), verify::centralizer_witness(&p, &f))];
    let value = serde_json::to_value(&report).expect("serializable");
    let mut text = String::new();
    for (k, v) in value.as_object().into_iter().flatten() {
        writeln!(text, "{k}: {v}").unwrap();
    }
    let csv = key_values_csv(&value);
    let result = SuiteResult::new(echo, checks).with_report(&report);
    checks_text(&mut text, &result);
    Ok(Outcome { result, text, csv })
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let cmd = &cli.command;
    let outcome = match cmd.execute() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let opts = cmd.output();
    let rendered = outcome.render(opts.format.unwrap_or(cmd.default_format()));
    match &opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{rendered}"),
    }
    outcome.result.exit_status
}
