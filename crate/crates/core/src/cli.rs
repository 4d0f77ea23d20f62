//! Command-line front end. [`run`] returns the process exit code:
//! 0 pass, 1 check failure, 2 usage or parse error, 3 resource exhaustion.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{CosetComplex, CubeBall};
use crate::dj::{gamma_doubleprime, gamma_prime, DjSetup};
use crate::error::Error;
use crate::graph::{parse_graph, LabeledGraph};
use crate::group::{GraphProduct, DEFAULT_MAX_ELEMENTS};
use crate::morse::check_morse;
use crate::oracle::{oracle_equal, DEFAULT_WORD_BUDGET};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCES: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gpcube", version, about = "Graph products of cyclic groups and their CAT(0) cube complexes")]
pub struct Cli {
    /// Graph description file.
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Ball radius in the length ℓ.
    #[arg(long, global = true, default_value_t = 2)]
    pub radius: u64,
    /// Cap on enumerated group elements and ball vertices.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS, value_parser = clap::value_parser!(usize))]
    pub budget_elements: usize,
    /// Cap on words explored by the rewriting oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_WORD_BUDGET)]
    pub budget_words: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; stdout if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Links,
    Morse,
    Special,
    Kernel,
    Dj,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of a word such as `s, t^-2`.
    Normalize { word: String },
    /// Exit 0 iff the two words are equal.
    Equal {
        a: String,
        b: String,
        /// Also decide equality with the rewriting oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Export the ball of the given radius.
    Build,
    /// Run checks and write a certificate.
    Check {
        #[arg(value_enum)]
        which: Which,
    },
    /// Print the graphs Γ′ and Γ″.
    Dj,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Resources(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::UnknownGenerator(_)
            | Error::MalformedWord(_)
            | Error::PresentationMismatch
            | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            Error::BudgetExceeded { .. } | Error::OracleBudgetExhausted(_) | Error::GraphTooLarge(_) => {
                Failure::Resources(e.to_string())
            }
            Error::NotInterior(_) | Error::SublevelTruncated(_) | Error::InvariantViolation(_) => {
                Failure::Check(e.to_string())
            }
        }
    }
}

/// Certificate envelope shared by every check.
#[derive(Debug, Serialize)]
pub struct Certificate {
    pub tool: &'static str,
    pub version: &'static str,
    pub graph_hash: String,
    pub radius: u64,
    pub check: Which,
    pub pass: bool,
    pub truncation_notes: Vec<String>,
    pub results: Value,
}

/// Parses `args` (including the program name) and runs the command,
/// writing primary output to `out` unless `--out` is given.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_PASS;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Resources(m)) => {
            let _ = writeln!(err, "resource limit: {m}");
            EXIT_RESOURCES
        }
        Err(Failure::Check(m)) => {
            let _ = writeln!(err, "check failed: {m}");
            EXIT_FAIL
        }
    }
}

fn load_graph(path: Option<&Path>) -> Result<LabeledGraph, Failure> {
    let path = path.ok_or_else(|| Failure::Usage("--graph is required".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::from(Error::from(e)))
}

fn emit(cli: &Cli, out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    if cli.budget_elements == 0 || cli.budget_words == 0 {
        return Err(Failure::Usage("budgets must be positive".into()));
    }
    let graph = load_graph(cli.graph.as_deref())?;
    match &cli.command {
        Command::Normalize { word } => {
            let g = GraphProduct::new(graph);
            let nf = g.normalize(&g.parse_word(word)?)?;
            emit(cli, out, &format!("{}\n", g.format(&nf)))?;
            Ok(EXIT_PASS)
        }
        Command::Equal { a, b, oracle } => {
            let g = GraphProduct::new(graph.clone());
            let (wa, wb) = (g.parse_word(a)?, g.parse_word(b)?);
            let equal = g.equal(&wa, &wb)?;
            let mut text = format!("{}\n", if equal { "equal" } else { "different" });
            if *oracle {
                let o = oracle_equal(&graph, &wa, &wb, cli.budget_words)?;
                text.push_str(&format!("oracle: {}\n", if o { "equal" } else { "different" }));
                if o != equal {
                    return Err(Failure::Check("normal form and oracle disagree".into()));
                }
            }
            emit(cli, out, &text)?;
            Ok(if equal { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Build => {
            let ball = CosetComplex::new(graph)?.build_ball(cli.radius, cli.budget_elements)?;
            let text = match cli.format {
                Format::Json => ball.to_json() + "\n",
                Format::Dot => ball.to_dot(),
                Format::Text => ball_summary(&ball),
            };
            emit(cli, out, &text)?;
            Ok(EXIT_PASS)
        }
        Command::Check { which } => {
            if cli.format == Format::Dot {
                return Err(Failure::Usage("check output is json or text".into()));
            }
            let cert = certificate(&graph, cli.radius, cli.budget_elements, *which)?;
            let text = match cli.format {
                Format::Text => certificate_summary(&cert),
                _ => certificate_json(&cert),
            };
            emit(cli, out, &text)?;
            Ok(if cert.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Dj => {
            let text = format!(
                "# Gamma'\n{}# Gamma''\n{}",
                gamma_prime(&graph)?.to_text(),
                gamma_doubleprime(&graph)?.to_text()
            );
            emit(cli, out, &text)?;
            Ok(EXIT_PASS)
        }
    }
}

fn ball_summary(ball: &CubeBall) -> String {
    let mut s = String::new();
    s.push_str(&format!("radius {}\n", ball.radius().unwrap_or(0)));
    s.push_str(&format!("vertices {}\n", ball.len()));
    for d in 1..=ball.dimension() {
        s.push_str(&format!("cubes of dimension {d}: {}\n", ball.cubes_of_dim(d).count()));
    }
    s.push_str(&format!("euler characteristic {}\n", ball.euler_characteristic()));
    for v in 0..ball.len() {
        let mark = if ball.is_interior(v) { "" } else { " (boundary)" };
        s.push_str(&format!("v{v} {}{mark}\n", ball.label(v)));
    }
    s
}

fn certificate_summary(cert: &Certificate) -> String {
    let verdict = |p: bool| if p { "pass" } else { "FAIL" };
    let mut s = format!("graph {}\nradius {}\n", cert.graph_hash, cert.radius);
    if let Value::Object(sections) = &cert.results {
        for (name, section) in sections {
            let p = section.get("pass").and_then(Value::as_bool).unwrap_or(false);
            s.push_str(&format!("{name}: {}\n", verdict(p)));
        }
    }
    for n in &cert.truncation_notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s.push_str(&format!("overall: {}\n", verdict(cert.pass)));
    s
}

/// Pretty JSON with a trailing newline.
pub fn certificate_json(cert: &Certificate) -> String {
    serde_json::to_string_pretty(cert).expect("certificates serialize") + "\n"
}

/// Runs the selected checks; `pass` is the conjunction of their verdicts.
pub fn certificate(graph: &LabeledGraph, radius: u64, budget: usize, which: Which) -> Result<Certificate, Error> {
    let mut notes = Vec::new();
    let mut pass = true;
    let mut results = serde_json::Map::new();
    let needs_ball = which != Which::Dj;
    let ball = if needs_ball {
        Some(CosetComplex::new(graph.clone())?.build_ball(radius, budget)?)
    } else {
        None
    };
    if let Some(b) = &ball {
        let boundary = b.len() - b.interior_vertices().count();
        if boundary > 0 {
            notes.push(format!(
                "{boundary} of {} vertices have stars leaving the ball; vertex checks skip them",
                b.len()
            ));
        }
    }
    let wants = |w: Which| which == w || which == Which::All;

    if wants(Which::Links) {
        let b = ball.as_ref().expect("ball");
        let mut checked = 0;
        let mut failures = Vec::new();
        for v in b.interior_vertices() {
            checked += 1;
            let c = b.check_link(v)?;
            if !c.all() {
                failures.push(json!({ "vertex": v, "label": b.label(v), "checks": c }));
            }
        }
        let domain = b.fundamental_domain_check();
        let equivariance = b.equivariance_violations();
        let cofaces = b.coface_counts_by_clique();
        let locally_finite = cofaces.values().all(|c| c.len() == 1);
        let ok = failures.is_empty() && domain.ok() && equivariance == 0 && locally_finite;
        pass &= ok;
        results.insert(
            "links".into(),
            json!({
                "pass": ok,
                "interior_vertices_checked": checked,
                "failures": failures,
                "fundamental_domain": domain,
                "equivariance_violations": equivariance,
                "coface_counts_uniform": locally_finite,
            }),
        );
    }
    if wants(Which::Morse) {
        let r = check_morse(ball.as_ref().expect("ball"))?;
        pass &= r.pass();
        results.insert("morse".into(), json!({ "pass": r.pass(), "report": r }));
    }
    if wants(Which::Special) {
        let r = ball.as_ref().expect("ball").check_special()?;
        pass &= r.pass();
        notes.extend(r.truncation_notes.iter().cloned());
        results.insert("special".into(), json!({ "pass": r.pass(), "report": r }));
    }
    if wants(Which::Kernel) {
        let r = ball.as_ref().expect("ball").kernel_report();
        pass &= r.pass();
        results.insert("kernel".into(), json!({ "pass": r.pass(), "report": r }));
    }
    if wants(Which::Dj) {
        let cert = DjSetup::new(graph.clone())?.certificate(radius, budget)?;
        pass &= cert.pass();
        results.insert("dj".into(), json!({ "pass": cert.pass(), "certificate": cert }));
    }

    Ok(Certificate {
        tool: "gpcube",
        version: env!("CARGO_PKG_VERSION"),
        graph_hash: graph.fingerprint_hex(),
        radius,
        check: which,
        pass,
        truncation_notes: notes,
        results: Value::Object(results),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn missing_graph_is_a_usage_error() {
        assert_eq!(run_str(&["gpcube", "normalize", "s"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["gpcube", "bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn certificate_envelope() {
        let g = parse_graph("s:inf").unwrap();
        let c = certificate(&g, 2, 10_000, Which::Kernel).unwrap();
        assert!(c.pass);
        assert_eq!(c.graph_hash, g.fingerprint_hex());
        assert_eq!(c.version, env!("CARGO_PKG_VERSION"));
        assert!(!c.truncation_notes.is_empty());
    }
}
