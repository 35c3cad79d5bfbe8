//! Command-line front end. Reports are JSON on stdout, summaries on stderr.
//!
//! Exit codes: 0 success, 1 verification failure or runtime error, 2 usage error.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::exceptional::{
    build, killing_form, root_decomposition, spanning_check, to_json, verify_jacobi, AlgebraName, BuildOptions,
    LieAlgebra,
};
use crate::field::Field;
use crate::fock::Parity;
use crate::parallel::{apply_thread_cap_from_env, Execution};
use crate::props::{run_props, PropsReport, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "spinor-forge", version, about = "Build and verify spinor constructions of e6, e7 and e8")]
pub struct Cli {
    /// Sweep execution strategy.
    #[arg(long, global = true, default_value = "parallel")]
    pub exec: Execution,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an algebra and check antisymmetry, Jacobi, spanning and the Killing rank.
    Verify(VerifyArgs),
    /// Verify an algebra, then write its structure constants as JSON.
    Export(ExportArgs),
    /// Run the proposition suites for one n.
    Props(PropsArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub algebra: AlgebraName,
    /// `q` or `fp:<p>` with p prime and p > 3.
    #[arg(long, default_value = "q")]
    pub field: Field,
    /// Half-spinor used for e8.
    #[arg(long, value_enum, default_value_t = Half::Even)]
    pub half: Half,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(long)]
    pub algebra: AlgebraName,
    #[arg(long, default_value = "q")]
    pub field: Field,
    #[arg(long, value_enum, default_value_t = Half::Even)]
    pub half: Half,
    /// Output file; the structure constants go to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PropsArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
    pub n: u8,
    /// Restrict to one or more suites; all suites run by default.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<Suite>,
    #[arg(long, default_value = "q")]
    pub field: Field,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Half {
    Even,
    Odd,
}

impl From<Half> for Parity {
    fn from(h: Half) -> Parity {
        match h {
            Half::Even => Parity::Even,
            Half::Odd => Parity::Odd,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Err(msg) = apply_thread_cap_from_env() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    run(&cli)
}

pub fn run(cli: &Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Verify(a) => cmd_verify(a, cli.exec),
        Command::Export(a) => cmd_export(a, cli.exec),
        Command::Props(a) => cmd_props(a, cli.exec),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_FAILED
        }
    }
}

fn options(field: Field, half: Half) -> BuildOptions {
    BuildOptions { e8_half: half.into(), ..BuildOptions::over(field) }
}

/// Runs every structural check on `alg` and returns the report and verdict.
pub fn verification_report(alg: &LieAlgebra, exec: Execution) -> (Value, bool) {
    let anti = alg.antisymmetry();
    let t = Instant::now();
    let jacobi = verify_jacobi(alg, exec);
    let jacobi_secs = t.elapsed().as_secs_f64();
    let span = spanning_check(alg);
    let t = Instant::now();
    let killing = killing_form(alg, exec);
    let killing_secs = t.elapsed().as_secs_f64();
    let killing_ok = killing.nondegenerate() && killing.is_symmetric();
    let mut passed = anti.passed() && jacobi.passed() && span.passed() && killing_ok;

    let roots = if alg.field() == Field::Rational {
        let name = alg.name();
        match root_decomposition(alg) {
            Ok(r) => {
                let ok = r.root_count() == name.root_count()
                    && r.rank() == name.rank()
                    && r.dynkin == name.to_string().to_uppercase();
                passed &= ok;
                json!({
                    "count": r.root_count(),
                    "rank": r.rank(),
                    "dynkin": r.dynkin,
                    "cartan_matrix": r.cartan_matrix,
                    "equal_lengths": r.equal_lengths,
                    "passed": ok,
                })
            }
            Err(e) => {
                passed = false;
                json!({"error": e.to_string(), "passed": false})
            }
        }
    } else {
        Value::Null
    };
    let constants: serde_json::Map<String, Value> =
        alg.constants().iter().map(|(k, v)| (k.clone(), Value::from(v.to_string()))).collect();
    let report = json!({
        "command": "verify",
        "algebra": alg.name().to_string(),
        "field": alg.field().to_string(),
        "dim": alg.dim(),
        "constants": constants,
        "antisymmetry": {"pairs": anti.pairs, "violations": anti.violations, "passed": anti.passed()},
        "jacobi": {
            "triples": jacobi.triples,
            "violations": jacobi.violations,
            "examples": jacobi.examples,
            "seconds": jacobi_secs,
            "passed": jacobi.passed(),
        },
        "spanning": {"rank": span.rank, "expected": span.expected, "pairs": span.pairs, "passed": span.passed()},
        "killing": {
            "rank": killing.rank,
            "dim": killing.dim(),
            "symmetric": killing.is_symmetric(),
            "seconds": killing_secs,
            "passed": killing_ok,
        },
        "roots": roots,
        "passed": passed,
    });
    (report, passed)
}

fn summarize(report: &Value) -> String {
    let mark = |v: &Value| if v["passed"] == true { "ok" } else { "FAILED" };
    let mut s = format!(
        "{} over {}: dim {}, antisymmetry {}, Jacobi {} ({} triples, {} violations), spanning rank {} {}, Killing rank {} {}",
        report["algebra"].as_str().unwrap_or("?"),
        report["field"].as_str().unwrap_or("?"),
        report["dim"],
        mark(&report["antisymmetry"]),
        mark(&report["jacobi"]),
        report["jacobi"]["triples"],
        report["jacobi"]["violations"],
        report["spanning"]["rank"],
        mark(&report["spanning"]),
        report["killing"]["rank"],
        mark(&report["killing"]),
    );
    if !report["roots"].is_null() {
        s.push_str(&format!(
            ", {} roots of type {} {}",
            report["roots"]["count"],
            report["roots"]["dynkin"].as_str().unwrap_or("?"),
            mark(&report["roots"])
        ));
    }
    s
}

fn cmd_verify(a: &VerifyArgs, exec: Execution) -> Result<bool, String> {
    let alg = build(a.algebra, &options(a.field, a.half)).map_err(|e| e.to_string())?;
    let (report, passed) = verification_report(&alg, exec);
    println!("{report}");
    eprintln!("{}", summarize(&report));
    Ok(passed)
}

fn cmd_export(a: &ExportArgs, exec: Execution) -> Result<bool, String> {
    let alg = build(a.algebra, &options(a.field, a.half)).map_err(|e| e.to_string())?;
    let (verification, passed) = verification_report(&alg, exec);
    eprintln!("{}", summarize(&verification));
    if !passed {
        println!("{verification}");
        eprintln!("not exporting: verification failed");
        return Ok(false);
    }
    let text = to_json(&alg);
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("writing {}: {e}", path.display()))?;
            let report = json!({
                "command": "export",
                "algebra": alg.name().to_string(),
                "field": alg.field().to_string(),
                "dim": alg.dim(),
                "brackets": alg.stored().count(),
                "bytes": text.len(),
                "path": path.display().to_string(),
                "passed": true,
            });
            println!("{report}");
            eprintln!("wrote {} ({} bytes)", path.display(), text.len());
        }
        None => print!("{text}"),
    }
    Ok(true)
}

pub fn props_report_json(report: &PropsReport, suites: &[Suite]) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "suite": c.suite.to_string(),
                "name": c.name,
                "anchor": c.anchor,
                "passed": c.passed,
                "cases": c.cases,
                "detail": c.detail,
            })
        })
        .collect();
    json!({
        "command": "props",
        "n": report.n,
        "field": report.field.to_string(),
        "suites": suites.iter().map(Suite::to_string).collect::<Vec<_>>(),
        "checks": checks,
        "passed": report.passed(),
    })
}

fn cmd_props(a: &PropsArgs, exec: Execution) -> Result<bool, String> {
    let mut suites = if a.suite.is_empty() { Suite::ALL.to_vec() } else { a.suite.clone() };
    suites.sort();
    suites.dedup();
    let report = run_props(a.n as usize, a.field, &suites, exec).map_err(|e| e.to_string())?;
    println!("{}", props_report_json(&report, &suites));
    for c in &report.checks {
        eprintln!("{} {}/{}: {}", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail);
    }
    Ok(report.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> i32 {
        main_with_args(std::iter::once("spinor-forge").chain(args.iter().copied()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(code(&["verify", "--algebra", "e6", "--field", "fp:7", "--exec", "seq"]), EXIT_OK);
        assert_eq!(code(&["props", "--n", "5"]), EXIT_OK);
        assert_eq!(code(&["props", "--n", "6", "--suite", "norms"]), EXIT_OK);
        assert_eq!(code(&["props", "--n", "3", "--suite", "cartan_ops"]), EXIT_FAILED);
        assert_eq!(code(&["verify", "--algebra", "e8", "--field", "fp:2"]), EXIT_USAGE);
        assert_eq!(code(&["export", "--algebra", "e9"]), EXIT_USAGE);
        assert_eq!(code(&["props", "--n", "0"]), EXIT_USAGE);
        assert_eq!(code(&["--help"]), EXIT_OK);
    }

    #[test]
    fn verification_report_fields() {
        let alg = build(AlgebraName::E6, &BuildOptions::default()).unwrap();
        let (r, passed) = verification_report(&alg, Execution::Sequential);
        assert!(passed);
        assert_eq!(r["dim"], 78);
        assert_eq!(r["roots"]["dynkin"], "E6");
        assert_eq!(r["constants"]["b"], "96/1");
        assert!(summarize(&r).starts_with("e6 over q: dim 78"));
    }

    #[test]
    fn corrupted_table_fails_verification() {
        let mut alg = build(AlgebraName::E6, &BuildOptions::default()).unwrap();
        let (i, j, k) = alg.nonzero_constants()[5];
        alg.flip_sign(i, j, k).unwrap();
        let (r, passed) = verification_report(&alg, Execution::Parallel);
        assert!(!passed);
        assert_eq!(r["jacobi"]["passed"], false);
    }
}
