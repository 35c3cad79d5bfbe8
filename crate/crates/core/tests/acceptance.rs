//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use spinor_forge::exceptional::{
    build, e7_identity_violations, killing_form, root_decomposition, spanning_check, to_json, verify_jacobi,
    verify_jacobi_touching, AlgebraName, BuildOptions, LieAlgebra,
};
use spinor_forge::props::{matrix_entry_agreement, run_props, Suite};
use spinor_forge::{Config, Execution, Field};

const DIM_BUDGET: Duration = Duration::from_secs(1);
const E8_JACOBI_BUDGET: Duration = Duration::from_secs(60);
const KILLING_BUDGET: Duration = Duration::from_secs(300);
const PRIME: u64 = 7;
const EXHAUSTIVE_MATRIX_N: usize = 5;
const SAMPLED_TRIPLES: usize = 10_000;
const MUTATIONS: usize = 100;
const MUTATION_SEED: u64 = 0xE8;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn alg(name: AlgebraName, field: Field) -> LieAlgebra {
    build(name, &BuildOptions::over(field)).expect("construction succeeds")
}

fn c1_dimensions() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in [AlgebraName::E8, AlgebraName::E7, AlgebraName::E6] {
        let t = Instant::now();
        let a = alg(name, Field::Rational);
        let took = t.elapsed();
        ok &= a.dim() == name.dim() && took < DIM_BUDGET;
        parts.push(format!("{name}={} in {took:.2?}", a.dim()));
    }
    outcome(ok, parts.join(", "))
}

fn c2_jacobi() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for field in [Field::Rational, Field::Prime(PRIME)] {
        for name in [AlgebraName::E8, AlgebraName::E7, AlgebraName::E6] {
            let a = alg(name, field);
            let t = Instant::now();
            let r = verify_jacobi(&a, Execution::Sequential);
            let took = t.elapsed();
            ok &= r.passed() && r.triples > 0;
            if name == AlgebraName::E8 {
                ok &= took <= E8_JACOBI_BUDGET;
            }
            parts.push(format!("{name}/{field}: {} triples, {} violations, {took:.2?}", r.triples, r.violations));
        }
    }
    outcome(ok, parts.join("; "))
}

fn c3_spanning() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, expected) in [(AlgebraName::E8, 120), (AlgebraName::E7, 69), (AlgebraName::E6, 46)] {
        let r = spanning_check(&alg(name, Field::Rational));
        ok &= r.rank == expected;
        parts.push(format!("{name} rank {} (expected {expected})", r.rank));
    }
    outcome(ok, parts.join(", "))
}

fn c4_killing() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in [AlgebraName::E8, AlgebraName::E7, AlgebraName::E6] {
        let a = alg(name, Field::Rational);
        let t = Instant::now();
        let k = killing_form(&a, Execution::Sequential);
        let took = t.elapsed();
        ok &= k.rank == a.dim() && took <= KILLING_BUDGET;
        parts.push(format!("{name} rank {}/{} in {took:.2?}", k.rank, a.dim()));
    }
    outcome(ok, parts.join(", "))
}

fn c5_roots() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, roots, rank, dynkin) in
        [(AlgebraName::E8, 240, 8, "E8"), (AlgebraName::E7, 126, 7, "E7"), (AlgebraName::E6, 72, 6, "E6")]
    {
        match root_decomposition(&alg(name, Field::Rational)) {
            Ok(r) => {
                ok &= r.root_count() == roots && r.rank() == rank && r.dynkin == dynkin;
                parts.push(format!("{name}: {} roots, rank {}, type {}", r.root_count(), r.rank(), r.dynkin));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn c6_propositions() -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    for n in 1..=8 {
        let report = run_props(n, Field::Rational, &Suite::ALL, Execution::Parallel).expect("valid n");
        checks += report.checks.len();
        for c in report.failures() {
            failures.push(format!("n={n} {}/{} ({})", c.suite, c.name, c.detail));
        }
    }
    let detail = if failures.is_empty() {
        format!("{checks} checks over n=1..8")
    } else {
        format!("{} of {checks} checks failed: {}", failures.len(), failures.join("; "))
    };
    outcome(failures.is_empty(), detail)
}

fn c7_matrix_entries() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=EXHAUSTIVE_MATRIX_N {
        let (cases, bad) = matrix_entry_agreement(Config::rational(n).unwrap(), None, Execution::Parallel).unwrap();
        ok &= bad == 0 && cases == 1u64 << (3 * n);
        parts.push(format!("n={n}: {cases} triples, {bad} mismatches"));
    }
    for n in [6, 8] {
        let cfg = Config::rational(n).unwrap();
        let (cases, bad) = matrix_entry_agreement(cfg, Some(SAMPLED_TRIPLES), Execution::Parallel).unwrap();
        ok &= bad == 0 && cases as usize >= SAMPLED_TRIPLES;
        parts.push(format!("n={n}: {cases} random triples, {bad} mismatches"));
    }
    outcome(ok, parts.join(", "))
}

fn c8_e7_identity() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for field in [Field::Rational, Field::Prime(PRIME)] {
        let (cases, bad) = e7_identity_violations(field).unwrap();
        ok &= bad == 0 && cases > 0;
        parts.push(format!("{field}: {cases} triples, {bad} violations"));
    }
    outcome(ok, parts.join(", "))
}

fn c9_mutations() -> Outcome {
    let base = alg(AlgebraName::E8, Field::Rational);
    let constants = base.nonzero_constants();
    let mut rng = StdRng::seed_from_u64(MUTATION_SEED);
    let mut undetected = Vec::new();
    let mut least = u64::MAX;
    for _ in 0..MUTATIONS {
        let (i, j, k) = constants[rng.gen_range(0..constants.len())];
        let mut m = base.clone();
        m.flip_sign(i, j, k).unwrap();
        let r = verify_jacobi_touching(&m, &[i, j], Execution::Parallel);
        least = least.min(r.violations);
        if r.passed() {
            undetected.push((i, j, k));
        }
    }
    outcome(
        undetected.is_empty(),
        format!("{MUTATIONS} mutations, {} undetected, fewest violations {least}", undetected.len()),
    )
}

fn export_once(dir: &Path, name: &str, tag: &str) -> Vec<u8> {
    let path = dir.join(format!("{name}-{tag}.json"));
    let status = Command::new(env!("CARGO_BIN_EXE_spinor-forge"))
        .args(["export", "--algebra", name, "--out"])
        .arg(&path)
        .output()
        .expect("binary runs")
        .status;
    assert!(status.success(), "export {name} exited with {status}");
    std::fs::read(path).expect("export written")
}

fn c10_export() -> Outcome {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let dir = std::env::temp_dir().join(format!("spinor-forge-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for name in [AlgebraName::E6, AlgebraName::E7, AlgebraName::E8] {
        let s = name.to_string();
        let first = export_once(&dir, &s, "a");
        let second = export_once(&dir, &s, "b");
        let expected = std::fs::read(golden.join(format!("{s}.json"))).unwrap_or_default();
        let in_process = to_json(&alg(name, Field::Rational)).into_bytes();
        let same = first == second;
        let matches = first == expected && in_process == expected;
        ok &= same && matches;
        parts.push(format!("{s}: {} bytes, identical={same}, golden={matches}", first.len()));
    }
    let _ = std::fs::remove_dir_all(&dir);
    outcome(ok, parts.join(", "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 dimensions", c1_dimensions),
        ("2 jacobi", c2_jacobi),
        ("3 spanning", c3_spanning),
        ("4 killing rank", c4_killing),
        ("5 root identification", c5_roots),
        ("6 proposition suites", c6_propositions),
        ("7 matrix entries", c7_matrix_entries),
        ("8 e7 identity", c8_e7_identity),
        ("9 mutation sensitivity", c9_mutations),
        ("10 export determinism", c10_export),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let o = run();
        if !o.passed {
            failed += 1;
        }
        println!("{} criterion {name} [{:.2?}]: {}", if o.passed { "PASS" } else { "FAIL" }, t.elapsed(), o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
