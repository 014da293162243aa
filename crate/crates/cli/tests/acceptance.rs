//! Acceptance criteria. Prints one line per criterion and exits nonzero if
//! any fails. Trial counts and time limits are fixed here; timings are wall
//! clock on the test profile.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use zerocen::pi::{auto_quotient_check, auto_zero_level_check, PiLimits};
use zerocen::structured::BlockProfile;
use zerocen::verify::{run_suite, Suite, SuiteReport, VerifyConfig};
use zerocen::{Error, FieldSpec};

struct Outcome {
    ok: bool,
    summary: String,
}

fn suite_criterion(suite: Suite, expected_trials: usize, limit: Duration) -> (Outcome, Duration) {
    let start = Instant::now();
    let r: SuiteReport = run_suite(suite, &VerifyConfig::default());
    let elapsed = start.elapsed();
    let ok = r.failed == 0 && r.skipped == 0 && r.trials == expected_trials && elapsed <= limit;
    let mut summary = format!("{}/{} trials passed, {} failed", r.passed, expected_trials, r.failed);
    if let Some(o) = &r.observed {
        summary.push_str(&format!("; {}: {}", o.what, o.count));
    }
    for f in r.failures.iter().take(3) {
        summary.push_str(&format!("; trial {} [{}]: {}", f.trial, f.cell, f.detail));
    }
    (Outcome { ok, summary }, elapsed)
}

fn pi_criterion() -> Outcome {
    let limits = PiLimits::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for k in [vec![1, 1], vec![2, 1], vec![2, 2], vec![3, 1], vec![3, 2, 1]] {
        let p = BlockProfile::new(FieldSpec::Prime(2), k).unwrap();
        let a = p.canonical_nilpotent();
        let zero = auto_zero_level_check(&a, limits);
        let quotient = auto_quotient_check(&a, limits);
        let zero_ok = matches!(&zero, Ok(r) if r.holds() && r.factors.len() == p.n());
        // n = 1 has no quotient statement; the check must refuse it
        let quotient_ok = match (&quotient, p.n()) {
            (Err(Error::IllPosed(_)), 1) => true,
            (Ok(r), n) => r.holds() && r.factors.len() == n - 1,
            _ => false,
        };
        ok &= zero_ok && quotient_ok;
        let label = |r: &zerocen::Result<zerocen::pi::PiReport>| match r {
            Ok(r) => format!("{}x{}", r.factors.len(), r.factors.first().map_or("-", String::as_str)),
            Err(e) => e.to_string().split(':').next().unwrap_or("").to_string(),
        };
        parts.push(format!("{p} zero {} quotient {}", label(&zero), label(&quotient)));
    }
    Outcome { ok, summary: parts.join("; ") }
}

fn determinism_criterion() -> Outcome {
    let run = || Command::new(env!("CARGO_BIN_EXE_zerocen")).args(["verify", "--seed", "7", "--json"]).output();
    match (run(), run()) {
        (Ok(a), Ok(b)) => {
            let same = a.stdout == b.stdout;
            let ok = same && a.status.success() && b.status.success() && !a.stdout.is_empty();
            Outcome { ok, summary: format!("{} bytes, identical: {same}, exit {:?}", a.stdout.len(), a.status.code()) }
        }
        (Err(e), _) | (_, Err(e)) => Outcome { ok: false, summary: format!("could not run the binary: {e}") },
    }
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut report = |n: usize, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let mut out = f();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            out.ok &= elapsed <= limit;
        }
        all_ok &= out.ok;
        let time = match limit {
            Some(l) => format!("{:.1}s of {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.1}s", elapsed.as_secs_f64()),
        };
        println!("{} {n}. {name} ({time}): {}", if out.ok { "PASS" } else { "FAIL" }, out.summary);
    };
    let secs = Duration::from_secs;
    let suites = [
        (1, "dimension formula", Suite::DimFormula, 6 * 3 * 500 + 6 * 50, 30),
        (2, "Jordan bases", Suite::Jordan, 6 * 200, 20),
        (3, "Fitting decomposition", Suite::Fitting, 6 * 200, 20),
        (4, "double zero-level centralizers", Suite::Contain, 5 * 500 + 100, 60),
        // 29 profiles with total <= 6, two fields, one span check and 100 samples each
        (5, "Λ structure", Suite::Lambda, 29 * 2 * 101, 60),
        (6, "nilpotency containments", Suite::Nilpotency, 29 * 100, 10),
        (7, "quotient projections", Suite::Quotient, 29 * 2 * 101, 10),
    ];
    for (n, name, suite, trials, limit) in suites {
        report(n, name, Some(secs(limit)), &mut || suite_criterion(suite, trials, secs(limit)).0);
    }
    report(8, "product identities", Some(secs(120)), &mut pi_criterion);
    report(9, "determinism of verify --seed 7", None, &mut determinism_criterion);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
