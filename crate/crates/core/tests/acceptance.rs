//! One line per acceptance criterion, each backed by the suite the CLI runs.

use std::time::{Duration, Instant};

use twocat::suite::{run_suite, SuiteConfig};
use twocat::{Report, Verdict};

struct Outcome {
    name: &'static str,
    ok: bool,
    detail: String,
}

fn run(name: &str, cfg: &SuiteConfig) -> (Report, Duration) {
    let start = Instant::now();
    let report = run_suite(name, cfg).unwrap_or_else(|e| panic!("suite {name}: {e}"));
    (report, start.elapsed())
}

/// Every check whose id matches passes (inconclusive counts as a failure
/// here), and at least `min` checks matched.
fn criterion(
    name: &'static str,
    report: &Report,
    min: usize,
    select: impl Fn(&str) -> bool,
) -> Outcome {
    let picked: Vec<_> = report.checks.iter().filter(|c| select(&c.id)).collect();
    let bad: Vec<String> = picked
        .iter()
        .filter(|c| c.verdict != Verdict::Pass)
        .map(|c| format!("{} {}", c.id, c.witness.as_deref().unwrap_or("")))
        .collect();
    let ok = bad.is_empty() && picked.len() >= min;
    let detail = if ok { format!("{} checks", picked.len()) } else { format!("{} checks; {}", picked.len(), bad.join("; ")) };
    Outcome { name, ok, detail }
}

fn within(outcome: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    let ok = outcome.ok && elapsed < limit;
    Outcome { ok, detail: format!("{} in {:.1}s", outcome.detail, elapsed.as_secs_f64()), ..outcome }
}

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let mut out = Vec::new();

    let (comma, t) = run("comma", &cfg);
    out.push(within(criterion("1 comma universal properties", &comma, 170, |_| true), t, Duration::from_secs(60)));

    let (fib, _) = run("fib", &cfg);
    out.push(criterion("2 chevalley equivalence", &fib, 32, |id| id.starts_with("chevalley")));
    out.push(criterion("3 two-sided discrete fibrations", &fib, 70, |id| {
        id.starts_with("two-sided") || id.starts_with("closure")
    }));

    let (span, _) = run("span", &cfg);
    out.push(criterion("4 grothendieck round trip", &span, 20, |_| true));

    let (kan, _) = run("kan", &cfg);
    out.push(criterion("5 lawvere formula", &kan, 90, |id| id.starts_with("lawvere")));

    let (yoneda, _) = run("yoneda-axioms", &cfg);
    out.push(criterion("6 yoneda axioms at lambda 2", &yoneda, 100, |id| {
        id.starts_with("axioms/") || id.starts_with("lan-res-ran")
    }));
    out.push(criterion("7 weighted colimits and col-rec", &yoneda, 10, |id| {
        id.starts_with("cocomplete") || id.starts_with("yoneda-wcolim")
    }));

    let (omega, _) = run("omega", &cfg);
    out.push(criterion("8 subobject classifier", &omega, 40, |id| {
        id == "internal-poset" || id.starts_with("cosieve/")
    }));
    let mut nine = criterion("9 cartesian closed at lambda 2", &omega, 5, |id| {
        id.starts_with("terminal-adjoint") || id.starts_with("product-classifier") || id.starts_with("exponential")
            || id == "implication-table"
    });
    let (omega3, _) = run("omega", &SuiteConfig { lambda: 3, ..SuiteConfig::default() });
    let witness = omega3.checks.iter().find(|c| c.id == "product-classifier").and_then(|c| {
        (c.verdict == Verdict::Fail).then(|| c.witness.clone()).flatten()
    });
    if witness.as_deref() != Some("(2,2)") {
        nine.ok = false;
        nine.detail = format!("{}; lambda 3 product witness {witness:?}", nine.detail);
    }
    out.push(nine);

    let (glob, t) = run("glob", &cfg);
    out.push(within(criterion("10 globular suite", &glob, 100, |_| true), t, Duration::from_secs(300)));

    out.push(criterion("negative: no initial non-empty set", &kan, 1, |id| id == "negative/no-initial"));
    out.push(criterion("negative: terminal not admissible", &omega, 1, |id| id == "negative/terminal-not-admissible"));

    for o in &out {
        println!("{} {}: {}", if o.ok { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    let failed: Vec<&str> = out.iter().filter(|o| !o.ok).map(|o| o.name).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
