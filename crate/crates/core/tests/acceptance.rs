//! Acceptance run: one PASS/FAIL line per criterion, with wall-clock
//! budgets. Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fts_core::exact::{PrimeField, RationalField};
use fts_core::groups::{lie_dim, ConstraintMode, LieTarget};
use fts_core::report::Report;
use fts_core::suites::{lie_line, run_all, Suite, SuiteConfig};

const PRIMES: [u64; 2] = [1_000_003, 1_000_000_007];

struct Outcome {
    id: usize,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn failing_lines(rep: &Report) -> String {
    rep.checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("[{}] {}: {}", c.anchor, c.name, c.detail))
        .collect::<Vec<_>>()
        .join("; ")
}

fn timed_suite(
    id: usize,
    title: &'static str,
    suites: &[Suite],
    cfg: &SuiteConfig,
    budget: Option<u64>,
    sink: &mut Report,
) -> Outcome {
    let start = Instant::now();
    let mut rep = Report::default();
    for s in suites {
        rep.absorb(s.run(RationalField, cfg));
    }
    let took = start.elapsed();
    let in_budget = budget.is_none_or(|b| took <= Duration::from_secs(b));
    let mut detail = format!("{} checks in {}", rep.checks.len(), secs(took));
    if let Some(b) = budget {
        detail.push_str(&format!(" (budget {b}s)"));
    }
    if !rep.passed() {
        detail.push_str(&format!("; failing: {}", failing_lines(&rep)));
    }
    if !in_budget {
        detail.push_str("; over budget");
    }
    let passed = rep.passed() && in_budget;
    sink.absorb(rep);
    Outcome { id, title, passed, detail }
}

fn lie_certificates() -> Outcome {
    let mut rep = Report::default();
    let mut slow = Vec::new();
    let mut disagree = Vec::new();
    let mut dims = Vec::new();
    let mut slowest = Duration::ZERO;
    for t in LieTarget::ALL {
        let mut per_prime = Vec::new();
        for p in PRIMES {
            let start = Instant::now();
            let field = PrimeField::new(p).expect("prime");
            match lie_dim(t, field, ConstraintMode::Random, 0) {
                Ok(cert) => {
                    lie_line(&mut rep, &cert);
                    per_prime.push(cert.dim);
                }
                Err(e) => rep.push("lie-dimension", format!("{t} over prime:{p}"), false, e.to_string()),
            }
            let took = start.elapsed();
            slowest = slowest.max(took);
            if took > Duration::from_secs(600) {
                slow.push(format!("{t}@{p} {}", secs(took)));
            }
        }
        if per_prime.len() != PRIMES.len() || per_prime.windows(2).any(|w| w[0] != w[1]) {
            disagree.push(t.to_string());
        }
        dims.push(format!("{t}={}", per_prime.first().map_or("?".into(), |d| d.to_string())));
    }
    let passed = rep.passed() && slow.is_empty() && disagree.is_empty();
    let mut detail = format!(
        "{} at primes {} and {}; slowest certificate {} (budget 600s)",
        dims.join(" "),
        PRIMES[0],
        PRIMES[1],
        secs(slowest)
    );
    if !rep.passed() {
        detail.push_str(&format!("; failing: {}", failing_lines(&rep)));
    }
    if !slow.is_empty() {
        detail.push_str(&format!("; over 600s: {}", slow.join(", ")));
    }
    if !disagree.is_empty() {
        detail.push_str(&format!("; primes disagree on {}", disagree.join(", ")));
    }
    Outcome { id: 7, title: "Lie-dimension certificates", passed, detail }
}

fn isotopy_moves(rep: &Report) -> String {
    rep.checks
        .iter()
        .find(|c| c.anchor == "unit-sphere" && c.name.contains("move the unit"))
        .map_or_else(String::new, |c| format!("; moved units {}", c.detail))
}

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !filters.is_empty() && !filters.iter().any(|f| "acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }

    let cfg = SuiteConfig::default();
    let mut first = Report::default();
    let mut outcomes = vec![
        timed_suite(1, "identity suite", &[Suite::Identities], &cfg, Some(60), &mut first),
        timed_suite(2, "FTS normalization", &[Suite::FtsNormalization], &cfg, Some(60), &mut first),
        timed_suite(3, "duality cross-oracle", &[Suite::Duality], &cfg, None, &mut first),
        timed_suite(4, "normalization gap", &[Suite::NormalizationGap], &cfg, None, &mut first),
    ];
    if let Some(c) = first.checks.iter().find(|c| c.anchor == "unit-triple") {
        outcomes.last_mut().expect("pushed").detail.push_str(&format!("; {}: {}", c.name, c.detail));
    }
    outcomes.push(timed_suite(5, "group membership", &[Suite::Membership], &cfg, Some(120), &mut first));
    outcomes.push(timed_suite(6, "reconstruction", &[Suite::Reconstruction], &cfg, None, &mut first));
    outcomes.push(lie_certificates());
    let mut iso = Report::default();
    let mut o8 = timed_suite(8, "isotopy", &[Suite::Isotopy], &cfg, Some(300), &mut iso);
    o8.detail.push_str(&isotopy_moves(&iso));
    first.absorb(iso);
    outcomes.push(o8);
    outcomes.push(timed_suite(9, "U_1 spectrum", &[Suite::Spectrum], &cfg, None, &mut first));

    let start = Instant::now();
    let again = run_all(RationalField, &cfg);
    let lie_twice: Vec<String> = (0..2)
        .map(|_| {
            let mut r = Report::default();
            let cert = lie_dim(LieTarget::AutAlbert, PrimeField::new(PRIMES[0]).expect("prime"), ConstraintMode::Random, 0)
                .expect("certificate");
            lie_line(&mut r, &cert);
            r.to_string()
        })
        .collect();
    let same = again.to_string() == run_all_text(&first) && lie_twice[0] == lie_twice[1];
    outcomes.push(Outcome {
        id: 10,
        title: "determinism",
        passed: same,
        detail: format!(
            "{} suite lines and one certificate compared byte for byte in {}",
            again.checks.len(),
            secs(start.elapsed())
        ),
    });

    let mut all = true;
    for o in &outcomes {
        all &= o.passed;
        println!("{} criterion {:>2} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.title, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run_all_text(rep: &Report) -> String {
    let mut r = Report::new(format!("verify mode=rational seed={}", SuiteConfig::default().seed));
    r.checks = rep.checks.clone();
    r.to_string()
}
