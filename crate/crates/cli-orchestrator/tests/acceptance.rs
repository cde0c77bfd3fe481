//! One line per acceptance criterion, followed by the residuals behind it.
//! Exits nonzero when any criterion fails or overruns its time budget.

use std::time::{Duration, Instant};

use cli_orchestrator::suites::{self, Suite};

struct Criterion {
    number: u32,
    title: &'static str,
    budget: Option<Duration>,
    run: fn() -> Suite,
}

const SEED: u64 = 20_240_601;

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn main() {
    let criteria = [
        Criterion {
            number: 1,
            title: "elementary divisors, 1000 instances, m = 2..4",
            budget: secs(5),
            run: || suites::divisor_suite(SEED + 1, 1000),
        },
        Criterion {
            number: 2,
            title: "transformation equation, 200 systems, m, n <= 3",
            budget: secs(10),
            run: || suites::transformation_suite(SEED + 2, 200),
        },
        Criterion {
            number: 3,
            title: "Riemann-scheme shift and round trip, 200 systems",
            budget: None,
            run: || suites::scheme_suite(SEED + 3, 200),
        },
        Criterion {
            number: 4,
            title: "generating function H+, 100 instances",
            budget: secs(30),
            run: || suites::generating_suite(SEED + 4, 100),
        },
        Criterion {
            number: 5,
            title: "d-PV conjugacy, 50 parameter sets, 20 steps",
            budget: secs(20),
            run: || suites::dpv_suite(SEED + 5, 50, 20),
        },
        Criterion {
            number: 6,
            title: "d-P(A2*) conjugacy, 25 parameter sets, 10 steps",
            budget: secs(60),
            run: || suites::a2_suite(SEED + 6, 25, 10),
        },
        Criterion {
            number: 7,
            title: "Picard lattices (exact)",
            budget: secs(1),
            run: suites::lattice_suite,
        },
        Criterion {
            number: 8,
            title: "accessory dimension of both spectral types",
            budget: None,
            run: suites::dimension_suite,
        },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let suite = (c.run)();
        let elapsed = start.elapsed();
        let in_time = c.budget.is_none_or(|b| elapsed <= b);
        let ok = suite.passed() && in_time;
        let budget = c
            .budget
            .map_or(String::new(), |b| format!(", budget {} s", b.as_secs()));
        println!(
            "[{}] criterion {}: {} ({:.2} s{budget})",
            if ok { "PASS" } else { "FAIL" },
            c.number,
            c.title,
            elapsed.as_secs_f64()
        );
        for check in &suite.checks {
            println!("       {check}");
        }
        for note in &suite.notes {
            println!("       note: {note}");
        }
        failed += usize::from(!ok);
    }
    println!(
        "{} of {} criteria passed (seed base {SEED})",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
