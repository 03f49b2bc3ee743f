use std::process::ExitCode;
use std::time::Instant;

use chowtwist::verify::{self, Battery};

struct Criterion {
    number: u32,
    title: &'static str,
    budget_secs: u64,
    run: fn() -> Vec<Battery>,
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { number: 1, title: "cyclic closed form vs oracle, m <= 12", budget_secs: 30, run: || vec![verify::cyclic_battery(1..=12)] },
        Criterion { number: 2, title: "Q8 exponent gap", budget_secs: 60, run: || vec![verify::quaternion_battery()] },
        Criterion { number: 3, title: "Klein closed forms", budget_secs: 60, run: || vec![verify::klein_battery(1..=5)] },
        Criterion { number: 4, title: "counterexample dimensions", budget_secs: 120, run: || vec![verify::counterexample_battery(2..=6)] },
        Criterion { number: 5, title: "counterexample lattices", budget_secs: 30, run: || vec![verify::lattice_battery(2..=6)] },
        Criterion { number: 6, title: "regularity", budget_secs: 10, run: || vec![verify::regularity_battery(2..=8)] },
        Criterion {
            number: 7,
            title: "property suites",
            budget_secs: 120,
            run: || {
                vec![
                    verify::cor_res_battery(),
                    verify::double_coset_battery(),
                    verify::coflasque_battery(50),
                    verify::periodicity_battery(),
                    verify::coboundary_battery(),
                ]
            },
        },
    ]
}

fn main() -> ExitCode {
    let mut all_pass = true;
    for c in criteria() {
        let start = Instant::now();
        let batteries = (c.run)();
        let elapsed = start.elapsed();
        let checks: usize = batteries.iter().map(|b| b.checks.len()).sum();
        let pass = batteries.iter().all(Battery::pass);
        for b in &batteries {
            for f in b.failures() {
                println!("  [{}] {}: expected {}, computed {}", b.name, f.case, f.expected, f.computed);
            }
        }
        let slow = if elapsed.as_secs() > c.budget_secs { " (over budget)" } else { "" };
        println!(
            "criterion {}: {} - {} ({checks} checks, {:.1}s of {}s{slow})",
            c.number,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_secs_f64(),
            c.budget_secs
        );
        all_pass &= pass;
    }
    println!(
        "criterion 8: EXCLUDED - statements about general varieties, étale cycle maps and framed spectra \
         are outside what can be computed here; criterion 7 covers the structural identities instead"
    );
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
