//! Runs every reproduction criterion on the bundled fixtures and prints one
//! PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use exrep::reproduce::{run_criterion, Fixtures, CRITERIA};

fn main() -> ExitCode {
    let fixtures = Fixtures::bundled();
    let mut failed = 0;
    for (id, location) in CRITERIA {
        let start = Instant::now();
        let outcome = run_criterion(id, &fixtures);
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {id}: {location} ({:.1}s)", start.elapsed().as_secs_f64());
        if !outcome.pass {
            failed += 1;
            for line in outcome.detail.iter().filter(|l| l.starts_with("MISMATCH")) {
                println!("    {line}");
            }
        }
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
