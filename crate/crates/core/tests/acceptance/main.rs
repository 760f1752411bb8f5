//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use gfe_core::verify::{run_criterion, Level, CRITERIA};

fn main() -> ExitCode {
    let mut failed = 0;
    for (id, _, _) in CRITERIA {
        let r = run_criterion(id, Level::Full);
        let mark = if r.passed { "PASS" } else { "FAIL" };
        println!("[{mark}] criterion {:>2} {} ({:.2}s): {}", r.id, r.name, r.seconds, r.detail);
        failed += usize::from(!r.passed);
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
