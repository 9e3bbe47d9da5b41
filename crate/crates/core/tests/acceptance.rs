//! Acceptance matrix: one PASS/FAIL line per criterion.
//!
//! Runs the suite once at 60 digits (criterion 9 reruns criteria 1 to 7 at
//! 100 digits) and exits nonzero if any criterion fails.

use std::process::ExitCode;

use atanforge_core::suite::{self, SuiteConfig, CRITERIA};
use atanforge_core::PrecisionContext;

fn main() -> ExitCode {
    let ctx = PrecisionContext::new(60).expect("60 digits");
    let report = suite::run(&SuiteConfig::new(ctx, 0));
    println!("acceptance suite at {} digits, seed {}, {:.1} s", report.digits, report.seed, report.elapsed_ms / 1e3);
    let mut all = true;
    for (criterion, title) in CRITERIA {
        let s = report.criterion(criterion);
        all &= s.passed;
        let mut line = format!(
            "criterion {criterion} {}: {} ({} checks, {} failing)",
            title,
            if s.passed { "PASS" } else { "FAIL" },
            s.checks,
            s.failures
        );
        let failing: Vec<&str> = report.failing().filter(|c| c.criterion == criterion).map(|c| c.key.as_str()).collect();
        if !failing.is_empty() {
            let shown: Vec<&str> = failing.iter().take(4).copied().collect();
            line += &format!(" first failing: {}", shown.join("; "));
        }
        println!("{line}");
    }
    for f in &report.findings {
        println!("finding {} ({}): {}", f.id, f.kind.as_str(), f.summary);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
