//! Runs every acceptance check and prints one line per check.
//!
//! Lines go straight to the stderr handle so they show up even when the
//! harness captures test output.

use std::io::Write;
use std::time::Instant;

use capfree::selftest;

#[test]
fn acceptance_checks() {
    let start = Instant::now();
    let reports = selftest::run_all();
    let mut err = std::io::stderr();
    for r in &reports {
        writeln!(
            err,
            "[{}] {:>2}. {} ({:.2} s): {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.title,
            r.seconds,
            r.detail
        )
        .unwrap();
    }
    let total = start.elapsed().as_secs_f64();
    writeln!(err, "total {total:.1} s").unwrap();
    assert_eq!(reports.len(), selftest::CHECKS);
    let failed: Vec<usize> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed checks: {failed:?}");
    assert!(total < 900.0, "suite took {total:.1} s");
}
