//! Acceptance suite: runs every library-level criterion at its stated
//! tolerance and prints one pass/fail line per criterion. The CLI contract
//! criterion has its own suite in the CLI crate.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use arconv::verify::{run_all, DEFAULT_SEED};

#[test]
fn acceptance_criteria() {
    let results = run_all(DEFAULT_SEED);
    let mut all_passed = true;
    for r in &results {
        println!("{}", r.line());
        all_passed &= r.passed;
    }
    assert!(all_passed, "at least one acceptance criterion failed");
}
