//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to
//! see the report.

use charmass::checks::{criteria, Options};

#[test]
fn acceptance() {
    // the E7 enumeration takes seconds, not minutes, so it is always included
    let opts = Options { long: true };
    let outcomes: Vec<_> = criteria().iter().map(|c| c.run(&opts)).collect();
    println!();
    for o in &outcomes {
        println!("{}", o.line_timed());
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
