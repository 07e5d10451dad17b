//! Runs every acceptance criterion and prints one line per criterion.

use metricid::acceptance;

#[test]
fn acceptance_suite() {
    let outcomes = acceptance::run_all();
    for outcome in &outcomes {
        println!("{}", outcome.line());
    }
    assert_eq!(outcomes.len(), 9);
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
