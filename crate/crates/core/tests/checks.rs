use rack_collapse::checks::{registry, run_all, CheckOptions};

#[test]
fn every_registered_check_passes() {
    let results = run_all(&CheckOptions::default());
    assert!(results.len() >= 20);
    for r in &results {
        assert!(r.passed, "{}: {}", r.name, r.detail);
    }
    let names: Vec<_> = registry().iter().map(|c| c.name).collect();
    assert_eq!(names, results.iter().map(|r| r.name).collect::<Vec<_>>());
}
