use harmonic_kernels::verify::{run_suite, summarize, GridConfig, GridGroup, Status};

#[test]
fn default_suite_passes() {
    let cases = GridConfig::default_suite().cases().unwrap();
    let start = std::time::Instant::now();
    let reports = run_suite(&cases);
    let elapsed = start.elapsed();
    let bad: Vec<_> = reports.iter().filter(|r| r.status != Status::Pass).collect();
    for r in &bad {
        eprintln!("{} {:?} lhs={} rhs={} rel={:e} {}", r.identity, r.params, r.lhs, r.rhs, r.rel_err, r.status);
    }
    let s = summarize(&reports);
    eprintln!("{} cases in {:?}: {:?}", reports.len(), elapsed, s);
    assert!(bad.is_empty());
}

#[test]
fn empty_grid_gives_no_reports() {
    let cases = GridConfig::default().cases().unwrap();
    assert!(run_suite(&cases).is_empty());
}

#[test]
fn cardinality_of_a_single_axis() {
    let config = GridConfig {
        groups: vec![GridGroup::new("lemma31", 1e-6)
            .axis("a", [1.0])
            .axis("b", [1.0])
            .axis("c", [2.0])
            .axis("mu", [0.5])
            .axis("x", [2.0, 3.0, 4.0])],
    };
    let reports = run_suite(&config.cases().unwrap());
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r.identity == "lemma31" && r.passed()));
}
