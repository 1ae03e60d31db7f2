use cluster_lab::verify::{run_suite, to_junit, Report};

#[test]
fn reports_are_deterministic() {
    let a = serde_json::to_string(&run_suite("symmetry-ratio", None).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite("symmetry-ratio", None).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn report_json_round_trips() {
    let r = run_suite("d-exchangeability", Some("a2hat-counterexample")).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    assert!(r.ok);
    assert!(!r.suites[0].cases[0].witnesses.is_empty());
}

#[test]
fn junit_marks_unmet_cases() {
    let r = run_suite("classical-vs-f", Some("random")).unwrap();
    let xml = to_junit(&r);
    assert!(xml.contains("<failure"));
    let ok = to_junit(&run_suite("counterexamples", Some("ex418")).unwrap());
    assert!(!ok.contains("<failure"));
}
