use cpcohom::bound::{presentation_rank_bound, Minimality, PresentationBoundInput};
use cpcohom::verify::{run_suite, Filter, SuiteOptions, DEFAULT_SEED};

#[test]
fn heisenberg_presentation_bound() {
    let r = presentation_rank_bound(&PresentationBoundInput {
        generators: 2,
        relators: ["aa", "bb", "ABAbaaABab", "BBAbabABab"].map(String::from).to_vec(),
        commutator: None,
    })
    .unwrap();
    assert_eq!(r.group_order, Some(8));
    assert_eq!(r.minimality, Minimality::Verified);
    assert_eq!(r.bound, Some(0));
}

#[test]
fn suites_are_deterministic() {
    let opts = SuiteOptions {
        filter: Filter::parse("order<=8").unwrap(),
        seed: DEFAULT_SEED,
        jobs: 2,
    };
    let a = run_suite("comm-prob", &opts).unwrap();
    let b = run_suite("comm-prob", &SuiteOptions { jobs: 1, ..opts.clone() }).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(a.all_passed());
}

#[test]
fn filtered_small_suite() {
    let opts = SuiteOptions {
        filter: Filter::parse("pgroup").unwrap(),
        ..SuiteOptions::default()
    };
    let r = run_suite("cp-quarter", &opts).unwrap();
    assert!(r.total > 0);
    assert_eq!(r.failed, 0);
}
