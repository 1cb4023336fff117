use scrollcoh::verify::{run_suite, Scope, SUITES};

#[test]
fn every_suite_passes_on_the_default_family() {
    let scope = Scope::default();
    let mut failed = Vec::new();
    for suite in SUITES {
        for r in run_suite(suite, &scope).unwrap() {
            println!(
                "{:<16} {:<36} {} {}",
                r.suite,
                r.label,
                if r.passed { "ok" } else { "FAIL" },
                r.detail
            );
            if !r.passed {
                failed.push(format!("{}/{}: {}", r.suite, r.label, r.detail));
            }
        }
    }
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn all_is_the_union_of_suites() {
    let scope = Scope {
        radius: 1,
        bound: 1,
        ..Scope::default()
    };
    let all = run_suite("all", &scope).unwrap();
    let per: usize = SUITES.iter().map(|s| run_suite(s, &scope).unwrap().len()).sum();
    assert_eq!(all.len(), per);
}
