use wlab_verifier::{verify_all, verify_reduction, TrialReport, VerifyConfig, VerifyError};

fn run(name: &str, trials: usize, window: Option<u64>, seed: u64) -> TrialReport {
    let cfg = VerifyConfig { trials, window, seed, ..VerifyConfig::default() };
    let r = verify_reduction(name, &cfg).unwrap();
    println!("{}", r.summary());
    r
}

#[test]
fn product_passes_exhaustively_at_window_12() {
    let r = run("lemma3.6-product", 50, Some(12), 1);
    assert!(r.pass(), "{:?}", r.failures);
    assert_eq!(r.coverage.sampled_trials, 0);
    assert!(r.passed > 0);
}

#[test]
fn stability_preserving_constructions_pass_at_windows_12_to_16() {
    for name in ["thm3.18-plus", "thm3.21-delayed-parallelization", "prop4.1-jump", "thm4.3-grow"] {
        for w in 12..=16 {
            let r = run(name, 20, Some(w), w);
            assert!(r.pass(), "{name} at {w}: {:?}", r.failures.first().map(|f| &f.verdict));
            assert!(r.inconclusive_fraction() <= 0.2, "{name} at {w}");
            assert_eq!(r.stability_confirmed, r.stability_checked, "{name} at {w}");
        }
    }
}

#[test]
fn remaining_reductions_pass() {
    for name in ["thm3.2-lower-bound", "prop4.14-transport", "thm5.6-kl-plus", "prop5.9-ivt", "prop7.1-min"] {
        let r = run(name, 30, None, 5);
        assert!(r.pass(), "{name}: {:?}", r.failures.first().map(|f| &f.verdict));
        assert!(r.passed > 0, "{name}");
    }
}

#[test]
fn corrupted_backward_maps_are_caught() {
    let cfg = VerifyConfig { trials: 10, seed: 2, corrupt: true, ..VerifyConfig::default() };
    for r in verify_all(&cfg).unwrap() {
        assert!(!r.pass(), "{} accepted corrupted solutions", r.reduction);
        let w = &r.failures[0];
        assert!(w.transported.is_some() && w.oracle_solution.is_some(), "{}", r.reduction);
    }
}

#[test]
fn reports_are_deterministic_and_serialisable() {
    let a = run("thm3.18-plus", 8, None, 42);
    let b = run("thm3.18-plus", 8, None, 42);
    assert_eq!(a, b);
    let json = serde_json::to_string(&a).unwrap();
    let back: TrialReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a);
}

#[test]
fn unknown_reduction_is_an_error() {
    assert!(matches!(
        verify_reduction("no-such", &VerifyConfig::default()),
        Err(VerifyError::UnknownReduction(_))
    ));
}
