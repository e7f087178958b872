use semistable_audit::galmod::{run_scenario, Branch, Marker, ScenarioOptions};
use semistable_audit::verdict::Status;

#[test]
fn toric_six_reaches_weil_contradiction() {
    for d in 1..=3 {
        let t = run_scenario(6, Branch::Toric, d, &ScenarioOptions::default()).unwrap();
        assert!(t.concluded(), "{t:#?}");
        assert_eq!(t.marker, Some(Marker::Weil));
        assert_eq!(t.final_state.primes[&3].stage, 3);
        let last = t.steps.last().unwrap();
        // 5^a vs (1 + √7)^b with a/b = 1: 5 − 1 = 4, 4² = 16 > 7
        assert_eq!(last.result["lhs"].as_str().map(str::to_string), Some("16".into()), "{last:?}");
    }
}

#[test]
fn toric_ten_reaches_weil_contradiction() {
    let t = run_scenario(10, Branch::Toric, 2, &ScenarioOptions::default()).unwrap();
    assert!(t.concluded(), "{t:#?}");
    assert_eq!(t.marker, Some(Marker::Weil));
    assert!(t.steps.iter().any(|s| s.claim.contains("t_2 = t_5") && s.status == Status::Pass));
}

#[test]
fn mixed_branches_reach_bounded_points() {
    for n in [6, 10] {
        let opts = ScenarioOptions { mixed_abelian_rank: 1, ..Default::default() };
        let t = run_scenario(n, Branch::Mixed, 2, &opts).unwrap();
        assert!(t.concluded(), "{t:#?}");
        assert_eq!(t.marker, Some(Marker::BoundedPoints));
        let dims: Vec<u64> = t
            .steps
            .iter()
            .find_map(|s| s.result.get("dims"))
            .unwrap()
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect();
        assert!(dims.windows(2).all(|w| w[1] > w[0]));
    }
}

#[test]
fn traces_are_deterministic_and_serialize() {
    let o = ScenarioOptions::default();
    let a = serde_json::to_string(&run_scenario(6, Branch::Toric, 2, &o).unwrap()).unwrap();
    let b = serde_json::to_string(&run_scenario(6, Branch::Toric, 2, &o).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"WEIL\""));
}

#[test]
fn invalid_inputs_rejected() {
    let o = ScenarioOptions::default();
    assert!(run_scenario(7, Branch::Toric, 1, &o).is_err());
    assert!(run_scenario(6, Branch::Toric, 0, &o).is_err());
    let bad = ScenarioOptions { mixed_abelian_rank: 3, ..Default::default() };
    assert!(run_scenario(6, Branch::Mixed, 2, &bad).is_err());
}

#[test]
fn weil_not_violated_at_large_good_prime() {
    // 3 − 1 = 2 and 2² = 4 < 13: no contradiction
    let o = ScenarioOptions { good_prime: Some(13), ..Default::default() };
    let t = run_scenario(10, Branch::Toric, 1, &o).unwrap();
    assert_eq!(t.marker, None);
    assert!(!t.concluded());
}
