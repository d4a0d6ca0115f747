mod common;

use proptest::prelude::*;
use toric_git::quasimap::{
    check_binary_forms, check_twisted_conic, epsilon_ample_equivalent, is_stable_quasimap, ConicAmbient, DivisorConfig,
    FormsMode, TwistedCurveGraph, Vertex, L_DM, L_X,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph_json_roundtrip(seed in any::<u64>()) {
        let g = common::random_graph(&mut common::rng(seed), 5);
        let text = serde_json::to_string(&g).unwrap();
        let back: TwistedCurveGraph = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn predicates_agree_and_violations_name_vertices(seed in any::<u64>()) {
        let g = common::random_graph(&mut common::rng(seed), 5);
        let verdict = is_stable_quasimap(&g);
        prop_assert_eq!(verdict.stable, epsilon_ample_equivalent(&g).unwrap());
        prop_assert_eq!(verdict.stable, verdict.violations.is_empty());
        prop_assert!(verdict.violations.iter().all(|v| v.vertex < g.vertices().len()));
    }

    #[test]
    fn dm_forms_are_semistable(mults in prop::collection::vec(1u32..=4, 1..=6)) {
        let total: u32 = mults.iter().sum();
        prop_assume!(total.is_multiple_of(2));
        let n = total / 2;
        let ss = check_binary_forms(&mults, n, FormsMode::Semistable).unwrap();
        let dm = check_binary_forms(&mults, n, FormsMode::StableDm).unwrap();
        prop_assert!(!dm || ss);
        // a smooth conic is P^1 with the same divisor
        let conic = check_twisted_conic(&DivisorConfig { ambient: ConicAmbient::SmoothP1, components: vec![mults.clone()], n }).unwrap();
        prop_assert_eq!((conic.valid, conic.dm), (ss, dm));
    }
}

#[test]
fn contracted_rational_tail_needs_l_degree() {
    let bundles = vec![L_X.to_string(), L_DM.to_string()];
    let q = |p| common::q(p, 1);
    // a rational vertex with one edge-end and one leg has log-canonical degree 0
    let mk = |in_dm: bool, l: i64| {
        TwistedCurveGraph::new(
            vec![
                Vertex::new(0, true).with_degree(L_X, q(1)),
                Vertex::new(0, in_dm).with_degree(L_X, q(0)).with_degree(L_DM, q(l)),
            ],
            vec![toric_git::quasimap::Edge { endpoints: (0, 1), index: 1 }],
            vec![toric_git::quasimap::Leg { vertex: 1, index: 1 }],
            bundles.clone(),
        )
        .unwrap()
    };
    assert!(!is_stable_quasimap(&mk(true, 0)).stable);
    assert!(is_stable_quasimap(&mk(true, 1)).stable);
    assert!(is_stable_quasimap(&mk(false, 1)).stable);
}

#[test]
fn untracked_l_counts_as_degree_zero() {
    let g = TwistedCurveGraph::new(vec![Vertex::new(0, true)], vec![], vec![], vec![L_X.to_string()]).unwrap();
    assert!(!is_stable_quasimap(&g).stable);
    assert!(epsilon_ample_equivalent(&g).is_err());
}
