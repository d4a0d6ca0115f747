mod common;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use toric_git::exec::{Exec, ScanOptions};
use toric_git::lattice::{dot, rank, smith_normal_form, IntMatrix};
use toric_git::torus::{
    all_supports, effectivize, is_semistable, is_stable, limit_cone, normalized_hm_min, semistable_supports,
    stabilizer, stable_supports, CharacterVector, FiniteElement, Sign, SignedSquare, Support, TorusAction,
};
use toric_git::GitError;

fn action_strategy(max_r: usize, max_n: usize, bound: i64) -> impl Strategy<Value = TorusAction> {
    (1..=max_r, 1..=max_n).prop_flat_map(move |(r, n)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, r), n)
            .prop_map(move |cols| TorusAction::from_columns(r, &cols).unwrap())
    })
}

fn action_and_character(max_r: usize, max_n: usize) -> impl Strategy<Value = (TorusAction, CharacterVector)> {
    action_strategy(max_r, max_n, 3).prop_flat_map(|a| {
        let r = a.rank();
        (Just(a), prop::collection::vec(-3i64..=3, r).prop_map(|v| CharacterVector::from_i64(&v)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn semistability_is_monotone_in_the_support((a, chi) in action_and_character(3, 5)) {
        let ss = semistable_supports(&a, &chi, &ScanOptions::default()).unwrap();
        for s in &ss {
            for j in 0..a.dim() {
                prop_assert!(ss.contains(&s.with(j)));
            }
        }
    }

    #[test]
    fn stable_implies_semistable((a, chi) in action_and_character(3, 5)) {
        let opts = ScanOptions::default();
        let ss = semistable_supports(&a, &chi, &opts).unwrap();
        for s in stable_supports(&a, &chi, &opts).unwrap() {
            prop_assert!(ss.contains(&s));
        }
    }

    #[test]
    fn positive_scaling_preserves_loci((a, chi) in action_and_character(3, 5), k in 1i64..5) {
        let opts = ScanOptions::default();
        let scaled = chi.scaled(&BigInt::from(k));
        prop_assert_eq!(semistable_supports(&a, &chi, &opts).unwrap(), semistable_supports(&a, &scaled, &opts).unwrap());
        prop_assert_eq!(stable_supports(&a, &chi, &opts).unwrap(), stable_supports(&a, &scaled, &opts).unwrap());
    }

    #[test]
    fn sequential_and_parallel_scans_agree((a, chi) in action_and_character(3, 6)) {
        let par = ScanOptions { exec: Exec::Parallel, ..ScanOptions::default() };
        prop_assert_eq!(
            semistable_supports(&a, &chi, &par).unwrap(),
            semistable_supports(&a, &chi, &ScanOptions::sequential()).unwrap()
        );
    }

    #[test]
    fn swap_symmetry_preserves_semistability(cols in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..=3),
                                             chi in prop::collection::vec(-3i64..=3, 2)) {
        // the same weights twice, exchanged by the finite part
        let n = cols.len();
        let doubled: Vec<Vec<i64>> = cols.iter().chain(cols.iter()).cloned().collect();
        let w = IntMatrix::from_columns(2, &doubled.iter().map(|c| toric_git::lattice::to_big(c)).collect::<Vec<_>>()).unwrap();
        let perm: Vec<usize> = (0..2 * n).map(|j| (j + n) % (2 * n)).collect();
        let g = FiniteElement { perm: perm.clone(), aut: IntMatrix::identity(2) };
        let a = TorusAction::with_extras(w, IntMatrix::identity(2), vec![g]).unwrap();
        let chi = CharacterVector::from_i64(&chi);
        for s in all_supports(2 * n) {
            prop_assert_eq!(is_semistable(&a, &chi, &s).unwrap(), is_semistable(&a, &chi, &s.image(&perm)).unwrap());
            prop_assert_eq!(is_stable(&a, &chi, &s).unwrap(), is_stable(&a, &chi, &s.image(&perm)).unwrap());
        }
    }

    #[test]
    fn normalized_minimum_sign_matches_verdicts((a, chi) in action_and_character(3, 4)) {
        for s in all_supports(a.dim()) {
            let ss = is_semistable(&a, &chi, &s).unwrap();
            let st = is_stable(&a, &chi, &s).unwrap();
            match normalized_hm_min(&a, &chi, &s) {
                Err(GitError::NoDestabilizer) => prop_assert!(st),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
                Ok(m) => match m.value.sign {
                    Sign::Negative => prop_assert!(!ss),
                    Sign::Zero => prop_assert!(ss && !st),
                    Sign::Positive => prop_assert!(st),
                },
            }
        }
    }

    #[test]
    fn normalized_minimum_bounds_sampled_cocharacters((a, chi) in action_and_character(2, 4)) {
        let c: Vec<BigInt> = chi.0.iter().map(|x| -x).collect();
        for s in all_supports(a.dim()) {
            let Ok(m) = normalized_hm_min(&a, &chi, &s) else { continue };
            let cone = limit_cone(&a, &s).unwrap();
            let lam = &m.minimizer.0;
            prop_assert!(cone.contains_int(lam) && lam.iter().any(|x| !x.is_zero()));
            prop_assert_eq!(&SignedSquare::from_ratio(&dot(&c, lam), &a.norm_squared(lam)), &m.value);
            for x in -4i64..=4 {
                for y in -4i64..=4 {
                    let v: Vec<BigInt> = [x, y][..a.rank()].iter().map(|&t| BigInt::from(t)).collect();
                    if v.iter().all(Zero::is_zero) || !cone.contains_int(&v) {
                        continue;
                    }
                    prop_assert!(m.value <= SignedSquare::from_ratio(&dot(&c, &v), &a.norm_squared(&v)));
                }
            }
        }
    }

    #[test]
    fn stabilizer_dimension_plus_rank_is_rank(a in action_strategy(3, 5, 3)) {
        for s in all_supports(a.dim()) {
            let g = stabilizer(&a, &s).unwrap();
            let ws = a.weights().select_columns(s.indices());
            prop_assert_eq!(g.dimension + rank(&ws), a.rank());
            let expected: Vec<BigInt> = common::invariant_factors_by_minors(&ws)
                .into_iter()
                .filter(|d| *d > BigInt::from(1))
                .collect();
            prop_assert_eq!(&g.invariant_factors, &expected);
        }
    }

    #[test]
    fn smith_factors_match_determinantal_divisors(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..=3)) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let snf = smith_normal_form(&m);
        let from_minors = common::invariant_factors_by_minors(&m);
        prop_assert_eq!(snf.rank(), from_minors.len());
        prop_assert_eq!(&snf.diag[..from_minors.len()], &from_minors[..]);
        // U M V = D
        let d = snf.left.mul(&m).unwrap().mul(&snf.right).unwrap();
        prop_assert_eq!(d, snf.diagonal_matrix(m.rows(), m.cols()));
    }

    #[test]
    fn effectivization_transfers_semistability(cols in prop::collection::vec(prop::collection::vec(-3i64..=3, 1), 1..=4),
                                               embed in prop::collection::vec(-2i64..=2, 3),
                                               chi in -3i64..=3) {
        // weights on a line in rank 3
        let e = toric_git::lattice::to_big(&embed);
        prop_assume!(e.iter().any(|x| !x.is_zero()));
        let big: Vec<Vec<i64>> = cols.iter().map(|c| embed.iter().map(|x| x * c[0]).collect()).collect();
        let a = TorusAction::from_columns(3, &big).unwrap();
        let eff = effectivize(&a).unwrap();
        let k = eff.action.rank();
        prop_assert_eq!(k + eff.kernel.len(), 3);
        let chi_q = CharacterVector::from_i64(&vec![chi; k]);
        let chi_orig = eff.pull_character(&chi_q);
        prop_assert_eq!(eff.push_character(&chi_orig).unwrap(), chi_q.clone());
        let opts = ScanOptions::default();
        prop_assert_eq!(semistable_supports(&a, &chi_orig, &opts).unwrap(), semistable_supports(&eff.action, &chi_q, &opts).unwrap());
        for s in all_supports(a.dim()) {
            prop_assert_eq!(
                stabilizer(&a, &s).unwrap().dimension,
                stabilizer(&eff.action, &s).unwrap().dimension + eff.kernel.len()
            );
        }
    }
}

#[test]
fn full_rank_effectivization_is_identity() {
    let a = TorusAction::from_columns(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
    let eff = effectivize(&a).unwrap();
    assert_eq!(eff.action, a);
    assert!(eff.kernel.is_empty());
}

#[test]
fn empty_support_is_semistable_only_for_trivial_character() {
    let a = TorusAction::from_columns(2, &[vec![1, 2]]).unwrap();
    let empty = Support::empty();
    assert!(is_semistable(&a, &CharacterVector::zero(2), &empty).unwrap());
    assert!(!is_semistable(&a, &CharacterVector::from_i64(&[0, 1]), &empty).unwrap());
}
