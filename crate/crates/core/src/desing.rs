//! Iterated extended blow-ups at the locus of maximal stabilizer dimension.
//!
//! Each step blows up the reduced coordinate subspace carrying the largest
//! stabilizers among the live (semistable) supports, then combines the
//! accumulated character with the Rees character `θ` using the least
//! admissible multiplier `m0`. The loop stops once every live support has a
//! finite stabilizer.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{GitError, Result};
use crate::exec::{self, ScanOptions};
use crate::rees::{
    extended_weighted_blowup, invariant_hilbert_basis, EbPresentation, MonomialWeightedCenter, DEFAULT_DEGREE_BOUND,
};
use crate::torus::{
    combine_linearizations, semistable_supports, stabilizer, stable_supports, CharacterVector, Support, TorusAction,
};

pub const DEFAULT_MAX_STEPS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DesingOptions {
    pub scan: ScanOptions,
    pub max_steps: usize,
}

impl Default for DesingOptions {
    fn default() -> Self {
        DesingOptions { scan: ScanOptions::default(), max_steps: DEFAULT_MAX_STEPS }
    }
}

/// Largest stabilizer dimension over `live`, and the reduced centers: the
/// complements of the maximal live supports attaining it. Empty when every
/// live stabilizer is finite.
pub fn max_stabilizer_centers(
    a: &TorusAction,
    live: &[Support],
    opts: &ScanOptions,
) -> Result<(usize, Vec<MonomialWeightedCenter>)> {
    let dims = exec::try_map(opts.exec, live, |s| stabilizer(a, s).map(|g| g.dimension))?;
    let d_max = dims.iter().copied().max().unwrap_or(0);
    if d_max == 0 {
        return Ok((0, Vec::new()));
    }
    let worst: Vec<&Support> = live.iter().zip(&dims).filter(|(_, &d)| d == d_max).map(|(s, _)| s).collect();
    let maximal: Vec<&Support> =
        worst.iter().copied().filter(|s| !worst.iter().any(|t| t != s && s.is_subset(t))).collect();
    let mut centers = Vec::new();
    for s in maximal {
        let z = s.complement(a.dim());
        if z.is_empty() {
            return Err(GitError::input(format!(
                "the generic stabilizer has dimension {d_max}; effectivize the action first"
            )));
        }
        centers.push(MonomialWeightedCenter::reduced(&z)?);
    }
    centers.sort_by(|x, y| x.coords().cmp(y.coords()));
    Ok((d_max, centers))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStep {
    /// Live supports of the previous ambient.
    pub live_before: Vec<Support>,
    pub max_stabilizer_dim: usize,
    pub center_count: usize,
    pub center: MonomialWeightedCenter,
    pub presentation: EbPresentation,
    #[serde(with = "crate::json::int")]
    pub m0: BigInt,
    /// `m0 · (previous character, 0) + θ`, on the new ambient.
    pub character: CharacterVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesingTower {
    pub base: TorusAction,
    pub start_character: CharacterVector,
    pub steps: Vec<TowerStep>,
    pub final_action: TorusAction,
    pub final_character: CharacterVector,
    pub final_dm_supports: Vec<Support>,
}

pub fn desingularize(a: &TorusAction, start: &CharacterVector, opts: &DesingOptions) -> Result<DesingTower> {
    let mut live = semistable_supports(a, start, &opts.scan)?;
    if live.is_empty() {
        return Err(GitError::input("the start character has empty semistable locus"));
    }
    let mut action = a.clone();
    let mut chi = start.clone();
    let mut steps = Vec::new();
    loop {
        let (d_max, centers) = max_stabilizer_centers(&action, &live, &opts.scan)?;
        let Some(center) = centers.first().cloned() else { break };
        if steps.len() == opts.max_steps {
            return Err(GitError::Declined(format!(
                "no finite-stabilizer locus after {} steps (largest stabilizer dimension {d_max}, {} centers left)",
                opts.max_steps,
                centers.len()
            )));
        }
        let eb = extended_weighted_blowup(&action, &center)?;
        let chi_l = chi.extended(&[BigInt::from(0)]);
        let comb = combine_linearizations(&eb.ambient, &chi_l, &eb.theta, &opts.scan)?;
        let next_live = semistable_supports(&eb.ambient, &comb.combined, &opts.scan)?;
        action = eb.ambient.clone();
        chi = comb.combined.clone();
        steps.push(TowerStep {
            live_before: std::mem::replace(&mut live, next_live),
            max_stabilizer_dim: d_max,
            center_count: centers.len(),
            center,
            presentation: eb,
            m0: comb.m0,
            character: comb.combined,
        });
    }
    Ok(DesingTower {
        base: a.clone(),
        start_character: start.clone(),
        steps,
        final_action: action,
        final_character: chi,
        final_dm_supports: live,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Tower step the check concerns; `None` for whole-tower checks.
    pub step: Option<usize>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl TowerReport {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Re-derives the postconditions of a tower from its stored data.
pub fn verify_tower(t: &DesingTower, opts: &ScanOptions) -> Result<TowerReport> {
    let mut checks = Vec::new();
    let mut push = |name: &str, step: Option<usize>, passed: bool, detail: Option<String>| {
        checks.push(Check { name: name.to_string(), step, passed, detail });
    };
    let mut prev_action = t.base.clone();
    let mut prev_chi = t.start_character.clone();
    let mut prev_live = semistable_supports(&t.base, &t.start_character, opts)?;
    for (i, step) in t.steps.iter().enumerate() {
        let eb = &step.presentation;
        let all_prev = opts.supports(prev_action.dim())?;
        let roundtrip = all_prev.iter().all(|s| eb.project_support(&eb.section_support(s)) == *s);
        push("section_projection_roundtrip", Some(i), roundtrip, None);

        let same_base = eb.base == prev_action;
        push("presentation_extends_previous", Some(i), same_base, None);

        let (ok, detail) = gms_matches(eb)?;
        push("good_moduli_space_invariant", Some(i), ok, detail);

        let live_ok = step.live_before == prev_live;
        push("live_supports_recomputed", Some(i), live_ok, None);

        let expected = prev_chi.extended(&[BigInt::from(0)]).scaled(&step.m0).add(&eb.theta);
        push("combined_character", Some(i), expected == step.character, None);

        prev_live = semistable_supports(&eb.ambient, &step.character, opts)?;
        prev_action = eb.ambient.clone();
        prev_chi = step.character.clone();
    }
    push("final_action_matches", None, prev_action == t.final_action && prev_chi == t.final_character, None);
    push("final_live_supports", None, prev_live == t.final_dm_supports, None);

    let dims = exec::try_map(opts.exec, &t.final_dm_supports, |s| stabilizer(&t.final_action, s))?;
    let bad: Vec<&Support> =
        t.final_dm_supports.iter().zip(&dims).filter(|(_, g)| !g.is_finite()).map(|(s, _)| s).collect();
    push(
        "final_stabilizers_finite",
        None,
        bad.is_empty(),
        (!bad.is_empty()).then(|| format!("positive-dimensional stabilizers at {bad:?}")),
    );

    // stable points of the start character never meet a center
    let stable = stable_supports(&t.base, &t.start_character, opts)?;
    let final_set: BTreeSet<&Support> = t.final_dm_supports.iter().collect();
    let lost: Vec<&Support> = stable
        .iter()
        .filter(|s| {
            let mut img = (*s).clone();
            for step in &t.steps {
                img = step.presentation.section_support(&img);
            }
            !final_set.contains(&img)
        })
        .collect();
    push(
        "original_stable_locus_preserved",
        None,
        lost.is_empty(),
        (!lost.is_empty()).then(|| format!("stable supports not carried over: {lost:?}")),
    );
    push("global_quotient", None, true, None);
    let passed = checks.iter().all(|c| c.passed);
    Ok(TowerReport { passed, checks })
}

/// Invariant monomials of the ambient, restricted to degree `≤ 6` in the
/// original variables, against the substituted invariants of the base.
fn gms_matches(eb: &EbPresentation) -> Result<(bool, Option<String>)> {
    let bound = DEFAULT_DEGREE_BOUND;
    let n = eb.base.dim();
    let old: BTreeSet<Vec<u32>> = invariant_hilbert_basis(&eb.base, bound)?.iter().map(|e| eb.substitute(e)).collect();
    let ambient_bound = bound + bound * eb.center.max_weight() as usize;
    let new: BTreeSet<Vec<u32>> = invariant_hilbert_basis(&eb.ambient, ambient_bound)?
        .into_iter()
        .filter(|m| m[..n].iter().sum::<u32>() as usize <= bound)
        .collect();
    if old == new {
        Ok((true, None))
    } else {
        let missing = old.difference(&new).count();
        let extra = new.difference(&old).count();
        Ok((false, Some(format!("{missing} invariant generators lost, {extra} gained"))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntMatrix;

    fn pm() -> TorusAction {
        TorusAction::from_columns(1, &[vec![1], vec![-1]]).unwrap()
    }

    #[test]
    fn centers_for_opposite_weights() {
        let a = pm();
        let live = crate::torus::all_supports(2);
        let (d, c) = max_stabilizer_centers(&a, &live, &ScanOptions::sequential()).unwrap();
        assert_eq!(d, 1);
        assert_eq!(c, vec![MonomialWeightedCenter::new(vec![0, 1], vec![1, 1]).unwrap()]);
    }

    #[test]
    fn one_step_for_opposite_weights() {
        let t = desingularize(&pm(), &CharacterVector::zero(1), &DesingOptions::default()).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.final_action.dim(), 3);
        assert_eq!(t.final_dm_supports, vec![Support::new([0, 1]), Support::new([0, 1, 2])]);
        let report = verify_tower(&t, &ScanOptions::sequential()).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn corrupted_tower_fails() {
        let mut t = desingularize(&pm(), &CharacterVector::zero(1), &DesingOptions::default()).unwrap();
        let eb = &mut t.steps[0].presentation;
        let mut w = eb.ambient.weights().to_rows();
        w[1][2] = BigInt::from(1);
        eb.ambient = TorusAction::new(IntMatrix::from_big_rows(w, 3).unwrap()).unwrap();
        eb.theta = eb.theta.neg();
        let report = verify_tower(&t, &ScanOptions::sequential()).unwrap();
        assert!(!report.passed);
        let gms = report.checks.iter().find(|c| c.name == "good_moduli_space_invariant").unwrap();
        assert!(!gms.passed);
    }

    #[test]
    fn already_finite_is_zero_steps() {
        let a = TorusAction::from_columns(1, &[vec![1], vec![1]]).unwrap();
        let chi = CharacterVector::from_i64(&[-1]);
        let t = desingularize(&a, &chi, &DesingOptions::default()).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.final_character, chi);
        assert!(verify_tower(&t, &ScanOptions::sequential()).unwrap().passed);
    }

    #[test]
    fn non_effective_rejected() {
        let a = TorusAction::from_columns(2, &[vec![1, 0], vec![-1, 0]]).unwrap();
        let r = desingularize(&a, &CharacterVector::zero(2), &DesingOptions::default());
        assert!(matches!(r, Err(GitError::Input(_))));
    }
}
