use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::graph::{TwistedCurveGraph, L_DM, L_X};
use crate::error::{GitError, Result};

/// `2g − 2 + (edge-ends) + (legs)` at `v`.
pub fn omega_log_degree(g: &TwistedCurveGraph, v: usize) -> i64 {
    2 * g.vertices()[v].genus as i64 - 2 + g.edge_ends(v) as i64 + g.legs_at(v) as i64
}

/// Degree of `ω_C(Σ p_i) ⊗ f*L_X^3` on `v`.
pub fn nef_degree(g: &TwistedCurveGraph, v: usize) -> BigRational {
    BigRational::from_integer(omega_log_degree(g, v).into())
        + g.vertices()[v].degree(L_X) * BigRational::from_integer(3.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub violations: Vec<Violation>,
}

/// Nefness of `ω_C(Σ p_i) ⊗ f*L_X^3`, plus the condition on components
/// where it has degree 0: they are rational and either leave the DM locus
/// or have positive `L`-degree. An untracked `L` counts as degree 0.
pub fn is_stable_quasimap(g: &TwistedCurveGraph) -> StabilityVerdict {
    let mut violations = Vec::new();
    for (v, vert) in g.vertices().iter().enumerate() {
        let q = nef_degree(g, v);
        if q.is_negative() {
            violations.push(Violation { vertex: v, reason: format!("log-canonical degree {q} is negative") });
        } else if q.is_zero() {
            if vert.genus > 0 {
                violations.push(Violation { vertex: v, reason: "degree-0 component of positive genus".into() });
            } else if vert.in_dm && !vert.degree(L_DM).is_positive() {
                violations.push(Violation {
                    vertex: v,
                    reason: "degree-0 rational component inside the DM locus with L-degree not positive".into(),
                });
            }
        }
    }
    StabilityVerdict { stable: violations.is_empty(), violations }
}

/// Ampleness of `ω_C(Σ p_i) ⊗ f*L_X^3 ⊗ L^ε` for small `ε > 0`.
pub fn epsilon_ample_equivalent(g: &TwistedCurveGraph) -> Result<bool> {
    if !g.tracks(L_DM) {
        return Err(GitError::input(format!("the bundle {L_DM:?} must be tracked")));
    }
    if g.total_genus() == 1 {
        return Err(GitError::input("the ε-ample criterion excludes genus 1"));
    }
    Ok((0..g.vertices().len()).all(|v| {
        let q = nef_degree(g, v);
        q.is_positive() || (q.is_zero() && g.vertices()[v].degree(L_DM).is_positive())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasimap::graph::{Edge, Vertex};

    fn q(p: i64) -> BigRational {
        BigRational::from_integer(p.into())
    }

    fn bundles() -> Vec<String> {
        vec![L_X.to_string(), L_DM.to_string()]
    }

    /// Middle vertex of a chain of three, so it has two edge-ends.
    fn bridge(in_dm: bool, deg_l: i64) -> TwistedCurveGraph {
        let end = Vertex::new(0, true).with_degree(L_X, q(1));
        TwistedCurveGraph::new(
            vec![end.clone(), Vertex::new(0, in_dm).with_degree(L_DM, q(deg_l)), end],
            vec![Edge { endpoints: (0, 1), index: 1 }, Edge { endpoints: (1, 2), index: 1 }],
            vec![],
            bundles(),
        )
        .unwrap()
    }

    #[test]
    fn omega_examples() {
        let single = |genus| TwistedCurveGraph::new(vec![Vertex::new(genus, true)], vec![], vec![], bundles()).unwrap();
        assert_eq!(omega_log_degree(&single(0), 0), -2);
        assert_eq!(omega_log_degree(&single(1), 0), 0);
        assert_eq!(omega_log_degree(&bridge(true, 0), 1), 0);
    }

    #[test]
    fn pencil_vertex_is_stable() {
        let g = TwistedCurveGraph::new(vec![Vertex::new(0, true).with_degree(L_X, q(12))], vec![], vec![], bundles())
            .unwrap();
        assert!(is_stable_quasimap(&g).stable);
        assert!(epsilon_ample_equivalent(&g).unwrap());
    }

    #[test]
    fn rational_bridges() {
        let v = is_stable_quasimap(&bridge(true, 0));
        assert!(!v.stable);
        assert_eq!(v.violations[0].vertex, 1);
        assert!(!epsilon_ample_equivalent(&bridge(true, 0)).unwrap());
        assert!(is_stable_quasimap(&bridge(false, 1)).stable);
        assert!(epsilon_ample_equivalent(&bridge(false, 1)).unwrap());
        assert!(is_stable_quasimap(&bridge(true, 1)).stable);
    }

    #[test]
    fn out_of_dm_without_l_degree() {
        // stable by definition, though outside the ε-lemma's hypotheses
        assert!(is_stable_quasimap(&bridge(false, 0)).stable);
    }

    #[test]
    fn epsilon_refusals() {
        let ell = TwistedCurveGraph::new(vec![Vertex::new(1, true)], vec![], vec![], bundles()).unwrap();
        assert!(epsilon_ample_equivalent(&ell).is_err());
        assert!(!is_stable_quasimap(&ell).stable);
        let no_l = TwistedCurveGraph::new(vec![Vertex::new(0, true)], vec![], vec![], vec![L_X.into()]).unwrap();
        assert!(epsilon_ample_equivalent(&no_l).is_err());
    }
}
