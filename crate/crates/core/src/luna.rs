//! Slices at torus-fixed points, and the plane-cubic slice at `x0·x1·x2`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{GitError, Result};
use crate::exec::ScanOptions;
use crate::lattice::{smith_normal_form, IntMatrix};
use crate::rees::{extended_weighted_blowup, invariant_hilbert_basis, EbPresentation, MonomialWeightedCenter};
use crate::torus::{
    effectivize, stabilizer, CharacterVector, DiagonalizableGroup, FiniteElement, Support, TorusAction,
};

/// Removes `sub` from the multiset `all`; fails if `sub` is not contained in it.
pub fn subtract_weights(all: &[Vec<BigInt>], sub: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let mut rest = all.to_vec();
    for w in sub {
        let Some(i) = rest.iter().position(|x| x == w) else {
            return Err(GitError::internal(format!("orbit weight {w:?} is not an ambient weight")));
        };
        rest.remove(i);
    }
    Ok(rest)
}

/// Action of the identity component `H` of the stabilizer of a point with
/// support `s` on the normal space to its orbit.
///
/// The cocharacters of `H` are the saturated kernel `K` of `W_sᵀ`. The
/// ambient weights restrict to `Kᵀ χ_j`; the orbit directions are the
/// `rank W_s` moved coordinates, each of weight zero on `H`. The finite part
/// is kept only for the origin, where `H` is the whole torus.
pub fn slice_at_fixed_point(a: &TorusAction, s: &Support) -> Result<TorusAction> {
    a.check_support(s)?;
    let r = a.rank();
    let ws_t = a.weights().select_columns(s.indices()).transpose();
    let snf = smith_normal_form(&ws_t);
    let k = snf.rank();
    let h = r - k;
    let kernel = snf.right.select_columns(&(k..r).collect::<Vec<_>>());
    let k_t = kernel.transpose();
    let restricted: Vec<Vec<BigInt>> = (0..a.dim()).map(|j| k_t.mul_vec(&a.weights().column(j))).collect();
    let orbit = vec![vec![BigInt::from(0); h]; k];
    let mut normal = subtract_weights(&restricted, &orbit)?;
    // order: coordinates off the support first, then the leftover zero weights
    normal.sort_by_key(|w| w.iter().all(|x| *x == BigInt::from(0)));
    let weights = IntMatrix::from_columns(h, &normal)?;
    let norm = k_t.mul(a.norm_form())?.mul(&kernel)?;
    let finite = if s.is_empty() { a.finite_part().to_vec() } else { Vec::new() };
    TorusAction::with_extras(weights, norm, finite)
}

/// Exponents of the cubic monomials other than `x0·x1·x2`, in lexicographic order.
pub fn cubic_tangent_monomials() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=3u32).rev() {
        for b in (0..=3 - a).rev() {
            let e = [a, b, 3 - a - b];
            if e != [1, 1, 1] {
                out.push(e);
            }
        }
    }
    out
}

/// Everything computed about the plane-cubic slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicsCertificate {
    /// Torus weights `e − (1,1,1)` of the tangent space at `x0·x1·x2`.
    #[serde(with = "crate::json::int_rows")]
    pub tangent_weights: Vec<Vec<BigInt>>,
    /// Weights `e_i − e_j` of the orbit directions `x_i · (x0x1x2 / x_j)`.
    #[serde(with = "crate::json::int_rows")]
    pub orbit_weights: Vec<Vec<BigInt>>,
    /// Slice on `A^3` for the maximal torus of `GL_3`, with the `S_3` part.
    pub slice_full: TorusAction,
    /// The same slice after dividing out the diagonal.
    pub slice: TorusAction,
    /// Hilbert basis of invariant monomials up to degree 6.
    pub invariants: BTreeSet<Vec<u32>>,
    pub blowup: EbPresentation,
    /// `{X1, X2, X3}` in the blow-up.
    pub closed_point_support: Support,
    pub closed_point_stabilizer: DiagonalizableGroup,
    pub closed_point_in_saturated_locus: bool,
}

fn perm_matrix(perm: &[usize]) -> IntMatrix {
    let n = perm.len();
    let mut m = IntMatrix::zeros(n, n);
    for (j, &p) in perm.iter().enumerate() {
        m[(p, j)] = BigInt::from(1);
    }
    m
}

pub fn cubics_example() -> Result<CubicsCertificate> {
    let tangent: Vec<Vec<BigInt>> =
        cubic_tangent_monomials().iter().map(|e| e.iter().map(|&x| BigInt::from(x as i64 - 1)).collect()).collect();
    let mut orbit = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut w = vec![BigInt::from(0); 3];
                w[i] += 1;
                w[j] -= 1;
                orbit.push(w);
            }
        }
    }
    let mut slice_weights = subtract_weights(&tangent, &orbit)?;
    // x0³, x1³, x2³ in that order
    slice_weights.sort_by(|a, b| b.cmp(a));
    let finite = [vec![1, 0, 2], vec![1, 2, 0]]
        .into_iter()
        .map(|perm| FiniteElement { aut: perm_matrix(&perm), perm })
        .collect();
    let slice_full =
        TorusAction::with_extras(IntMatrix::from_columns(3, &slice_weights)?, IntMatrix::identity(3), finite)?;
    let slice = effectivize(&slice_full)?.action;
    let invariants = invariant_hilbert_basis(&slice, 6)?;
    let center = MonomialWeightedCenter::new(vec![0, 1, 2], vec![1, 1, 1])?;
    let blowup = extended_weighted_blowup(&slice, &center)?;
    let closed_point_support = Support::new([0, 1, 2]);
    let closed_point_stabilizer = stabilizer(&blowup.ambient, &closed_point_support)?;
    let closed_point_in_saturated_locus =
        blowup.saturated_locus(&ScanOptions::sequential())?.contains(&closed_point_support);
    Ok(CubicsCertificate {
        tangent_weights: tangent,
        orbit_weights: orbit,
        slice_full,
        slice,
        invariants,
        blowup,
        closed_point_support,
        closed_point_stabilizer,
        closed_point_in_saturated_locus,
    })
}

/// The character vector `(0, …, 0)` of the rank-2 cubic slice.
pub fn cubics_start_character() -> CharacterVector {
    CharacterVector::zero(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubics_numbers() {
        let c = cubics_example().unwrap();
        assert_eq!(c.tangent_weights.len(), 9);
        assert_eq!(c.slice.rank(), 2);
        assert_eq!(c.slice.dim(), 3);
        assert_eq!(c.invariants, BTreeSet::from([vec![1, 1, 1]]));
        let g = &c.closed_point_stabilizer;
        assert_eq!(g.dimension, 0);
        assert_eq!(g.invariant_factors, vec![BigInt::from(3), BigInt::from(3)]);
        assert_eq!(g.finite_part_order, 6);
        assert!(c.closed_point_in_saturated_locus);
    }

    #[test]
    fn slice_at_origin_is_ambient() {
        let a = TorusAction::from_columns(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        assert_eq!(slice_at_fixed_point(&a, &Support::empty()).unwrap(), a);
    }

    #[test]
    fn dense_orbit_gives_rank_zero() {
        let a = TorusAction::from_columns(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        let sl = slice_at_fixed_point(&a, &Support::new([0, 1])).unwrap();
        assert_eq!((sl.rank(), sl.dim()), (0, 1));
    }

    #[test]
    fn slice_counts() {
        let a = TorusAction::from_columns(2, &[vec![1, 1], vec![1, 1], vec![2, -1], vec![0, 3]]).unwrap();
        let s = Support::new([0, 1]);
        let sl = slice_at_fixed_point(&a, &s).unwrap();
        // two coordinates with one orbit direction leave one zero weight
        assert_eq!(sl.rank(), 1);
        assert_eq!(sl.dim(), 3);
        let cols = sl.weights().columns();
        assert_eq!(cols.iter().filter(|w| w[0] == BigInt::from(0)).count(), 1);
        assert!(subtract_weights(&cols, &[vec![BigInt::from(7)]]).is_err());
    }
}
