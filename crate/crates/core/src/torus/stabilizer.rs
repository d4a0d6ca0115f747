use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::action::{Support, TorusAction};
use crate::error::Result;
use crate::lattice::smith_normal_form;

/// `G_m^dimension × ⊕ Z/d_i`, extended by a finite group of permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalizableGroup {
    pub dimension: usize,
    /// Nontrivial elementary divisors, each dividing the next.
    #[serde(with = "crate::json::int_vec")]
    pub invariant_factors: Vec<BigInt>,
    /// Number of finite-part elements mapping the support to itself.
    pub finite_part_order: u64,
}

impl DiagonalizableGroup {
    pub fn is_finite(&self) -> bool {
        self.dimension == 0
    }

    /// Order of the component group of the torus part, when finite.
    pub fn torus_part_order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }
}

/// Stabilizer of a point with support `s`: the torus part is dual to
/// `X(T)/Λ_s`, with `Λ_s` spanned by the characters of `s`.
pub fn stabilizer(a: &TorusAction, s: &Support) -> Result<DiagonalizableGroup> {
    a.check_support(s)?;
    let ws = a.weights().select_columns(s.indices());
    let snf = smith_normal_form(&ws);
    let finite = if a.finite_part().is_empty() {
        1
    } else {
        a.finite_group()?.iter().filter(|g| s.image(&g.perm) == *s).count() as u64
    };
    Ok(DiagonalizableGroup {
        dimension: a.rank() - snf.rank(),
        invariant_factors: snf.nontrivial_factors(),
        finite_part_order: finite,
    })
}
