//! Diagonal torus actions on affine space and their GIT.

mod action;
mod effective;
mod hm;
mod stabilizer;

pub use action::{all_supports, CharacterVector, CocharacterVector, FiniteElement, Support, TorusAction};
pub(crate) use effective::block_extend;
pub use effective::{cone_over_projective, effectivize, Effectivization};
pub use hm::{
    combine_linearizations, destabilizing_cocharacter, hm_pairing, is_nontrivial_limit_support, is_semistable,
    is_stable, limit_cone, minimal_hm_values, normalized_hm_min, semistable_supports, stable_supports, Combination,
    HmMinimum, Sign, SignedSquare,
};
pub use stabilizer::{stabilizer, DiagonalizableGroup};
