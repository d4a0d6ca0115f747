//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt` / `BigRational`; no floating point is
//! used anywhere in the crate.

mod cone;
mod hilbert;
mod matrix;
mod rational;
mod snf;

pub use cone::{cone_has_point_with, cone_nonzero_point, fm_feasible, RationalCone, Strictness};
pub(crate) use cone::{dedup_rows, for_each_subset};
pub(crate) use hilbert::for_each_exponent;
pub use hilbert::hilbert_basis_bounded;
pub use matrix::IntMatrix;
pub use rational::{integer_kernel_basis, primitive, rank, rational_inverse, rational_nullspace, solve_square};
pub use snf::{smith_normal_form, SmithDecomposition};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Dot product of two integer vectors of equal length.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
