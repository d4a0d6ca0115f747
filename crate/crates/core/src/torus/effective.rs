use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::action::{CharacterVector, CocharacterVector, FiniteElement, TorusAction};
use crate::error::{GitError, Result};
use crate::lattice::{rational_inverse, smith_normal_form, IntMatrix};

/// An action rewritten for the quotient of the torus by the subtorus acting
/// trivially.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Effectivization {
    pub action: TorusAction,
    /// `k × r`: coordinates of a character in the saturated span of the weights.
    pub projection: IntMatrix,
    /// `r × k`: basis of that saturated span; `basis · projection` fixes the span.
    pub basis: IntMatrix,
    /// Lattice basis of the cocharacters of the quotiented subtorus.
    pub kernel: Vec<CocharacterVector>,
}

impl Effectivization {
    /// Rewrites a character of the original torus; it must be trivial on the
    /// quotiented subtorus.
    pub fn push_character(&self, chi: &CharacterVector) -> Result<CharacterVector> {
        if chi.len() != self.basis.rows() {
            return Err(GitError::input("character length does not match the original torus"));
        }
        if self.kernel.iter().any(|k| !k.pairing(chi).is_zero()) {
            return Err(GitError::input("character is nontrivial on the quotiented subtorus"));
        }
        Ok(CharacterVector(self.projection.mul_vec(&chi.0)))
    }

    pub fn pull_character(&self, chi: &CharacterVector) -> CharacterVector {
        CharacterVector(self.basis.mul_vec(&chi.0))
    }

    /// Image of an original cocharacter in the quotient torus.
    pub fn push_cocharacter(&self, lam: &CocharacterVector) -> CocharacterVector {
        CocharacterVector(self.basis.transpose().mul_vec(&lam.0))
    }
}

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect()
}

/// Smallest positive integer multiple of a rational matrix.
fn primitive_matrix(m: &[Vec<BigRational>]) -> IntMatrix {
    let lcm = m.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect())
        .collect();
    let g = ints.iter().flatten().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let cols = m.first().map_or(0, Vec::len);
    let scaled =
        if g.is_zero() { ints } else { ints.into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect() };
    IntMatrix::from_big_rows(scaled, cols).expect("rectangular")
}

/// Quotients out the subtorus acting trivially.
///
/// With `U W V = D` in Smith form and `k = rank W`, the characters are
/// rewritten in the first `k` columns of `U⁻¹`, which span the saturation of
/// the lattice they generate. The norm on the quotient is the dual of the
/// restriction of the dual norm, scaled to a primitive integer matrix. An
/// action of full rank is returned unchanged.
pub fn effectivize(a: &TorusAction) -> Result<Effectivization> {
    let r = a.rank();
    let snf = smith_normal_form(a.weights());
    let k = snf.rank();
    if k == r {
        return Ok(Effectivization {
            action: a.clone(),
            projection: IntMatrix::identity(r),
            basis: IntMatrix::identity(r),
            kernel: Vec::new(),
        });
    }
    let u = &snf.left;
    let u_inv =
        rational_inverse(&to_rational(u)).ok_or_else(|| GitError::internal("Smith left factor not invertible"))?;
    let u_inv_int: Vec<Vec<BigInt>> = u_inv.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
    let first_k: Vec<usize> = (0..k).collect();
    let projection = u.select_rows(&first_k);
    let basis = IntMatrix::from_big_rows(u_inv_int, r)?.select_columns(&first_k);
    let kernel = (k..r).map(|i| CocharacterVector(u.row(i).to_vec())).collect();

    let weights = projection.mul(a.weights())?;

    let norm = if k == 0 {
        IntMatrix::identity(0)
    } else {
        let q_inv =
            rational_inverse(&to_rational(a.norm_form())).ok_or_else(|| GitError::internal("norm form is singular"))?;
        let b = to_rational(&basis);
        // G = Bᵀ Q⁻¹ B
        let g: Vec<Vec<BigRational>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let mut acc = BigRational::zero();
                        for p in 0..r {
                            for q in 0..r {
                                acc += &b[p][i] * &q_inv[p][q] * &b[q][j];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let g_inv = rational_inverse(&g).ok_or_else(|| GitError::internal("restricted norm is singular"))?;
        primitive_matrix(&g_inv)
    };

    let mut finite = Vec::new();
    for g in a.finite_part() {
        let aut = projection.mul(&g.aut)?.mul(&basis)?;
        finite.push(FiniteElement { perm: g.perm.clone(), aut });
    }
    let action = TorusAction::with_extras(weights, norm, finite)
        .map_err(|e| GitError::internal(format!("effectivized action is invalid: {e}")))?;
    Ok(Effectivization { action, projection, basis, kernel })
}

/// Affine cone over the projective action linearized by `O(d)` twisted by
/// `twist`: an extra factor scales every coordinate with weight 1, and the
/// distinguished character is `(twist, −d)`.
pub fn cone_over_projective(
    a: &TorusAction,
    twist: &CharacterVector,
    d: &BigInt,
) -> Result<(TorusAction, CharacterVector)> {
    if *d <= BigInt::zero() {
        return Err(GitError::input("the degree d of O(d) must be positive"));
    }
    a.check_character(twist)?;
    let (r, n) = (a.rank(), a.dim());
    let cols: Vec<Vec<BigInt>> = (0..n).map(|j| a.character(j).extended(&[BigInt::one()]).0).collect();
    let weights = IntMatrix::from_columns(r + 1, &cols)?;
    let norm = block_extend(a.norm_form());
    let finite =
        a.finite_part().iter().map(|g| FiniteElement { perm: g.perm.clone(), aut: block_extend(&g.aut) }).collect();
    let action = TorusAction::with_extras(weights, norm, finite)?;
    Ok((action, twist.extended(&[-d])))
}

/// `diag(m, 1)`
pub(crate) fn block_extend(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut out = IntMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = m[(i, j)].clone();
        }
    }
    out[(n, n)] = BigInt::one();
    out
}
