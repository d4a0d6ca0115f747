//! Hilbert–Mumford predicates for characters.
//!
//! Sign convention: `μ^χ(λ) = −⟨λ, χ⟩`. A support is χ-semistable iff
//! `⟨λ, χ⟩ ≤ 0` for every `λ` in its limit cone, i.e. iff `μ^χ ≥ 0` there.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::action::{CharacterVector, CocharacterVector, Support, TorusAction};
use crate::error::{GitError, Result};
use crate::exec::{self, ScanOptions};
use crate::lattice::{
    cone_has_point_with, cone_nonzero_point, dedup_rows, dot, for_each_subset, integer_kernel_basis, primitive, rank,
    solve_square, IntMatrix, RationalCone, Strictness,
};

/// `{λ : ⟨λ, χ_j⟩ ≥ 0 for j in s}`: the cocharacters along which the limit
/// of a point with support `s` exists.
pub fn limit_cone(a: &TorusAction, s: &Support) -> Result<RationalCone> {
    a.check_support(s)?;
    RationalCone::new(a.rank(), s.indices().iter().map(|&j| a.weights().column(j)).collect())
}

/// `μ^χ(λ) = −⟨λ, χ⟩`.
pub fn hm_pairing(chi: &CharacterVector, lam: &CocharacterVector) -> BigInt {
    -lam.pairing(chi)
}

pub fn is_semistable(a: &TorusAction, chi: &CharacterVector, s: &Support) -> Result<bool> {
    a.check_character(chi)?;
    let cone = limit_cone(a, s)?;
    Ok(!cone_has_point_with(&cone, &chi.0, Strictness::Strict, false)?)
}

pub fn is_stable(a: &TorusAction, chi: &CharacterVector, s: &Support) -> Result<bool> {
    a.check_character(chi)?;
    let cone = limit_cone(a, s)?;
    Ok(!cone_has_point_with(&cone, &chi.0, Strictness::NonNeg, true)?)
}

/// Some `λ` in the limit cone with `⟨λ, χ⟩ > 0`, if `s` is unstable.
pub fn destabilizing_cocharacter(
    a: &TorusAction,
    chi: &CharacterVector,
    s: &Support,
) -> Result<Option<CocharacterVector>> {
    if is_semistable(a, chi, s)? {
        return Ok(None);
    }
    Ok(Some(normalized_hm_min(a, chi, s)?.minimizer))
}

/// Supports `s` whose limit cone contains some `λ` moving the point, that is
/// `⟨λ, χ_j⟩ > 0` for some `j` in `s`.
pub fn is_nontrivial_limit_support(a: &TorusAction, s: &Support) -> Result<bool> {
    let cone = limit_cone(a, s)?;
    for &j in s.indices() {
        if cone_has_point_with(&cone, &a.weights().column(j), Strictness::Strict, false)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn semistable_supports(a: &TorusAction, chi: &CharacterVector, opts: &ScanOptions) -> Result<Vec<Support>> {
    a.check_character(chi)?;
    let all = opts.supports(a.dim())?;
    let flags = exec::try_map(opts.exec, &all, |s| is_semistable(a, chi, s))?;
    Ok(all.into_iter().zip(flags).filter_map(|(s, f)| f.then_some(s)).collect())
}

pub fn stable_supports(a: &TorusAction, chi: &CharacterVector, opts: &ScanOptions) -> Result<Vec<Support>> {
    a.check_character(chi)?;
    let all = opts.supports(a.dim())?;
    let flags = exec::try_map(opts.exec, &all, |s| is_stable(a, chi, s))?;
    Ok(all.into_iter().zip(flags).filter_map(|(s, f)| f.then_some(s)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Positive,
}

/// A real number `sign · sqrt(square)`, kept exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedSquare {
    pub sign: Sign,
    #[serde(with = "crate::json::rational")]
    pub square: BigRational,
}

impl SignedSquare {
    pub fn zero() -> Self {
        SignedSquare { sign: Sign::Zero, square: BigRational::zero() }
    }

    /// `num / sqrt(den)` for `den > 0`.
    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        let sign = match num.cmp(&BigInt::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        };
        SignedSquare { sign, square: BigRational::new(num * num, den.clone()) }
    }

    /// The value multiplied by its absolute value; order-equivalent to the value.
    pub fn signed_square(&self) -> BigRational {
        match self.sign {
            Sign::Negative => -self.square.clone(),
            _ => self.square.clone(),
        }
    }

    pub fn negated(&self) -> Self {
        let sign = match self.sign {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        };
        SignedSquare { sign, square: self.square.clone() }
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Negative
    }
}

impl PartialOrd for SignedSquare {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedSquare {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signed_square().cmp(&other.signed_square())
    }
}

impl fmt::Display for SignedSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sq = crate::json::rational_to_string(&self.square);
        match self.sign {
            Sign::Zero => write!(f, "0"),
            Sign::Positive => write!(f, "sqrt({sq})"),
            Sign::Negative => write!(f, "-sqrt({sq})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HmMinimum {
    pub value: SignedSquare,
    /// Primitive cocharacter attaining the minimum.
    pub minimizer: CocharacterVector,
}

/// `min μ^χ(λ)/|λ|_Q` over nonzero `λ` in the limit cone of `s`.
///
/// The minimum is attained at a stationary point of the restriction to the
/// span of some face: on a face cut out by independent active normals with
/// kernel basis `B`, the stationary direction is `B H⁻¹ g` with `H = BᵀQB`,
/// `g = Bᵀχ`. When the value is positive the cone is pointed and the minimum
/// sits on an extreme ray.
pub fn normalized_hm_min(a: &TorusAction, chi: &CharacterVector, s: &Support) -> Result<HmMinimum> {
    a.check_character(chi)?;
    let cone = limit_cone(a, s)?;
    if cone_nonzero_point(&cone).is_none() {
        return Err(GitError::NoDestabilizer);
    }
    // objective μ^χ(λ) = <λ, c>
    let c: Vec<BigInt> = chi.0.iter().map(|x| -x).collect();
    if cone_has_point_with(&cone, &chi.0, Strictness::Strict, false)? {
        return negative_minimum(a, &cone, &c);
    }
    if let Some(l) = cone_nonzero_point(&cone.with_equality(&chi.0)) {
        return Ok(HmMinimum { value: SignedSquare::zero(), minimizer: CocharacterVector(l) });
    }
    positive_minimum(a, &cone, &c)
}

fn value_at(a: &TorusAction, c: &[BigInt], lam: &[BigInt]) -> SignedSquare {
    SignedSquare::from_ratio(&dot(c, lam), &a.norm_squared(lam))
}

fn negative_minimum(a: &TorusAction, cone: &RationalCone, c: &[BigInt]) -> Result<HmMinimum> {
    let r = a.rank();
    let rows = dedup_rows(&cone.inequalities);
    let q = a.norm_form();
    let mut best: Option<HmMinimum> = None;
    for k in 0..r.min(rows.len() + 1) {
        for_each_subset(rows.len(), k, &mut |idx| {
            let active = IntMatrix::from_big_rows(idx.iter().map(|&i| rows[i].clone()).collect(), r)
                .expect("normals have rank length");
            if rank(&active) < k {
                return false;
            }
            let basis = integer_kernel_basis(&active);
            let g: Vec<BigRational> = basis.iter().map(|b| BigRational::from_integer(dot(b, c))).collect();
            if g.iter().all(Zero::is_zero) {
                return false;
            }
            let qb: Vec<Vec<BigInt>> = basis.iter().map(|b| q.mul_vec(b)).collect();
            let h: Vec<Vec<BigRational>> =
                basis.iter().map(|bi| qb.iter().map(|qbj| BigRational::from_integer(dot(bi, qbj))).collect()).collect();
            let neg_g: Vec<BigRational> = g.iter().map(|x| -x).collect();
            let y = solve_square(&h, &neg_g).expect("Gram matrix of a basis is invertible");
            let lam_q: Vec<BigRational> = (0..r)
                .map(|i| basis.iter().zip(&y).map(|(b, yi)| BigRational::from_integer(b[i].clone()) * yi).sum())
                .collect();
            let lam = primitive(&lam_q);
            if !cone.contains_int(&lam) || !dot(&lam, c).is_negative() {
                return false;
            }
            let value = value_at(a, c, &lam);
            if best.as_ref().is_none_or(|b| value < b.value) {
                best = Some(HmMinimum { value, minimizer: CocharacterVector(lam) });
            }
            false
        });
    }
    best.ok_or_else(|| GitError::internal("no stationary point found on an unstable limit cone"))
}

fn positive_minimum(a: &TorusAction, cone: &RationalCone, c: &[BigInt]) -> Result<HmMinimum> {
    let r = a.rank();
    let rows = dedup_rows(&cone.inequalities);
    let mut best: Option<HmMinimum> = None;
    for_each_subset(rows.len(), r - 1, &mut |idx| {
        let active = IntMatrix::from_big_rows(idx.iter().map(|&i| rows[i].clone()).collect(), r)
            .expect("normals have rank length");
        let ker = integer_kernel_basis(&active);
        if ker.len() != 1 {
            return false;
        }
        let v = ker[0].clone();
        let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
        for ray in [v, neg] {
            if cone.contains_int(&ray) {
                let value = value_at(a, c, &ray);
                if best.as_ref().is_none_or(|b| value < b.value) {
                    best = Some(HmMinimum { value, minimizer: CocharacterVector(ray) });
                }
            }
        }
        false
    });
    best.ok_or_else(|| GitError::internal("pointed limit cone without extreme rays"))
}

/// The distinct normalized minima over supports with a nontrivial limit.
pub fn minimal_hm_values(a: &TorusAction, chi: &CharacterVector, opts: &ScanOptions) -> Result<Vec<SignedSquare>> {
    a.check_character(chi)?;
    let all = opts.supports(a.dim())?;
    let vals = exec::try_map(opts.exec, &all, |s| -> Result<Option<SignedSquare>> {
        if !is_nontrivial_limit_support(a, s)? {
            return Ok(None);
        }
        Ok(Some(normalized_hm_min(a, chi, s)?.value))
    })?;
    let mut out: Vec<SignedSquare> = vals.into_iter().flatten().collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Combination {
    #[serde(with = "crate::json::int")]
    pub m0: BigInt,
    pub combined: CharacterVector,
    /// Largest normalized minimum of `χ_L` over its unstable supports.
    pub d: Option<SignedSquare>,
    /// Largest normalized maximum of `χ_M` over the same supports.
    pub e: Option<SignedSquare>,
}

/// Least `m0 ≥ 1` with `m0·d + e < 0`, and `m0·χ_L + χ_M`.
///
/// `d` and `e` range over every `χ_L`-unstable support, the empty one
/// included, so that the combined character never vanishes where `χ_L`
/// destabilizes.
pub fn combine_linearizations(
    a: &TorusAction,
    chi_l: &CharacterVector,
    chi_m: &CharacterVector,
    opts: &ScanOptions,
) -> Result<Combination> {
    a.check_character(chi_l)?;
    a.check_character(chi_m)?;
    let all = opts.supports(a.dim())?;
    let neg_m = chi_m.neg();
    let per_support = exec::try_map(opts.exec, &all, |s| -> Result<Option<(SignedSquare, SignedSquare)>> {
        if is_semistable(a, chi_l, s)? {
            return Ok(None);
        }
        let d = normalized_hm_min(a, chi_l, s)?.value;
        if !d.is_negative() {
            return Err(GitError::internal(format!("support {s:?} is unstable but its normalized minimum is {d}")));
        }
        let e = normalized_hm_min(a, &neg_m, s)?.value.negated();
        Ok(Some((d, e)))
    })?;
    let pairs: Vec<_> = per_support.into_iter().flatten().collect();
    let d = pairs.iter().map(|p| p.0.clone()).max();
    let e = pairs.iter().map(|p| p.1.clone()).max();
    let m0 = match (&d, &e) {
        (Some(d), Some(e)) => least_multiplier(d, e),
        _ => BigInt::from(1),
    };
    let combined = chi_l.scaled(&m0).add(chi_m);
    Ok(Combination { m0, combined, d, e })
}

/// Least positive `m` with `m·d + e < 0`, for `d < 0`.
fn least_multiplier(d: &SignedSquare, e: &SignedSquare) -> BigInt {
    if e.sign != Sign::Positive {
        return BigInt::from(1);
    }
    // m·sqrt(D) > sqrt(E)  ⟺  m² D > E
    let ratio = &e.square / &d.square;
    let floor = ratio.floor().to_integer();
    let mut m = floor.sqrt().max(BigInt::from(1));
    while BigRational::from_integer(&m * &m) * &d.square <= e.square {
        m += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn act(rank: usize, cols: &[Vec<i64>]) -> TorusAction {
        TorusAction::from_columns(rank, cols).unwrap()
    }

    fn chi(v: &[i64]) -> CharacterVector {
        CharacterVector::from_i64(v)
    }

    fn sup(v: &[usize]) -> Support {
        Support::from_one_based(v).unwrap()
    }

    fn sq(sign: Sign, p: i64, q: i64) -> SignedSquare {
        SignedSquare { sign, square: BigRational::new(p.into(), q.into()) }
    }

    #[test]
    fn limit_cone_examples() {
        let a = act(1, &[vec![1], vec![-1]]);
        assert!(cone_nonzero_point(&limit_cone(&a, &sup(&[1, 2])).unwrap()).is_none());
        let c = limit_cone(&a, &sup(&[1])).unwrap();
        assert!(c.contains_int(&[BigInt::one()]) && !c.contains_int(&[-BigInt::one()]));
        let cubic = act(3, &[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        let c = limit_cone(&cubic, &sup(&[1, 2, 3])).unwrap();
        assert_eq!(
            cone_nonzero_point(&c).map(|v| v.iter().map(|x| x.abs()).collect::<Vec<_>>()),
            Some(vec![BigInt::one(); 3])
        );
        assert!(limit_cone(&a, &sup(&[3])).is_err());
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(hm_pairing(&chi(&[1]), &CocharacterVector::from_i64(&[1])), BigInt::from(-1));
        assert_eq!(hm_pairing(&chi(&[0]), &CocharacterVector::from_i64(&[5])), BigInt::zero());
    }

    #[test]
    fn semistability_examples() {
        let a = act(1, &[vec![1], vec![1], vec![-1]]);
        assert!(!is_semistable(&a, &chi(&[1]), &sup(&[1])).unwrap());
        assert!(is_semistable(&a, &chi(&[1]), &sup(&[1, 3])).unwrap());
        let b = act(1, &[vec![1], vec![-1]]);
        assert!(is_stable(&b, &chi(&[0]), &sup(&[1, 2])).unwrap());
        assert!(!is_stable(&b, &chi(&[0]), &sup(&[1])).unwrap());
        let cubic = act(3, &[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert!(!is_stable(&cubic, &chi(&[0, 0, 0]), &sup(&[1, 2, 3])).unwrap());
        assert!(is_semistable(&a, &chi(&[7]), &Support::empty()).is_ok_and(|x| !x));
    }

    #[test]
    fn minimum_examples() {
        let a = act(1, &[vec![1], vec![1]]);
        let m = normalized_hm_min(&a, &chi(&[1]), &sup(&[1, 2])).unwrap();
        assert_eq!(m.value, sq(Sign::Negative, 1, 1));
        assert_eq!(m.minimizer, CocharacterVector::from_i64(&[1]));
        assert_eq!(normalized_hm_min(&a, &chi(&[0]), &sup(&[1])).unwrap().value, SignedSquare::zero());
        let b = act(1, &[vec![1], vec![-1]]);
        let m = normalized_hm_min(&b, &chi(&[1]), &sup(&[2])).unwrap();
        assert_eq!(m.value, sq(Sign::Positive, 1, 1));
        assert_eq!(m.minimizer, CocharacterVector::from_i64(&[-1]));
        assert_eq!(normalized_hm_min(&b, &chi(&[1]), &sup(&[1, 2])), Err(GitError::NoDestabilizer));
    }

    #[test]
    fn minimum_interior_of_two_dim_cone() {
        // full cone Q^2 with chi = (1, 1): minimizer along chi, value -sqrt(2)
        let a = act(2, &[vec![1, 0]]);
        let m = normalized_hm_min(&a, &chi(&[1, 1]), &Support::empty()).unwrap();
        assert_eq!(m.value, sq(Sign::Negative, 2, 1));
        assert_eq!(m.minimizer, CocharacterVector::from_i64(&[1, 1]));
        // restricted to λ1 ≥ 0 with chi = (-1, 1): the free optimum leaves the cone
        let m = normalized_hm_min(&a, &chi(&[-1, 1]), &sup(&[1])).unwrap();
        assert_eq!(m.value, sq(Sign::Negative, 1, 1));
        assert_eq!(m.minimizer, CocharacterVector::from_i64(&[0, 1]));
    }

    #[test]
    fn minimal_values_examples() {
        let opts = ScanOptions::sequential();
        let a = act(1, &[vec![1], vec![1]]);
        assert_eq!(minimal_hm_values(&a, &chi(&[1]), &opts).unwrap(), vec![sq(Sign::Negative, 1, 1)]);
        assert_eq!(minimal_hm_values(&a, &chi(&[0]), &opts).unwrap(), vec![SignedSquare::zero()]);
        let b = act(1, &[vec![1], vec![-1]]);
        assert_eq!(
            minimal_hm_values(&b, &chi(&[1]), &opts).unwrap(),
            vec![sq(Sign::Negative, 1, 1), sq(Sign::Positive, 1, 1)]
        );
    }

    #[test]
    fn combine_example() {
        let opts = ScanOptions::sequential();
        let a = act(1, &[vec![1], vec![1], vec![-1]]);
        let c = combine_linearizations(&a, &chi(&[1]), &chi(&[-1]), &opts).unwrap();
        assert_eq!(c.d, Some(sq(Sign::Negative, 1, 1)));
        assert_eq!(c.e, Some(sq(Sign::Positive, 1, 1)));
        assert_eq!(c.m0, BigInt::from(2));
        assert_eq!(c.combined, chi(&[1]));
        let c = combine_linearizations(&a, &chi(&[1]), &chi(&[0]), &opts).unwrap();
        assert_eq!((c.m0, c.combined), (BigInt::one(), chi(&[1])));
    }

    #[test]
    fn least_multiplier_boundary() {
        // d = -1, e = +2 exactly: need m > 2
        let m = least_multiplier(&sq(Sign::Negative, 1, 1), &sq(Sign::Positive, 4, 1));
        assert_eq!(m, BigInt::from(3));
        let m = least_multiplier(&sq(Sign::Negative, 1, 1), &sq(Sign::Positive, 5, 1));
        assert_eq!(m, BigInt::from(3));
        let m = least_multiplier(&sq(Sign::Negative, 1, 4), &sq(Sign::Positive, 1, 100));
        assert_eq!(m, BigInt::one());
    }

    #[test]
    fn signed_square_order() {
        let a = sq(Sign::Negative, 4, 1);
        let b = sq(Sign::Negative, 1, 1);
        let c = SignedSquare::zero();
        let d = sq(Sign::Positive, 1, 9);
        assert!(a < b && b < c && c < d);
    }
}
