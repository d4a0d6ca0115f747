use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{primitive, rational_nullspace};
use super::{dot, IntMatrix};
use crate::error::{GitError, Result};

/// `{ λ in Q^ambient_dim : <λ, n_k> >= 0 for every normal n_k }`.
///
/// Never empty: it always contains the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCone {
    pub ambient_dim: usize,
    #[serde(with = "crate::json::int_rows")]
    pub inequalities: Vec<Vec<BigInt>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strictness {
    /// `<λ, objective> > 0`
    Strict,
    /// `<λ, objective> >= 0`
    NonNeg,
}

impl RationalCone {
    pub fn new(ambient_dim: usize, inequalities: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(bad) = inequalities.iter().find(|n| n.len() != ambient_dim) {
            return Err(GitError::input(format!(
                "cone normal of length {} in ambient dimension {ambient_dim}",
                bad.len()
            )));
        }
        Ok(RationalCone { ambient_dim, inequalities })
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.inequalities.iter().all(|n| {
            let s: BigRational = n.iter().zip(v).map(|(a, x)| BigRational::from_integer(a.clone()) * x).sum();
            !s.is_negative()
        })
    }

    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        self.inequalities.iter().all(|n| !dot(n, v).is_negative())
    }

    /// Same cone with the extra half-space `<λ, n> >= 0`.
    pub fn with_inequality(&self, n: Vec<BigInt>) -> Self {
        let mut c = self.clone();
        c.inequalities.push(n);
        c
    }

    /// Same cone intersected with the hyperplane `<λ, n> = 0`.
    pub fn with_equality(&self, n: &[BigInt]) -> Self {
        let mut c = self.clone();
        c.inequalities.push(n.to_vec());
        c.inequalities.push(n.iter().map(|x| -x).collect());
        c
    }

    /// True iff the cone is exactly `{0}`.
    pub fn is_zero_cone(&self) -> bool {
        cone_nonzero_point(self).is_none()
    }

    /// Inequalities as rows of a matrix.
    pub fn normal_matrix(&self) -> IntMatrix {
        IntMatrix::from_big_rows(self.inequalities.clone(), self.ambient_dim).expect("normals have ambient length")
    }
}

/// One inequality `a . x >= b`, kept primitive.
type Ineq = (Vec<BigInt>, BigInt);

fn normalize((a, b): Ineq) -> Ineq {
    let g = a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return (a, b);
    }
    // x is rational, so dividing is only exact when g also divides b
    if b.is_multiple_of(&g) {
        (a.into_iter().map(|x| x / &g).collect(), b / &g)
    } else {
        (a, b)
    }
}

/// Decides whether `{x in Q^n : a_k . x >= b_k for all k}` is nonempty, by
/// Fourier–Motzkin elimination in exact integer arithmetic.
pub fn fm_feasible(n: usize, system: Vec<Ineq>) -> bool {
    let mut cur: HashMap<Vec<BigInt>, BigInt> = HashMap::new();
    let insert = |map: &mut HashMap<Vec<BigInt>, BigInt>, (a, b): Ineq| -> bool {
        if a.iter().all(Zero::is_zero) {
            // 0 >= b
            return !b.is_positive();
        }
        let (a, b) = normalize((a, b));
        match map.get_mut(&a) {
            Some(old) if *old >= b => {}
            Some(old) => *old = b,
            None => {
                map.insert(a, b);
            }
        }
        true
    };
    for ineq in system {
        debug_assert_eq!(ineq.0.len(), n);
        if !insert(&mut cur, ineq) {
            return false;
        }
    }
    for var in 0..n {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next: HashMap<Vec<BigInt>, BigInt> = HashMap::new();
        for (a, b) in cur.drain() {
            match a[var].sign() {
                num_bigint::Sign::Plus => pos.push((a, b)),
                num_bigint::Sign::Minus => neg.push((a, b)),
                num_bigint::Sign::NoSign => {
                    next.insert(a, b);
                }
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                // |an[var]| * (ap.x >= bp) + ap[var] * (an.x >= bn)
                let cp = -&an[var];
                let cn = &ap[var];
                let a: Vec<BigInt> = ap.iter().zip(an).map(|(x, y)| &cp * x + cn * y).collect();
                let b = &cp * bp + cn * bn;
                if !insert(&mut next, (a, b)) {
                    return false;
                }
            }
        }
        cur = next;
    }
    // every remaining inequality has a zero left-hand side and was checked on insert
    true
}

fn cone_system(c: &RationalCone) -> Vec<Ineq> {
    c.inequalities.iter().map(|n| (n.clone(), BigInt::zero())).collect()
}

fn unit(n: usize, i: usize, sign: i64) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::from(sign);
    v
}

/// Is there a rational `λ` in the cone (nonzero if `exclude_zero`) whose pairing
/// with `objective` satisfies `strictness`?
pub fn cone_has_point_with(
    c: &RationalCone,
    objective: &[BigInt],
    strictness: Strictness,
    exclude_zero: bool,
) -> Result<bool> {
    let n = c.ambient_dim;
    if objective.len() != n {
        return Err(GitError::input(format!(
            "objective has length {} but the cone lives in dimension {n}",
            objective.len()
        )));
    }
    Ok(match strictness {
        // homogeneous: <λ,obj> > 0 is solvable iff <λ,obj> >= 1 is
        Strictness::Strict => {
            let mut sys = cone_system(c);
            sys.push((objective.to_vec(), BigInt::one()));
            fm_feasible(n, sys)
        }
        Strictness::NonNeg if !exclude_zero => true,
        Strictness::NonNeg => {
            let mut base = cone_system(c);
            base.push((objective.to_vec(), BigInt::zero()));
            (0..n).any(|i| {
                [1, -1].iter().any(|&s| {
                    let mut sys = base.clone();
                    sys.push((unit(n, i, s), BigInt::one()));
                    fm_feasible(n, sys)
                })
            })
        }
    })
}

/// A nonzero integer point of the cone, if one exists.
///
/// Returns a lineality direction when the cone contains a line, otherwise an
/// extreme ray found by enumerating independent active sets.
pub fn cone_nonzero_point(c: &RationalCone) -> Option<Vec<BigInt>> {
    let n = c.ambient_dim;
    if n == 0 {
        return None;
    }
    let rows = dedup_rows(&c.inequalities);
    let full = IntMatrix::from_big_rows(rows.clone(), n).expect("normals have ambient length");
    if let Some(v) = rational_nullspace(&full).first() {
        return Some(primitive(v));
    }
    // pointed cone: extreme rays are one-dimensional solution sets of n-1 active normals
    let mut found = None;
    for_each_subset(rows.len(), n - 1, &mut |idx| {
        let sub = IntMatrix::from_big_rows(idx.iter().map(|&i| rows[i].clone()).collect(), n)
            .expect("normals have ambient length");
        let ker = rational_nullspace(&sub);
        if ker.len() != 1 {
            return false;
        }
        let v = primitive(&ker[0]);
        let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
        for cand in [v, neg] {
            if c.contains_int(&cand) {
                found = Some(cand);
                return true;
            }
        }
        false
    });
    found
}

pub(crate) fn dedup_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for r in rows {
        let g = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            continue;
        }
        let p: Vec<BigInt> = r.iter().map(|x| x / &g).collect();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Calls `f` on every `k`-subset of `0..n` (lexicographic) until it returns true.
pub(crate) fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if rec(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    if k > n {
        return false;
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f)
}
