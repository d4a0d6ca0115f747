//! Extended weighted blow-ups of torus quotients at monomial centers.
//!
//! For a center `(Z, a)` the two-sided Rees algebra of the weighted ideal
//! sequence `I_n = (x^e : Σ a_j e_j ≥ n)` is a polynomial ring: each `x_j`
//! with `j ∈ Z` becomes `X_j · T^{a_j}`, where `X_j` has Rees degree `a_j`
//! and `T` has Rees degree `−1`. The ambient keeps the coordinate order,
//! `X_j` replacing `x_j` in place, with `T` appended last.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{GitError, Result};
use crate::exec::{self, ScanOptions};
use crate::lattice::{cone_has_point_with, hilbert_basis_bounded, IntMatrix, Strictness};
use crate::torus::{block_extend, is_semistable, limit_cone, CharacterVector, FiniteElement, Support, TorusAction};

/// Monomial degree bound used by the ring-level checks.
pub const DEFAULT_DEGREE_BOUND: usize = 6;

/// Center `{x_j = 0 : j ∈ Z}` with weight `a_j` on each `x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialWeightedCenter {
    coords: Vec<usize>,
    weights: Vec<u64>,
}

impl MonomialWeightedCenter {
    /// `coords` are 0-based and may come in any order; `weights[i]` goes with `coords[i]`.
    pub fn new(coords: Vec<usize>, weights: Vec<u64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(GitError::input("center needs at least one coordinate"));
        }
        if coords.len() != weights.len() {
            return Err(GitError::input("center coords and weights differ in length"));
        }
        if weights.contains(&0) {
            return Err(GitError::input("center weights must be positive"));
        }
        let mut pairs: Vec<(usize, u64)> = coords.into_iter().zip(weights).collect();
        pairs.sort();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(GitError::input("center coordinates repeat"));
        }
        let (coords, weights) = pairs.into_iter().unzip();
        Ok(MonomialWeightedCenter { coords, weights })
    }

    /// Reduced center: all weights 1.
    pub fn reduced(s: &Support) -> Result<Self> {
        Self::new(s.indices().to_vec(), vec![1; s.len()])
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn support(&self) -> Support {
        Support::new(self.coords.iter().copied())
    }

    pub fn weight_of(&self, j: usize) -> Option<u64> {
        self.coords.binary_search(&j).ok().map(|i| self.weights[i])
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    fn weighted_degree(&self, e: &[u32]) -> u64 {
        e.iter().zip(&self.weights).map(|(&x, &a)| x as u64 * a).sum()
    }

    /// Minimal monomial generators of `I_n` (exponents on the center coordinates).
    pub fn ideal_generators(&self, n: u64) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![0; self.coords.len()]];
        }
        let caps: Vec<u32> = self.weights.iter().map(|&a| n.div_ceil(a) as u32).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; caps.len()];
        loop {
            let deg = self.weighted_degree(&cur);
            let minimal = deg >= n && (0..cur.len()).all(|j| cur[j] == 0 || deg - self.weights[j] < n);
            if minimal {
                out.push(cur.clone());
            }
            // odometer over the box
            let mut i = 0;
            loop {
                if i == cur.len() {
                    return out;
                }
                if cur[i] < caps[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Least `d` such that, for every `n ≤ n_max`, `I_n` is generated by the
    /// products `I_k · I_{n−k}` with `1 ≤ k ≤ d` together with `I_1 … I_d`.
    pub fn generation_degree(&self, n_max: u64) -> u64 {
        let mut d = 1;
        for n in 2..=n_max {
            let needs_new = self.ideal_generators(n).iter().any(|e| !self.is_product(e, n, d));
            if needs_new {
                d = n;
            }
        }
        d
    }

    /// Whether `x^e` lies in `Σ_{1≤k≤d} I_k · I_{n−k}`.
    fn is_product(&self, e: &[u32], n: u64, d: u64) -> bool {
        let mut sub = vec![0u32; e.len()];
        loop {
            let w1 = self.weighted_degree(&sub);
            let rest: Vec<u32> = e.iter().zip(&sub).map(|(a, b)| a - b).collect();
            let w2 = self.weighted_degree(&rest);
            let k = w1.min(d).min(n - 1);
            if k >= 1 && w2 + k >= n && sub.iter().any(|&x| x > 0) && rest.iter().any(|&x| x > 0) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == sub.len() {
                    return false;
                }
                if sub[i] < e[i] {
                    sub[i] += 1;
                    break;
                }
                sub[i] = 0;
                i += 1;
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CenterJson {
    coords: Vec<usize>,
    weights: Vec<u64>,
}

impl Serialize for MonomialWeightedCenter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CenterJson { coords: self.coords.iter().map(|c| c + 1).collect(), weights: self.weights.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialWeightedCenter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let j = CenterJson::deserialize(d)?;
        if j.coords.contains(&0) {
            return Err(D::Error::custom("center coordinates are 1-based"));
        }
        MonomialWeightedCenter::new(j.coords.iter().map(|c| c - 1).collect(), j.weights).map_err(D::Error::custom)
    }
}

/// Graded presentation of an extended weighted blow-up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EbPresentation {
    pub base: TorusAction,
    pub center: MonomialWeightedCenter,
    /// Rank `r + 1` action on `A^{N+1}`; the last torus factor is the Rees `G_m`.
    pub ambient: TorusAction,
    /// `(0, …, 0, −1)`.
    pub theta: CharacterVector,
    /// 0-based index of `T` (always `N`); written 1-based as `exceptional_coordinate`.
    #[serde(rename = "exceptional_coordinate", with = "crate::json::one_based")]
    pub exceptional_index: usize,
    /// `x_j ↦ X_j · T^{t_powers[j]}` on each original coordinate.
    pub t_powers: Vec<u64>,
}

pub fn extended_weighted_blowup(a: &TorusAction, c: &MonomialWeightedCenter) -> Result<EbPresentation> {
    let (r, n) = (a.rank(), a.dim());
    if let Some(&m) = c.coords().last() {
        if m >= n {
            return Err(GitError::input(format!("center coordinate {} out of range", m + 1)));
        }
    }
    let t_powers: Vec<u64> = (0..n).map(|j| c.weight_of(j).unwrap_or(0)).collect();
    for g in a.finite_part() {
        if (0..n).any(|j| t_powers[g.perm[j]] != t_powers[j]) {
            return Err(GitError::input("finite part does not preserve the center and its weights"));
        }
    }
    let mut cols: Vec<Vec<BigInt>> = (0..n).map(|j| a.character(j).extended(&[BigInt::from(t_powers[j])]).0).collect();
    let mut t_col = vec![BigInt::zero(); r];
    t_col.push(BigInt::from(-1));
    cols.push(t_col);
    let weights = IntMatrix::from_columns(r + 1, &cols)?;
    let norm = block_extend(a.norm_form());
    let finite = a
        .finite_part()
        .iter()
        .map(|g| {
            let mut perm = g.perm.clone();
            perm.push(n);
            FiniteElement { perm, aut: block_extend(&g.aut) }
        })
        .collect();
    let ambient = TorusAction::with_extras(weights, norm, finite)
        .map_err(|e| GitError::internal(format!("extended blow-up ambient is invalid: {e}")))?;
    let mut theta = CharacterVector::zero(r + 1);
    theta.0[r] = BigInt::from(-1);
    Ok(EbPresentation { base: a.clone(), center: c.clone(), ambient, theta, exceptional_index: n, t_powers })
}

/// Where each part of the ambient sits relative to the exceptional divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalDivisor {
    /// 1-based index of `T`; the divisor is `V(T)`.
    pub coordinate: usize,
    /// Supports lying on `V(T)`: those omitting `T`.
    pub supports_on_divisor: Vec<Support>,
    /// Supports of the closure of the usual exceptional divisor inside the
    /// weighted blow-up: some `X_j` and no `T`.
    pub closure_in_blowup: Vec<Support>,
}

impl EbPresentation {
    pub fn ambient_dim(&self) -> usize {
        self.exceptional_index + 1
    }

    /// Image under the section `T = 1` of a point with support `s`.
    pub fn section_support(&self, s: &Support) -> Support {
        s.with(self.exceptional_index)
    }

    /// Support of the image under the projection `x_j = X_j T^{a_j}`.
    pub fn project_support(&self, s: &Support) -> Support {
        let t = self.exceptional_index;
        let has_t = s.contains(t);
        Support::new(s.indices().iter().copied().filter(|&i| i != t && (has_t || self.t_powers[i] == 0)))
    }

    /// Rees degree of an ambient monomial.
    pub fn rees_degree(&self, e: &[u32]) -> i64 {
        let t = self.exceptional_index;
        self.t_powers.iter().zip(e).map(|(&a, &x)| a as i64 * x as i64).sum::<i64>() - e[t] as i64
    }

    /// Pullback of an original monomial `x^e` to the ambient.
    pub fn substitute(&self, e: &[u32]) -> Vec<u32> {
        let mut out = e.to_vec();
        out.push(self.t_powers.iter().zip(e).map(|(&a, &x)| a as u32 * x).sum());
        out
    }

    fn is_blowup_support(&self, s: &Support) -> bool {
        s.indices().iter().any(|&i| i != self.exceptional_index && self.t_powers[i] > 0)
    }

    /// Supports containing some `X_j`.
    pub fn weighted_blowup_locus(&self, opts: &ScanOptions) -> Result<Vec<Support>> {
        Ok(opts.supports(self.ambient_dim())?.into_iter().filter(|s| self.is_blowup_support(s)).collect())
    }

    /// θ-semistability tested only against the Rees cocharacters `(0, …, 0, t)`.
    pub fn is_relatively_semistable(&self, s: &Support) -> Result<bool> {
        let r = self.base.rank();
        let mut cone = limit_cone(&self.ambient, s)?;
        for i in 0..r {
            let mut e = vec![BigInt::zero(); r + 1];
            e[i] = BigInt::from(1);
            cone = cone.with_equality(&e);
        }
        Ok(!cone_has_point_with(&cone, &self.theta.0, Strictness::Strict, false)?)
    }

    /// θ-semistable supports for the whole rank-`(r+1)` torus.
    pub fn saturated_locus(&self, opts: &ScanOptions) -> Result<Vec<Support>> {
        let all = opts.supports(self.ambient_dim())?;
        let flags = exec::try_map(opts.exec, &all, |s| is_semistable(&self.ambient, &self.theta, s))?;
        Ok(all.into_iter().zip(flags).filter_map(|(s, f)| f.then_some(s)).collect())
    }

    pub fn exceptional_divisor(&self, opts: &ScanOptions) -> Result<ExceptionalDivisor> {
        let t = self.exceptional_index;
        let on: Vec<Support> = opts.supports(self.ambient_dim())?.into_iter().filter(|s| !s.contains(t)).collect();
        let closure = on.iter().filter(|s| self.is_blowup_support(s)).cloned().collect();
        Ok(ExceptionalDivisor { coordinate: t + 1, supports_on_divisor: on, closure_in_blowup: closure })
    }

    /// Checks that Rees-degree-0 ambient monomials of degree `≤ bound` in the
    /// non-`T` variables are exactly the substituted original monomials.
    pub fn degree_zero_matches(&self, bound: usize) -> bool {
        let n = self.base.dim();
        let mut originals: BTreeSet<Vec<u32>> = BTreeSet::new();
        for deg in 0..=bound {
            crate::lattice::for_each_exponent(n, deg, &mut |e| {
                originals.insert(self.substitute(e));
            });
        }
        let t_max = bound as u64 * self.center.max_weight();
        let mut degree_zero: BTreeSet<Vec<u32>> = BTreeSet::new();
        for deg in 0..=bound {
            crate::lattice::for_each_exponent(n, deg, &mut |e| {
                for t in 0..=t_max as u32 {
                    let mut m = e.to_vec();
                    m.push(t);
                    if self.rees_degree(&m) == 0 {
                        degree_zero.insert(m);
                    }
                }
            });
        }
        // setting T = 1 must also invert the substitution
        let roundtrip = degree_zero.iter().all(|m| self.substitute(&m[..n]) == *m);
        roundtrip && originals == degree_zero
    }
}

/// Invariant monomials (good moduli space) of an action up to a degree bound,
/// as the Hilbert basis of the invariant semigroup.
pub fn invariant_hilbert_basis(a: &TorusAction, bound: usize) -> Result<BTreeSet<Vec<u32>>> {
    hilbert_basis_bounded(a.weights(), bound)
}
