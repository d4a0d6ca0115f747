//! Walls in character space and generic characters.
//!
//! A reference torus `G_m^n` maps to the acting torus by `ψ`, inducing
//! `Ψ: X(G_m^n)_Q → X(T)_Q` (an `r × n` matrix). Walls are preimages under
//! `Ψ` of the hyperplanes of `X(T)_Q` spanned by weight columns. Off the
//! walls every semistable support is stable.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{GitError, Result};
use crate::exec::{self, ScanOptions};
use crate::lattice::{dot, for_each_subset, integer_kernel_basis, rank, IntMatrix};
use crate::torus::{is_semistable, is_stable, CharacterVector, Support, TorusAction};

/// The linear subspace `{μ : ⟨n, μ⟩ = 0 for every normal n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    #[serde(with = "crate::json::int_rows")]
    pub normals: Vec<Vec<BigInt>>,
    /// Weight columns (1-based) spanning the image of the wall in `X(T)_Q`.
    pub spanned_by: Vec<usize>,
}

impl Wall {
    pub fn contains(&self, mu: &[BigInt]) -> bool {
        self.normals.iter().all(|n| dot(n, mu).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallArrangement {
    pub ambient_rank: usize,
    pub psi: IntMatrix,
    pub walls: Vec<Wall>,
}

/// Reduced row echelon form of the row span, as primitive integer rows; a
/// canonical name for a subspace.
fn canonical_span(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let m = IntMatrix::from_big_rows(rows.to_vec(), dim).expect("rows have ambient length");
    // normals of the span, read off a reduced echelon form
    integer_kernel_basis(&m)
}

/// Walls for `a` pulled back along `psi`.
///
/// With `rank W = r` these are the hyperplanes spanned by rank-`(r−1)` sets
/// of weights. When `rank W < r` nothing is semistable off `span W`, and the
/// single wall is `span W` itself.
pub fn compute_walls(a: &TorusAction, psi: &IntMatrix) -> Result<WallArrangement> {
    let r = a.rank();
    if psi.rows() != r {
        return Err(GitError::input(format!("psi must have {r} rows, one per torus coordinate")));
    }
    if rank(psi) != r {
        return Err(GitError::input("psi must have rank equal to the torus rank (finite kernel)"));
    }
    let cols = a.weights().columns();
    let n = psi.cols();
    let mut spans: Vec<(Vec<Vec<BigInt>>, Vec<usize>)> = Vec::new();
    let mut push = |idx: &[usize]| {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&j| cols[j].clone()).collect();
        // normals of span(rows) in X(T)_Q
        let normals = canonical_span(&rows, r);
        if !spans.iter().any(|(s, _)| *s == normals) {
            spans.push((normals, idx.iter().map(|j| j + 1).collect()));
        }
    };
    if rank(a.weights()) < r {
        push(&(0..a.dim()).collect::<Vec<_>>());
    } else if r > 0 {
        for_each_subset(cols.len(), r - 1, &mut |idx| {
            let sub = IntMatrix::from_big_rows(idx.iter().map(|&j| cols[j].clone()).collect(), r)
                .expect("columns have rank length");
            if rank(&sub) == r - 1 {
                push(idx);
            }
            false
        });
    }
    let psi_t = psi.transpose();
    let walls = spans
        .into_iter()
        .map(|(normals, spanned_by)| Wall { normals: normals.iter().map(|v| psi_t.mul_vec(v)).collect(), spanned_by })
        .collect();
    Ok(WallArrangement { ambient_rank: n, psi: psi.clone(), walls })
}

impl WallArrangement {
    pub fn is_generic(&self, mu: &CharacterVector) -> Result<bool> {
        if mu.len() != self.ambient_rank {
            return Err(GitError::input(format!(
                "character has length {} but the reference torus has rank {}",
                mu.len(),
                self.ambient_rank
            )));
        }
        Ok(!self.walls.iter().any(|w| w.contains(&mu.0)))
    }

    /// `Ψ μ`, the character of the acting torus.
    pub fn pull(&self, mu: &CharacterVector) -> CharacterVector {
        CharacterVector(self.psi.mul_vec(&mu.0))
    }

    /// First vector off every wall, by height and then lexicographically with
    /// entries ordered `0, 1, −1, 2, −2, …`.
    pub fn find_generic_character(&self, height_bound: u64) -> Result<CharacterVector> {
        let n = self.ambient_rank;
        for h in 0..=height_bound {
            let mut found = None;
            let mut cur = Vec::with_capacity(n);
            search_height(n, h as i64, &mut cur, false, &mut |v| {
                let mu = CharacterVector::from_i64(v);
                if !self.walls.iter().any(|w| w.contains(&mu.0)) {
                    found = Some(mu);
                    return true;
                }
                false
            });
            if let Some(mu) = found {
                return Ok(mu);
            }
        }
        Err(GitError::NoGenericFound { bound: height_bound, walls: self.walls.len() })
    }
}

fn entry_order(h: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=h).flat_map(|k| [k, -k]))
}

/// Visits vectors with max-norm exactly `h` in the search order; stops when
/// `f` returns true.
fn search_height(n: usize, h: i64, cur: &mut Vec<i64>, hit: bool, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
    if cur.len() == n {
        return (hit || h == 0) && f(cur);
    }
    for x in entry_order(h) {
        let remaining = n - cur.len() - 1;
        let now_hit = hit || x.abs() == h;
        if !now_hit && remaining == 0 && h > 0 {
            continue;
        }
        cur.push(x);
        let stop = search_height(n, h, cur, now_hit, f);
        cur.pop();
        if stop {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsEqualsS {
    pub holds: bool,
    pub counterexample: Option<Support>,
}

/// Checks that every semistable support is stable. Supports are scanned by
/// decreasing size, then lexicographically; the first failure is reported.
pub fn verify_ss_equals_s(a: &TorusAction, mu: &CharacterVector, opts: &ScanOptions) -> Result<SsEqualsS> {
    a.check_character(mu)?;
    let mut all = opts.supports(a.dim())?;
    all.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
    let bad =
        exec::try_map(opts.exec, &all, |s| -> Result<bool> { Ok(is_semistable(a, mu, s)? && !is_stable(a, mu, s)?) })?;
    let counterexample = all.into_iter().zip(bad).find_map(|(s, b)| b.then_some(s));
    Ok(SsEqualsS { holds: counterexample.is_none(), counterexample })
}

/// Whether `chi` (a character of the acting torus) is proportional to some
/// weight, zero included.
pub fn on_weight_line(a: &TorusAction, chi: &CharacterVector) -> bool {
    if chi.is_zero() {
        return true;
    }
    (0..a.dim()).any(|j| {
        let w = a.weights().column(j);
        let m = IntMatrix::from_big_rows(vec![w, chi.0.clone()], a.rank()).expect("equal lengths");
        rank(&m) < 2
    })
}
