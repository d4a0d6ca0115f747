use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntMatrix;
use crate::error::{GitError, Result};

/// Minimal generators of `{a in N^N : W a = 0}` of total degree at most
/// `degree_bound`, found by enumerating exponent vectors degree by degree and
/// discarding any vector that dominates an earlier solution.
///
/// For a weight matrix `W` these are the invariant monomials of the torus.
pub fn hilbert_basis_bounded(w: &IntMatrix, degree_bound: usize) -> Result<BTreeSet<Vec<u32>>> {
    if degree_bound == 0 {
        return Err(GitError::input("degree bound must be at least 1"));
    }
    let n = w.cols();
    let cols = w.columns();
    let mut found: Vec<Vec<u32>> = Vec::new();
    for deg in 1..=degree_bound {
        let mut fresh = Vec::new();
        for_each_exponent(n, deg, &mut |a| {
            if dominates_any(a, &found) {
                return;
            }
            let mut acc = vec![BigInt::zero(); w.rows()];
            for (j, &e) in a.iter().enumerate() {
                if e > 0 {
                    for (i, x) in cols[j].iter().enumerate() {
                        acc[i] += x * BigInt::from(e);
                    }
                }
            }
            if acc.iter().all(Zero::is_zero) {
                fresh.push(a.to_vec());
            }
        });
        found.extend(fresh);
    }
    Ok(found.into_iter().collect())
}

fn dominates_any(a: &[u32], found: &[Vec<u32>]) -> bool {
    found.iter().any(|b| b.iter().zip(a).all(|(x, y)| x <= y))
}

/// Every exponent vector of length `n` and total degree exactly `deg`.
pub(crate) fn for_each_exponent(n: usize, deg: usize, f: &mut dyn FnMut(&[u32])) {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            f(cur);
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, f);
        }
    }
    if n == 0 {
        if deg == 0 {
            f(&[]);
        }
        return;
    }
    let mut cur = vec![0u32; n];
    rec(0, deg as u32, &mut cur, f);
}
