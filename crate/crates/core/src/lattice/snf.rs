use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::IntMatrix;

/// `left * m * right == diagonal(diag)` with `left`, `right` unimodular and
/// `diag[0] | diag[1] | ...`. Trailing zeros are included, so
/// `diag.len() == min(rows, cols)`.
#[derive(Clone, Debug, Serialize)]
pub struct SmithDecomposition {
    #[serde(with = "crate::json::int_vec")]
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Nonzero diagonal entries greater than one.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| **d > BigInt::from(1)).cloned().collect()
    }

    /// The diagonal matrix `left * m * right`.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let t = m[(i, c)].clone();
                m[(i, c)] = m[(j, c)].clone();
                m[(j, c)] = t;
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let t = m[(r, i)].clone();
                m[(r, i)] = m[(r, j)].clone();
                m[(r, j)] = t;
            }
        }
    }

    /// row_i += f * row_j
    fn add_row(&mut self, i: usize, j: usize, f: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let t = f * &m[(j, c)];
                m[(i, c)] += t;
            }
        }
    }

    /// col_i += f * col_j
    fn add_col(&mut self, i: usize, j: usize, f: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let t = f * &m[(r, j)];
                m[(r, i)] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                m[(i, c)] = -m[(i, c)].clone();
            }
        }
    }
}

/// Smith normal form by repeated pivot-and-reduce over the integers.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work { a: m.clone(), u: IntMatrix::identity(rows), v: IntMatrix::identity(cols) };
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // smallest nonzero absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &w.a[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // trailing block is zero: done
                return finish(w, n);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[(i, t)].is_zero() {
                    let q = w.a[(i, t)].div_floor(&w.a[(t, t)]);
                    w.add_row(i, t, &-q);
                    if !w.a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a[(t, j)].is_zero() {
                    let q = w.a[(t, j)].div_floor(&w.a[(t, t)]);
                    w.add_col(j, t, &-q);
                    if !w.a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let piv = w.a[(t, t)].clone();
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&piv)));
            match offending {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w, n)
}

fn finish(w: Work, n: usize) -> SmithDecomposition {
    let diag = (0..n).map(|i| w.a[(i, i)].clone()).collect();
    SmithDecomposition { diag, left: w.u, right: w.v }
}
