//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use toric_git::lattice::{cone_has_point_with, rank, IntMatrix, Strictness};
use toric_git::quasimap::{Edge, Leg, TwistedCurveGraph, Vertex, L_DM, L_X};
use toric_git::torus::{is_semistable, limit_cone, CharacterVector, Support, TorusAction};

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_action(rng: &mut ChaCha8Rng, r: usize, n: usize, bound: i64) -> TorusAction {
    let cols: Vec<Vec<i64>> = (0..n).map(|_| (0..r).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    TorusAction::from_columns(r, &cols).unwrap()
}

/// Random action whose weight matrix has full rank `r` (requires `n ≥ r`).
pub fn random_full_rank_action(rng: &mut ChaCha8Rng, r: usize, n: usize, bound: i64) -> TorusAction {
    loop {
        let a = random_action(rng, r, n, bound);
        if rank(a.weights()) == r {
            return a;
        }
    }
}

pub fn random_character(rng: &mut ChaCha8Rng, r: usize, bound: i64) -> CharacterVector {
    CharacterVector::from_i64(&(0..r).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

/// Supports semistable for `chi_l` on which no `λ` in the limit cone with
/// `⟨λ, χ_L⟩ = 0` has `⟨λ, χ_M⟩ > 0`.
pub fn two_step_locus(a: &TorusAction, chi_l: &CharacterVector, chi_m: &CharacterVector) -> Vec<Support> {
    toric_git::torus::all_supports(a.dim())
        .into_iter()
        .filter(|s| {
            if !is_semistable(a, chi_l, s).unwrap() {
                return false;
            }
            let face = limit_cone(a, s).unwrap().with_equality(&chi_l.0);
            !cone_has_point_with(&face, &chi_m.0, Strictness::Strict, false).unwrap()
        })
        .collect()
}

/// Invariant factors as quotients `d_k / d_{k−1}` of determinantal divisors
/// (gcd of all `k × k` minors).
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d_prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor = m.select_rows(&rs).select_columns(&cs).det().unwrap();
                g = g.gcd(&minor);
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &d_prev);
        d_prev = g;
    }
    out
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exponent vectors of total degree exactly `deg` in `n` variables.
pub fn monomials(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in monomials(n - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Irreducible invariant monomials up to `bound`, by brute force: an
/// invariant is reducible iff it is a sum of two nonzero invariants.
pub fn brute_force_hilbert_basis(w: &IntMatrix, bound: u32) -> Vec<Vec<u32>> {
    let n = w.cols();
    let invariant =
        |e: &[u32]| (0..w.rows()).all(|i| (0..n).map(|j| &w[(i, j)] * BigInt::from(e[j])).sum::<BigInt>().is_zero());
    let mut inv: Vec<Vec<u32>> = Vec::new();
    for d in 1..=bound {
        inv.extend(monomials(n, d).into_iter().filter(|e| invariant(e)));
    }
    inv.iter()
        .filter(|e| {
            !inv.iter().any(|f| {
                f != *e && f.iter().zip(e.iter()).all(|(a, b)| a <= b) && {
                    let g: Vec<u32> = e.iter().zip(f).map(|(a, b)| a - b).collect();
                    invariant(&g)
                }
            })
        })
        .cloned()
        .collect()
}

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

/// Random connected dual graph with at most `max_v` vertices, `L_X` and `L`
/// tracked, such that leaving the DM locus forces positive `L`-degree,
/// `L`-degrees are nonnegative and the total genus is not 1.
pub fn random_graph(rng: &mut ChaCha8Rng, max_v: usize) -> TwistedCurveGraph {
    loop {
        let nv = rng.gen_range(1..=max_v);
        let mut edges = Vec::new();
        for v in 1..nv {
            edges.push(Edge { endpoints: (rng.gen_range(0..v), v), index: rng.gen_range(1..=3) });
        }
        for _ in 0..rng.gen_range(0..=2) {
            let a = rng.gen_range(0..nv);
            let b = rng.gen_range(0..nv);
            edges.push(Edge { endpoints: (a, b), index: rng.gen_range(1..=3) });
        }
        let mut legs = Vec::new();
        for _ in 0..rng.gen_range(0..=4) {
            legs.push(Leg { vertex: rng.gen_range(0..nv), index: rng.gen_range(1..=3) });
        }
        let lcm = |v: usize| {
            let mut l: i64 = 1;
            for e in &edges {
                if e.endpoints.0 == v || e.endpoints.1 == v {
                    l = l.lcm(&(e.index as i64));
                }
            }
            for g in &legs {
                if g.vertex == v {
                    l = l.lcm(&(g.index as i64));
                }
            }
            l
        };
        let vertices: Vec<Vertex> = (0..nv)
            .map(|v| {
                let l = lcm(v);
                let genus = if rng.gen_bool(0.8) { 0 } else { rng.gen_range(1..=2) };
                let in_dm = rng.gen_bool(0.6);
                let deg_lx = if rng.gen_bool(0.5) { q(0, 1) } else { q(rng.gen_range(0..=2 * l), l) };
                let deg_l = if in_dm {
                    if rng.gen_bool(0.5) {
                        q(0, 1)
                    } else {
                        q(rng.gen_range(0..=2 * l), l)
                    }
                } else {
                    q(rng.gen_range(1..=2 * l), l)
                };
                Vertex::new(genus, in_dm).with_degree(L_X, deg_lx).with_degree(L_DM, deg_l)
            })
            .collect();
        let g = TwistedCurveGraph::new(vertices, edges, legs, vec![L_X.into(), L_DM.into()]).unwrap();
        if g.total_genus() != 1 {
            return g;
        }
    }
}

/// Vertex subsets spanning a connected subgraph.
pub fn connected_subsets(g: &TwistedCurveGraph) -> Vec<Vec<usize>> {
    let n = g.vertices().len();
    (1u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|keep| g.subcurve(keep).is_ok())
        .collect()
}
