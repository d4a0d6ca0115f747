use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::graph::{TwistedCurveGraph, L_DM, L_X};
use crate::error::{GitError, Result};

/// Number of singular fibres in a general pencil of plane cubics.
pub const PENCIL_MARKINGS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DvrLift {
    /// Common order `min(orders)` divided out by the blow-up.
    pub m: u64,
    pub lifted_orders: Vec<u64>,
    /// Coordinate `j` still vanishes at the special point after lifting.
    pub on_axis: Vec<bool>,
    /// The lift meets the proper transform of some axis.
    pub meets_axis: bool,
}

/// Lifts a map from a DVR sending the special point to the origin.
pub fn dvr_lift(orders: &[u64]) -> Result<DvrLift> {
    if orders.is_empty() {
        return Err(GitError::input("need at least one coordinate"));
    }
    if orders.contains(&0) {
        return Err(GitError::input("vanishing orders must be at least 1"));
    }
    let m = *orders.iter().min().expect("nonempty");
    let lifted_orders: Vec<u64> = orders.iter().map(|o| o - m).collect();
    let on_axis: Vec<bool> = orders.iter().map(|&o| o > m).collect();
    let meets_axis = on_axis.iter().any(|&b| b);
    Ok(DvrLift { m, lifted_orders, on_axis, meets_axis })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilVertex {
    pub vertex: usize,
    pub legs: usize,
    #[serde(with = "crate::json::rational")]
    pub deg_lx: BigRational,
    #[serde(with = "crate::json::rational")]
    pub deg_l: BigRational,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilReport {
    pub passed: bool,
    pub vertices: Vec<PencilVertex>,
}

/// Checks `deg L_X = (legs) + 3 · deg L` on every component.
pub fn check_pencil_degrees(g: &TwistedCurveGraph) -> Result<PencilReport> {
    if !g.tracks(L_DM) {
        return Err(GitError::input(format!("the bundle {L_DM:?} must be tracked")));
    }
    if g.legs().len() != PENCIL_MARKINGS {
        return Err(GitError::input(format!(
            "a pencil of cubics has {PENCIL_MARKINGS} markings, got {}",
            g.legs().len()
        )));
    }
    let three = BigRational::from_integer(3.into());
    let vertices: Vec<PencilVertex> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, vert)| {
            let legs = g.legs_at(v);
            let deg_lx = vert.degree(L_X);
            let deg_l = vert.degree(L_DM);
            let passed = deg_lx == BigRational::from_integer(legs.into()) + &three * &deg_l;
            PencilVertex { vertex: v, legs, deg_lx, deg_l, passed }
        })
        .collect();
    Ok(PencilReport { passed: vertices.iter().all(|v| v.passed), vertices })
}
