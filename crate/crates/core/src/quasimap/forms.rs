use serde::{Deserialize, Serialize};

use crate::error::{GitError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormsMode {
    Semistable,
    StableDm,
}

/// Degree-`2n` divisor on `P^1` with the given point multiplicities: every
/// multiplicity `≤ n` (semistable) or `≤ n − 1` (DM).
pub fn check_binary_forms(mults: &[u32], n: u32, mode: FormsMode) -> Result<bool> {
    if mults.contains(&0) {
        return Err(GitError::input("multiplicities must be positive"));
    }
    let total: u64 = mults.iter().map(|&m| m as u64).sum();
    if total != 2 * n as u64 {
        return Err(GitError::input(format!("multiplicities sum to {total}, expected 2n = {}", 2 * n as u64)));
    }
    let max = mults.iter().copied().max().unwrap_or(0);
    Ok(match mode {
        FormsMode::Semistable => max <= n,
        FormsMode::StableDm => n >= 1 && max < n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicAmbient {
    SmoothP1,
    TwistedConic,
}

/// Divisor of degree `2n` on a smooth conic or on a union of two lines,
/// given by its point multiplicities on each component (none at the node).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorConfig {
    pub ambient: ConicAmbient,
    pub components: Vec<Vec<u32>>,
    pub n: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicVerdict {
    pub valid: bool,
    pub dm: bool,
}

pub fn check_twisted_conic(cfg: &DivisorConfig) -> Result<ConicVerdict> {
    let expected = match cfg.ambient {
        ConicAmbient::SmoothP1 => 1,
        ConicAmbient::TwistedConic => 2,
    };
    if cfg.components.len() != expected {
        return Err(GitError::input(format!(
            "{:?} has {expected} component(s), got {}",
            cfg.ambient,
            cfg.components.len()
        )));
    }
    if cfg.n == 0 {
        return Err(GitError::input("n must be positive"));
    }
    if cfg.components.iter().flatten().any(|&m| m == 0) {
        return Err(GitError::input("multiplicities must be positive"));
    }
    let n = cfg.n as u64;
    let totals: Vec<u64> = cfg.components.iter().map(|c| c.iter().map(|&m| m as u64).sum()).collect();
    let total: u64 = totals.iter().sum();
    if total != 2 * n {
        return Err(GitError::input(format!("total multiplicity {total}, expected 2n = {}", 2 * n)));
    }
    let max = cfg.components.iter().flatten().copied().max().unwrap_or(0) as u64;
    let valid = totals.iter().all(|&t| t >= n) && max <= n;
    Ok(ConicVerdict { valid, dm: valid && max < n })
}
