//! Support scans fan out over rayon when the `parallel` feature is on.
//!
//! Every scan collects results in input order, so output is identical in
//! both modes.

/// How to run an embarrassingly parallel scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Falls back to sequential when the crate is built without `parallel`.
    #[default]
    Parallel,
}

/// Default cap on the number of supports a single scan may enumerate.
pub const DEFAULT_MAX_SUPPORTS: u64 = 1 << 20;

/// Settings shared by every computation that enumerates supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub exec: Exec,
    /// Scans over `2^N` supports are declined when `2^N` exceeds this.
    pub max_supports: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { exec: Exec::default(), max_supports: DEFAULT_MAX_SUPPORTS }
    }
}

impl ScanOptions {
    pub fn sequential() -> Self {
        ScanOptions { exec: Exec::Sequential, ..Self::default() }
    }

    /// All supports of an `n`-dimensional space, or `Declined` past the cap.
    pub fn supports(&self, n: usize) -> crate::Result<Vec<crate::torus::Support>> {
        if n >= 63 || (1u64 << n) > self.max_supports {
            return Err(crate::GitError::Declined(format!(
                "{n} coordinates give 2^{n} supports, above the limit of {}",
                self.max_supports
            )));
        }
        Ok(crate::torus::all_supports(n))
    }
}

/// Order-preserving map over a slice.
pub fn map<T, U, F>(mode: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Order-preserving fallible map; returns the first error in input order.
pub fn try_map<T, U, E, F>(mode: Exec, items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    map(mode, items, f).into_iter().collect()
}
