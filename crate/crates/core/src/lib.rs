//! Exact geometric invariant theory for diagonal torus actions.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: Smith normal form, Fourier–Motzkin cone feasibility and
//!   bounded Hilbert bases, all over arbitrary-precision integers.
//! * [`torus`]: torus actions on affine space, Hilbert–Mumford
//!   (semi)stability, normalized minima, stabilizers and the combination of
//!   linearizations.
//! * [`walls`]: the wall arrangement in character space and generic characters.
//! * [`rees`]: extended weighted blow-ups at monomial centers.
//! * [`desing`]: iterated extended blow-ups ending in a Deligne–Mumford
//!   semistable locus.
//! * [`quasimap`]: dual-graph stability predicates for quasimaps from twisted
//!   curves, binary forms and pencils of plane cubics.
//! * [`luna`]: slices at torus-fixed points and the plane-cubic certificate.
//!
//! Semistability is always a property of a [`torus::Support`]: for a
//! diagonal action, whether `lim λ(t)·x` exists depends only on which
//! coordinates of `x` are nonzero.

pub mod desing;
pub mod error;
pub mod exec;
pub mod json;
pub mod lattice;
pub mod luna;
pub mod quasimap;
pub mod rees;
pub mod torus;
pub mod walls;

pub use error::{GitError, Result};
