//! Stability conditions for quasimaps, read off dual graphs with degree data,
//! and the combinatorial rules for binary forms, conics and pencils of cubics.

mod cubics;
mod forms;
mod graph;
mod stability;

pub use cubics::{check_pencil_degrees, dvr_lift, DvrLift, PencilReport, PencilVertex, PENCIL_MARKINGS};
pub use forms::{check_binary_forms, check_twisted_conic, ConicAmbient, ConicVerdict, DivisorConfig, FormsMode};
pub use graph::{Edge, Leg, TwistedCurveGraph, Vertex, L_DM, L_X};
pub use stability::{
    epsilon_ample_equivalent, is_stable_quasimap, nef_degree, omega_log_degree, StabilityVerdict, Violation,
};
