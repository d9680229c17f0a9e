//! Radius-level dynamics.
//!
//! On every sphere S_r(x0) the one-step norm identity collapses the p-adic
//! dynamics to a piecewise real map of the radius r, parametrized by
//! (α, β, δ). This module implements the eight piecewise maps (one per
//! parameter regime), sphere classification with Siegel radii, the
//! pole-preimage radius formulas and set bounds, and the cross-validator
//! that replays a concrete orbit against the predicted radius trajectory.
//!
//! Boundary spheres (r ∈ {α, β, αβ/δ, α²/δ}) carry point-dependent values:
//! in symbolic mode a step onto them yields a [`BoundaryKind`] marker instead
//! of an invented radius; a resolver (a concrete orbit, or supplied
//! constants) turns the marker into the exact value |f(x) − x0|.

mod boundary;
mod classify;
mod crosscheck;
mod poles;
mod radius_map;
pub mod verify;

pub use boundary::{BoundaryConstraint, BoundaryKind};
pub use classify::{classify_sphere, siegel_radius, SphereFate};
pub use crosscheck::{crosscheck_trajectory, CrosscheckMismatch, CrosscheckReport};
pub use poles::{pole_radius, pole_set_bounds, PoleSetBounds, RadiusSet};
pub use radius_map::{BoundaryPolicy, RadiusMapSpec, RadiusParams, StepOutcome};

use thiserror::Error;

use crate::maps::MapError;
use crate::padic::PadicError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("invalid radius parameters for case {case}: {detail}")]
    InvalidParams { case: String, detail: String },
    #[error("operation requires case {expected}, map is {got}")]
    WrongCase { expected: String, got: String },
    #[error("radius must be positive")]
    ZeroRadius,
    #[error("boundary value for {kind} violates its defining bound")]
    BadBoundaryValue { kind: BoundaryKind },
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Map(#[from] MapError),
}
