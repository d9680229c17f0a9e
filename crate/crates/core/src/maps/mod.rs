//! The degree-(2,2) rational map family with a unique fixed point.
//!
//! A [`GeneralMap`] is f(x) = (ax² + bx + c)/(x² + dx + e) with a ≠ 0 and a
//! nondegeneracy condition ruling out constant maps. When the fixed-point
//! cubic collapses to a perfect cube the map has the unique fixed point
//! x0 = (a−d)/3 and canonicalizes to a [`CanonicalMap`] determined by
//! (a, b, d) alone. The derived quantities δ = |(2a+d)/3|, α = |x0−x1|,
//! β = |x0−x2| (x1, x2 the denominator roots) drive all radius dynamics and
//! live in [`MapInvariants`].

mod canonical;
mod general;
mod invariants;
pub mod orbit;

pub use canonical::{
    CanonicalMap, EvalOutcome, OrbitPoint, PreimageMarker, PreimageSet, TrajectoryEntry,
    TrajectoryRecord,
};
pub use general::GeneralMap;
pub use invariants::{quadratic_root_norms, CaseTag, MapInvariants, PoleData, PoleRoot};

use thiserror::Error;

use crate::padic::PadicError;

/// Errors from map construction and the point-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("leading coefficient a must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("degenerate map: b = ad and c = ae collapse f to the constant a")]
    Degenerate,
    #[error("map has no unique fixed point")]
    NoUniqueFixedPoint,
    #[error("the fixed point (a-d)/3 is a root of the denominator; the map degenerates")]
    FixedPointIsPole,
    #[error("step norm identity is only defined away from the fixed point")]
    AtFixedPoint,
    #[error("operation is only defined at non-pole points")]
    AtPole,
    #[error("preimages of y = a are excluded (the preimage equation degenerates)")]
    PreimageOfLeadingCoefficient,
    #[error("orbit unresolved at step {step}: precision exhausted at level {level}")]
    OrbitUnresolved { step: usize, level: u32 },
    #[error(transparent)]
    Padic(#[from] PadicError),
}
