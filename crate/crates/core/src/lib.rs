//! Exact p-adic dynamics of quadratic rational maps.
//!
//! The crate is organized in four layers:
//!
//! * [`padic`] — exact rationals with p-adic valuations, the value-group
//!   radius type `p^Q ∪ {0}`, Hensel square roots and residue enumeration
//!   for balls in `Q_p`.
//! * [`maps`] — the family of degree-(2,2) rational maps with a unique fixed
//!   point: canonical form, exact evaluation and iteration, the invariants
//!   `(α, β, δ)`, the one-step norm identity and preimage solving.
//! * [`dynamics`] — the induced piecewise real maps on radii, sphere
//!   classification, Siegel disks, pole-preimage radii, and the
//!   cross-validator that checks predicted radius trajectories against
//!   certified exact iteration.
//! * [`ergodic`] — the `d = a` subfamily on `Q_p`: invariant spheres,
//!   displacement radii, ball isometries, Haar measure and non-ergodicity
//!   witnesses.
//!
//! All arithmetic is exact: points are arbitrary-precision reduced fractions,
//! radii are exact rational exponents, and every reported verdict is decided
//! by an exact comparison. No floating point appears anywhere.

pub mod dynamics;
pub mod ergodic;
pub mod maps;
pub mod padic;
pub mod sampling;

pub use padic::{ExactScalar, PadicContext, PadicError, Radius, ResidueSet, Valuation};
