use std::fmt;

use crate::padic::Radius;

/// Point-dependent boundary values of the piecewise radius maps.
///
/// Each piecewise map names its own symbols (the star family for α=β>δ and
/// α<β,δ<α; primes for α=β<δ and α<β,δ=α; hats for the α=δ regimes; bars for
/// δ=β; tildes for δ>β). The theorem-level statements reuse the star family
/// on r ∈ {α, β} for every α<β regime; [`super::classify_sphere`] follows
/// that convention while [`super::RadiusMapSpec::step`] reports the
/// per-function symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryKind {
    AlphaStar,
    BetaStar,
    DeltaStar,
    AlphaPrime,
    BetaPrime,
    DeltaPrime,
    AlphaHat,
    BetaHat,
    DeltaHat,
    AlphaBar,
    BetaBar,
    AlphaTilde,
    BetaTilde,
    DeltaTilde,
}

impl BoundaryKind {
    pub fn label(self) -> &'static str {
        match self {
            BoundaryKind::AlphaStar => "alpha_star",
            BoundaryKind::BetaStar => "beta_star",
            BoundaryKind::DeltaStar => "delta_star",
            BoundaryKind::AlphaPrime => "alpha_prime",
            BoundaryKind::BetaPrime => "beta_prime",
            BoundaryKind::DeltaPrime => "delta_prime",
            BoundaryKind::AlphaHat => "alpha_hat",
            BoundaryKind::BetaHat => "beta_hat",
            BoundaryKind::DeltaHat => "delta_hat",
            BoundaryKind::AlphaBar => "alpha_bar",
            BoundaryKind::BetaBar => "beta_bar",
            BoundaryKind::AlphaTilde => "alpha_tilde",
            BoundaryKind::BetaTilde => "beta_tilde",
            BoundaryKind::DeltaTilde => "delta_tilde",
        }
    }
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Defining bound a boundary value must obey, when the regime implies one.
///
/// Resolved values from concrete points always satisfy these; a value of
/// exactly zero (the point maps onto the fixed point) is possible only at
/// spots without a lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryConstraint {
    Free,
    AtLeast(Radius),
    AtMost(Radius),
}

impl BoundaryConstraint {
    pub fn allows(&self, value: &Radius) -> bool {
        match self {
            BoundaryConstraint::Free => true,
            BoundaryConstraint::AtLeast(b) => value >= b,
            BoundaryConstraint::AtMost(b) => value <= b,
        }
    }
}
