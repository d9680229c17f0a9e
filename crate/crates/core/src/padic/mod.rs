//! Exact p-adic arithmetic substrate.
//!
//! A [`PadicContext`] fixes the prime `p` and a default working precision.
//! Points are [`ExactScalar`] (arbitrary-precision reduced fractions), norms
//! live in the value group `p^Q ∪ {0}` represented by [`Radius`], and finite
//! shadows of balls are [`ResidueSet`]s of representatives modulo `p^N`.

mod arith;
mod hensel;
mod radius;
mod scalar;

pub(crate) use arith::{int_valuation, mod_inverse};
pub use arith::ResidueSet;
pub use radius::Radius;
pub use scalar::ExactScalar;

use num_bigint::BigInt;
use thiserror::Error;

/// Errors from the p-adic arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("working precision must be at least 1")]
    InvalidLevel,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
    #[error("operation rejects zero input")]
    ZeroInput,
    #[error("{0} has odd {1}-adic valuation, no square root in Q_{1}")]
    OddValuation(ExactScalar, u64),
    #[error("{0} is not a square in Q_{1}")]
    NonSquare(ExactScalar, u64),
    #[error("{0} has negative {1}-adic valuation at the requested scale")]
    NegativeValuation(ExactScalar, u64),
    #[error("radius exponent {0} is not an integer; balls in Q_p carry integer-exponent radii")]
    FractionalExponent(String),
    #[error("radius exponent {got} exceeds the enumeration level {level}")]
    LevelTooSmall { got: i64, level: u32 },
    #[error("radius p^{exp} is larger than 1; rescale the center first")]
    RadiusAboveOne { exp: i64 },
    #[error("zero radius cannot be raised to a non-positive power")]
    ZeroRadiusPower,
    #[error("division by the zero radius")]
    ZeroRadiusDivision,
}

/// A prime together with a default working residue precision (base-p digits).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicContext {
    p: u64,
    default_level: u32,
}

impl PadicContext {
    /// A context for the prime `p`. The primality check is deterministic
    /// trial division; inputs are desk-scale primes.
    pub fn new(p: u64, default_level: u32) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if default_level == 0 {
            return Err(PadicError::InvalidLevel);
        }
        Ok(PadicContext { p, default_level })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn default_level(&self) -> u32 {
        self.default_level
    }

    pub(crate) fn prime_big(&self) -> BigInt {
        BigInt::from(self.p)
    }

    /// p^k as a big integer.
    pub(crate) fn prime_pow(&self, k: u32) -> BigInt {
        self.prime_big().pow(k)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Additive p-adic valuation; infinite exactly for the zero scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }
}

impl PadicContext {
    /// v_p(x): the exponent of p in the numerator minus the exponent of p in
    /// the denominator; infinite for x = 0.
    pub fn valuation(&self, x: &ExactScalar) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinite;
        }
        let p = self.prime_big();
        let vn = arith::int_valuation(x.numer(), &p);
        let vd = arith::int_valuation(x.denom(), &p);
        Valuation::Finite(vn as i64 - vd as i64)
    }

    /// |x|_p = p^{-v_p(x)}, with |0|_p the zero radius.
    pub fn norm(&self, x: &ExactScalar) -> Radius {
        match self.valuation(x) {
            Valuation::Infinite => Radius::zero(),
            Valuation::Finite(v) => Radius::from_int_exponent(-v),
        }
    }

    /// |x - y|_p.
    pub fn distance(&self, x: &ExactScalar, y: &ExactScalar) -> Radius {
        self.norm(&(x - y))
    }
}
