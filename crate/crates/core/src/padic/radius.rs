use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::PadicError;

/// An element of the value group `p^Q ∪ {0}`.
///
/// `Exp(e)` denotes the real value `p^e` with `e` an exact rational; `Zero`
/// is a distinguished variant rather than an exponent of −∞. The total order
/// puts `Zero` below every `p^e` and compares exponents otherwise. Radii are
/// closed under multiplication (exponent addition) and rational powers
/// (exponent scaling).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Radius {
    Zero,
    Exp(BigRational),
}

impl Radius {
    pub fn zero() -> Self {
        Radius::Zero
    }

    /// p^0 = 1.
    pub fn one() -> Self {
        Radius::Exp(BigRational::zero())
    }

    pub fn from_exponent(e: BigRational) -> Self {
        Radius::Exp(e)
    }

    pub fn from_int_exponent(e: i64) -> Self {
        Radius::Exp(BigRational::from_integer(BigInt::from(e)))
    }

    /// Exponent e/d as a radius p^(e/d).
    pub fn from_ratio_exponent(e: i64, d: i64) -> Self {
        Radius::Exp(BigRational::new(BigInt::from(e), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Radius::Zero)
    }

    pub fn exponent(&self) -> Option<&BigRational> {
        match self {
            Radius::Zero => None,
            Radius::Exp(e) => Some(e),
        }
    }

    /// The exponent when it is an integer fitting in i64; `None` for the zero
    /// radius or a genuinely fractional exponent.
    pub fn int_exponent(&self) -> Option<i64> {
        match self {
            Radius::Zero => None,
            Radius::Exp(e) => {
                if e.is_integer() {
                    e.numer().to_i64()
                } else {
                    None
                }
            }
        }
    }

    /// r^q for rational q. Zero^q is Zero for q > 0 and an error otherwise.
    pub fn try_pow(&self, q: &BigRational) -> Result<Radius, PadicError> {
        match self {
            Radius::Zero => {
                if q.is_positive() {
                    Ok(Radius::Zero)
                } else {
                    Err(PadicError::ZeroRadiusPower)
                }
            }
            Radius::Exp(e) => Ok(Radius::Exp(e * q)),
        }
    }

    pub fn pow_i(&self, k: i64) -> Result<Radius, PadicError> {
        self.try_pow(&BigRational::from_integer(BigInt::from(k)))
    }

    /// r^(1/2); Zero maps to Zero.
    pub fn sqrt(&self) -> Radius {
        match self {
            Radius::Zero => Radius::Zero,
            Radius::Exp(e) => Radius::Exp(e / BigRational::from_integer(BigInt::from(2))),
        }
    }

    /// r / other; the divisor must be nonzero.
    pub fn try_div(&self, other: &Radius) -> Result<Radius, PadicError> {
        match (self, other) {
            (_, Radius::Zero) => Err(PadicError::ZeroRadiusDivision),
            (Radius::Zero, _) => Ok(Radius::Zero),
            (Radius::Exp(a), Radius::Exp(b)) => Ok(Radius::Exp(a - b)),
        }
    }

    /// Display against a concrete prime, e.g. `5^-2`.
    pub fn display_with(&self, p: u64) -> RadiusDisplay<'_> {
        RadiusDisplay { radius: self, p }
    }
}

impl Mul for &Radius {
    type Output = Radius;
    fn mul(self, rhs: &Radius) -> Radius {
        match (self, rhs) {
            (Radius::Zero, _) | (_, Radius::Zero) => Radius::Zero,
            (Radius::Exp(a), Radius::Exp(b)) => Radius::Exp(a + b),
        }
    }
}

impl Mul for Radius {
    type Output = Radius;
    fn mul(self, rhs: Radius) -> Radius {
        (&self).mul(&rhs)
    }
}

impl PartialOrd for Radius {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Radius {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Radius::Zero, Radius::Zero) => Ordering::Equal,
            (Radius::Zero, Radius::Exp(_)) => Ordering::Less,
            (Radius::Exp(_), Radius::Zero) => Ordering::Greater,
            (Radius::Exp(a), Radius::Exp(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Zero => write!(f, "0"),
            Radius::Exp(e) => write!(f, "p^{}", e),
        }
    }
}

impl fmt::Debug for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub struct RadiusDisplay<'a> {
    radius: &'a Radius,
    p: u64,
}

impl fmt::Display for RadiusDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radius {
            Radius::Zero => write!(f, "0"),
            Radius::Exp(e) => write!(f, "{}^{}", self.p, e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(e: i64) -> Radius {
        Radius::from_int_exponent(e)
    }

    #[test]
    fn multiplication_adds_exponents() {
        assert_eq!(&r(-2) * &r(-1), r(-3));
        assert_eq!(&Radius::Zero * &r(-1), Radius::Zero);
    }

    #[test]
    fn pow_scales_exponents() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(r(-1).try_pow(&half).unwrap(), Radius::from_ratio_exponent(-1, 2));
        assert_eq!(Radius::Zero.try_pow(&half).unwrap(), Radius::Zero);
        assert!(Radius::Zero.pow_i(0).is_err());
        assert!(Radius::Zero.pow_i(-1).is_err());
    }

    #[test]
    fn total_order() {
        assert!(Radius::Zero < r(-9));
        assert!(r(-9) < r(0));
        assert!(r(0) < Radius::from_ratio_exponent(1, 2));
        assert!(Radius::from_ratio_exponent(1, 2) < r(1));
    }

    #[test]
    fn pow_round_trip() {
        let q = BigRational::new(BigInt::from(3), BigInt::from(7));
        let x = Radius::from_ratio_exponent(-5, 2);
        let back = x
            .try_pow(&q)
            .unwrap()
            .try_pow(&q.recip())
            .unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn display_forms() {
        assert_eq!(r(-2).to_string(), "p^-2");
        assert_eq!(Radius::from_ratio_exponent(-5, 2).to_string(), "p^-5/2");
        assert_eq!(Radius::Zero.to_string(), "0");
        assert_eq!(r(-2).display_with(5).to_string(), "5^-2");
    }
}
