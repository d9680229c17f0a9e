use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PadicError;

/// An arbitrary-precision reduced fraction. The backing representation keeps
/// gcd(|num|, den) = 1 and den ≥ 1 at all times; zero is 0/1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, PadicError> {
        let den = den.into();
        if den.is_zero() {
            return Err(PadicError::ZeroDenominator);
        }
        Ok(ExactScalar(BigRational::new(num.into(), den)))
    }

    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = ExactScalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn recip(&self) -> Result<Self, PadicError> {
        if self.is_zero() {
            return Err(PadicError::ZeroDenominator);
        }
        Ok(ExactScalar(self.0.recip()))
    }

    /// The exact square root when it exists in Q: both the numerator and the
    /// denominator must be perfect integer squares.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.0.is_negative() {
            return None;
        }
        let n = self.numer().magnitude();
        let d = self.denom().magnitude();
        let sn = n.sqrt();
        let sd = d.sqrt();
        if &(&sn * &sn) == n && &(&sd * &sd) == d {
            Some(ExactScalar(BigRational::new(
                BigInt::from(sn),
                BigInt::from(sd),
            )))
        } else {
            None
        }
    }

}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for ExactScalar {
    fn from(n: BigInt) -> Self {
        ExactScalar(BigRational::from_integer(n))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for &ExactScalar {
    type Output = ExactScalar;
    /// Panics on a zero divisor; callers check first or use [`ExactScalar::recip`].
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division of ExactScalar by zero");
        ExactScalar(&self.0 / &rhs.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl fmt::Display for ExactScalar {
    /// Canonical form: "num" for integers, "num/den" otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactScalar {
    type Err = PadicError;

    fn from_str(s: &str) -> Result<Self, PadicError> {
        let s = s.trim();
        let parse_int =
            |t: &str| BigInt::from_str(t.trim()).map_err(|_| PadicError::Parse(s.to_owned()));
        match s.split_once('/') {
            None => Ok(ExactScalar::from(parse_int(s)?)),
            Some((n, d)) => {
                let num = parse_int(n)?;
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(PadicError::ZeroDenominator);
                }
                Ok(ExactScalar(BigRational::new(num, den)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        let x = ExactScalar::new(150, 55).unwrap();
        assert_eq!(x.numer(), &BigInt::from(30));
        assert_eq!(x.denom(), &BigInt::from(11));
        // negative denominators normalize
        let y = ExactScalar::new(3, -6).unwrap();
        assert_eq!(y.to_string(), "-1/2");
        assert!(ExactScalar::new(1, 0).is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "-99", "30/11", "-5/7"] {
            let x: ExactScalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("150/55".parse::<ExactScalar>().unwrap().to_string(), "30/11");
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("abc".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn sqrt_exact_detects_rational_squares() {
        assert_eq!(
            ExactScalar::new(9, 4).unwrap().sqrt_exact(),
            Some(ExactScalar::new(3, 2).unwrap())
        );
        assert_eq!(ExactScalar::from(2).sqrt_exact(), None);
        assert_eq!(ExactScalar::from(-4).sqrt_exact(), None);
        assert_eq!(ExactScalar::zero().sqrt_exact(), Some(ExactScalar::zero()));
    }

    #[test]
    fn arithmetic() {
        let a = ExactScalar::new(1, 2).unwrap();
        let b = ExactScalar::new(1, 3).unwrap();
        assert_eq!((&a + &b).to_string(), "5/6");
        assert_eq!((&a - &b).to_string(), "1/6");
        assert_eq!((&a * &b).to_string(), "1/6");
        assert_eq!((&a / &b).to_string(), "3/2");
        assert_eq!(a.pow(3).to_string(), "1/8");
    }
}
