use std::fmt;

use super::{CanonicalMap, MapError};
use crate::padic::{ExactScalar, PadicContext};

/// f(x) = (ax² + bx + c)/(x² + dx + e) with a ≠ 0, not degenerate to the
/// constant a (which happens exactly when b = ad and c = ae).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralMap {
    a: ExactScalar,
    b: ExactScalar,
    c: ExactScalar,
    d: ExactScalar,
    e: ExactScalar,
    ctx: PadicContext,
}

impl GeneralMap {
    pub fn new(
        a: ExactScalar,
        b: ExactScalar,
        c: ExactScalar,
        d: ExactScalar,
        e: ExactScalar,
        ctx: PadicContext,
    ) -> Result<Self, MapError> {
        if a.is_zero() {
            return Err(MapError::ZeroLeadingCoefficient);
        }
        if b == &a * &d && c == &a * &e {
            return Err(MapError::Degenerate);
        }
        Ok(GeneralMap { a, b, c, d, e, ctx })
    }

    pub fn coefficients(&self) -> [&ExactScalar; 5] {
        [&self.a, &self.b, &self.c, &self.d, &self.e]
    }

    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    /// The unique fixed point x0 = (a−d)/3, present exactly when the
    /// fixed-point cubic is (x − x0)³: c = x0³ and (e − b)/3 = x0².
    pub fn unique_fixed_point(&self) -> Option<ExactScalar> {
        let three = ExactScalar::from(3);
        let x0 = &(&self.a - &self.d) / &three;
        if self.c == x0.pow(3) && &self.e - &self.b == &three * &x0.pow(2) {
            Some(x0)
        } else {
            None
        }
    }

    /// Rewrites the map in canonical (a, b, d) form; requires a unique fixed
    /// point. The induced general map is coefficient-wise equal to `self`.
    pub fn to_canonical(&self) -> Result<CanonicalMap, MapError> {
        if self.unique_fixed_point().is_none() {
            return Err(MapError::NoUniqueFixedPoint);
        }
        CanonicalMap::new(self.a.clone(), self.b.clone(), self.d.clone(), self.ctx)
    }
}

impl fmt::Display for GeneralMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({a})x^2 + ({b})x + ({c})) / (x^2 + ({d})x + ({e}))",
            a = self.a,
            b = self.b,
            c = self.c,
            d = self.d,
            e = self.e
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PadicContext {
        PadicContext::new(5, 4).unwrap()
    }

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from(n)
    }

    #[test]
    fn construction_examples() {
        assert!(GeneralMap::new(s(4), s(2), s(1), s(1), s(5), ctx()).is_ok());
        // b = ad = 2 and c = ae = 6
        assert_eq!(
            GeneralMap::new(s(2), s(2), s(6), s(1), s(3), ctx()).unwrap_err(),
            MapError::Degenerate
        );
        assert_eq!(
            GeneralMap::new(s(0), s(1), s(1), s(1), s(1), ctx()).unwrap_err(),
            MapError::ZeroLeadingCoefficient
        );
    }

    #[test]
    fn unique_fixed_point_examples() {
        let m = GeneralMap::new(s(4), s(2), s(1), s(1), s(5), ctx()).unwrap();
        assert_eq!(m.unique_fixed_point(), Some(s(1)));

        let m = GeneralMap::new(s(1), s(0), s(1), s(1), s(0), ctx()).unwrap();
        assert_eq!(m.unique_fixed_point(), None);

        let m = GeneralMap::new(s(1), s(25), s(0), s(1), s(25), ctx()).unwrap();
        assert_eq!(m.unique_fixed_point(), Some(s(0)));
    }

    #[test]
    fn to_canonical_round_trips_coefficients() {
        let m = GeneralMap::new(s(4), s(2), s(1), s(1), s(5), ctx()).unwrap();
        let canon = m.to_canonical().unwrap();
        assert_eq!(canon.fixed_point(), &s(1));
        let induced = canon.to_general();
        assert_eq!(induced, m);

        let m = GeneralMap::new(s(1), s(25), s(0), s(1), s(25), ctx()).unwrap();
        let canon = m.to_canonical().unwrap();
        assert_eq!(canon.fixed_point(), &s(0));

        let m = GeneralMap::new(s(1), s(0), s(1), s(1), s(0), ctx()).unwrap();
        assert_eq!(m.to_canonical().unwrap_err(), MapError::NoUniqueFixedPoint);
    }
}
