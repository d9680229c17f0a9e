use std::fmt;

use super::invariants::quadratic_root_norms;
use super::{GeneralMap, MapError};
use crate::padic::{ExactScalar, PadicContext, Radius};

/// The canonical form of a map with unique fixed point: coefficients
/// (a, b, d) with c = ((a−d)/3)³ and e = (a−d)²/3 + b derived, fixed point
/// x0 = (a−d)/3.
///
/// Construction enforces that the induced general map is nondegenerate and
/// that x0 is not a pole (otherwise f(x0) = x0 cannot hold and the map
/// degenerates to lower degree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalMap {
    a: ExactScalar,
    b: ExactScalar,
    d: ExactScalar,
    ctx: PadicContext,
    // derived, cached
    c: ExactScalar,
    e: ExactScalar,
    x0: ExactScalar,
    /// (2a + d)/3, the sum (x0 − x1) + (x0 − x2)
    slope: ExactScalar,
    /// x0² + d·x0 + e, the product (x0 − x1)(x0 − x2); nonzero
    pole_product: ExactScalar,
}

/// Result of a single evaluation: poles are values, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalOutcome {
    Value(ExactScalar),
    Pole,
}

impl EvalOutcome {
    pub fn value(self) -> Option<ExactScalar> {
        match self {
            EvalOutcome::Value(v) => Some(v),
            EvalOutcome::Pole => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, EvalOutcome::Pole)
    }
}

/// One orbit value: either a regular point or a hit of the pole-preimage set
/// at this depth (the value itself is recorded; f of it is undefined).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitPoint {
    Regular(ExactScalar),
    PoleHit(ExactScalar),
}

impl OrbitPoint {
    pub fn value(&self) -> &ExactScalar {
        match self {
            OrbitPoint::Regular(v) | OrbitPoint::PoleHit(v) => v,
        }
    }

    pub fn is_pole_hit(&self) -> bool {
        matches!(self, OrbitPoint::PoleHit(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryEntry {
    pub step: usize,
    pub point: OrbitPoint,
    /// |f^step(x) − x0|_p, exact.
    pub distance: Radius,
}

/// An exact orbit record. Entries stop at the first pole hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryRecord {
    pub start: ExactScalar,
    pub entries: Vec<TrajectoryEntry>,
}

impl TrajectoryRecord {
    pub fn hit_pole(&self) -> bool {
        self.entries
            .last()
            .is_some_and(|e| e.point.is_pole_hit())
    }

    pub fn distances(&self) -> Vec<Radius> {
        self.entries.iter().map(|e| e.distance.clone()).collect()
    }
}

/// Preimages of a value under the map. `values` holds every rational
/// solution; `marker` describes solutions that exist p-adically but are not
/// rational numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageSet {
    pub values: Vec<ExactScalar>,
    pub marker: Option<PreimageMarker>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreimageMarker {
    /// Both roots lie in Q_p but outside Q; their exact distances |x − x0|
    /// are carried (sorted ascending).
    InQpIrrational { distances: [Radius; 2] },
    /// Roots lie in a quadratic extension of Q_p; conjugates share one
    /// distance |x − x0|.
    Extension { distance: Radius },
}

impl CanonicalMap {
    pub fn new(
        a: ExactScalar,
        b: ExactScalar,
        d: ExactScalar,
        ctx: PadicContext,
    ) -> Result<Self, MapError> {
        if a.is_zero() {
            return Err(MapError::ZeroLeadingCoefficient);
        }
        let three = ExactScalar::from(3);
        let x0 = &(&a - &d) / &three;
        let c = x0.pow(3);
        let e = &(&x0.pow(2) * &three) + &b;
        if b == &a * &d && c == &a * &e {
            return Err(MapError::Degenerate);
        }
        let pole_product = &(&x0.pow(2) + &(&d * &x0)) + &e;
        if pole_product.is_zero() {
            return Err(MapError::FixedPointIsPole);
        }
        let slope = &(&(&ExactScalar::from(2) * &a) + &d) / &three;
        Ok(CanonicalMap {
            a,
            b,
            d,
            ctx,
            c,
            e,
            x0,
            slope,
            pole_product,
        })
    }

    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    pub fn coefficient_a(&self) -> &ExactScalar {
        &self.a
    }

    pub fn coefficient_b(&self) -> &ExactScalar {
        &self.b
    }

    pub fn coefficient_d(&self) -> &ExactScalar {
        &self.d
    }

    /// Derived numerator constant c = x0³.
    pub fn coefficient_c(&self) -> &ExactScalar {
        &self.c
    }

    /// Derived denominator constant e = (a−d)²/3 + b.
    pub fn coefficient_e(&self) -> &ExactScalar {
        &self.e
    }

    pub fn fixed_point(&self) -> &ExactScalar {
        &self.x0
    }

    /// (2a + d)/3 — the Vieta sum of the pole distances; its norm is δ.
    pub fn slope(&self) -> &ExactScalar {
        &self.slope
    }

    /// x0² + d·x0 + e — the Vieta product of the pole distances; its norm is
    /// α·β. Nonzero by construction.
    pub fn pole_product(&self) -> &ExactScalar {
        &self.pole_product
    }

    pub fn to_general(&self) -> GeneralMap {
        GeneralMap::new(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
            self.ctx,
        )
        .expect("canonical map induces a valid general map")
    }

    pub fn denominator_at(&self, x: &ExactScalar) -> ExactScalar {
        &(&x.pow(2) + &(&self.d * x)) + &self.e
    }

    pub fn numerator_at(&self, x: &ExactScalar) -> ExactScalar {
        &(&(&self.a * &x.pow(2)) + &(&self.b * x)) + &self.c
    }

    /// Exact evaluation; a pole is a value, not an error.
    pub fn eval(&self, x: &ExactScalar) -> EvalOutcome {
        let den = self.denominator_at(x);
        if den.is_zero() {
            EvalOutcome::Pole
        } else {
            EvalOutcome::Value(&self.numerator_at(x) / &den)
        }
    }

    /// Exact orbit x, f(x), …, f^n_max(x) with distances to the fixed point.
    /// Truncates at the first pole hit.
    ///
    /// Iterate sizes roughly double per step (degree-2 height growth); keep
    /// n_max small. Certified long-horizon traces live in [`super::orbit`].
    pub fn iterate(&self, x: &ExactScalar, n_max: usize) -> TrajectoryRecord {
        let mut entries = Vec::with_capacity(n_max + 1);
        let mut cur = x.clone();
        for step in 0..=n_max {
            let distance = self.ctx.distance(&cur, &self.x0);
            match self.eval(&cur) {
                EvalOutcome::Pole => {
                    entries.push(TrajectoryEntry {
                        step,
                        point: OrbitPoint::PoleHit(cur),
                        distance,
                    });
                    break;
                }
                EvalOutcome::Value(next) => {
                    entries.push(TrajectoryEntry {
                        step,
                        point: OrbitPoint::Regular(cur),
                        distance,
                    });
                    cur = next;
                }
            }
        }
        TrajectoryRecord {
            start: x.clone(),
            entries,
        }
    }

    /// The exact one-step norm identity:
    /// |f(x) − x0| · |x² + dx + e| = |x − x0| · |(2a+d)/3·(x−x0) + (x0−x1)(x0−x2)|,
    /// where the last factor is the exact rational (2a+d)/3·(x−x0) + (x0²+dx0+e).
    pub fn step_norm_check(&self, x: &ExactScalar) -> Result<bool, MapError> {
        if x == &self.x0 {
            return Err(MapError::AtFixedPoint);
        }
        let den = self.denominator_at(x);
        if den.is_zero() {
            return Err(MapError::AtPole);
        }
        let fx = &self.numerator_at(x) / &den;
        let lhs = &self.ctx.distance(&fx, &self.x0) * &self.ctx.norm(&den);
        let shift = x - &self.x0;
        let factor = &(&self.slope * &shift) + &self.pole_product;
        let rhs = &self.ctx.norm(&shift) * &self.ctx.norm(&factor);
        Ok(lhs == rhs)
    }

    /// Exact symbolic derivative of f at the fixed point. Equal to 1 for
    /// every valid canonical map — the fixed point is indifferent.
    pub fn derivative_at_fixed_point(&self) -> ExactScalar {
        // f' = (N'D − ND')/D²; at a fixed point N(x0) = x0·D(x0), so
        // f'(x0) = (N'(x0) − x0·D'(x0)) / D(x0).
        let two = ExactScalar::from(2);
        let n_prime = &(&(&two * &self.a) * &self.x0) + &self.b;
        let d_prime = &(&two * &self.x0) + &self.d;
        &(&n_prime - &(&self.x0 * &d_prime)) / &self.pole_product
    }

    /// All rational solutions of f(x) = y, plus a marker describing p-adic
    /// solutions that are not rational. y = a is rejected (the equation
    /// degenerates to lower degree there).
    pub fn preimages(&self, y: &ExactScalar) -> Result<PreimageSet, MapError> {
        if y == &self.a {
            return Err(MapError::PreimageOfLeadingCoefficient);
        }
        // (a − y)x² + (b − dy)x + (c − ye) = 0
        let qa = &self.a - y;
        let qb = &self.b - &(&self.d * y);
        let qc = &self.c - &(y * &self.e);
        let two = ExactScalar::from(2);
        let four = ExactScalar::from(4);
        let disc = &qb.pow(2) - &(&(&four * &qa) * &qc);

        if disc.is_zero() {
            let root = &(-&qb) / &(&two * &qa);
            debug_assert_eq!(self.eval(&root), EvalOutcome::Value(y.clone()));
            return Ok(PreimageSet {
                values: vec![root],
                marker: None,
            });
        }
        if let Some(sd) = disc.sqrt_exact() {
            let denom = &two * &qa;
            let r1 = &(&(-&qb) + &sd) / &denom;
            let r2 = &(&(-&qb) - &sd) / &denom;
            debug_assert_eq!(self.eval(&r1), EvalOutcome::Value(y.clone()));
            debug_assert_eq!(self.eval(&r2), EvalOutcome::Value(y.clone()));
            let mut values = vec![r1, r2];
            values.sort();
            return Ok(PreimageSet {
                values,
                marker: None,
            });
        }

        // Roots exist p-adically but are irrational over Q; report their
        // exact distances |x − x0| from the shifted quadratic in z = x − x0:
        // qa·z² + (2·qa·x0 + qb)·z + (qa·x0² + qb·x0 + qc).
        let sb = &(&(&two * &qa) * &self.x0) + &qb;
        let sc = &(&(&qa * &self.x0.pow(2)) + &(&qb * &self.x0)) + &qc;
        let (lo, hi) = quadratic_root_norms(&qa, &sb, &sc, &self.ctx);
        let marker = if self.ctx.sqrt_exists(&disc)? {
            PreimageMarker::InQpIrrational {
                distances: [lo, hi],
            }
        } else {
            debug_assert_eq!(lo, hi, "conjugate roots share their norm");
            PreimageMarker::Extension { distance: hi }
        };
        Ok(PreimageSet {
            values: Vec::new(),
            marker: Some(marker),
        })
    }
}

impl fmt::Display for CanonicalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "canonical map a={}, b={}, d={} over Q_{}",
            self.a,
            self.b,
            self.d,
            self.ctx.prime()
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

    /// f(x) = (x² + 25x)/(x² + x + 25) with x0 = 0.
    fn band_map() -> CanonicalMap {
        CanonicalMap::new(s(1), s(25), s(1), ctx()).unwrap()
    }

    /// f(x) = (x² − 6x)/(x² + x − 6), poles at 2 and −3.
    fn rational_pole_map() -> CanonicalMap {
        CanonicalMap::new(s(1), s(-6), s(1), ctx()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let m = band_map();
        assert_eq!(
            m.eval(&s(5)),
            EvalOutcome::Value(ExactScalar::new(30, 11).unwrap())
        );
        let m2 = rational_pole_map();
        assert_eq!(m2.eval(&s(2)), EvalOutcome::Pole);
        // fixed point is fixed
        let m3 = CanonicalMap::new(s(4), s(2), s(1), ctx()).unwrap();
        assert_eq!(m3.eval(m3.fixed_point()), EvalOutcome::Value(s(1)));
    }

    #[test]
    fn fixed_point_as_pole_is_rejected() {
        // a = d = 1, b = 0 gives x0 = 0 and denominator x² + x
        assert_eq!(
            CanonicalMap::new(s(1), s(0), s(1), ctx()).unwrap_err(),
            MapError::FixedPointIsPole
        );
    }

    #[test]
    fn iterate_examples() {
        let m = band_map();
        let t = m.iterate(&s(5), 2);
        let want = Radius::from_int_exponent(-1);
        assert_eq!(t.distances(), vec![want.clone(), want.clone(), want]);
        assert!(!t.hit_pole());

        let t = m.iterate(m.fixed_point(), 3);
        assert!(t.distances().iter().all(|d| d.is_zero()));

        let t = rational_pole_map().iterate(&s(2), 5);
        assert_eq!(t.entries.len(), 1);
        assert!(t.entries[0].point.is_pole_hit());
        assert_eq!(t.entries[0].step, 0);
    }

    #[test]
    fn step_norm_identity() {
        let m = band_map();
        assert!(m.step_norm_check(&s(5)).unwrap());
        assert_eq!(
            m.step_norm_check(m.fixed_point()).unwrap_err(),
            MapError::AtFixedPoint
        );
        let m2 = rational_pole_map();
        assert_eq!(m2.step_norm_check(&s(2)).unwrap_err(), MapError::AtPole);

        let ctx3 = PadicContext::new(3, 4).unwrap();
        let m3 = CanonicalMap::new(s(7), ExactScalar::new(2, 9).unwrap(), s(-2), ctx3).unwrap();
        for x in [s(1), s(9), ExactScalar::new(1, 3).unwrap(), s(-4)] {
            if x == *m3.fixed_point() {
                continue;
            }
            assert!(m3.step_norm_check(&x).unwrap());
        }
    }

    #[test]
    fn derivative_is_one() {
        for (a, b, d) in [(1, 25, 1), (4, 2, 1), (3, -1, 0), (7, 5, -2)] {
            let m = CanonicalMap::new(s(a), s(b), s(d), ctx()).unwrap();
            assert!(m.derivative_at_fixed_point().is_one(), "map ({a},{b},{d})");
        }
    }

    #[test]
    fn preimage_examples() {
        let m = rational_pole_map();
        let pre = m.preimages(&s(0)).unwrap();
        assert_eq!(pre.values, vec![s(0), s(6)]);
        assert!(pre.marker.is_none());
        assert_eq!(m.eval(&s(6)), EvalOutcome::Value(s(0)));

        // the fixed point is always a preimage of itself
        let pre = m.preimages(m.fixed_point()).unwrap();
        assert!(pre.values.contains(m.fixed_point()));

        assert_eq!(
            m.preimages(&s(1)).unwrap_err(),
            MapError::PreimageOfLeadingCoefficient
        );
    }

    #[test]
    fn preimage_markers() {
        let m = band_map();
        // preimages of 5: discriminant is not a rational square
        let pre = m.preimages(&s(5)).unwrap();
        if pre.values.is_empty() {
            assert!(pre.marker.is_some());
        }
        // x0 = 0 has itself plus the other rational root of x² + ... = 0:
        // (a−0)x² + bx + 0 = x(x + 25) ⇒ {−25, 0}
        let pre = m.preimages(&s(0)).unwrap();
        assert_eq!(pre.values, vec![s(-25), s(0)]);
    }
}
