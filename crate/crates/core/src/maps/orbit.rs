//! Certified finite-level orbits.
//!
//! Exact iteration of a degree-2 rational map doubles the digit count of the
//! reduced fraction at every step, so horizons beyond ~20 steps are out of
//! reach for [`CanonicalMap::iterate`]. This module tracks an orbit as
//! `p^v · (u + O(p^L))` — an integer valuation plus a unit residue known to
//! `L` base-p digits — which keeps every step O(L) in size while all emitted
//! norms stay exact: a norm is only reported when it is certified by the
//! known digits, and the working level is raised (or the value is re-derived
//! by bounded exact iteration) whenever cancellation exhausts the precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::canonical::{CanonicalMap, EvalOutcome};
use super::MapError;
use crate::padic::{int_valuation, mod_inverse, ExactScalar, PadicContext, Radius, Valuation};

const LEVEL_START: u32 = 64;
const LEVEL_MAX: u32 = 8192;
/// Below this many certified digits a cell is treated as exhausted.
const PREC_FLOOR: u32 = 4;
/// Maximum number of exact steps run to resolve a cancellation event.
const EXACT_RESOLVE_CAP: usize = 16;

/// A certified orbit trace: exact distances to the fixed point and exact
/// consecutive displacements, truncated at the first pole hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTrace {
    /// |f^n(x) − x0| for n = 0..=steps (possibly truncated by a pole hit;
    /// the pole's own distance is included).
    pub distances: Vec<Radius>,
    /// |f^{n+1}(x) − f^n(x)| for consecutive recorded values.
    pub displacements: Vec<Radius>,
    /// Step at which the orbit hit a denominator root exactly.
    pub pole_at: Option<usize>,
}

impl OrbitTrace {
    pub fn hit_pole(&self) -> bool {
        self.pole_at.is_some()
    }
}

#[derive(Clone)]
enum Cell {
    Exact(ExactScalar),
    Approx(Rep),
}

/// p^val · (unit + O(p^prec)) with unit a unit in [0, p^prec).
#[derive(Clone)]
struct Rep {
    val: i64,
    unit: BigInt,
    prec: u32,
}

struct Exhausted;

struct Coeff {
    val: i64,
    unit: BigInt,
    degree: u32,
}

/// Nonzero coefficients of one polynomial, with unit residues at a level.
struct Poly {
    terms: Vec<Coeff>,
}

impl Poly {
    fn new(coeffs: &[(&ExactScalar, u32)], ctx: &PadicContext, level: u32) -> Self {
        let terms = coeffs
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, degree)| {
                let val = match ctx.valuation(c) {
                    Valuation::Finite(v) => v,
                    Valuation::Infinite => unreachable!(),
                };
                let unit = BigInt::from(ctx.unit_residue(c, level).expect("nonzero"));
                Coeff {
                    val,
                    unit,
                    degree: *degree,
                }
            })
            .collect();
        Poly { terms }
    }

    /// Evaluate at p^v·u as (valuation, unit, certified digits).
    fn eval_at(&self, rep: &Rep, ctx: &PadicContext) -> Result<Rep, Exhausted> {
        let p = ctx.prime_big();
        let modulus = ctx.prime_pow(rep.prec);
        let mut powers = vec![BigInt::from(1u32)];
        let max_deg = self.terms.iter().map(|t| t.degree).max().unwrap_or(0);
        for _ in 0..max_deg {
            let next = (powers.last().unwrap() * &rep.unit).mod_floor(&modulus);
            powers.push(next);
        }
        let floor = self
            .terms
            .iter()
            .map(|t| t.val + t.degree as i64 * rep.val)
            .min()
            .expect("polynomial has terms");
        let mut bracket = BigInt::zero();
        for t in &self.terms {
            let shift = (t.val + t.degree as i64 * rep.val) - floor;
            if shift >= rep.prec as i64 {
                continue; // vanishes mod p^prec
            }
            let term = (&t.unit * &powers[t.degree as usize]).mod_floor(&modulus);
            bracket += term * ctx.prime_pow(shift as u32);
        }
        bracket = bracket.mod_floor(&modulus);
        if bracket.is_zero() {
            return Err(Exhausted);
        }
        let e = int_valuation(&bracket, &p) as u32;
        let prec = rep.prec - e;
        let unit = (bracket / ctx.prime_pow(e)).mod_floor(&ctx.prime_pow(prec));
        Ok(Rep {
            val: floor + e as i64,
            unit,
            prec,
        })
    }
}

struct Stepper {
    numerator: Poly,
    denominator: Poly,
    level: u32,
}

impl Stepper {
    fn new(map: &CanonicalMap, level: u32) -> Self {
        let ctx = map.context();
        let one = ExactScalar::one();
        Stepper {
            numerator: Poly::new(
                &[
                    (map.coefficient_a(), 2),
                    (map.coefficient_b(), 1),
                    (map.coefficient_c(), 0),
                ],
                &ctx,
                level,
            ),
            denominator: Poly::new(
                &[(&one, 2), (map.coefficient_d(), 1), (map.coefficient_e(), 0)],
                &ctx,
                level,
            ),
            level,
        }
    }

    fn step(&self, rep: &Rep, ctx: &PadicContext) -> Result<Rep, Exhausted> {
        let num = self.numerator.eval_at(rep, ctx)?;
        let den = self.denominator.eval_at(rep, ctx)?;
        let prec = num.prec.min(den.prec);
        if prec < PREC_FLOOR {
            return Err(Exhausted);
        }
        let m = ctx.prime_pow(prec);
        let inv = mod_inverse(&den.unit.mod_floor(&m), &m).expect("unit is invertible");
        let unit = (num.unit.mod_floor(&m) * inv).mod_floor(&m);
        Ok(Rep {
            val: num.val - den.val,
            unit,
            prec,
        })
    }
}

fn cell_from_exact(x: &ExactScalar, ctx: &PadicContext, level: u32) -> Cell {
    if x.is_zero() {
        return Cell::Exact(ExactScalar::zero());
    }
    let val = ctx
        .valuation(x)
        .finite()
        .expect("nonzero scalar has finite valuation");
    let unit = BigInt::from(ctx.unit_residue(x, level).expect("nonzero"));
    Cell::Approx(Rep {
        val,
        unit,
        prec: level,
    })
}

/// |a − b| when certifiable from the known digits.
fn difference_norm(a: &Cell, b: &Cell, ctx: &PadicContext) -> Result<Radius, Exhausted> {
    match (a, b) {
        (Cell::Exact(x), Cell::Exact(y)) => Ok(ctx.distance(x, y)),
        (Cell::Exact(x), Cell::Approx(r)) | (Cell::Approx(r), Cell::Exact(x)) => {
            if x.is_zero() {
                return Ok(Radius::from_int_exponent(-r.val));
            }
            let vx = ctx.valuation(x).finite().expect("nonzero");
            if vx != r.val {
                return Ok(Radius::from_int_exponent(-vx.min(r.val)));
            }
            let m = ctx.prime_pow(r.prec);
            let ux = BigInt::from(ctx.unit_residue(x, r.prec).expect("nonzero"));
            let diff = (&r.unit - ux).mod_floor(&m);
            if diff.is_zero() {
                return Err(Exhausted);
            }
            let w = int_valuation(&diff, &ctx.prime_big()) as i64;
            Ok(Radius::from_int_exponent(-(vx + w)))
        }
        (Cell::Approx(r1), Cell::Approx(r2)) => {
            if r1.val != r2.val {
                return Ok(Radius::from_int_exponent(-r1.val.min(r2.val)));
            }
            let prec = r1.prec.min(r2.prec);
            let m = ctx.prime_pow(prec);
            let diff = (r1.unit.mod_floor(&m) - r2.unit.mod_floor(&m)).mod_floor(&m);
            if diff.is_zero() {
                return Err(Exhausted);
            }
            let w = int_valuation(&diff, &ctx.prime_big()) as i64;
            Ok(Radius::from_int_exponent(-(r1.val + w)))
        }
    }
}

/// Certified orbit trace of `map` from `x` for `steps` steps.
pub fn trace(map: &CanonicalMap, x: &ExactScalar, steps: usize) -> Result<OrbitTrace, MapError> {
    let ctx = map.context();
    let x0_cell = Cell::Exact(map.fixed_point().clone());
    let mut level = LEVEL_START.max(ctx.default_level());
    // latest exactly-known orbit value, for cancellation resolution
    let mut checkpoint: (usize, ExactScalar) = (0, x.clone());

    'attempt: loop {
        let stepper = Stepper::new(map, level);
        let mut distances: Vec<Radius> = Vec::with_capacity(steps + 1);
        let mut displacements: Vec<Radius> = Vec::new();
        let mut pole_at: Option<usize> = None;
        let mut n = 0usize;
        let mut cur = cell_from_exact(x, &ctx, level);

        // resolve the exact value at step `target`; None if out of reach
        let resolve = |checkpoint: &mut (usize, ExactScalar),
                       target: usize|
         -> Option<ExactScalar> {
            let (k, v) = checkpoint.clone();
            let (from, seed) = if target >= k {
                (k, v)
            } else {
                (0, x.clone())
            };
            if target - from > EXACT_RESOLVE_CAP {
                return None;
            }
            let mut cur = seed;
            for _ in from..target {
                match map.eval(&cur) {
                    // certified steps already passed these denominators
                    EvalOutcome::Pole => unreachable!("pole before a certified step"),
                    EvalOutcome::Value(v) => cur = v,
                }
            }
            *checkpoint = (target, cur.clone());
            Some(cur)
        };

        macro_rules! escalate_or_give_up {
            () => {{
                if level >= LEVEL_MAX {
                    return Err(MapError::OrbitUnresolved { step: n, level });
                }
                level *= 2;
                continue 'attempt;
            }};
        }

        let mut need_distance = true;
        loop {
            if need_distance {
                let dist = match difference_norm(&cur, &x0_cell, &ctx) {
                    Ok(d) => d,
                    Err(Exhausted) => match resolve(&mut checkpoint, n) {
                        Some(exact) => {
                            cur = Cell::Exact(exact);
                            difference_norm(&cur, &x0_cell, &ctx)
                                .unwrap_or_else(|_| unreachable!("exact cells cannot exhaust"))
                        }
                        None => escalate_or_give_up!(),
                    },
                };
                distances.push(dist);
                need_distance = false;
            }

            if pole_at.is_some() || n == steps {
                break;
            }

            // advance to step n+1
            match &cur {
                Cell::Exact(v) => match map.eval(v) {
                    EvalOutcome::Pole => {
                        pole_at = Some(n);
                    }
                    EvalOutcome::Value(next_exact) => {
                        displacements.push(ctx.distance(&next_exact, v));
                        checkpoint = (n + 1, next_exact.clone());
                        cur = cell_from_exact(&next_exact, &ctx, level);
                        n += 1;
                        need_distance = true;
                    }
                },
                Cell::Approx(rep) => match stepper.step(rep, &ctx) {
                    Ok(next) => {
                        let next = Cell::Approx(next);
                        match difference_norm(&cur, &next, &ctx) {
                            Ok(d) => {
                                displacements.push(d);
                                cur = next;
                                n += 1;
                                need_distance = true;
                            }
                            // redo this step exactly from a resolved value
                            Err(Exhausted) => match resolve(&mut checkpoint, n) {
                                Some(exact) => cur = Cell::Exact(exact),
                                None => escalate_or_give_up!(),
                            },
                        }
                    }
                    Err(Exhausted) => match resolve(&mut checkpoint, n) {
                        Some(exact) => cur = Cell::Exact(exact),
                        None => escalate_or_give_up!(),
                    },
                },
            }
        }

        return Ok(OrbitTrace {
            distances,
            displacements,
            pole_at,
        });
    }
}
