use std::fmt;

use super::canonical::CanonicalMap;
use crate::padic::{ExactScalar, PadicContext, Radius};

/// Parameter regime of a map, ordering α ≤ β by convention.
///
/// Only `EqGt`, `EqEq` and `LtBeta` are realizable by canonical maps over
/// Q_p: the Vieta identity (x0−x1) + (x0−x2) = (2a+d)/3 together with the
/// strong triangle inequality forces δ ≤ max(α, β), with δ = β whenever
/// α < β. The remaining tags are kept for the abstract radius dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    /// α = β > δ
    EqGt,
    /// α = β = δ
    EqEq,
    /// α = β < δ
    EqLt,
    /// α < β, δ < α
    LtDlt,
    /// α < β, δ = α
    LtDeq,
    /// α < β, α < δ < β
    LtMid,
    /// α < β, δ = β
    LtBeta,
    /// α < β, δ > β
    LtBgt,
}

impl CaseTag {
    pub const ALL: [CaseTag; 8] = [
        CaseTag::EqGt,
        CaseTag::EqEq,
        CaseTag::EqLt,
        CaseTag::LtDlt,
        CaseTag::LtDeq,
        CaseTag::LtMid,
        CaseTag::LtBeta,
        CaseTag::LtBgt,
    ];

    /// Whether the regime is realizable by a canonical map over Q_p.
    pub fn is_feasible(self) -> bool {
        matches!(self, CaseTag::EqGt | CaseTag::EqEq | CaseTag::LtBeta)
    }

    pub fn label(self) -> &'static str {
        match self {
            CaseTag::EqGt => "EQ_gt",
            CaseTag::EqEq => "EQ_eq",
            CaseTag::EqLt => "EQ_lt",
            CaseTag::LtDlt => "LT_dlt",
            CaseTag::LtDeq => "LT_deq",
            CaseTag::LtMid => "LT_mid",
            CaseTag::LtBeta => "LT_beta",
            CaseTag::LtBgt => "LT_bgt",
        }
    }

    pub fn parse(s: &str) -> Option<CaseTag> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.label().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A denominator root x_i, either exact or a Hensel approximation carrying
/// its certified congruence level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleRoot {
    pub value: ExactScalar,
    /// Exact rational root, as opposed to a mod-p^level approximation.
    pub exact: bool,
    pub level: u32,
    /// |x0 − x_i|, exact.
    pub distance: Radius,
}

/// Data about the denominator roots x_{1,2} = −d/2 ± √D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleData {
    /// D = d²/4 − (a−d)²/3 − b.
    pub discriminant: ExactScalar,
    /// Whether D is a square in Q_p (the roots then lie in Q_p).
    pub split: bool,
    /// Present when split: roots ordered so the first is nearer x0.
    pub roots: Option<(PoleRoot, PoleRoot)>,
    /// |x0² + d·x0 + e| = |(x0−x1)(x0−x2)| = α·β, exact in every case.
    pub product_norm: Radius,
}

/// The derived radius data of a canonical map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapInvariants {
    pub delta: Radius,
    pub alpha: Radius,
    pub beta: Radius,
    pub case: CaseTag,
    pub feasible: bool,
    pub pole_data: PoleData,
}

/// Exact norms of the roots of A·z² + B·z + C (A ≠ 0), sorted ascending.
///
/// With nB = |B/A| and nC = |C/A|: when nB² > nC the roots split with norms
/// (nC/nB, nB); otherwise both roots share the norm nC^{1/2}. This is the
/// two-segment/one-segment dichotomy of the valuation polygon and needs no
/// root finding.
pub fn quadratic_root_norms(
    qa: &ExactScalar,
    qb: &ExactScalar,
    qc: &ExactScalar,
    ctx: &PadicContext,
) -> (Radius, Radius) {
    assert!(!qa.is_zero(), "leading coefficient must be nonzero");
    let na = ctx.norm(qa);
    let nb = ctx.norm(qb).try_div(&na).expect("|A| > 0");
    let nc = ctx.norm(qc).try_div(&na).expect("|A| > 0");
    let nb_sq = &nb * &nb;
    if nb_sq > nc {
        let small = nc.try_div(&nb).expect("nB > 0 since nB² > nC ≥ 0");
        (small, nb)
    } else {
        let shared = nc.sqrt();
        (shared.clone(), shared)
    }
}

impl CanonicalMap {
    /// δ, α, β, the case tag and the pole-root data.
    ///
    /// δ = |(2a+d)/3| directly. When D is a square in Q_p the roots are
    /// located — exactly if D is a rational square, otherwise by Hensel
    /// approximations whose level doubles until the valuation of x0 − root
    /// is certified and stable for two consecutive levels — and α, β are the
    /// exact distances. When D is a non-square, conjugate roots share their
    /// norm and α = β = |x0² + dx0 + e|^{1/2}.
    pub fn invariants(&self) -> MapInvariants {
        let ctx = self.context();
        let delta = ctx.norm(self.slope());
        let product_norm = ctx.norm(self.pole_product());

        let four = ExactScalar::from(4);
        let three = ExactScalar::from(3);
        let a_minus_d = self.coefficient_a() - self.coefficient_d();
        let discriminant = &(&(self.coefficient_d().pow(2)) / &four
            - &(&a_minus_d.pow(2) / &three))
            - self.coefficient_b();

        let half_d = &(-self.coefficient_d()) / &ExactScalar::from(2);

        let (split, roots) = if discriminant.is_zero() {
            // double rational root x1 = x2 = −d/2
            let dist = ctx.distance(self.fixed_point(), &half_d);
            let root = PoleRoot {
                value: half_d.clone(),
                exact: true,
                level: 0,
                distance: dist,
            };
            (true, Some((root.clone(), root)))
        } else if let Some(sd) = discriminant.sqrt_exact() {
            let r1 = &half_d + &sd;
            let r2 = &half_d - &sd;
            let mk = |v: ExactScalar| {
                let distance = ctx.distance(self.fixed_point(), &v);
                PoleRoot {
                    value: v,
                    exact: true,
                    level: 0,
                    distance,
                }
            };
            (true, Some(sort_roots(mk(r1), mk(r2))))
        } else if ctx.sqrt_exists(&discriminant).expect("nonzero") {
            let (r1, r2) = self.locate_roots_adaptively(&discriminant, &half_d);
            (true, Some(sort_roots(r1, r2)))
        } else {
            (false, None)
        };

        let (alpha, beta) = match &roots {
            Some((r1, r2)) => (r1.distance.clone(), r2.distance.clone()),
            None => {
                let shared = product_norm.sqrt();
                (shared.clone(), shared)
            }
        };

        let case = if alpha == beta {
            match alpha.cmp(&delta) {
                std::cmp::Ordering::Greater => CaseTag::EqGt,
                std::cmp::Ordering::Equal => CaseTag::EqEq,
                std::cmp::Ordering::Less => CaseTag::EqLt,
            }
        } else if delta < alpha {
            CaseTag::LtDlt
        } else if delta == alpha {
            CaseTag::LtDeq
        } else if delta < beta {
            CaseTag::LtMid
        } else if delta == beta {
            CaseTag::LtBeta
        } else {
            CaseTag::LtBgt
        };

        let feasible = delta <= beta && (alpha == beta || delta == beta);

        MapInvariants {
            delta,
            alpha,
            beta,
            case,
            feasible,
            pole_data: PoleData {
                discriminant,
                split,
                roots,
                product_norm,
            },
        }
    }

    /// Hensel-approximate the two roots −d/2 ± √D, doubling the level until
    /// the valuation of x0 − root is certified (strictly below the
    /// approximation's congruence precision) and stable across two levels.
    fn locate_roots_adaptively(
        &self,
        discriminant: &ExactScalar,
        half_d: &ExactScalar,
    ) -> (PoleRoot, PoleRoot) {
        let ctx = self.context();
        let v_disc = match ctx.valuation(discriminant) {
            crate::padic::Valuation::Finite(v) => v,
            crate::padic::Valuation::Infinite => unreachable!("zero handled by caller"),
        };
        let t = v_disc / 2;
        // a mod-2 approximation certifies one digit less
        let slack = if ctx.prime() == 2 { 1 } else { 0 };

        let mut level = ctx.default_level().max(2);
        let mut prev: Option<(i64, i64)> = None;
        loop {
            let sd = ctx
                .hensel_sqrt(discriminant, level)
                .expect("discriminant is a Q_p square");
            let x1 = half_d + &sd;
            let x2 = half_d - &sd;
            let d1 = self.fixed_point() - &x1;
            let d2 = self.fixed_point() - &x2;
            let certified_bound = t + level as i64 - slack;
            let v1 = ctx.valuation(&d1).finite();
            let v2 = ctx.valuation(&d2).finite();
            if let (Some(v1), Some(v2)) = (v1, v2) {
                if v1 < certified_bound && v2 < certified_bound {
                    if prev == Some((v1, v2)) {
                        let mk = |value: ExactScalar, v: i64| PoleRoot {
                            value,
                            exact: false,
                            level,
                            distance: Radius::from_int_exponent(-v),
                        };
                        return (mk(x1, v1), mk(x2, v2));
                    }
                    prev = Some((v1, v2));
                }
            }
            level = level.checked_mul(2).expect("level overflow");
            assert!(level <= 1 << 16, "root valuations failed to stabilize");
        }
    }
}

fn sort_roots(r1: PoleRoot, r2: PoleRoot) -> (PoleRoot, PoleRoot) {
    if r1.distance <= r2.distance {
        (r1, r2)
    } else {
        (r2, r1)
    }
}
