use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ExactScalar, PadicContext, PadicError, Radius, Valuation};

/// Exponent of p dividing a nonzero integer.
pub(crate) fn int_valuation(n: &BigInt, p: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    let mut v = 0u64;
    let mut cur = n.clone();
    loop {
        let (q, r) = cur.div_rem(p);
        if r.is_zero() {
            v += 1;
            cur = q;
        } else {
            return v;
        }
    }
}

/// Inverse of `a` modulo `m` via extended Euclid; requires gcd(a, m) = 1.
pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if r0.is_one() {
        Some(s0.mod_floor(m))
    } else {
        None
    }
}

/// The finite-level shadow of a ball: all residue representatives modulo p^N
/// that the ball meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    level: u32,
    modulus: BigInt,
    members: BTreeSet<BigUint>,
}

impl ResidueSet {
    pub(crate) fn new(level: u32, modulus: BigInt, members: BTreeSet<BigUint>) -> Self {
        ResidueSet {
            level,
            modulus,
            members,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, r: &BigUint) -> bool {
        self.members.contains(r)
    }

    pub fn members(&self) -> &BTreeSet<BigUint> {
        &self.members
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} residues mod {}", self.members.len(), self.modulus)
    }
}

impl PadicContext {
    /// Canonical representative of x modulo p^N, for x with nonnegative
    /// valuation (equivalently, denominator coprime to p).
    pub fn residue(&self, x: &ExactScalar, level: u32) -> Result<BigUint, PadicError> {
        let p = self.prime_big();
        if (x.denom() % &p).is_zero() {
            return Err(PadicError::NegativeValuation(x.clone(), self.prime()));
        }
        let m = self.prime_pow(level);
        let inv = mod_inverse(x.denom(), &m)
            .expect("denominator coprime to p is coprime to p^N");
        let r = (x.numer() * inv).mod_floor(&m);
        Ok(r.magnitude().clone())
    }

    /// Residue of the unit part of a nonzero x: with x = p^v·u, returns u
    /// modulo p^N.
    pub fn unit_residue(&self, x: &ExactScalar, level: u32) -> Result<BigUint, PadicError> {
        if x.is_zero() {
            return Err(PadicError::ZeroInput);
        }
        let p = self.prime_big();
        let strip = |n: &BigInt| -> BigInt {
            let mut cur = n.clone();
            loop {
                let (q, r) = cur.div_rem(&p);
                if r.is_zero() {
                    cur = q;
                } else {
                    return cur;
                }
            }
        };
        let num = strip(x.numer());
        let den = strip(x.denom());
        let m = self.prime_pow(level);
        let inv = mod_inverse(&den, &m).expect("stripped denominator is a unit");
        Ok((num * inv).mod_floor(&m).magnitude().clone())
    }

    /// The unit part of x as an exact scalar: x / p^{v_p(x)}.
    pub fn unit_part(&self, x: &ExactScalar) -> Result<ExactScalar, PadicError> {
        match self.valuation(x) {
            Valuation::Infinite => Err(PadicError::ZeroInput),
            Valuation::Finite(v) => Ok(self.scale_by_prime_power(x, -v)),
        }
    }

    /// x · p^k.
    pub fn scale_by_prime_power(&self, x: &ExactScalar, k: i64) -> ExactScalar {
        let pk = ExactScalar::from(self.prime_pow(k.unsigned_abs() as u32));
        if k >= 0 {
            x * &pk
        } else {
            x / &pk
        }
    }

    /// All residues modulo p^N lying in the closed ball V_ρ(center), for a
    /// radius ρ = p^{-m} with 0 ≤ m ≤ N and a center of nonnegative
    /// valuation. The cardinality is exactly p^{N-m}.
    pub fn ball_residues(
        &self,
        center: &ExactScalar,
        rho: &Radius,
        level: u32,
    ) -> Result<ResidueSet, PadicError> {
        let m = match rho {
            Radius::Zero => return Err(PadicError::FractionalExponent("0".to_owned())),
            Radius::Exp(e) => {
                if !e.is_integer() {
                    return Err(PadicError::FractionalExponent(e.to_string()));
                }
                let m = -rho.int_exponent().expect("integer exponent fits");
                if m < 0 {
                    return Err(PadicError::RadiusAboveOne { exp: -m });
                }
                if m as u32 > level {
                    return Err(PadicError::LevelTooSmall {
                        got: m,
                        level,
                    });
                }
                m as u32
            }
        };
        let pm = self.prime_pow(m);
        let base = BigInt::from(self.residue(center, level)?).mod_floor(&pm);
        let count = self.prime_pow(level - m);
        let mut members = BTreeSet::new();
        let mut t = BigInt::zero();
        while t < count {
            let r = (&base + &t * &pm).magnitude().clone();
            members.insert(r);
            t += 1;
        }
        Ok(ResidueSet::new(m, self.prime_pow(level), members))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PadicContext {
        PadicContext::new(5, 4).unwrap()
    }

    #[test]
    fn residue_examples() {
        let x = ExactScalar::new(30, 11).unwrap();
        // 11^{-1} ≡ 16 mod 25, 30·16 ≡ 5 mod 25
        assert_eq!(ctx().residue(&x, 2).unwrap(), BigUint::from(5u32));
        assert_eq!(
            ctx().residue(&ExactScalar::from(7), 1).unwrap(),
            BigUint::from(2u32)
        );
        let bad = ExactScalar::new(1, 5).unwrap();
        assert!(matches!(
            ctx().residue(&bad, 2),
            Err(PadicError::NegativeValuation(_, 5))
        ));
    }

    #[test]
    fn residue_matches_extended_euclid_oracle() {
        // independent oracle: brute-force n·d^{-1} by scanning candidates
        let x = ExactScalar::new(30, 11).unwrap();
        let m = 25u32;
        let mut expected = None;
        for r in 0..m {
            if (11 * r) % m == 30 % m {
                expected = Some(r);
            }
        }
        assert_eq!(
            ctx().residue(&x, 2).unwrap(),
            BigUint::from(expected.unwrap())
        );
    }

    #[test]
    fn ball_residues_examples() {
        let c = ExactScalar::zero();
        let rho = Radius::from_int_exponent(-2);
        let set = ctx().ball_residues(&c, &rho, 3).unwrap();
        let want: Vec<u32> = vec![0, 25, 50, 75, 100];
        let got: Vec<BigUint> = set.members().iter().cloned().collect();
        assert_eq!(got, want.into_iter().map(BigUint::from).collect::<Vec<_>>());

        let c5 = ExactScalar::from(5);
        let set = ctx().ball_residues(&c5, &rho, 5).unwrap();
        assert_eq!(set.len(), 125);
        assert!(set.contains(&BigUint::from(5u32)));
        assert!(set.contains(&BigUint::from(30u32)));
        assert!(!set.contains(&BigUint::from(6u32)));

        let frac = Radius::from_ratio_exponent(-1, 2);
        assert!(matches!(
            ctx().ball_residues(&c, &frac, 3),
            Err(PadicError::FractionalExponent(_))
        ));
    }

    #[test]
    fn disjoint_balls_partition_parent() {
        let ctx = ctx();
        let parent = ctx
            .ball_residues(&ExactScalar::zero(), &Radius::from_int_exponent(-1), 3)
            .unwrap();
        let mut union = BTreeSet::new();
        // the five sub-balls of radius 5^{-2} centered at 0,5,10,15,20 inside V_{5^{-1}}(0)
        for k in 0..5 {
            let c = ExactScalar::from(5 * k);
            let sub = ctx
                .ball_residues(&c, &Radius::from_int_exponent(-2), 3)
                .unwrap();
            for r in sub.members() {
                assert!(union.insert(r.clone()), "sub-balls must be disjoint");
            }
        }
        assert_eq!(&union, parent.members());
    }

    #[test]
    fn unit_residue_strips_prime_powers() {
        let ctx = ctx();
        let x = ExactScalar::new(150, 55).unwrap(); // 30/11 = 5 · 6/11
        let u = ctx.unit_residue(&x, 2).unwrap();
        // 6/11 mod 25: 6·16 = 96 ≡ 21
        assert_eq!(u, BigUint::from(21u32));
        assert_eq!(
            ctx.unit_part(&x).unwrap(),
            ExactScalar::new(6, 11).unwrap()
        );
    }
}
