use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::arith::mod_inverse;
use super::{ExactScalar, PadicContext, PadicError, Valuation};

impl PadicContext {
    /// Whether a nonzero x is a square in Q_p: the valuation must be even and
    /// the unit part a quadratic residue mod p (for odd p), or ≡ 1 mod 8
    /// (for p = 2).
    pub fn sqrt_exists(&self, x: &ExactScalar) -> Result<bool, PadicError> {
        if x.is_zero() {
            return Err(PadicError::ZeroInput);
        }
        let v = self
            .valuation(x)
            .finite()
            .expect("nonzero scalar has finite valuation");
        if v % 2 != 0 {
            return Ok(false);
        }
        let u = self.unit_part(x)?;
        if self.prime() == 2 {
            let r = self.residue(&u, 3)?;
            Ok(r == 1u32.into())
        } else {
            let p = self.prime_big();
            let r = BigInt::from(self.residue(&u, 1)?);
            // Euler criterion
            let exp = (&p - BigInt::one()) / BigInt::from(2);
            Ok(r.modpow(&exp, &p).is_one())
        }
    }

    /// One square root of x modulo p^level: for x = p^{2t}·u the result is
    /// p^t·y with y² ≡ u (mod p^level), lifted from the base solution by
    /// Newton steps (odd p) or bit fixing (p = 2).
    ///
    /// Of the two roots, the one whose leading base-p digit is the smaller
    /// quadratic-residue representative is returned; for p = 2 (where both
    /// roots share the leading digit) the numerically smaller residue wins.
    pub fn hensel_sqrt(&self, x: &ExactScalar, level: u32) -> Result<ExactScalar, PadicError> {
        if level == 0 {
            return Err(PadicError::InvalidLevel);
        }
        if x.is_zero() {
            return Err(PadicError::ZeroInput);
        }
        let v = match self.valuation(x) {
            Valuation::Finite(v) => v,
            Valuation::Infinite => unreachable!(),
        };
        if v % 2 != 0 {
            return Err(PadicError::OddValuation(x.clone(), self.prime()));
        }
        if !self.sqrt_exists(x)? {
            return Err(PadicError::NonSquare(x.clone(), self.prime()));
        }
        let u = self.unit_part(x)?;
        let p = self.prime_big();
        let modulus = self.prime_pow(level);
        let u_res = BigInt::from(self.residue(&u, level)?);

        let root = if self.prime() == 2 {
            let mut y = BigInt::one();
            // y² ≡ u mod 2^k holds for k = 3 since u ≡ 1 mod 8
            let mut k = 3u32;
            while k < level {
                let mk1 = self.prime_pow(k + 1);
                if !((&y * &y - &u_res).mod_floor(&mk1)).is_zero() {
                    y += self.prime_pow(k - 1);
                }
                k += 1;
            }
            let y = y.mod_floor(&modulus);
            let other = (&modulus - &y).mod_floor(&modulus);
            y.min(other)
        } else {
            // base root mod p by scan; desk-scale primes
            let p_u64 = self.prime();
            let u_mod_p = u_res
                .mod_floor(&p)
                .to_u64()
                .expect("residue mod p fits in u64");
            let mut y0 = None;
            for cand in 1..p_u64 {
                if (cand as u128 * cand as u128) % p_u64 as u128 == u_mod_p as u128 {
                    y0 = Some(cand);
                    break;
                }
            }
            let mut y = BigInt::from(y0.expect("residue is a square mod p"));
            let mut prec = 1u32;
            while prec < level {
                prec = (prec * 2).min(level);
                let m = self.prime_pow(prec);
                // Newton: y ← (y + u/y)/2 mod p^prec
                let y_inv = mod_inverse(&y, &m).expect("root is a unit");
                let two_inv = mod_inverse(&BigInt::from(2), &m).expect("p odd");
                y = ((&y + (&u_res % &m) * y_inv) * two_inv).mod_floor(&m);
            }
            let other = (&modulus - &y).mod_floor(&modulus);
            let d1 = y.mod_floor(&p);
            let d2 = other.mod_floor(&p);
            if d2 < d1 {
                other
            } else {
                y
            }
        };

        let t = v / 2;
        Ok(self.scale_by_prime_power(&ExactScalar::from(root), t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx5() -> PadicContext {
        PadicContext::new(5, 4).unwrap()
    }

    /// Brute-force oracle: x (a p-adic unit residue) is a square mod p^k iff
    /// some y² ≡ x mod p^k.
    fn square_mod_oracle(x: i64, p: u64, k: u32) -> bool {
        let m = (p as i64).pow(k);
        let target = x.rem_euclid(m);
        (0..m).any(|y| (y * y).rem_euclid(m) == target)
    }

    #[test]
    fn sqrt_exists_examples() {
        let ctx = ctx5();
        // -99 ≡ 1 mod 5
        assert!(ctx.sqrt_exists(&ExactScalar::from(-99)).unwrap());
        assert!(square_mod_oracle(-99, 5, 2));
        // squares mod 5 are {0,1,4}
        assert!(!ctx.sqrt_exists(&ExactScalar::from(2)).unwrap());
        assert!(!square_mod_oracle(2, 5, 1));
        let ctx2 = PadicContext::new(2, 4).unwrap();
        assert!(ctx2.sqrt_exists(&ExactScalar::from(17)).unwrap());
        assert!(square_mod_oracle(17, 2, 5));
        assert!(ctx.sqrt_exists(&ExactScalar::zero()).is_err());
        // odd valuation
        assert!(!ctx.sqrt_exists(&ExactScalar::from(5)).unwrap());
    }

    #[test]
    fn hensel_sqrt_examples() {
        let ctx = ctx5();
        // exhaustive search of y² ≡ -99 ≡ 1 mod 25 gives {1, 24}; the
        // tie-break picks leading digit 1
        let r = ctx.hensel_sqrt(&ExactScalar::from(-99), 2).unwrap();
        assert_eq!(r, ExactScalar::from(1));
        // perfect square
        let r = ctx.hensel_sqrt(&ExactScalar::from(25), 3).unwrap();
        assert_eq!(r, ExactScalar::from(5));
        assert!(matches!(
            ctx.hensel_sqrt(&ExactScalar::from(2), 2),
            Err(PadicError::NonSquare(_, 5))
        ));
        assert!(matches!(
            ctx.hensel_sqrt(&ExactScalar::from(5), 2),
            Err(PadicError::OddValuation(_, 5))
        ));
    }

    #[test]
    fn hensel_square_congruence() {
        // hensel_sqrt(x, N)² ≡ x mod p^N after valuation normalization
        let ctx = ctx5();
        for (num, den) in [(-99i64, 1i64), (6, 1), (11, 4), (2525, 101), (-1, 1)] {
            let x = ExactScalar::new(num, den).unwrap();
            if !ctx.sqrt_exists(&x).unwrap_or(false) {
                continue;
            }
            for level in [1u32, 2, 3, 6, 10] {
                let y = ctx.hensel_sqrt(&x, level).unwrap();
                let diff = &(&y * &y) - &x;
                if diff.is_zero() {
                    continue;
                }
                let v_diff = ctx.valuation(&diff).finite().unwrap();
                let v_x = ctx.valuation(&x).finite().unwrap();
                assert!(
                    v_diff >= v_x + level as i64,
                    "y²≢x: x={x} level={level} v_diff={v_diff}"
                );
            }
        }
    }

    #[test]
    fn hensel_sqrt_p2() {
        let ctx = PadicContext::new(2, 8).unwrap();
        let x = ExactScalar::from(17);
        let y = ctx.hensel_sqrt(&x, 5).unwrap();
        // 9² = 81 ≡ 17 mod 32
        assert_eq!(y, ExactScalar::from(9));
        let x = ExactScalar::from(4 * 17);
        let y = ctx.hensel_sqrt(&x, 5).unwrap();
        assert_eq!(y, ExactScalar::from(18));
    }
}
