//! Integer and rational primitives: factorization, valuations and the small
//! number-theoretic helpers used by the rest of the crate.
//!
//! Every integer is a [`BigInt`]; quantities that are positive by
//! construction (primes, Δ, d, e, c, ...) are still carried as `BigInt` so
//! that they mix freely with signed parameters in formulas.

mod factor;
mod modular;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub use factor::{factor, is_prime};
pub use modular::{mod_pow, sqrt_mod};

/// Prime decomposition of |N|, sorted by prime.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    /// Builds a factorization from (prime, exponent) pairs. Pairs are merged
    /// and sorted; zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (BigInt, u32)>>(pairs: I) -> Self {
        let mut factors: Vec<(BigInt, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        factors.sort_by(|x, y| x.0.cmp(&y.0));
        let mut merged: Vec<(BigInt, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some(last) if last.0 == p => last.1 += e,
                _ => merged.push((p, e)),
            }
        }
        Factorization { factors: merged }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigInt, u32)> {
        self.factors.iter().map(|(p, e)| (p, *e))
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// Product of p^e over all factors.
    pub fn value(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }

    /// Multiplies two factorizations.
    pub fn merge(&self, other: &Factorization) -> Factorization {
        Factorization::from_pairs(self.factors.iter().chain(other.factors.iter()).cloned())
    }
}

/// Renders as `3^4*7^2`; the empty factorization renders as `1`.
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Δ = d·e²·c³ with d, e square-free and coprime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaDecomposition {
    pub d: BigInt,
    pub e: BigInt,
    pub c: BigInt,
}

/// Splits a positive integer as d·e²·c³: for v_p(Δ) = 3q + s, p^q goes to c
/// and p goes to d (s = 1) or e (s = 2).
pub fn dec_factor(delta: &BigInt) -> DeltaDecomposition {
    assert!(delta.is_positive(), "dec_factor requires a positive argument");
    dec_from_factorization(&factor(delta))
}

pub(crate) fn dec_from_factorization(fac: &Factorization) -> DeltaDecomposition {
    let mut d = BigInt::one();
    let mut e = BigInt::one();
    let mut c = BigInt::one();
    for (p, k) in fac.iter() {
        c *= num_traits::pow(p.clone(), (k / 3) as usize);
        match k % 3 {
            1 => d *= p,
            2 => e *= p,
            _ => {}
        }
    }
    DeltaDecomposition { d, e, c }
}

/// v_p of a nonzero integer.
pub fn valuation_int(x: &BigInt, p: &BigInt) -> u32 {
    assert!(!x.is_zero(), "valuation of zero");
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// v_p(num) − v_p(den) for nonzero x.
pub fn valuation(x: &Rational, p: &BigInt) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(valuation_int(x.numer(), p) as i64 - valuation_int(x.denom(), p) as i64)
}

/// The Legendre symbol (a/3): 0 when 3 | a, +1 for a ≡ 1, −1 for a ≡ 2.
pub fn legendre3(a: &BigInt) -> i8 {
    let r = a.mod_floor(&BigInt::from(3));
    if r.is_zero() {
        0
    } else if r.is_one() {
        1
    } else {
        -1
    }
}

/// Euler's totient.
pub fn euler_phi(x: &BigInt) -> BigInt {
    assert!(x.is_positive(), "totient of a non-positive integer");
    factor(x).iter().fold(BigInt::one(), |acc, (p, e)| {
        acc * num_traits::pow(p.clone(), (e - 1) as usize) * (p - 1u32)
    })
}

/// φ(x) − 1.
pub fn euler_psi(x: &BigInt) -> BigInt {
    euler_phi(x) - 1u32
}

#[cfg(test)]
pub(crate) fn is_square_free(x: &BigInt) -> bool {
    if x.is_zero() {
        return false;
    }
    factor(x).is_square_free()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn pairs(f: &Factorization) -> Vec<(i64, u32)> {
        f.iter().map(|(p, e)| (i64::try_from(p).unwrap(), e)).collect()
    }

    #[test]
    fn factor_examples() {
        assert_eq!(pairs(&factor(&big(1369))), [(37, 2)]);
        assert!(factor(&big(1)).is_empty());
        assert!(factor(&big(-1)).is_empty());
        assert_eq!(pairs(&factor(&big(1323))), [(3, 3), (7, 2)]);
        assert_eq!(factor(&big(1323)).to_string(), "3^3*7^2");
        assert_eq!(factor(&big(1)).to_string(), "1");
    }

    #[test]
    fn factor_beyond_trial_division() {
        // Both factors exceed the trial-division bound, so Pollard rho does the split.
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let n = &p * &q * &q;
        assert_eq!(factor(&n), Factorization::from_pairs([(p, 1), (q, 2)]));

        let n: BigInt = "1470626929934143021".parse().unwrap();
        assert_eq!(
            pairs(&factor(&n)),
            [(1_206_429_347, 1), (1_218_991_343, 1)]
        );
    }

    #[test]
    fn valuation_examples() {
        let q = |n: i64, d: i64| Rational::new(big(n), big(d));
        assert_eq!(valuation(&q(12, 1), &big(2)), Ok(2));
        assert_eq!(valuation(&q(3, 4), &big(2)), Ok(-2));
        assert_eq!(valuation(&q(7, 1), &big(3)), Ok(0));
        assert_eq!(valuation(&q(0, 1), &big(3)), Err(Error::ZeroValuation));
    }

    #[test]
    fn legendre3_examples() {
        assert_eq!(legendre3(&big(7)), 1);
        assert_eq!(legendre3(&big(-10)), -1);
        assert_eq!(legendre3(&big(9)), 0);
    }

    #[test]
    fn euler_psi_examples() {
        assert_eq!(euler_psi(&big(1)), big(0));
        assert_eq!(euler_psi(&big(9)), big(5));
        assert_eq!(euler_psi(&big(47)), big(45));
    }

    #[test]
    fn dec_factor_examples() {
        let dec = |x: i64| {
            let r = dec_factor(&big(x));
            (r.d, r.e, r.c)
        };
        assert_eq!(dec(1323), (big(1), big(7), big(3)));
        assert_eq!(dec(43), (big(43), big(1), big(1)));
        assert_eq!(dec(1369), (big(1), big(37), big(1)));
    }

    fn naive_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn factor_reconstructs_small_range() {
        for n in 2u64..20_000 {
            let f = factor(&BigInt::from(n));
            assert_eq!(f.value(), BigInt::from(n));
            for p in f.primes() {
                assert!(naive_is_prime(u64::try_from(p).unwrap()));
            }
        }
    }

    #[test]
    fn dec_factor_roundtrip_small_range() {
        for n in 1i64..20_000 {
            let r = dec_factor(&big(n));
            assert_eq!(&r.d * &r.e * &r.e * &r.c * &r.c * &r.c, big(n));
            assert!(is_square_free(&r.d) && is_square_free(&r.e));
            assert!(r.d.gcd(&r.e).is_one());
        }
    }

    proptest! {
        #[test]
        fn factor_reconstructs(n in 2u64..1_000_000) {
            let f = factor(&BigInt::from(n));
            prop_assert_eq!(f.value(), BigInt::from(n));
            for p in f.primes() {
                prop_assert!(naive_is_prime(u64::try_from(p).unwrap()));
            }
        }

        #[test]
        fn dec_factor_roundtrip(n in 1i64..100_000) {
            let r = dec_factor(&big(n));
            prop_assert_eq!(&r.d * &r.e * &r.e * &r.c * &r.c * &r.c, big(n));
            prop_assert!(is_square_free(&r.d) && is_square_free(&r.e));
            prop_assert!(r.d.gcd(&r.e).is_one());
        }

        #[test]
        fn legendre3_multiplicative(a in -1000i64..1000, b in -1000i64..1000) {
            prop_assume!(a % 3 != 0 && b % 3 != 0);
            prop_assert_eq!(legendre3(&big(a)) * legendre3(&big(b)), legendre3(&big(a * b)));
        }
    }
}
