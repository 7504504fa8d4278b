//! The Eisenstein integers Z[ζ], ζ² = −1 − ζ.

use alloc::string::ToString;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime, sqrt_mod};
use crate::error::{Error, Result};

/// a + bζ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn zeta() -> Self {
        Self::new(0, 1)
    }

    /// 1 − ζ, the prime above 3.
    pub fn one_minus_zeta() -> Self {
        Self::new(1, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Image under ζ ↦ ζ².
    pub fn conj(&self) -> Self {
        EisensteinInt { a: &self.a - &self.b, b: -&self.b }
    }

    /// a² − ab + b².
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn mul_zeta(&self) -> Self {
        EisensteinInt { a: -&self.b, b: &self.a - &self.b }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// The six unit multiples ±x, ±ζx, ±ζ²x.
    pub fn associates(&self) -> [EisensteinInt; 6] {
        let z1 = self.mul_zeta();
        let z2 = z1.mul_zeta();
        [self.clone(), z1.clone(), z2.clone(), -self, -&z1, -&z2]
    }

    /// The associate with a > b ≥ 0.
    pub fn canonical(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::PreconditionViolated("canonical associate of zero".to_string()));
        }
        let found = self
            .associates()
            .into_iter()
            .find(|u| u.a > u.b && !u.b.is_negative());
        found.ok_or_else(|| Error::InternalInconsistency("no associate in the sextant".to_string()))
    }

    /// Euclidean division: x = q·y + r with norm(r) < norm(y). Each coordinate
    /// of x·conj(y)/norm(y) is rounded to nearest, ties toward −∞.
    pub fn divmod(&self, y: &Self) -> Result<(Self, Self)> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = y.norm();
        let t = self * &y.conj();
        let two_n: BigInt = &n * 2u32;
        let round = |t: &BigInt| -> BigInt {
            let num: BigInt = t * 2u32 - &n;
            -((-num).div_floor(&two_n))
        };
        let q = EisensteinInt { a: round(&t.a), b: round(&t.b) };
        let r = self - &(&q * y);
        Ok((q, r))
    }

    /// Exact quotient x / y, if y divides x.
    pub fn div_exact(&self, y: &Self) -> Option<Self> {
        match self.divmod(y) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, x: &Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).is_some()
    }

    /// Canonical generator of the ideal (x, y).
    pub fn gcd(x: &Self, y: &Self) -> Result<Self> {
        let mut u = x.clone();
        let mut v = y.clone();
        while !v.is_zero() {
            let (_, r) = u.divmod(&v)?;
            u = v;
            v = r;
        }
        u.canonical()
    }
}

/// Canonical prime π above a rational prime p ≡ 1 (mod 3), from a square
/// root s of −3 mod p: π = gcd(p, s − (1 + 2ζ)).
pub fn split_prime(p: &BigInt) -> Result<EisensteinInt> {
    let three = BigInt::from(3);
    if !is_prime(p) || !p.mod_floor(&three).is_one() {
        return Err(Error::NotSplitPrime(p.to_string()));
    }
    let s = sqrt_mod(&BigInt::from(-3), p)
        .ok_or_else(|| Error::InternalInconsistency("−3 is not a square mod p".to_string()))?;
    let pi = EisensteinInt::gcd(
        &EisensteinInt::new(p.clone(), 0),
        &EisensteinInt::new(s - 1, -2),
    )?;
    if &pi.norm() != p {
        return Err(Error::InternalInconsistency("split prime has wrong norm".to_string()));
    }
    Ok(pi)
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl<'a> Add<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, y: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a + &y.a, b: &self.b + &y.b }
    }
}

impl<'a> Sub<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, y: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a - &y.a, b: &self.b - &y.b }
    }
}

impl<'a> Mul<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, y: &EisensteinInt) -> EisensteinInt {
        let bd = &self.b * &y.b;
        EisensteinInt {
            a: &self.a * &y.a - &bd,
            b: &self.a * &y.b + &self.b * &y.a - bd,
        }
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt { a: -&self.a, b: -&self.b }
    }
}

impl Add for EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, y: EisensteinInt) -> EisensteinInt {
        &self + &y
    }
}

impl Sub for EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, y: EisensteinInt) -> EisensteinInt {
        &self - &y
    }
}

impl Mul for EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, y: EisensteinInt) -> EisensteinInt {
        &self * &y
    }
}

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(e(1, -1) * e(3, 2), e(5, 1));
        assert_eq!(e(1, 0) * e(-4, 9), e(-4, 9));
        assert_eq!(e(0, 1).pow(3), e(1, 0));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(e(3, 1).conj(), e(2, -1));
        assert_eq!(e(5, 0).conj(), e(5, 0));
        assert_eq!(e(40, 33).conj(), e(7, -33));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(e(3, 2).norm(), BigInt::from(7));
        assert_eq!(e(7, 3).norm(), BigInt::from(37));
        assert_eq!(e(39, 33).norm(), BigInt::from(1323));
    }

    #[test]
    fn divmod_examples() {
        assert_eq!(e(40, 33).divmod(&e(7, 3)).unwrap(), (e(7, 3), e(0, 0)));
        assert_eq!(e(5, 1).divmod(&e(1, 0)).unwrap(), (e(5, 1), e(0, 0)));
        let (q, r) = e(4, 1).divmod(&e(3, 2)).unwrap();
        assert!(r.norm() < BigInt::from(7));
        assert_eq!(&(&q * &e(3, 2)) + &r, e(4, 1));
        assert_eq!(e(1, 1).divmod(&e(0, 0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn divmod_ties_round_down() {
        // 1/2 and −1/2 both round toward −∞.
        assert_eq!(e(1, 0).divmod(&e(2, 0)).unwrap().0, e(0, 0));
        assert_eq!(e(-1, 0).divmod(&e(2, 0)).unwrap().0, e(-1, 0));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(EisensteinInt::gcd(&e(37, 0), &e(40, 33)).unwrap(), e(7, 3));
        assert_eq!(EisensteinInt::gcd(&e(-1, 4), &e(0, 0)).unwrap(), e(5, 1));
        assert_eq!(EisensteinInt::gcd(&e(7, 0), &e(43, 33)).unwrap(), e(3, 1));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(e(1, -1).canonical().unwrap(), e(2, 1));
        assert_eq!(e(1, 0).canonical().unwrap(), e(1, 0));
        assert_eq!(e(-1, 4).canonical().unwrap(), e(5, 1));
        assert!(e(0, 0).canonical().is_err());
    }

    #[test]
    fn pow_examples() {
        assert_eq!(e(0, 1).pow(3), e(1, 0));
        assert_eq!(e(1, -1).pow(2), e(0, -3));
        assert_eq!(e(3, 1).pow(0), e(1, 0));
    }

    fn brute_force_primes_above(p: i64) -> alloc::vec::Vec<EisensteinInt> {
        let mut out = alloc::vec::Vec::new();
        // With 0 ≤ b < a the norm is at least 3a²/4.
        for a in (0..=p).take_while(|a| 3 * a * a <= 4 * p) {
            for b in 0..a {
                let x = e(a, b);
                if x.norm() == BigInt::from(p) {
                    out.push(x);
                }
            }
        }
        out
    }

    #[test]
    fn split_prime_examples() {
        for (p, pair) in [(7, [e(3, 1), e(3, 2)]), (13, [e(4, 1), e(4, 3)]), (37, [e(7, 3), e(7, 4)])] {
            let pi = split_prime(&BigInt::from(p)).unwrap();
            assert!(pair.contains(&pi));
            let partner = pi.conj().canonical().unwrap();
            assert!(pair.contains(&partner) && partner != pi);
        }
        assert!(matches!(split_prime(&BigInt::from(5)), Err(Error::NotSplitPrime(_))));
        assert!(matches!(split_prime(&BigInt::from(3)), Err(Error::NotSplitPrime(_))));
        assert!(matches!(split_prime(&BigInt::from(91)), Err(Error::NotSplitPrime(_))));
    }

    #[test]
    fn split_prime_agrees_with_search() {
        for p in (7i64..2000).filter(|p| p % 3 == 1 && is_prime(&BigInt::from(*p))) {
            let pi = split_prime(&BigInt::from(p)).unwrap();
            let found = brute_force_primes_above(p);
            assert_eq!(found.len(), 2);
            assert!(found.contains(&pi));
            let prod = &pi * &pi.conj().canonical().unwrap();
            assert!(prod.associates().contains(&e(p, 0)));
        }
    }

    #[test]
    fn exactly_one_associate_is_canonical() {
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                if a == 0 && b == 0 {
                    continue;
                }
                let x = e(a, b);
                let hits = x.associates().iter().filter(|u| u.a > u.b && !u.b.is_negative()).count();
                assert_eq!(hits, 1);
                let c = x.canonical().unwrap();
                assert_eq!(c.canonical().unwrap(), c);
            }
        }
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in -30i64..=30, b in -30i64..=30, c in -30i64..=30, d in -30i64..=30) {
            prop_assert_eq!((e(a, b) * e(c, d)).norm(), e(a, b).norm() * e(c, d).norm());
        }

        #[test]
        fn euclidean_contract(a in -30i64..=30, b in -30i64..=30, c in -30i64..=30, d in -30i64..=30) {
            prop_assume!(c != 0 || d != 0);
            let (x, y) = (e(a, b), e(c, d));
            let (q, r) = x.divmod(&y).unwrap();
            prop_assert_eq!(&(&q * &y) + &r, x);
            prop_assert!(r.norm() < y.norm());
        }

        #[test]
        fn gcd_divides_and_is_greatest(
            a in -30i64..=30, b in -30i64..=30, c in -30i64..=30, d in -30i64..=30,
            k in -5i64..=5, l in -5i64..=5,
        ) {
            prop_assume!(a != 0 || b != 0);
            prop_assume!(k != 0 || l != 0);
            // Scale both by a common factor so the gcd is nontrivial.
            let f = e(k, l);
            let x = &e(a, b) * &f;
            let y = &e(c, d) * &f;
            let g = EisensteinInt::gcd(&x, &y).unwrap();
            prop_assert!(g.divides(&x) && g.divides(&y));
            prop_assert!(f.divides(&g));
        }

        #[test]
        fn conj_is_ring_homomorphism(a in -30i64..=30, b in -30i64..=30, c in -30i64..=30, d in -30i64..=30) {
            let (x, y) = (e(a, b), e(c, d));
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
            prop_assert_eq!(x.conj().conj(), x);
        }
    }
}
