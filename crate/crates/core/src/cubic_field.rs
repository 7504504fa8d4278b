//! Arithmetic in L_n = Q(ρ), ρ a root of f_n(X) = X³ − nX² − (n+3)X − 1.
//!
//! Elements are stored over the power basis {1, ρ, ρ²}. The generator σ of
//! the Galois group acts by ρ ↦ ρ² − (n+1)ρ − 2, so no embeddings into R or C
//! are ever needed: traces, norms and discriminants are exact rationals.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::factor;
use crate::error::{Error, Result};
use crate::linalg::{det3, inv3, mul3, Matrix3};
use crate::Rational;

/// c0 + c1·ρ + c2·ρ².
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub c: [Rational; 3],
}

impl FieldElement {
    pub fn new(c0: Rational, c1: Rational, c2: Rational) -> Self {
        FieldElement { c: [c0, c1, c2] }
    }

    pub fn from_rational(x: Rational) -> Self {
        Self::new(x, Rational::zero(), Rational::zero())
    }

    pub fn from_int(x: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(x)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rho() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn rho_squared() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        FieldElement { c: core::array::from_fn(|i| &self.c[i] * k) }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*rho + {}*rho^2", self.c[0], self.c[1], self.c[2])
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, y: &FieldElement) -> FieldElement {
        FieldElement { c: core::array::from_fn(|i| &self.c[i] + &y.c[i]) }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, y: &FieldElement) -> FieldElement {
        FieldElement { c: core::array::from_fn(|i| &self.c[i] - &y.c[i]) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { c: core::array::from_fn(|i| -&self.c[i]) }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, y: FieldElement) -> FieldElement {
        &self + &y
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, y: FieldElement) -> FieldElement {
        &self - &y
    }
}

impl<'a> Mul<&'a Rational> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, k: &Rational) -> FieldElement {
        self.scale(k)
    }
}

/// Coordinates over {1, ρ, ρ′} with ρ′ = σ(ρ).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RhoPrimeCoords {
    pub constant: Rational,
    pub rho: Rational,
    pub rho_prime: Rational,
}

/// The field L_n for n = n1/n2 in lowest terms with n2 > 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicField {
    n1: BigInt,
    n2: BigInt,
    n: Rational,
}

impl CubicField {
    /// Normalizes (n1, n2) to lowest terms with n2 > 0 and rejects parameters
    /// for which f_n has a rational root.
    pub fn new(n1: impl Into<BigInt>, n2: impl Into<BigInt>) -> Result<Self> {
        let (n1, n2) = (n1.into(), n2.into());
        if n2.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = n1.gcd(&n2);
        let (mut n1, mut n2) = (n1 / &g, n2 / &g);
        if n2.is_negative() {
            n1 = -n1;
            n2 = -n2;
        }
        if let Some(root) = rational_root(&n1, &n2) {
            return Err(Error::Reducible { root });
        }
        let n = Rational::new(n1.clone(), n2.clone());
        Ok(CubicField { n1, n2, n })
    }

    pub fn n1(&self) -> &BigInt {
        &self.n1
    }

    pub fn n2(&self) -> &BigInt {
        &self.n2
    }

    pub fn n(&self) -> &Rational {
        &self.n
    }

    /// n1² + 3n1n2 + 9n2².
    pub fn delta(&self) -> BigInt {
        &self.n1 * &self.n1 + &self.n1 * &self.n2 * 3u32 + &self.n2 * &self.n2 * 9u32
    }

    fn q(&self, x: i64) -> Rational {
        Rational::from_integer(BigInt::from(x))
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut p: [Rational; 5] = core::array::from_fn(|_| Rational::zero());
        for i in 0..3 {
            for j in 0..3 {
                p[i + j] += &x.c[i] * &y.c[j];
            }
        }
        let n = &self.n;
        // ρ³ = nρ² + (n+3)ρ + 1 and ρ⁴ = (n²+n+3)ρ² + (n²+3n+1)ρ + n.
        let r3 = [Rational::one(), n + self.q(3), n.clone()];
        let r4 = [n.clone(), n * n + n * self.q(3) + self.q(1), n * n + n + self.q(3)];
        FieldElement {
            c: core::array::from_fn(|k| &p[k] + &p[3] * &r3[k] + &p[4] * &r4[k]),
        }
    }

    pub fn square(&self, x: &FieldElement) -> FieldElement {
        self.mul(x, x)
    }

    /// σ(ρ) = ρ² − (n+1)ρ − 2.
    pub fn sigma_rho(&self) -> FieldElement {
        FieldElement::new(self.q(-2), -(&self.n + self.q(1)), self.q(1))
    }

    pub fn sigma(&self, x: &FieldElement) -> FieldElement {
        let s = self.sigma_rho();
        let s2 = self.square(&s);
        &(&FieldElement::from_rational(x.c[0].clone()) + &s.scale(&x.c[1])) + &s2.scale(&x.c[2])
    }

    pub fn sigma2(&self, x: &FieldElement) -> FieldElement {
        self.sigma(&self.sigma(x))
    }

    /// (x, σx, σ²x).
    pub fn conjugates(&self, x: &FieldElement) -> [FieldElement; 3] {
        let s1 = self.sigma(x);
        let s2 = self.sigma(&s1);
        [x.clone(), s1, s2]
    }

    pub fn trace(&self, x: &FieldElement) -> Rational {
        let [a, b, c] = self.conjugates(x);
        let t = &(&a + &b) + &c;
        debug_assert!(t.is_rational());
        t.c[0].clone()
    }

    pub fn norm(&self, x: &FieldElement) -> Rational {
        let [a, b, c] = self.conjugates(x);
        let t = self.mul(&self.mul(&a, &b), &c);
        debug_assert!(t.is_rational());
        t.c[0].clone()
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let [a, b, c] = self.conjugates(x);
        let bc = self.mul(&b, &c);
        let nrm = self.mul(&a, &bc);
        if !nrm.is_rational() {
            return Err(Error::InternalInconsistency("norm is not rational".into()));
        }
        Ok(bc.scale(&(Rational::one() / &nrm.c[0])))
    }

    /// Monic minimal polynomial over Q, coefficients from X⁰ upward.
    pub fn minpoly(&self, x: &FieldElement) -> Vec<Rational> {
        if x.is_rational() {
            return alloc::vec![-x.c[0].clone(), Rational::one()];
        }
        let [a, b, c] = self.conjugates(x);
        let e1 = &(&a + &b) + &c;
        let e2 = &(&self.mul(&a, &b) + &self.mul(&a, &c)) + &self.mul(&b, &c);
        let e3 = self.mul(&self.mul(&a, &b), &c);
        debug_assert!(e1.is_rational() && e2.is_rational() && e3.is_rational());
        alloc::vec![-e3.c[0].clone(), e2.c[0].clone(), -e1.c[0].clone(), Rational::one()]
    }

    pub fn is_integral(&self, x: &FieldElement) -> bool {
        self.minpoly(x).iter().all(Rational::is_integer)
    }

    /// d(1, ρ, ρ²) = Δ²/n2⁴.
    pub fn power_basis_disc(&self) -> Rational {
        let delta = self.delta();
        Rational::new(&delta * &delta, num_traits::pow(self.n2.clone(), 4))
    }

    /// d(x1, x2, x3) = det(M)²·d(1, ρ, ρ²), M the coordinate matrix.
    pub fn disc_triple(&self, xs: [&FieldElement; 3]) -> Rational {
        let d = det3(&coords_matrix(xs));
        &d * &d * self.power_basis_disc()
    }

    /// Matrix T with vectors = T · basis (rows are coordinates).
    pub fn change_of_basis(&self, basis: [&FieldElement; 3], vectors: [&FieldElement; 3]) -> Result<Matrix3> {
        let b_inv = inv3(&coords_matrix(basis))?;
        Ok(mul3(&coords_matrix(vectors), &b_inv))
    }

    /// |det T| for T the change of basis from `basis` to `vectors`.
    pub fn lattice_index(&self, basis: [&FieldElement; 3], vectors: [&FieldElement; 3]) -> Result<Rational> {
        let db = det3(&coords_matrix(basis));
        if db.is_zero() {
            return Err(Error::SingularBasis);
        }
        Ok((det3(&coords_matrix(vectors)) / db).abs())
    }

    /// ρ² = ρ′ + (n+1)ρ + 2.
    pub fn to_rho_prime(&self, x: &FieldElement) -> RhoPrimeCoords {
        let [c0, c1, c2] = &x.c;
        RhoPrimeCoords {
            constant: c0 + c2 * self.q(2),
            rho: c1 + c2 * (&self.n + self.q(1)),
            rho_prime: c2.clone(),
        }
    }

    pub fn from_rho_prime(&self, y: &RhoPrimeCoords) -> FieldElement {
        FieldElement::new(
            &y.constant - &y.rho_prime * self.q(2),
            &y.rho - &y.rho_prime * (&self.n + self.q(1)),
            y.rho_prime.clone(),
        )
    }
}

pub(crate) fn coords_matrix(xs: [&FieldElement; 3]) -> Matrix3 {
    core::array::from_fn(|i| xs[i].c.clone())
}

/// A rational root of f_{n1/n2}, found as t/n2 for an integer root t of the
/// minimal polynomial X³ − n1X² − (n1n2 + 3n2²)X − n2³ of n2ρ.
fn rational_root(n1: &BigInt, n2: &BigInt) -> Option<Rational> {
    let c1 = n1 * n2 + n2 * n2 * 3u32;
    let c0 = num_traits::pow(n2.clone(), 3);
    let g = |t: &BigInt| t * t * t - n1 * t * t - &c1 * t - &c0;
    let fac = factor(n2);
    let mut divisors = alloc::vec![BigInt::one()];
    for (p, e) in fac.iter() {
        let mut next = Vec::new();
        for d in &divisors {
            let mut pk = BigInt::one();
            for _ in 0..=3 * e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        divisors = next;
    }
    divisors.sort();
    for d in divisors {
        for t in [d.clone(), -d] {
            if g(&t).is_zero() {
                return Some(Rational::new(t, n2.clone()));
            }
        }
    }
    None
}
