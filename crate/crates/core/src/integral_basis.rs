//! An explicit integral basis {1, φ, ψ} of L_n, obtained by moving ρ to a
//! root θ of a depressed cubic X³ + aX + b and applying Albert's description
//! of the ring of integers of Q(θ).
//!
//! Albert's general recipe is also implemented on its own, straight from
//! (a, b), and serves as an independent oracle for the specialised formulas.

use alloc::format;
use alloc::string::ToString;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{euler_psi, factor, mod_pow, valuation_int};
use crate::classify::{CaseTag, FieldInvariants};
use crate::cubic_field::{CubicField, FieldElement};
use crate::error::{Error, Result};
use crate::Rational;

/// h(X) = X³ + aX + b, the image of f_n under θ = (3n2/m)(ρ − n/3).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransformData {
    pub a: BigInt,
    pub b: BigInt,
    pub m: BigInt,
}

impl TransformData {
    /// θ as an element of L_n: (3n2/m)ρ − n1/m.
    pub fn theta(&self, inv: &FieldInvariants) -> FieldElement {
        FieldElement::new(
            Rational::new(-&inv.n1, self.m.clone()),
            Rational::new(&inv.n2 * 3u32, self.m.clone()),
            Rational::zero(),
        )
    }
}

/// The decomposition 4a³ + 27b² = 2^{2λ}·3^{2μ}·P²·Q²·Δ′ with 4 ∤ Δ′, 9 ∤ Δ′.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlbertDecomposition {
    pub lambda: u32,
    pub mu: u32,
    pub p: BigInt,
    pub q: BigInt,
    pub delta_prime: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlbertParams {
    pub dec: AlbertDecomposition,
    pub eps1: u32,
    pub eps2: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegralBasis {
    pub one: FieldElement,
    pub phi: FieldElement,
    pub psi: FieldElement,
    pub u: BigInt,
    pub r: BigInt,
}

impl IntegralBasis {
    pub fn elements(&self) -> [&FieldElement; 3] {
        [&self.one, &self.phi, &self.psi]
    }
}

fn int(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

fn pow_u(base: u32, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

fn exact_div(x: &BigInt, y: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = x.div_rem(y);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InternalInconsistency(format!("{what} is not an integer")))
    }
}

/// No prime p with p² | a and p³ | b.
fn is_reduced_pair(a: &BigInt, b: &BigInt) -> bool {
    let g = a.gcd(b);
    if g.is_zero() {
        return false;
    }
    factor(&g).primes().all(|p| {
        let va = if a.is_zero() { u32::MAX } else { valuation_int(a, p) };
        let vb = if b.is_zero() { u32::MAX } else { valuation_int(b, p) };
        va < 2 || vb < 3
    })
}

pub fn transform(field: &CubicField, inv: &FieldInvariants) -> Result<TransformData> {
    let m = inv.m.clone();
    let s: BigInt = &inv.n1 * 2u32 + &inv.n2 * 3u32;
    let a = -exact_div(&(&inv.delta * 3u32), &(&m * &m), "3Δ/m²")?;
    let b = -exact_div(&(&s * &inv.delta), &(&m * &m * &m), "(2n1+3n2)Δ/m³")?;
    if !is_reduced_pair(&a, &b) {
        return Err(Error::InternalInconsistency("some p has p² | a and p³ | b".to_string()));
    }
    let td = TransformData { a, b, m };
    let mp = field.minpoly(&td.theta(inv));
    let expected = [
        Rational::from_integer(td.b.clone()),
        Rational::from_integer(td.a.clone()),
        Rational::zero(),
        Rational::one(),
    ];
    if mp[..] != expected[..] {
        return Err(Error::InternalInconsistency("minpoly(θ) ≠ X³ + aX + b".to_string()));
    }
    Ok(td)
}

/// λ, μ, P, Q, Δ′ read off the factorizations of a, b and 4a³ + 27b².
pub fn albert_decomposition(a: &BigInt, b: &BigInt) -> Result<AlbertDecomposition> {
    let disc: BigInt = a * a * a * 4u32 + b * b * 27u32;
    if disc.is_zero() {
        return Err(Error::PreconditionViolated("4a³ + 27b² = 0".to_string()));
    }
    let six = int(6);
    let mut p = BigInt::one();
    if !a.is_zero() {
        for (prime, va) in factor(a).iter() {
            if !prime.gcd(&six).is_one() {
                continue;
            }
            let half_vb = if b.is_zero() { u32::MAX } else { valuation_int(b, prime) / 2 };
            p *= num_traits::pow(prime.clone(), va.min(half_vb) as usize);
        }
    }
    let six_a: BigInt = a * 6u32;
    let mut q = BigInt::one();
    for (prime, vd) in factor(&disc).iter() {
        if six_a.is_zero() {
            if !prime.gcd(&six).is_one() {
                continue;
            }
        } else if !prime.gcd(&six_a).is_one() {
            continue;
        }
        q *= num_traits::pow(prime.clone(), (vd / 2) as usize);
    }
    let pq = &p * &q;
    let mut rest = exact_div(&disc, &(&pq * &pq), "Δ/(PQ)²")?;
    let (mut lambda, mut mu) = (0, 0);
    while (&rest % 4u32).is_zero() {
        rest /= 4u32;
        lambda += 1;
    }
    while (&rest % 9u32).is_zero() {
        rest /= 9u32;
        mu += 1;
    }
    Ok(AlbertDecomposition { lambda, mu, p, q, delta_prime: rest })
}

/// Albert's ε1.
fn albert_eps1(a: &BigInt, b: &BigInt) -> u32 {
    let m = |x: &BigInt, k: u32| x.mod_floor(&int(k));
    let b_0_mod_3 = m(b, 3).is_zero();
    if (m(b, 9).is_zero() && m(a, 3).is_zero()) || (!b_0_mod_3 && m(&(b * b + a - 1u32), 9).is_zero()) {
        1
    } else {
        0
    }
}

/// a ≡ 6 (mod 9), b ≢ 0 (mod 3), μ > 2.
fn albert_first_regime(a: &BigInt, b: &BigInt, mu: u32) -> bool {
    a.mod_floor(&int(9)) == int(6) && !b.mod_floor(&int(3)).is_zero() && mu > 2
}

/// The four 2-adic branches of Albert's recipe, in the order they are tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TwoAdic {
    /// b = 2b1, b1 odd, a ≡ 1 (mod 4), Δ′ ≡ 3 (mod 4).
    OddHalfB3,
    /// b = 2b1, b1 odd, a ≡ 1 (mod 4), Δ′ ≢ 3 (mod 4).
    OddHalfBOther,
    /// 4 | b, a ≢ 1 (mod 4).
    FourDividesB,
    Other,
}

fn two_adic_branch(a: &BigInt, b: &BigInt, delta_prime: &BigInt) -> TwoAdic {
    let four = int(4);
    let half_b_odd = b.is_even() && (b / 2u32).is_odd();
    let a1 = a.mod_floor(&four).is_one();
    if half_b_odd && a1 {
        if delta_prime.mod_floor(&four) == int(3) {
            TwoAdic::OddHalfB3
        } else {
            TwoAdic::OddHalfBOther
        }
    } else if b.mod_floor(&four).is_zero() && !a1 {
        TwoAdic::FourDividesB
    } else {
        TwoAdic::Other
    }
}

/// Modular arithmetic helper for evaluating r modulo a fixed N.
struct Residues {
    n: BigInt,
}

impl Residues {
    fn md(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.n)
    }

    /// base^{ψ(x)} mod N, with 0^{ψ(x)} := 0.
    fn pw(&self, base: &BigInt, psi_of: &BigInt) -> BigInt {
        if base.is_zero() {
            return BigInt::zero();
        }
        mod_pow(base, &euler_psi(psi_of), &self.n)
    }
}

/// (2^{λ−1} − 3·b/2), evaluated as an exact rational before reduction.
fn two_pow_lm1_minus_three_half_b(lambda: u32, b: &BigInt) -> Result<BigInt> {
    if lambda == 0 {
        return Err(Error::InternalInconsistency("2^{λ−1} with λ = 0".to_string()));
    }
    let x = Rational::from_integer(pow_u(2, lambda - 1)) - Rational::new(b * 3u32, int(2));
    if !x.is_integer() {
        return Err(Error::InternalInconsistency("2^{λ−1} − 3b/2 is not an integer".to_string()));
    }
    Ok(x.to_integer())
}

pub fn albert_params(inv: &FieldInvariants, td: &TransformData) -> Result<AlbertParams> {
    let derived = albert_decomposition(&td.a, &td.b)?;

    let n2 = &inv.n2;
    let lambda = valuation_int(n2, &int(2));
    let v3 = valuation_int(n2, &int(3));
    let (e, d) = (&inv.dec.e, &inv.dec.d);
    let mu = match inv.tag {
        CaseTag::T1 => v3 + 3,
        CaseTag::T2 => 0,
        CaseTag::W3i => 3,
        CaseTag::W3ii => 2,
    };
    let p = match inv.tag {
        CaseTag::W3ii => e / 3u32,
        _ => e.clone(),
    };
    let q = n2.abs() / (pow_u(2, lambda) * pow_u(3, v3));
    let delta_prime = -(d * d * &p * &p);
    let closed = AlbertDecomposition { lambda, mu, p, q, delta_prime };
    if closed != derived {
        return Err(Error::InternalInconsistency(format!(
            "closed-form Albert parameters {closed:?} disagree with factorization {derived:?}"
        )));
    }

    let eps1 = u32::from(inv.tag == CaseTag::W3i);
    if inv.tag != CaseTag::T1 && eps1 != albert_eps1(&td.a, &td.b) {
        return Err(Error::InternalInconsistency("ε1 disagrees with its defining congruences".to_string()));
    }
    if albert_first_regime(&td.a, &td.b, mu) != (inv.tag == CaseTag::T1) {
        return Err(Error::InternalInconsistency("wrong Albert regime".to_string()));
    }
    let expected_branch = match lambda {
        0 => TwoAdic::Other,
        1 => TwoAdic::FourDividesB,
        _ => TwoAdic::OddHalfB3,
    };
    if two_adic_branch(&td.a, &td.b, &closed.delta_prime) != expected_branch {
        return Err(Error::InternalInconsistency("wrong 2-adic branch".to_string()));
    }
    Ok(AlbertParams { dec: closed, eps1, eps2: lambda })
}

/// u = 9ec²n2 in the tame cases and 3ec²n2 in the wild ones.
pub fn basis_denominator(inv: &FieldInvariants) -> BigInt {
    let k: u32 = if inv.tag.is_wild() { 3 } else { 9 };
    &inv.dec.e * &inv.dec.c * &inv.dec.c * &inv.n2 * k
}

/// r for the basis, as its least non-negative residue modulo 3u.
pub fn compute_r(inv: &FieldInvariants, td: &TransformData, ap: &AlbertParams) -> Result<BigInt> {
    let u = basis_denominator(inv);
    let ctx = Residues { n: &u * 3u32 };
    let (a, b) = (&td.a, &td.b);
    let AlbertDecomposition { lambda, mu, q, .. } = &ap.dec;
    let (lambda, mu) = (*lambda, *mu);
    let q2 = q * q;

    let r = if inv.tag == CaseTag::T1 {
        let a3 = exact_div(a, &int(3), "a/3")?;
        let three_mu = pow_u(3, mu);
        let three_mu1 = pow_u(3, mu - 1);
        let two_l = pow_u(2, lambda);
        let two_l1 = pow_u(2, lambda + 1);
        match lambda {
            0 | 1 => {
                let t1 = ctx.pw(&(int(2) * &three_mu1 * a), q) * &three_mu;
                let t2 = q * ctx.pw(&(int(2) * &a3 * q), &three_mu1);
                let mut r = -b * (t1 + t2);
                if lambda == 1 {
                    r += &three_mu1 * a * q;
                }
                r
            }
            _ => {
                let t1 = ctx.pw(&(&two_l1 * &three_mu1 * a), q) * &three_mu;
                let t2 = q * ctx.pw(&(&two_l1 * &a3 * q), &three_mu1);
                let k = two_pow_lm1_minus_three_half_b(lambda, b)?;
                -b * (t1 + t2) * &two_l + k * ctx.pw(&(&three_mu1 * a * q), &two_l) * q * &three_mu1
            }
        }
    } else {
        match lambda {
            0 | 1 => {
                let mut r = -b * (ctx.pw(&(int(2) * a), q) * 3u32 + &q2);
                if lambda == 1 {
                    r += &q2 * a * 3u32;
                }
                r
            }
            _ => {
                let two_l = pow_u(2, lambda);
                let k = two_pow_lm1_minus_three_half_b(lambda, b)?;
                -(int(3) * &two_l * b * ctx.pw(&(&two_l * 2u32 * a), q))
                    + int(3) * q * k * ctx.pw(&(int(3) * a * q), &two_l)
                    - &two_l * &two_l * b * &q2
            }
        }
    };
    Ok(ctx.md(&r))
}

/// φ and ψ for a given r, checked for integrality and discriminant.
pub fn basis(field: &CubicField, inv: &FieldInvariants, td: &TransformData, r: &BigInt) -> Result<IntegralBasis> {
    let (n1, n2, m, a) = (&inv.n1, &inv.n2, &td.m, &td.a);
    let q = |x: BigInt| Rational::from_integer(x);
    let phi = if inv.tag == CaseTag::T1 {
        FieldElement::new(q(-n1 - m * r), q(n2 * 3u32), Rational::zero()).scale(&Rational::new(
            BigInt::one(),
            m * 3u32,
        ))
    } else {
        FieldElement::new(q(-n1.clone()), q(n2 * 3u32), Rational::zero())
            .scale(&Rational::new(BigInt::one(), m.clone()))
    };
    let u = basis_denominator(inv);
    let c0 = m * m * r * r + m * m * a - m * n1 * r + n1 * n1;
    let c1 = n2 * 3u32 * (m * r - n1 * 2u32);
    let c2 = n2 * n2 * 9u32;
    let psi = FieldElement::new(q(c0), q(c1), q(c2)).scale(&Rational::new(BigInt::one(), u.clone()));

    if !field.is_integral(&phi) || !field.is_integral(&psi) {
        return Err(Error::Verification { check: "integrality" });
    }
    let one = FieldElement::one();
    if field.disc_triple([&one, &phi, &psi]) != Rational::from_integer(inv.discriminant.clone()) {
        return Err(Error::Verification { check: "discriminant" });
    }
    Ok(IntegralBasis { one, phi, psi, u, r: r.clone() })
}

/// Full pipeline: transform, parameters, r, basis.
pub fn integral_basis(field: &CubicField, inv: &FieldInvariants) -> Result<IntegralBasis> {
    integral_basis_with_offset(field, inv, &BigInt::zero())
}

/// As [`integral_basis`] but with r shifted by `r_offset` (fault injection).
pub fn integral_basis_with_offset(field: &CubicField, inv: &FieldInvariants, r_offset: &BigInt) -> Result<IntegralBasis> {
    let td = transform(field, inv)?;
    let ap = albert_params(inv, &td)?;
    let r = compute_r(inv, &td, &ap)? + r_offset;
    basis(field, inv, &td, &r)
}

/// Albert's integral basis of Q(θ), θ a root of X³ + aX + b. Each element
/// is given by its coordinates over {1, θ, θ²}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlbertBasis {
    pub first_regime: bool,
    pub dec: AlbertDecomposition,
    pub eps1: u32,
    pub eps2: u32,
    pub r: BigInt,
    pub elements: [[Rational; 3]; 3],
}

impl AlbertBasis {
    /// Evaluates the basis at a concrete θ ∈ L_n.
    pub fn embed(&self, field: &CubicField, theta: &FieldElement) -> [FieldElement; 3] {
        let theta2 = field.square(theta);
        core::array::from_fn(|i| {
            let [c0, c1, c2] = &self.elements[i];
            &(&FieldElement::from_rational(c0.clone()) + &theta.scale(c1)) + &theta2.scale(c2)
        })
    }
}

pub fn albert_oracle(a: &BigInt, b: &BigInt) -> Result<AlbertBasis> {
    if !is_reduced_pair(a, b) {
        return Err(Error::PreconditionViolated("some p has p² | a and p³ | b".to_string()));
    }
    let dec = albert_decomposition(a, b)?;
    let AlbertDecomposition { lambda, mu, p, q, delta_prime } = &dec;
    let (lambda, mu) = (*lambda, *mu);
    let first = albert_first_regime(a, b, mu);
    let branch = two_adic_branch(a, b, delta_prime);
    let eps1 = if first { 0 } else { albert_eps1(a, b) };
    let eps2 = match branch {
        TwoAdic::OddHalfB3 => lambda,
        TwoAdic::OddHalfBOther => lambda
            .checked_sub(1)
            .ok_or_else(|| Error::PreconditionViolated("ε2 = λ − 1 < 0".to_string()))?,
        TwoAdic::FourDividesB => 1,
        TwoAdic::Other => 0,
    };
    let den = if first {
        pow_u(2, eps2) * pow_u(3, mu - 1) * p * q
    } else {
        pow_u(3, eps1) * pow_u(2, eps2) * p * q
    };
    let ctx = Residues { n: &den * 3u32 };
    let q2 = q * q;
    let two_l = pow_u(2, lambda);
    let half_b = || -> Result<BigInt> { exact_div(b, &int(2), "b/2") };

    let r = if first {
        let a1 = exact_div(a, &int(3), "a/3")?;
        let three_mu = pow_u(3, mu);
        let three_mu1 = pow_u(3, mu - 1);
        match branch {
            TwoAdic::OddHalfB3 => {
                let b1 = half_b()?;
                let t1 = ctx.pw(&(&two_l * 2u32 * &three_mu * &a1), q) * &three_mu;
                let t2 = ctx.pw(&(&two_l * 2u32 * q * &a1), &three_mu1) * q;
                let k = pow_u(2, lambda - 1) - &b1 * 3u32;
                -(int(2) * &b1) * (t1 + t2) * &two_l
                    + k * ctx.pw(&(&a1 * q * &three_mu), &two_l) * q * &three_mu1
            }
            TwoAdic::OddHalfBOther => {
                let b1 = half_b()?;
                let t1 = &three_mu * ctx.pw(&(&two_l * &three_mu * &a1), q);
                let t2 = q * ctx.pw(&(&two_l * q * &a1), &three_mu1);
                -(&two_l * &b1) * (t1 + t2) - &three_mu * &b1 * q * ctx.pw(&(&three_mu * q * &a1), &pow_u(2, lambda - 1))
            }
            TwoAdic::FourDividesB | TwoAdic::Other => {
                let t1 = ctx.pw(&(int(2) * &a1 * &three_mu), q) * &three_mu;
                let t2 = q * ctx.pw(&(int(2) * &a1 * q), &three_mu1);
                let mut r = -b * (t1 + t2);
                if branch == TwoAdic::FourDividesB {
                    r += &three_mu * &a1 * q;
                }
                r
            }
        }
    } else {
        match branch {
            TwoAdic::OddHalfB3 => {
                let b1 = half_b()?;
                let k = pow_u(2, lambda - 1) - &b1 * 3u32;
                -(int(3) * &two_l * b * ctx.pw(&(&two_l * 2u32 * a), q))
                    + int(3) * q * k * ctx.pw(&(int(3) * a * q), &two_l)
                    - &two_l * &two_l * b * &q2
            }
            TwoAdic::OddHalfBOther => {
                let b1 = half_b()?;
                let t = &two_l * ctx.pw(&(a * &two_l), q) + q * ctx.pw(&(a * q), &pow_u(2, lambda - 1));
                -(int(3) * &b1) * t - b * &two_l * &two_l * &q2
            }
            TwoAdic::FourDividesB | TwoAdic::Other => {
                let mut r = -b * (ctx.pw(&(int(2) * a), q) * 3u32 + &q2);
                if branch == TwoAdic::FourDividesB {
                    r += int(3) * &q2 * a;
                }
                r
            }
        }
    };
    let r = ctx.md(&r);

    let zero = Rational::zero;
    let second = if first {
        [Rational::new(-&r, int(3)), Rational::new(int(1), int(3)), zero()]
    } else {
        [zero(), Rational::one(), zero()]
    };
    let third = [
        Rational::new(&r * &r + a, den.clone()),
        Rational::new(r.clone(), den.clone()),
        Rational::new(BigInt::one(), den.clone()),
    ];
    let elements = [[Rational::one(), zero(), zero()], second, third];
    Ok(AlbertBasis { first_regime: first, dec, eps1, eps2, r, elements })
}
