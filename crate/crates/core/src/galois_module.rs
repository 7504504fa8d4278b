//! The generator α of O_L as a Galois module: O_L = Z[G]·α in the tame
//! cases, O_L = Z[G]·α ⊕ Z in the wild ones, together with exact
//! certificates for both statements.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{legendre3, valuation_int};
use crate::classify::{CaseTag, FieldInvariants};
use crate::cubic_field::{CubicField, FieldElement};
use crate::eisenstein::{split_prime, EisensteinInt};
use crate::error::{Error, Result};
use crate::integral_basis::IntegralBasis;
use crate::linalg::{det3, is_integer_matrix};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    /// O_L = Z[G]·α.
    TameFreeRank1,
    /// O_L = Z[G]·α ⊕ Z.
    WildSum,
}

impl Structure {
    pub fn label(self) -> &'static str {
        match self {
            Structure::TameFreeRank1 => "TAME_FREE_RANK1",
            Structure::WildSum => "WILD_SUM",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Outcome of each structural check. Checks that do not apply to the case
/// at hand are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub integrality: bool,
    pub trace_zero: Option<bool>,
    pub discriminant: bool,
    pub index: bool,
    pub idempotents: Option<bool>,
}

impl Certificate {
    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.integrality {
            Some("integrality")
        } else if self.trace_zero == Some(false) {
            Some("trace")
        } else if !self.discriminant {
            Some("discriminant")
        } else if !self.index {
            Some("index")
        } else if self.idempotents == Some(false) {
            Some("idempotents")
        } else {
            None
        }
    }

    pub fn all_passed(&self) -> bool {
        self.first_failure().is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorResult {
    pub a0: BigInt,
    pub a1: BigInt,
    pub epsilon: Option<i8>,
    pub alpha: FieldElement,
    pub structure: Structure,
    pub certificate: Certificate,
}

/// c0 + c1·σ + c2·σ² in Q[G].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    pub c: [Rational; 3],
}

impl GroupRingElement {
    fn thirds(c0: i64, c1: i64, c2: i64) -> Self {
        let t = |k: i64| Rational::new(BigInt::from(k), BigInt::from(3));
        GroupRingElement { c: [t(c0), t(c1), t(c2)] }
    }

    /// (2 − σ − σ²)/3.
    pub fn e_tilde() -> Self {
        Self::thirds(2, -1, -1)
    }

    /// (1 + σ + σ²)/3.
    pub fn e_one() -> Self {
        Self::thirds(1, 1, 1)
    }

    pub fn act(&self, field: &CubicField, x: &FieldElement) -> FieldElement {
        let [x0, x1, x2] = field.conjugates(x);
        &(&x0.scale(&self.c[0]) + &x1.scale(&self.c[1])) + &x2.scale(&self.c[2])
    }
}

/// The integer whose prime powers are distributed over A_n: ec in case T1,
/// ec/3 otherwise.
fn prime_product_target(inv: &FieldInvariants) -> BigInt {
    match inv.tag {
        CaseTag::T1 => inv.ec(),
        _ => inv.ec() / 3u32,
    }
}

fn needs_one_minus_zeta(tag: CaseTag) -> bool {
    matches!(tag, CaseTag::T2 | CaseTag::W3i)
}

/// ec = N(a0 + a1ζ), or 3·N(a0 + a1ζ) in case W3ii.
fn norm_equation_holds(inv: &FieldInvariants, x: &EisensteinInt) -> bool {
    let n = x.norm();
    if inv.tag == CaseTag::W3ii {
        n * 3u32 == inv.ec()
    } else {
        n == inv.ec()
    }
}

/// a0 + a1ζ: for each p^ι ∥ S the prime above p whose ι-th power divides
/// A_n, multiplied out, put in canonical form, then times (1 − ζ) in the
/// cases T2 and W3i.
pub fn find_a0a1(inv: &FieldInvariants) -> Result<EisensteinInt> {
    let target = prime_product_target(inv);
    let mut prod = EisensteinInt::one();
    let mut rebuilt = BigInt::one();
    for (p, _) in inv.delta_factorization.iter() {
        let iota = valuation_int(&target, p);
        if iota == 0 {
            continue;
        }
        rebuilt *= num_traits::pow(p.clone(), iota as usize);
        let pi = split_prime(p)?;
        let candidates = [pi.clone(), pi.conj().canonical()?];
        let hits: Vec<EisensteinInt> = candidates
            .into_iter()
            .map(|c| c.pow(iota))
            .filter(|c| c.divides(&inv.a_n))
            .collect();
        if hits.len() != 1 {
            return Err(Error::InternalInconsistency(alloc::format!(
                "{} primes above {p} have their {iota}-th power dividing A_n",
                hits.len()
            )));
        }
        prod = &prod * &hits[0];
    }
    if rebuilt != target {
        return Err(Error::InternalInconsistency("prime powers do not rebuild ec".to_string()));
    }
    let mut x = prod.canonical()?;
    if needs_one_minus_zeta(inv.tag) {
        x = &EisensteinInt::one_minus_zeta() * &x;
    }
    if !norm_equation_holds(inv, &x) || !x.divides(&inv.a_n) {
        return Err(Error::InternalInconsistency("(a0, a1) fails the norm equation or divisibility".to_string()));
    }
    Ok(x)
}

/// ε of the tame generator, with 3 | ε·ec² − n1(a0 + a1) asserted.
pub fn epsilon(inv: &FieldInvariants, x: &EisensteinInt) -> Result<i8> {
    let eps = match inv.tag {
        CaseTag::T1 => legendre3(&(&inv.n1 * (&x.a + &x.b))),
        CaseTag::T2 => legendre3(&(&inv.n2 * &x.a)),
        tag => return Err(Error::CaseError(tag.label().to_string())),
    };
    let ec = inv.ec();
    let k = BigInt::from(eps) * &ec * &inv.dec.c - &inv.n1 * (&x.a + &x.b);
    if eps == 0 || !(k % 3u32).is_zero() {
        return Err(Error::InternalInconsistency("ε·ec² − n1(a0 + a1) is not divisible by 3".to_string()));
    }
    Ok(eps)
}

/// α for a given admissible a0 + a1ζ; also returns ε in the tame cases.
pub fn alpha_for(field: &CubicField, inv: &FieldInvariants, x: &EisensteinInt) -> Result<(Option<i8>, FieldElement)> {
    let (n1, n2) = (&inv.n1, &inv.n2);
    let ec2 = inv.ec() * &inv.dec.c;
    let rho = FieldElement::rho();
    let rho_p = field.sigma_rho();
    let q = |v: BigInt| Rational::from_integer(v);
    let lin = &rho.scale(&q(x.a.clone())) + &rho_p.scale(&q(x.b.clone()));
    let s = &x.a + &x.b;
    let inv_ec2 = Rational::new(BigInt::one(), ec2.clone());
    if inv.tag.is_wild() {
        let body = &lin.scale(&q(n2 * 3u32)) - &FieldElement::from_rational(q(n1 * &s));
        Ok((None, body.scale(&inv_ec2)))
    } else {
        let eps = epsilon(inv, x)?;
        let k = (BigInt::from(eps) * &ec2 - n1 * &s) / 3u32;
        let body = &lin.scale(&q(n2.clone())) + &FieldElement::from_rational(q(k));
        Ok((Some(eps), body.scale(&inv_ec2)))
    }
}

/// Every structural check for α, without stopping at the first failure.
pub fn certify(field: &CubicField, inv: &FieldInvariants, alpha: &FieldElement, ib: &IntegralBasis) -> Certificate {
    let d = Rational::from_integer(inv.discriminant.clone());
    let [a0, a1, a2] = field.conjugates(alpha);
    let unimodular = |vectors: [&FieldElement; 3]| match field.change_of_basis(ib.elements(), vectors) {
        Ok(t) => is_integer_matrix(&t) && det3(&t).abs().is_one(),
        Err(_) => false,
    };
    if inv.tag.is_wild() {
        let one = FieldElement::one();
        let shifted = &one + alpha;
        let e_tilde = GroupRingElement::e_tilde();
        let e_one = GroupRingElement::e_one();
        let idempotents = e_tilde.act(field, &shifted) == *alpha
            && e_one.act(field, &shifted) == one
            && ib.elements().iter().all(|b| field.is_integral(&e_tilde.act(field, b)));
        Certificate {
            integrality: field.is_integral(alpha),
            trace_zero: Some(field.trace(alpha).is_zero()),
            discriminant: field.disc_triple([&one, &a0, &a1]) == d,
            index: unimodular([&one, &a0, &a1]),
            idempotents: Some(idempotents),
        }
    } else {
        Certificate {
            integrality: [&a0, &a1, &a2].iter().all(|x| field.is_integral(x)),
            trace_zero: None,
            discriminant: field.disc_triple([&a0, &a1, &a2]) == d,
            index: unimodular([&a0, &a1, &a2]),
            idempotents: None,
        }
    }
}

/// [`certify`], turned into an error naming the first failed check.
pub fn verify_structure(
    field: &CubicField,
    inv: &FieldInvariants,
    alpha: &FieldElement,
    ib: &IntegralBasis,
) -> Result<Certificate> {
    let cert = certify(field, inv, alpha, ib);
    match cert.first_failure() {
        Some(check) => Err(Error::Verification { check }),
        None => Ok(cert),
    }
}

pub fn generator(field: &CubicField, inv: &FieldInvariants, ib: &IntegralBasis) -> Result<GeneratorResult> {
    let x = find_a0a1(inv)?;
    let (epsilon, alpha) = alpha_for(field, inv, &x)?;
    let certificate = verify_structure(field, inv, &alpha, ib)?;
    let structure = if inv.tag.is_wild() { Structure::WildSum } else { Structure::TameFreeRank1 };
    Ok(GeneratorResult { a0: x.a, a1: x.b, epsilon, alpha, structure, certificate })
}

/// The unit multiples of a0 + a1ζ that still satisfy the norm equation and
/// divide A_n.
pub fn admissible_associates(inv: &FieldInvariants, x: &EisensteinInt) -> Vec<EisensteinInt> {
    x.associates()
        .into_iter()
        .filter(|u| norm_equation_holds(inv, u) && u.divides(&inv.a_n))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corollary {
    /// Δ square-free.
    SquareFree,
    /// Δ = 27d, d square-free, case T2.
    TameThreeCubed,
    /// Δ = 27d, d square-free, case W3i.
    WildThreeCubed,
    /// Δ = 9d, d square-free, 3 ∤ d.
    WildThreeSquared,
}

/// The closed-form generator when Δ has one of the special shapes above.
pub fn corollary_form(field: &CubicField, inv: &FieldInvariants) -> Option<(Corollary, FieldElement)> {
    let (n1, n2) = (&inv.n1, &inv.n2);
    let q = |v: BigInt| Rational::from_integer(v);
    let rho = FieldElement::rho();
    let rho_minus_rho_p = &rho - &field.sigma_rho();
    let third = |k: BigInt| Rational::new(k, BigInt::from(3));
    let fac = &inv.delta_factorization;
    let three = BigInt::from(3);
    let shape = |k: u32| fac.exponent_of(&three) == k && fac.iter().all(|(p, e)| *p == three || e == 1);

    if shape(0) {
        let k = (BigInt::from(legendre3(n1)) - n1) / 3u32;
        return Some((Corollary::SquareFree, &rho.scale(&q(n2.clone())) + &FieldElement::from_rational(q(k))));
    }
    if shape(3) {
        match inv.tag {
            CaseTag::T2 => {
                let body = &rho_minus_rho_p.scale(&q(n2.clone())) + &FieldElement::from_int(3 * i64::from(legendre3(n2)));
                return Some((Corollary::TameThreeCubed, body.scale(&Rational::new(BigInt::one(), BigInt::from(9)))));
            }
            CaseTag::W3i => {
                return Some((Corollary::WildThreeCubed, rho_minus_rho_p.scale(&third(n2.clone()))));
            }
            _ => {}
        }
    }
    if shape(2) {
        let body = &rho.scale(&q(n2 * 3u32)) - &FieldElement::from_rational(q(n1.clone()));
        return Some((Corollary::WildThreeSquared, body.scale(&third(BigInt::one()))));
    }
    None
}
