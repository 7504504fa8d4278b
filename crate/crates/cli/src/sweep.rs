//! Cross-module property checks over a range of parameters.

use cyclic_cubic_core::galois_module::{admissible_associates, alpha_for, certify, corollary_form};
use cyclic_cubic_core::integral_basis::albert_oracle;
use cyclic_cubic_core::linalg::{det3, is_integer_matrix};
use cyclic_cubic_core::{analyze_with_offset, Analysis, CaseTag, EisensteinInt, Error, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Coprime (n1, n2) with |n1| ≤ max_n1 and 1 ≤ n2 ≤ max_n2, ordered by n2
/// then n1.
pub fn parameter_grid(max_n1: i64, max_n2: i64) -> Vec<(i64, i64)> {
    let gcd = |mut a: i64, mut b: i64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    };
    (1..=max_n2)
        .flat_map(|n2| (-max_n1..=max_n1).map(move |n1| (n1, n2)))
        .filter(|&(n1, n2)| gcd(n1, n2) == 1)
        .collect()
}

/// disc(1, φ, ψ) = d²e² times 1, 3⁴, 3² for the tame, 3i and 3ii cases.
pub fn check_discriminant_law(an: &Analysis) -> Result<(), String> {
    let inv = &an.invariants;
    let factor = match inv.tag {
        CaseTag::T1 | CaseTag::T2 => 1u32,
        CaseTag::W3i => 81,
        CaseTag::W3ii => 9,
    };
    let expected = Rational::from_integer(inv.de() * inv.de() * factor);
    let got = an.field.disc_triple(an.basis.elements());
    if got == expected {
        Ok(())
    } else {
        Err(format!("disc(1, φ, ψ) = {got}, expected {expected}"))
    }
}

/// Recomputes every structural check on the generator from scratch.
pub fn check_structure(an: &Analysis) -> Result<(), String> {
    let cert = certify(&an.field, &an.invariants, &an.generator.alpha, &an.basis);
    let wild = an.invariants.tag.is_wild();
    if cert.trace_zero.is_some() != wild || cert.idempotents.is_some() != wild {
        return Err("certificate shape does not match the case".to_string());
    }
    match cert.first_failure() {
        None => Ok(()),
        Some(check) => Err(format!("generator fails {check}")),
    }
}

/// Albert's basis, carried over by θ, spans the same lattice.
pub fn check_oracle(an: &Analysis) -> Result<(), String> {
    let albert = albert_oracle(&an.transform.a, &an.transform.b).map_err(|e| e.to_string())?;
    let embedded = albert.embed(&an.field, &an.transform.theta(&an.invariants));
    let t = an
        .field
        .change_of_basis(an.basis.elements(), [&embedded[0], &embedded[1], &embedded[2]])
        .map_err(|e| e.to_string())?;
    if !is_integer_matrix(&t) {
        return Err("Albert basis is not integral over {1, φ, ψ}".to_string());
    }
    let det = det3(&t);
    if det.abs().is_one() {
        Ok(())
    } else {
        Err(format!("Albert basis has index {}", det.abs()))
    }
}

/// Returns whether a closed form applied; errors if it disagrees.
pub fn check_corollary(an: &Analysis) -> Result<bool, String> {
    match corollary_form(&an.field, &an.invariants) {
        None => Ok(false),
        Some((_, alpha)) if alpha == an.generator.alpha => Ok(true),
        Some((c, alpha)) => Err(format!("closed form {c:?} gives {alpha}, generator gives {}", an.generator.alpha)),
    }
}

/// Every admissible associate of a0 + a1ζ gives a certified generator.
/// Returns how many associates were checked.
pub fn check_associates(an: &Analysis) -> Result<usize, String> {
    let g = &an.generator;
    let x = EisensteinInt::new(g.a0.clone(), g.a1.clone());
    let variants = admissible_associates(&an.invariants, &x);
    if variants.is_empty() {
        return Err("no admissible associates".to_string());
    }
    for v in &variants {
        let (_, alpha) = alpha_for(&an.field, &an.invariants, v).map_err(|e| e.to_string())?;
        if let Some(check) = certify(&an.field, &an.invariants, &alpha, &an.basis).first_failure() {
            return Err(format!("associate {v} fails {check}"));
        }
    }
    Ok(variants.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairOutcome {
    Reducible,
    Passed { tag: CaseTag, corollary: bool },
    Failed(String),
}

/// Runs the full pipeline and every check on one parameter.
pub fn check_pair(n1: i64, n2: i64, r_offset: &BigInt, associates: bool) -> PairOutcome {
    let an = match analyze_with_offset(n1, n2, r_offset) {
        Ok(an) => an,
        Err(Error::Reducible { .. }) => return PairOutcome::Reducible,
        Err(e) => return PairOutcome::Failed(e.to_string()),
    };
    let run = || -> Result<bool, String> {
        check_discriminant_law(&an)?;
        check_structure(&an)?;
        check_oracle(&an)?;
        let corollary = check_corollary(&an)?;
        if associates {
            check_associates(&an)?;
        }
        Ok(corollary)
    };
    match run() {
        Ok(corollary) => PairOutcome::Passed { tag: an.invariants.tag, corollary },
        Err(e) => PairOutcome::Failed(e),
    }
}
