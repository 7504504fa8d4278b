//! Cyclic cubic fields L_n = Q(ρ), f_n(ρ) = 0 with f_n = X³ − nX² − (n+3)X − 1:
//! invariants, an explicit integral basis, and a generator of the ring of
//! integers as a Galois module, all in exact arithmetic.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod classify;
pub mod cubic_field;
pub mod eisenstein;
pub mod error;
pub mod galois_module;
pub mod integral_basis;
pub mod linalg;

pub use classify::{classify, CaseTag, FieldInvariants};
pub use cubic_field::{CubicField, FieldElement};
pub use eisenstein::EisensteinInt;
pub use error::{Error, Result};
pub use galois_module::{GeneratorResult, Structure};
pub use integral_basis::{IntegralBasis, TransformData};

use num_bigint::BigInt;
use num_traits::Zero;

pub type Rational = num_rational::BigRational;

/// Everything computed for one parameter n = n1/n2.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub field: CubicField,
    pub invariants: FieldInvariants,
    pub transform: TransformData,
    pub basis: IntegralBasis,
    pub generator: GeneratorResult,
}

/// Runs the full pipeline, verification included.
pub fn analyze(n1: impl Into<BigInt>, n2: impl Into<BigInt>) -> Result<Analysis> {
    analyze_with_offset(n1, n2, &BigInt::zero())
}

/// As [`analyze`] with r shifted by `r_offset` (fault injection).
pub fn analyze_with_offset(n1: impl Into<BigInt>, n2: impl Into<BigInt>, r_offset: &BigInt) -> Result<Analysis> {
    let field = CubicField::new(n1, n2)?;
    let invariants = classify(&field)?;
    let transform = integral_basis::transform(&field, &invariants)?;
    let basis = integral_basis::integral_basis_with_offset(&field, &invariants, r_offset)?;
    let generator = galois_module::generator(&field, &invariants, &basis)?;
    Ok(Analysis { field, invariants, transform, basis, generator })
}
