//! Exact 3×3 rational matrices.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub type Matrix3 = [[Rational; 3]; 3];

pub fn det3(m: &Matrix3) -> Rational {
    let minor = |i: usize, j: usize, k: usize, l: usize| &m[i][k] * &m[j][l] - &m[i][l] * &m[j][k];
    &m[0][0] * minor(1, 2, 1, 2) - &m[0][1] * minor(1, 2, 0, 2) + &m[0][2] * minor(1, 2, 0, 1)
}

/// Inverse via the adjugate.
pub fn inv3(m: &Matrix3) -> Result<Matrix3> {
    let det = det3(m);
    if det.is_zero() {
        return Err(Error::SingularBasis);
    }
    let cof = |r: usize, c: usize| {
        let rows: [usize; 2] = match r {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let cols: [usize; 2] = match c {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let v = &m[rows[0]][cols[0]] * &m[rows[1]][cols[1]] - &m[rows[0]][cols[1]] * &m[rows[1]][cols[0]];
        if (r + c).is_multiple_of(2) {
            v
        } else {
            -v
        }
    };
    // inverse[i][j] = cofactor(j, i) / det
    Ok(core::array::from_fn(|i| core::array::from_fn(|j| cof(j, i) / &det)))
}

pub fn mul3(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            (0..3).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])
        })
    })
}

pub fn identity3() -> Matrix3 {
    core::array::from_fn(|i| core::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() }))
}

pub fn is_integer_matrix(m: &Matrix3) -> bool {
    m.iter().flatten().all(|x| x.is_integer())
}
