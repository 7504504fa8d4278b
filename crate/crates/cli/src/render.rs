//! Canonical text forms: rationals as reduced `p/q`, integers in factored
//! form as `3^4*7^2`.

use std::str::FromStr;

use cyclic_cubic_core::arith::factor;
use cyclic_cubic_core::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::CliError;

/// `p/q` in lowest terms with q > 0, or `p` when q = 1.
pub fn rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let t = s.trim();
    if let Some((_, den)) = t.split_once('/') {
        if BigInt::from_str(den.trim()).is_ok_and(|d| d.is_zero()) {
            return Err(CliError::Input(format!("zero denominator in {s:?}")));
        }
    }
    Rational::from_str(t).map_err(|_| CliError::Input(format!("not a rational: {s:?}")))
}

pub fn parse_integer(s: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(s.trim()).map_err(|_| CliError::Input(format!("not an integer: {s:?}")))
}

/// Prime factorization of a positive integer, primes ascending.
pub fn factored(x: &BigInt) -> String {
    factor(x).to_string()
}

/// Value of a product of powers such as `3^3*7`.
pub fn parse_factored(s: &str) -> Result<BigInt, CliError> {
    let bad = || CliError::Input(format!("not a factored positive integer: {s:?}"));
    let mut value = BigInt::one();
    for term in s.trim().split('*') {
        let (base, exp) = match term.split_once('^') {
            Some((b, e)) => (b, e.trim().parse::<u32>().map_err(|_| bad())?),
            None => (term, 1),
        };
        let base = BigInt::from_str(base.trim()).map_err(|_| bad())?;
        if !base.is_positive() {
            return Err(bad());
        }
        value *= num_traits::pow(base, exp as usize);
    }
    Ok(value)
}

/// Parses `n1/n2` or a bare integer.
pub fn parse_parameter(s: &str) -> Result<(BigInt, BigInt), CliError> {
    match s.trim().split_once('/') {
        Some((a, b)) => Ok((parse_integer(a)?, parse_integer(b)?)),
        None => Ok((parse_integer(s)?, BigInt::one())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        let x = parse_rational("110/42").unwrap();
        assert_eq!(rational(&x), "55/21");
        assert_eq!(rational(&parse_rational("-4/7").unwrap()), "-4/7");
        assert_eq!(rational(&parse_rational("6/-3").unwrap()), "-2");
        assert_eq!(rational(&parse_rational("0").unwrap()), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn factored_roundtrip() {
        assert_eq!(factored(&BigInt::from(81 * 49)), "3^4*7^2");
        assert_eq!(factored(&BigInt::from(1)), "1");
        assert_eq!(parse_factored("3^3*7^2").unwrap(), BigInt::from(27 * 49));
        assert_eq!(parse_factored(" 7 * 13 ").unwrap(), BigInt::from(91));
        assert!(parse_factored("3^x").is_err());
        assert!(parse_factored("-3").is_err());
        assert!(parse_factored("").is_err());
    }

    #[test]
    fn parameters() {
        assert_eq!(parse_parameter("-3/2").unwrap(), (BigInt::from(-3), BigInt::from(2)));
        assert_eq!(parse_parameter("5").unwrap(), (BigInt::from(5), BigInt::from(1)));
        assert!(parse_parameter("a/b").is_err());
    }
}
