use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// base^exp mod modulus, as a residue in [0, modulus).
pub fn mod_pow(base: &BigInt, exp: &BigInt, modulus: &BigInt) -> BigInt {
    assert!(modulus.is_positive(), "modulus must be positive");
    assert!(!exp.is_negative(), "exponent must be non-negative");
    if modulus.is_one() {
        return BigInt::zero();
    }
    base.mod_floor(modulus).modpow(exp, modulus)
}

/// A square root of `a` modulo an odd prime `p` (Tonelli–Shanks), or `None`
/// when `a` is a non-residue.
pub fn sqrt_mod(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(a);
    }
    let p_minus_1: BigInt = p - 1u32;
    let half = &p_minus_1 >> 1;
    if a.modpow(&half, p) != BigInt::one() {
        return None;
    }

    let s = p_minus_1.trailing_zeros().unwrap_or(0);
    let q = &p_minus_1 >> s;
    let mut z = BigInt::from(2);
    while z.modpow(&half, p) != p_minus_1 {
        z += 1u32;
    }

    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (&b * &b) % p;
        }
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}
