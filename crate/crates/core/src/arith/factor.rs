use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Factorization;

const TRIAL_LIMIT: u64 = 1 << 20;

// Deterministic for n < 3.317·10^24.
const MR_WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Complete factorization of |n|: trial division up to 2^20, then Brent's
/// variant of Pollard rho on whatever composite cofactor remains.
///
/// Panics if `n` is zero.
pub fn factor(n: &BigInt) -> Factorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();

    let mut push_divisor = |m: &mut BigInt, d: u64| {
        let d_big = BigInt::from(d);
        let mut k = 0;
        loop {
            let (q, r) = m.div_rem(&d_big);
            if !r.is_zero() {
                break;
            }
            *m = q;
            k += 1;
        }
        if k > 0 {
            out.push((d_big, k));
        }
    };

    push_divisor(&mut m, 2);
    push_divisor(&mut m, 3);
    let mut d: u64 = 5;
    let mut step = 2;
    while d <= TRIAL_LIMIT && BigInt::from(d * d) <= m {
        if (&m % d).is_zero() {
            push_divisor(&mut m, d);
        }
        d += step;
        step = 6 - step;
    }

    if !m.is_one() {
        if BigInt::from(d) * BigInt::from(d) > m {
            out.push((m, 1));
        } else {
            let mut stack = alloc::vec![m];
            while let Some(x) = stack.pop() {
                if is_prime(&x) {
                    out.push((x, 1));
                } else {
                    let f = brent_split(&x);
                    let g = &x / &f;
                    stack.push(f);
                    stack.push(g);
                }
            }
        }
    }
    Factorization::from_pairs(out)
}

/// Miller–Rabin with the first thirteen prime bases.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in &MR_WITNESSES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial factor of an odd composite `n`.
fn brent_split(n: &BigInt) -> BigInt {
    let batch = 128u64;
    for c in 1u32.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = BigInt::one();
        let mut q = BigInt::one();
        let mut r: u64 = 1;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..batch.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
        }
        if &g == n {
            // Batched product collapsed; retrace one step at a time.
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!("rho sequence exhausted for {}", n.to_u64().unwrap_or(0))
}
