//! Exact and real-extended binomial arithmetic.
//!
//! Counting is always done in arbitrary precision so that formula evaluation
//! on user-supplied grids can never overflow silently. The real extension
//! C(x, k) = x(x-1)...(x-k+1)/k! and its inverse support the shadow bounds.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::sync::OnceLock;

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// C(a, b), exactly; by convention 0 whenever b > a.
pub fn binom_exact(a: u64, b: u64) -> BigCount {
    if b > a {
        return BigCount::zero();
    }
    let b = b.min(a - b);
    let mut r = BigCount::one();
    for i in 0..b {
        r *= a - b + 1 + i;
        r /= i + 1;
    }
    r
}

/// Signed convenience: C(a, b) with 0 for negative b, as BigInt-friendly u64 args.
pub fn binom_exact_i(a: i64, b: i64) -> BigCount {
    if a < 0 || b < 0 {
        return BigCount::zero();
    }
    binom_exact(a as u64, b as u64)
}

const WORD_TABLE_N: usize = 64;

fn word_table() -> &'static Vec<[u64; WORD_TABLE_N + 1]> {
    static TABLE: OnceLock<Vec<[u64; WORD_TABLE_N + 1]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![[0u64; WORD_TABLE_N + 1]; WORD_TABLE_N + 1];
        for n in 0..=WORD_TABLE_N {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            }
        }
        t
    })
}

/// Machine-word C(n, k) for n <= 63. Every value fits in u64.
pub fn binom64(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    word_table()[n as usize][k as usize]
}

/// Generalized binomial C(x, k) = x(x-1)...(x-k+1)/k! for real x.
pub fn binom_real(x: f64, k: u32) -> f64 {
    let mut num = 1.0;
    for i in 0..k {
        num *= x - i as f64;
    }
    let mut den = 1.0;
    for i in 1..=k {
        den *= i as f64;
    }
    num / den
}

/// The unique x > k-1 with C(x, k) = m, for m >= 1, k >= 1.
///
/// C(., k) is strictly increasing on (k-1, inf), so monotone bisection
/// converges; tolerance 1e-9 on the function value, at most 200 iterations.
pub fn solve_binom_inverse(m: u64, k: u32) -> f64 {
    debug_assert!(m >= 1 && k >= 1);
    let target = m as f64;
    let mut lo = k as f64 - 1.0;
    let mut hi = k as f64;
    while binom_real(hi, k) < target {
        hi = (hi - lo) * 2.0 + lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = binom_real(mid, k);
        if (v - target).abs() <= 1e-9 {
            return mid;
        }
        if v < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
