use num_bigint::BigUint;
use num_integer::Integer;

use super::{ArithError, ExactScalar};

pub const DEFAULT_CEIL_LOG_CAP: u64 = 1_000_000;

/// `⌈log_base(value)⌉`: the smallest integer `t` with `base^t ≥ value`.
///
/// Computed by multiplying (or dividing) a running power, never by
/// floating point. The result may be negative when `value < 1`.
pub fn ceil_log(base: &ExactScalar, value: &ExactScalar) -> Result<i64, ArithError> {
    ceil_log_capped(base, value, DEFAULT_CEIL_LOG_CAP)
}

pub fn ceil_log_capped(base: &ExactScalar, value: &ExactScalar, cap: u64) -> Result<i64, ArithError> {
    if base.compare(&ExactScalar::one())?.is_le() {
        return Err(ArithError::Precondition(format!("ceil_log base {base} must exceed 1")));
    }
    if !value.is_positive() {
        return Err(ArithError::Precondition(format!("ceil_log argument {value} must be positive")));
    }
    let mut t: i64 = 0;
    let mut power = ExactScalar::one();
    let mut steps = 0u64;
    if power.compare(value)?.is_ge() {
        // Step down while base^(t-1) still reaches the value.
        loop {
            let lower = &power / base;
            if lower.compare(value)?.is_lt() {
                return Ok(t);
            }
            power = lower;
            t -= 1;
            steps += 1;
            if steps > cap {
                return Err(ArithError::CapExceeded(cap));
            }
        }
    }
    while power.compare(value)?.is_lt() {
        power = &power * base;
        t += 1;
        steps += 1;
        if steps > cap {
            return Err(ArithError::CapExceeded(cap));
        }
    }
    Ok(t)
}

/// Exact binomial coefficient; zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::ZERO;
    }
    let r = r.min(n - r);
    let mut acc = BigUint::from(1u32);
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// gcd of the absolute values of the entries; 0 for the zero vector.
///
/// For a difference vector `y − x` of two lattice points this is the
/// lattice length of the segment `[x, y]`.
pub fn gcd_vector(v: &[i64]) -> u64 {
    v.iter().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()))
}

/// Least prime factor of `m ≥ 2`.
pub fn least_prime_factor(m: u64) -> u64 {
    assert!(m >= 2, "least_prime_factor needs m >= 2");
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    m
}
