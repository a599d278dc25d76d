use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::numerics::{BigFloat, GUARD_BITS};

static PI_CACHE: Mutex<Option<BigFloat>> = Mutex::new(None);

/// `Σ (-1)^j / ((2j+1) x^(2j+1))` in fixed point with `bits` fractional bits.
/// Each term truncates by less than one unit.
fn arctan_inv_fixed(x: u32, bits: u64) -> BigInt {
    let x2 = BigInt::from(x) * x;
    let mut power = (BigInt::one() << bits) / x;
    let mut sum = power.clone();
    let mut j: u64 = 1;
    loop {
        power /= &x2;
        if power.bits() == 0 {
            break;
        }
        let term = &power / (2 * j + 1);
        if j % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        j += 1;
    }
    sum
}

fn pi_machin(precision: u32) -> BigFloat {
    // π = 16 arctan(1/5) − 4 arctan(1/239). Truncation error is below
    // 20·(number of terms) units of 2^-bits, far inside the guard.
    let bits = precision as u64 + GUARD_BITS as u64;
    let fixed = arctan_inv_fixed(5, bits) * 16 - arctan_inv_fixed(239, bits) * 4;
    BigFloat::from_parts(fixed, -(bits as i64), precision)
}

/// π to `precision` bits, `|result − π| ≤ 2^(2 − precision)`.
///
/// Uses Machin's arctangent formula; the highest precision computed so far is
/// cached and rounded down for cheaper requests.
pub fn pi(precision: u32) -> Result<BigFloat> {
    BigFloat::check_precision(precision)?;
    let mut cache = PI_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(cached) = cache.as_ref() {
        if cached.precision() >= precision + GUARD_BITS {
            return Ok(cached.with_precision(precision));
        }
    }
    let fresh = pi_machin(precision + GUARD_BITS);
    let out = fresh.with_precision(precision);
    *cache = Some(fresh);
    Ok(out)
}

/// π by the Gauss-Legendre arithmetic-geometric mean iteration. Independent of
/// [`pi`] and kept as its cross-check.
pub fn pi_agm(precision: u32) -> Result<BigFloat> {
    BigFloat::check_precision(precision)?;
    let w = precision + GUARD_BITS;
    let one = BigFloat::one(w);
    let mut a = one.clone();
    let mut b = BigFloat::from_int(2, w).sqrt().expect("positive").recip();
    let mut t = BigFloat::from_ratio(&1.into(), &4.into(), w);
    let mut p: i64 = 0;
    loop {
        let next_a = (&a + &b).mul_pow2(-1);
        let next_b = (&a * &b).sqrt().expect("agm terms stay positive");
        let d = &a - &next_a;
        t = &t - &(&d * &d).mul_pow2(p);
        p += 1;
        let gap = (&next_a - &next_b).abs();
        a = next_a;
        b = next_b;
        match gap.log2_abs_ceil() {
            Some(g) if g > -(w as i64) / 2 - 2 => continue,
            _ => break,
        }
    }
    // Quadratic convergence: one more step would change the result below 2^-w.
    let s = &a + &b;
    Ok((&(&s * &s) / &t.mul_pow2(2)).with_precision(precision))
}
