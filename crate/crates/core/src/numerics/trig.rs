use crate::error::{domain, usage, Result};
use crate::numerics::{pi, BigFloat, GUARD_BITS};

/// `(cos θ, sin θ)` for `θ ∈ [0, π/4]` by Taylor series at precision `w`.
fn cos_sin_small(theta: &BigFloat, w: u32) -> (BigFloat, BigFloat) {
    if theta.is_zero() {
        return (BigFloat::one(w), BigFloat::zero(w));
    }
    let x2 = theta * theta;
    let cutoff = -(w as i64) - 4;
    let series = |first: BigFloat, offset: u64| {
        let mut sum = first.clone();
        let mut term = first;
        let mut j: u64 = 1;
        loop {
            let d = (2 * j + offset - 1) * (2 * j + offset);
            term = -(&term * &x2).div_int(d);
            match term.log2_abs_ceil() {
                Some(t) if t >= cutoff => sum = &sum + &term,
                _ => break,
            }
            j += 1;
        }
        sum
    };
    (series(BigFloat::one(w), 0), series(theta.clone(), 1))
}

/// `(cos(π·num/den), sin(π·num/den))`, each with relative error below
/// `2^(4 − precision)` (absolute below `2^(4 − precision)` for the zero cases,
/// which are returned exactly).
///
/// The angle is reduced exactly in rational arithmetic to `[0, π/4]` before
/// any floating-point evaluation.
pub fn cos_sin_pi_rational(num: i64, den: i64, precision: u32) -> Result<(BigFloat, BigFloat)> {
    BigFloat::check_precision(precision)?;
    if den <= 0 {
        return usage(format!("denominator must be positive, got {den}"));
    }
    let d = den as i128;
    let mut n = (num as i128).rem_euclid(2 * d);
    let (mut cos_sign, mut sin_sign) = (1i64, 1i64);
    if n >= d {
        n -= d;
        cos_sign = -cos_sign;
        sin_sign = -sin_sign;
    }
    if 2 * n > d {
        n = d - n;
        cos_sign = -cos_sign;
    }
    let (mut rn, mut rd, mut swap) = (n, d, false);
    if 4 * n > d {
        rn = d - 2 * n;
        rd = 2 * d;
        swap = true;
    }
    let w = precision + GUARD_BITS;
    let theta = if rn == 0 {
        BigFloat::zero(w)
    } else {
        pi(w)?.mul_int(rn) / BigFloat::from_int(rd, w)
    };
    let (c, s) = cos_sin_small(&theta, w);
    let (c, s) = if swap { (s, c) } else { (c, s) };
    let c = if cos_sign < 0 { -c } else { c };
    let s = if sin_sign < 0 { -s } else { s };
    Ok((c.with_precision(precision), s.with_precision(precision)))
}

/// `(cot(πa/q), csc²(πa/q))` with relative error below `2^(6 − precision)`.
///
/// Fails with a domain error when `a/q` is an integer (pole of cot).
pub fn trig_at_rational(a: i64, q: i64, precision: u32) -> Result<(BigFloat, BigFloat)> {
    if q < 1 {
        return usage(format!("q must be positive, got {q}"));
    }
    if a.rem_euclid(q) == 0 {
        return domain(format!("cot(π·{a}/{q}) has a pole: {a}/{q} is an integer"));
    }
    let w = precision + GUARD_BITS;
    let (c, s) = cos_sin_pi_rational(a, q, w)?;
    let cot = &c / &s;
    let csc_sq = (&s * &s).recip();
    Ok((cot.with_precision(precision), csc_sq.with_precision(precision)))
}
