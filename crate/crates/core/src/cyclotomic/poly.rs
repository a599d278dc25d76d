use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{divisors, mobius};
use crate::error::{usage, Result};
use crate::numerics::Rational;

/// Polynomial with arbitrary-precision integer coefficients, lowest degree
/// first. The leading coefficient is nonzero except for the zero polynomial,
/// which has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n − 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(Vec::new()), self.clone());
        }
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs[..dd].iter().enumerate() {
                rem[i - dd + j] -= &c * dc;
            }
            quo[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quo), Self::new(rem))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The `q`-th cyclotomic polynomial `Φ_q = Π_{d | q} (x^d − 1)^{μ(q/d)}`.
pub fn cyclotomic_polynomial(q: u64) -> Result<IntegerPolynomial> {
    if q == 0 {
        return usage("cyclotomic polynomial needs q ≥ 1");
    }
    let mut num = IntegerPolynomial::from_i64(&[1]);
    let mut den = IntegerPolynomial::from_i64(&[1]);
    for d in divisors(q) {
        match mobius(q / d) {
            1 => num = num.mul(&IntegerPolynomial::x_pow_minus_one(d as usize)),
            -1 => den = den.mul(&IntegerPolynomial::x_pow_minus_one(d as usize)),
            _ => {}
        }
    }
    // den is a product of monic factors up to sign; (x^d − 1) is monic.
    let (quo, rem) = num.div_rem_monic(&den);
    debug_assert!(rem.degree().is_none());
    Ok(quo)
}

/// Dense polynomials over Q, lowest degree first, no trailing zeros.
pub(crate) mod rational {
    use super::*;

    pub type RatPoly = Vec<Rational>;

    pub fn trim(mut p: RatPoly) -> RatPoly {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> RatPoly {
        let n = a.len().max(b.len());
        let zero = Rational::zero();
        trim((0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> RatPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn div_rem(a: &[Rational], b: &[Rational]) -> (RatPoly, RatPoly) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let db = b.len() - 1;
        let mut rem = a.to_vec();
        if rem.len() <= db {
            return (Vec::new(), trim(rem));
        }
        let lead_inv = b[db].recip();
        let mut quo = vec![Rational::zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = &rem[i] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, bc) in b.iter().enumerate() {
                rem[i - db + j] -= &c * bc;
            }
            quo[i - db] = c;
        }
        rem.truncate(db);
        (trim(quo), trim(rem))
    }

    /// Reduction modulo a monic integer polynomial; output has exactly
    /// `deg(modulus)` entries (zero padded).
    pub fn reduce_mod_monic(p: RatPoly, modulus: &IntegerPolynomial) -> RatPoly {
        let m = modulus.coeffs();
        let dm = m.len() - 1;
        let mut p = p;
        for i in (dm..p.len()).rev() {
            let c = std::mem::take(&mut p[i]);
            if c.is_zero() {
                continue;
            }
            for (j, mc) in m[..dm].iter().enumerate() {
                p[i - dm + j] -= &c * Rational::from(mc.clone());
            }
        }
        p.resize(dm, Rational::zero());
        p
    }

    /// Inverse of `a` modulo `modulus` by the extended Euclidean algorithm,
    /// or `None` when they share a factor.
    pub fn inverse_mod(a: &[Rational], modulus: &[Rational]) -> Option<RatPoly> {
        let (mut r0, mut r1) = (trim(modulus.to_vec()), trim(a.to_vec()));
        let (mut s0, mut s1): (RatPoly, RatPoly) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (quo, rem) = div_rem(&r0, &r1);
            let s2 = sub(&s0, &mul(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        Some(s0.into_iter().map(|x| x * &c).collect())
    }
}
