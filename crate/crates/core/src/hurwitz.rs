//! Hurwitz zeta values `ζ(k, a/q)` for integers `k ≥ 2` and the plus/minus
//! spanning sets of `V_k(q)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{coprime_residues, euler_phi};
use crate::error::{domain, usage, Result};
use crate::numerics::{even_bernoulli, BigFloat, Rational, GUARD_BITS};

/// Largest `k` accepted by the evaluators.
pub const MAX_ORDER: u32 = 1_000_000;

/// Upper bound on `log₂` of the `j`-th Euler-Maclaurin correction
/// `|B_{2j}|/(2j)! · k(k+1)…(k+2j−2) · y^{−k−2j+1}`.
///
/// Uses `|B_{2j}|/(2j)! = 2ζ(2j)/(2π)^{2j} ≤ 2ζ(2)/(2π)^{2j} < 2^{1.72}/(2π)^{2j}`,
/// plus one bit of slack for f64 rounding.
struct TailBound {
    log2_y: f64,
    k: f64,
    log2_rising: f64,
    j: u64,
}

impl TailBound {
    fn new(k: u32, y: f64) -> Self {
        TailBound { log2_y: y.log2(), k: k as f64, log2_rising: (k as f64).log2(), j: 1 }
    }

    fn current(&self) -> f64 {
        let j = self.j as f64;
        2.72 - 2.0 * j * std::f64::consts::TAU.log2() + self.log2_rising
            - (self.k + 2.0 * j - 1.0) * self.log2_y
    }

    fn advance(&mut self) {
        let j = self.j as f64;
        self.log2_rising += (self.k + 2.0 * j - 1.0).log2() + (self.k + 2.0 * j).log2();
        self.j += 1;
    }
}

/// Chooses the partial-sum length `N` and the number of corrections `M`.
///
/// For `f(t) = (t + x)^{-k}` the Euler-Maclaurin remainder after `M` corrections
/// is bounded by the magnitude of the `M`-th correction itself, so `M` is the
/// first index whose bound falls below `2^(-target)`.
fn plan(k: u32, x: f64, target: u32) -> (u64, u64) {
    let mut n = (k as u64).max(target as u64 / 3).max(8);
    loop {
        let mut bound = TailBound::new(k, n as f64 + x);
        let limit = 4 * n + 64;
        while bound.j <= limit {
            if bound.current() <= -(target as f64) {
                return (n, bound.j);
            }
            bound.advance();
        }
        n *= 2;
    }
}

/// `ζ(k, a/q) = Σ_{n≥0} (n + a/q)^{-k}` for `k ≥ 2` and `0 < a/q ≤ 1`, with
/// relative error below `2^(4 − precision)`.
///
/// Evaluated by Euler-Maclaurin summation: an exact-rational-argument partial
/// sum to `N`, the integral and half terms at `N`, and Bernoulli corrections
/// until a certified bound on the remainder drops below the working precision.
pub fn hurwitz_zeta(k: u32, a: i64, q: i64, precision: u32) -> Result<BigFloat> {
    if k < 2 {
        return domain(format!("ζ(s, x) has a pole at s = 1; need k ≥ 2, got {k}"));
    }
    if k > MAX_ORDER {
        return usage(format!("k = {k} exceeds the supported maximum {MAX_ORDER}"));
    }
    if q < 1 || a < 1 || a > q {
        return usage(format!("need 0 < a/q ≤ 1 with q ≥ 1; got a = {a}, q = {q}"));
    }
    BigFloat::check_precision(precision)?;

    let (n_terms, corrections) = plan(k, a as f64 / q as f64, precision + GUARD_BITS + 8);
    let log2k = 64 - (k as u64).leading_zeros();
    let log2n = 64 - n_terms.leading_zeros();
    let w = precision + GUARD_BITS + 2 * log2k + log2n;
    let kk = k as i64;

    // Σ_{n<N} (n + a/q)^{-k} = q^k Σ_{n<N} (nq + a)^{-k}
    let mut partial = BigFloat::zero(w);
    for n in 0..n_terms as i64 {
        let base = BigFloat::from_int(BigInt::from(n) * q + a, w);
        partial = &partial + &base.powi(kk).recip();
    }
    let q_pow = BigFloat::from_int(q, w).powi(kk);
    partial = &partial * &q_pow;

    let y = BigFloat::from_ratio(&(BigInt::from(n_terms) * q + a), &BigInt::from(q), w);
    let y_inv = y.recip();
    let y_pow_neg_k = y_inv.powi(kk);
    // ∫_N^∞ (t + x)^{-k} dt + f(N)/2
    let integral = (&y_pow_neg_k * &y).div_int(kk - 1);
    let half = y_pow_neg_k.mul_pow2(-1);
    let mut total = &(&partial + &integral) + &half;

    // Σ_j B_{2j}/(2j)! · k(k+1)…(k+2j−2) · y^{−k−2j+1}
    let bern = even_bernoulli(corrections as usize);
    let y_inv_sq = &y_inv * &y_inv;
    let mut deriv = (&y_pow_neg_k * &y_inv).mul_int(kk); // j = 1: k · y^{-k-1}
    let mut factorial = BigInt::from(2);
    for j in 1..=corrections {
        let coeff = BigFloat::from_rational(&(&bern[j as usize - 1] / Rational::from(factorial.clone())), w);
        total = &total + &(&coeff * &deriv);
        let next = 2 * j as i64;
        deriv = (&deriv * &y_inv_sq).mul_int(BigInt::from(kk + next - 1) * (kk + next));
        factorial *= BigInt::from((next + 1) * (next + 2));
    }
    Ok(total.with_precision(precision))
}

/// `ζ(k) = ζ(k, 1)`.
pub fn riemann_zeta(k: u32, precision: u32) -> Result<BigFloat> {
    hurwitz_zeta(k, 1, 1, precision)
}

/// A set `T` of `φ(q)/2` residues with `T ∪ (q − T)` the full coprime residue
/// system mod `q`. Always the canonical choice `{a < q/2 : gcd(a, q) = 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSystem {
    modulus: u64,
    representatives: Vec<u64>,
}

impl HalfSystem {
    pub fn canonical(q: u64) -> Result<Self> {
        if q <= 2 {
            return usage(format!("half-systems need q > 2, got {q}"));
        }
        let representatives = coprime_residues(q).into_iter().filter(|&a| 2 * a < q).collect();
        Ok(HalfSystem { modulus: q, representatives })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn representatives(&self) -> &[u64] {
        &self.representatives
    }
}

/// Numeric values spanning `V_k(q)`: all `ζ(k, a/q)` and the plus/minus
/// combinations `ζ(k, a/q) ± ζ(k, 1 − a/q)` over the half-system.
#[derive(Clone, Debug)]
pub struct BasisValues {
    pub k: u32,
    pub half_system: HalfSystem,
    pub raw: BTreeMap<u64, BigFloat>,
    pub plus: BTreeMap<u64, BigFloat>,
    pub minus: BTreeMap<u64, BigFloat>,
}

/// Evaluates every coprime `ζ(k, a/q)` and the plus/minus combinations.
pub fn basis_values(k: u32, q: u64, precision: u32) -> Result<BasisValues> {
    let half_system = HalfSystem::canonical(q)?;
    let w = precision + 8;
    let mut raw = BTreeMap::new();
    for a in coprime_residues(q) {
        raw.insert(a, hurwitz_zeta(k, a as i64, q as i64, w)?);
    }
    let mut plus = BTreeMap::new();
    let mut minus = BTreeMap::new();
    for &a in half_system.representatives() {
        let (x, y) = (&raw[&a], &raw[&(q - a)]);
        plus.insert(a, (x + y).with_precision(precision));
        minus.insert(a, (x - y).with_precision(precision));
    }
    let raw = raw.into_iter().map(|(a, v)| (a, v.with_precision(precision))).collect();
    debug_assert_eq!(plus.len() as u64 * 2, euler_phi(q));
    Ok(BasisValues { k, half_system, raw, plus, minus })
}

/// `Π_{p | q} (1 − p^{-k})` exactly.
pub fn euler_factor(k: u32, q: u64) -> Rational {
    crate::arith::distinct_prime_factors(q).into_iter().fold(Rational::one(), |acc, p| {
        let pk = num_traits::pow(BigInt::from(p), k as usize);
        acc * (Rational::one() - Rational::new(BigInt::one(), pk))
    })
}
