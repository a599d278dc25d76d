//! Integer expansions of `D^{k-1}(π cot πz)`.
//!
//! `D^{k-1}(π cot πz) = π^k Σ_l c_l csc^{2l}(πz) cot^{k-2l}(πz)` with integer
//! `c_l`. Differentiating `csc^{2l} cot^m` gives
//! `−π(2l · csc^{2l} cot^{m+1} + m · csc^{2l+2} cot^{m-1})`, which moves the
//! table for order `k` to order `k + 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::cyclotomic::{i_cot_element, CyclotomicElement};
use crate::error::{usage, Result};
use crate::numerics::{pi, trig_at_rational, BigFloat, GUARD_BITS};

/// Coefficient table `l ↦ c_l` of `D^{k-1}(π cot πz)` for a fixed order `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotDerivativeExpansion {
    order: u32,
    coefficients: BTreeMap<u32, BigInt>,
}

impl CotDerivativeExpansion {
    /// The order-1 table `{0 ↦ 1}`: `π cot πz` itself.
    pub fn base() -> Self {
        CotDerivativeExpansion { order: 1, coefficients: BTreeMap::from([(0, BigInt::one())]) }
    }

    /// `k`: the expansion represents `D^{k-1}(π cot πz)`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coefficients(&self) -> &BTreeMap<u32, BigInt> {
        &self.coefficients
    }

    /// `c_l`, zero when absent.
    pub fn coefficient(&self, l: u32) -> BigInt {
        self.coefficients.get(&l).cloned().unwrap_or_default()
    }

    /// Applies one differentiation: the table for order `k + 1`.
    pub fn differentiate(&self) -> Self {
        let k = self.order;
        let mut next: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (&l, c) in &self.coefficients {
            let m = k - 2 * l;
            if l > 0 {
                *next.entry(l).or_default() -= c * BigInt::from(2 * l);
            }
            if m > 0 {
                *next.entry(l + 1).or_default() -= c * BigInt::from(m);
            }
        }
        next.retain(|_, c| !c.is_zero());
        CotDerivativeExpansion { order: k + 1, coefficients: next }
    }

    /// `π^k Σ_l c_l csc^{2l}(πa/q) cot^{k-2l}(πa/q)`.
    pub fn evaluate_numeric(&self, a: i64, q: i64, precision: u32) -> Result<BigFloat> {
        check_coprime_point(a, q)?;
        BigFloat::check_precision(precision)?;
        // Terms may cancel; cover it with the coefficient size and k.
        let max_bits = self.coefficients.values().map(|c| c.bits()).max().unwrap_or(0) as u32;
        let w = precision + GUARD_BITS + max_bits + self.order;
        let (cot, csc_sq) = trig_at_rational(a, q, w)?;
        let mut sum = BigFloat::zero(w);
        for (&l, c) in &self.coefficients {
            let m = (self.order - 2 * l) as i64;
            let term = csc_sq.powi(l as i64) * cot.powi(m);
            sum = &sum + &term.mul_int(c.clone());
        }
        let pik = pi(w)?.powi(self.order as i64);
        Ok((&pik * &sum).with_precision(precision))
    }

    /// Exact `w ∈ Q(ζ_q)` with `D^{k-1}(π cot πz)|_{z=a/q} = π^k · i^{-k} · w`.
    ///
    /// With `u = i cot(πa/q)` one has `cot = −i u` and `csc² = 1 − u²`, so
    /// `cot^{k-2l} = i^{-k} (−1)^l u^{k-2l}` and
    /// `w = Σ_l (−1)^l c_l (1 − u²)^l u^{k-2l}`.
    pub fn normalized_cyclotomic(&self, a: i64, q: i64) -> Result<CyclotomicElement> {
        check_coprime_point(a, q)?;
        let u = i_cot_element(a, q)?;
        let qc = q as u64;
        let one = CyclotomicElement::one(qc)?;
        let csc_sq = one.try_sub(&u.try_mul(&u)?)?;
        let mut w = CyclotomicElement::zero(qc)?;
        for (&l, c) in &self.coefficients {
            let m = self.order - 2 * l;
            let mut coeff = crate::numerics::Rational::from(c.clone());
            if l % 2 == 1 {
                coeff = -coeff;
            }
            let term = csc_sq.pow(l).try_mul(&u.pow(m))?.scale(&coeff);
            w = w.try_add(&term)?;
        }
        Ok(w)
    }

    /// Serializable form `{"k": k, "coeffs": {"l": "c_l", …}}`.
    pub fn record(&self) -> ExpansionRecord {
        ExpansionRecord {
            k: self.order,
            coeffs: self.coefficients.iter().map(|(&l, c)| (l, c.to_string())).collect(),
        }
    }

    /// Largest `|c_l|`.
    pub fn max_abs_coefficient(&self) -> BigInt {
        self.coefficients.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// JSON shape of an expansion, coefficients as decimal strings keyed by `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub k: u32,
    pub coeffs: BTreeMap<u32, String>,
}

fn check_coprime_point(a: i64, q: i64) -> Result<()> {
    if q < 2 || a < 1 || a >= q || gcd(a, q) != 1 {
        return usage(format!("need q ≥ 2, 1 ≤ a < q and gcd(a, q) = 1; got a = {a}, q = {q}"));
    }
    Ok(())
}

/// Expansion of `D^{k-1}(π cot πz)`, built by `k − 1` differentiations of `π cot πz`.
pub fn expand(k: u32) -> Result<CotDerivativeExpansion> {
    if k < 1 {
        return usage("expand needs k ≥ 1");
    }
    let mut e = CotDerivativeExpansion::base();
    for _ in 1..k {
        e = e.differentiate();
    }
    Ok(e)
}

/// Evaluates `expand(k)` at `z = a/q`.
pub fn evaluate_numeric(e: &CotDerivativeExpansion, a: i64, q: i64, precision: u32) -> Result<BigFloat> {
    e.evaluate_numeric(a, q, precision)
}

/// `w ∈ Q(ζ_q)` with `D^{k-1}(π cot πz)|_{z=a/q} = π^k i^{-k} w`.
pub fn normalized_cyclotomic(k: u32, a: i64, q: i64) -> Result<CyclotomicElement> {
    expand(k)?.normalized_cyclotomic(a, q)
}
