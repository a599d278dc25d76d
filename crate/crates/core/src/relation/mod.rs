//! Integer-relation detection by lattice reduction, and the empirical
//! dimension probe for Chowla-Milnor spaces built on it.
//!
//! Reports are evidence, never proofs: "no relation" means no candidate with
//! coefficients inside the bound survived verification at the given precision.

mod lattice;

pub use lattice::{lll_reduce, LatticeBasis};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{usage, Result};
use crate::hurwitz::basis_values;
use crate::numerics::{BigFloat, Rational};

/// Bits of each input kept below the lattice scaling exponent.
pub const SCALE_GUARD_BITS: u32 = 64;

/// Extra lattice precision demanded beyond `n · log₂(bound)`.
pub const PRECISION_MARGIN_BITS: u32 = 32;

/// A candidate is accepted when its residual is below
/// `2^(⌈log₂ Σ|c_i x_i|⌉ + RESIDUAL_SLACK_BITS − precision)`.
pub const RESIDUAL_SLACK_BITS: i64 = 16;

/// A verified integer relation `Σ c_i x_i ≈ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundRelation {
    pub coeffs: Vec<i64>,
    /// `⌈log₂|Σ c_i x_i|⌉` at full precision; `None` when the sum is exactly zero.
    pub residual_log2: Option<i64>,
}

/// Outcome of an integer-relation search.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub inputs: Vec<BigFloat>,
    pub inputs_digest: String,
    pub relations: Vec<FoundRelation>,
    pub coefficient_bound: u64,
    pub precision_bits: u32,
    /// Input count minus the number of verified relations.
    pub empirical_independent_count: usize,
}

/// JSON form of a [`FoundRelation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub coeffs: Vec<i64>,
    pub residual_log2: Option<i64>,
}

/// JSON form of a [`RelationReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReportRecord {
    pub inputs: Vec<String>,
    pub inputs_digest: String,
    pub relations: Vec<RelationRecord>,
    pub bound: u64,
    pub precision_bits: u32,
    pub independent_count: usize,
    pub label: String,
}

impl RelationReport {
    /// Human-readable verdict, worded as evidence.
    pub fn label(&self) -> String {
        if self.relations.is_empty() {
            format!(
                "no relation with coefficients <= {} at {} bits of precision (evidence, not proof)",
                self.coefficient_bound, self.precision_bits
            )
        } else {
            let worst = self
                .relations
                .iter()
                .map(|r| r.residual_log2.map_or("-inf".to_string(), |l| l.to_string()))
                .collect::<Vec<_>>()
                .join(", ");
            format!(
                "{} relation(s) found (verified to residual 2^[{}]); empirical independent count {}",
                self.relations.len(),
                worst,
                self.empirical_independent_count
            )
        }
    }

    pub fn record(&self, digits: usize) -> RelationReportRecord {
        RelationReportRecord {
            inputs: self.inputs.iter().map(|x| x.to_decimal(digits)).collect(),
            inputs_digest: self.inputs_digest.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationRecord { coeffs: r.coeffs.clone(), residual_log2: r.residual_log2 })
                .collect(),
            bound: self.coefficient_bound,
            precision_bits: self.precision_bits,
            independent_count: self.empirical_independent_count,
            label: self.label(),
        }
    }

    /// Whether some reported relation equals `coeffs` up to sign.
    pub fn contains(&self, coeffs: &[i64]) -> bool {
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        self.relations.iter().any(|r| r.coeffs == coeffs || r.coeffs == neg)
    }
}

/// SHA-256 over the inputs' full-precision decimal renderings, one per line.
pub fn inputs_digest(values: &[BigFloat]) -> String {
    let mut h = Sha256::new();
    for v in values {
        h.update(v.to_decimal(v.decimal_digits().max(1)).as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn bits_for_bound(bound: u64) -> u32 {
    64 - bound.leading_zeros()
}

/// `Σ c_i x_i` at a precision wide enough for the cancellation to be exact
/// up to the inputs' own rounding.
fn residual(values: &[BigFloat], coeffs: &[i64], precision: u32) -> (BigFloat, Option<i64>) {
    let w = precision + 128;
    let mut sum = BigFloat::zero(w);
    let mut scale = BigFloat::zero(w);
    for (x, &c) in values.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let x = x.with_precision(w);
        sum = &sum + &x.mul_int(c);
        scale = &scale + &x.abs().mul_int(c.unsigned_abs());
    }
    (sum, scale.log2_abs_ceil())
}

fn normalize_sign(mut c: Vec<i64>) -> Vec<i64> {
    if c.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    c
}

/// One reduction pass over `values`: the shortest verified relation, if any.
fn single_pass(values: &[BigFloat], precision: u32, bound: u64) -> Option<FoundRelation> {
    let n = values.len();
    if n == 1 {
        let (sum, _) = residual(values, &[1], precision);
        return match sum.log2_abs_ceil() {
            None => Some(FoundRelation { coeffs: vec![1], residual_log2: None }),
            Some(l) if l <= RESIDUAL_SLACK_BITS - precision as i64 => {
                Some(FoundRelation { coeffs: vec![1], residual_log2: Some(l) })
            }
            _ => None,
        };
    }
    let scale = precision.saturating_sub(SCALE_GUARD_BITS) as i64;
    let rows: Vec<Vec<BigInt>> = values
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut row = vec![BigInt::zero(); n + 1];
            row[i] = BigInt::from(1);
            row[n] = x.mul_pow2(scale).round_to_int();
            row
        })
        .collect();
    let basis = LatticeBasis::new(rows).expect("identity block keeps rows independent");
    let delta = Rational::new(99.into(), 100.into());
    let reduced = lll_reduce(&basis, &delta).expect("delta in range");

    let mut candidates: Vec<(BigInt, Vec<i64>)> = reduced
        .rows()
        .iter()
        .filter_map(|row| {
            let coeffs: Option<Vec<i64>> = row[..n]
                .iter()
                .map(|c| c.to_i64().filter(|v| v.unsigned_abs() <= bound))
                .collect();
            let coeffs = coeffs?;
            if coeffs.iter().all(|&c| c == 0) {
                return None;
            }
            let norm: BigInt = row.iter().map(|x| x * x).sum();
            Some((norm, coeffs))
        })
        .collect();
    candidates.sort();
    for (_, coeffs) in candidates {
        let (sum, scale_log2) = residual(values, &coeffs, precision);
        let accept = match (sum.log2_abs_ceil(), scale_log2) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(r), Some(s)) => r <= s + RESIDUAL_SLACK_BITS - precision as i64,
        };
        if accept {
            return Some(FoundRelation { coeffs: normalize_sign(coeffs), residual_log2: sum.log2_abs_ceil() });
        }
    }
    None
}

/// Finds every relation among `values` reachable by repeated reduction.
///
/// After each verified relation one input with a nonzero coefficient (the
/// last such index) is dropped and the search repeats on the rest, so the
/// reported relations are linearly independent.
fn search_relations(values: &[BigFloat], precision: u32, bound: u64) -> Vec<FoundRelation> {
    let mut active: Vec<usize> = (0..values.len()).collect();
    let mut found = Vec::new();
    while !active.is_empty() {
        let subset: Vec<BigFloat> = active.iter().map(|&i| values[i].clone()).collect();
        let Some(rel) = single_pass(&subset, precision, bound) else { break };
        let mut full = vec![0i64; values.len()];
        for (&i, &c) in active.iter().zip(&rel.coeffs) {
            full[i] = c;
        }
        let pivot = rel.coeffs.iter().rposition(|&c| c != 0).expect("nonzero relation");
        active.remove(pivot);
        found.push(FoundRelation { coeffs: full, residual_log2: rel.residual_log2 });
    }
    found
}

/// Minimum `precision_bits` for searching `n` values with `|c_i| ≤ bound`.
pub fn required_precision(n: usize, bound: u64) -> u32 {
    n as u32 * bits_for_bound(bound) + PRECISION_MARGIN_BITS + SCALE_GUARD_BITS
}

fn build_report(values: &[BigFloat], precision_bits: u32, bound: u64) -> RelationReport {
    let relations = search_relations(values, precision_bits, bound);
    RelationReport {
        inputs: values.to_vec(),
        inputs_digest: inputs_digest(values),
        empirical_independent_count: values.len() - relations.len(),
        relations,
        coefficient_bound: bound,
        precision_bits,
    }
}

/// Searches for integer relations among `values` with `|c_i| ≤ coefficient_bound`.
///
/// The lattice has rows `(e_i, ⌊2^P x_i⌉)` with `P = precision_bits − 64`;
/// LLL proposes short vectors and each candidate is re-verified against the
/// full-precision inputs, so only verified relations are reported.
pub fn find_integer_relation(values: &[BigFloat], precision_bits: u32, coefficient_bound: u64) -> Result<RelationReport> {
    if values.len() < 2 {
        return usage(format!("integer relation search needs at least 2 values, got {}", values.len()));
    }
    if coefficient_bound == 0 {
        return usage("coefficient bound must be positive");
    }
    let needed = required_precision(values.len(), coefficient_bound);
    if precision_bits < needed {
        return usage(format!(
            "precision {precision_bits} bits too low for {} values with coefficient bound {coefficient_bound}; need at least {needed} bits",
            values.len()
        ));
    }
    if let Some(short) = values.iter().find(|v| v.precision() < precision_bits) {
        return usage(format!(
            "inputs must carry at least {precision_bits} bits; one has {}",
            short.precision()
        ));
    }
    Ok(build_report(values, precision_bits, coefficient_bound))
}

/// Which spanning set of `V_k(q)` to probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ProbeMode {
    /// All `φ(q)` values `ζ(k, a/q)`.
    Full,
    /// `ζ(k, a/q) + ζ(k, 1 − a/q)` over the half-system.
    Plus,
    /// `ζ(k, a/q) − ζ(k, 1 − a/q)` over the half-system.
    Minus,
}

/// Probes the `Q`-dimension of a spanning set of `V_k(q)` by relation search.
pub fn probe_dimension(k: u32, q: u64, mode: ProbeMode, precision_bits: u32, coefficient_bound: u64) -> Result<RelationReport> {
    if k < 2 {
        return usage(format!("probe needs k ≥ 2, got {k}"));
    }
    if q <= 2 {
        return usage(format!("probe needs q > 2, got {q}"));
    }
    let basis = basis_values(k, q, precision_bits)?;
    let values: Vec<BigFloat> = match mode {
        ProbeMode::Full => basis.raw.into_values().collect(),
        ProbeMode::Plus => basis.plus.into_values().collect(),
        ProbeMode::Minus => basis.minus.into_values().collect(),
    };
    if values.len() >= 2 {
        find_integer_relation(&values, precision_bits, coefficient_bound)
    } else {
        Ok(build_report(&values, precision_bits, coefficient_bound))
    }
}

/// `λ_i = −c_i / c_0` for a relation whose first coefficient is nonzero.
pub fn relation_to_rationals(coeffs: &[i64]) -> Option<Vec<Rational>> {
    let c0 = *coeffs.first()?;
    if c0 == 0 {
        return None;
    }
    Some(coeffs[1..].iter().map(|&c| Rational::new(BigInt::from(-c), BigInt::from(c0))).collect())
}
