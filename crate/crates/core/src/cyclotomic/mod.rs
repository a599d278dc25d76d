//! Exact arithmetic in cyclotomic fields `Q(ζ_q)`.
//!
//! Elements live in the power basis `1, ζ_q, …, ζ_q^{φ(q)−1}` modulo the
//! cyclotomic polynomial `Φ_q`, so equality is coefficient equality and a
//! rationality check is syntactic.

mod element;
mod poly;

pub use element::{field_degree, height, i_cot_element, CyclotomicElement};
pub use poly::{cyclotomic_polynomial, IntegerPolynomial};
