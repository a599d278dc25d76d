//! Computational companion to the Chowla-Milnor spaces
//! `V_k(q) = Q-span{ ζ(k, a/q) : 1 ≤ a < q, gcd(a, q) = 1 }`.
//!
//! The crate evaluates Hurwitz zeta values at rational arguments to arbitrary
//! precision, expands derivatives of `π cot πz` into integer combinations of
//! `csc^{2l} cot^{k-2l}`, computes the odd-`k` ratios
//! `(ζ(k,a/q) − ζ(k,1−a/q)) / (2πi)^k` exactly inside `Q(ζ_q)`, and searches for
//! integer relations among these values with exact LLL reduction.
//!
//! Module map:
//! - [`numerics`]: [`BigFloat`], π, Bernoulli numbers, trig at rational multiples of π
//! - [`cyclotomic`]: exact arithmetic in `Q(ζ_q)` with Galois action and subfield tests
//! - [`cot_expansion`]: integer tables for `D^{k-1}(π cot πz)`
//! - [`hurwitz`]: Euler-Maclaurin evaluation of `ζ(k, a/q)` and plus/minus bases
//! - [`identities`]: residual reports for the reflection and Euler-factor identities,
//!   exact ratios, and the `ζ(k)` representation probe
//! - [`relation`]: LLL and integer-relation detection, dimension probes
//! - [`cli`]: the experiment runner behind the `chowla-milnor` binary

pub mod arith;
pub mod cli;
pub mod cot_expansion;
pub mod cyclotomic;
pub mod error;
pub mod hurwitz;
pub mod identities;
pub mod numerics;
pub mod relation;

pub use cot_expansion::{expand, CotDerivativeExpansion};
pub use cyclotomic::{CyclotomicElement, IntegerPolynomial};
pub use error::{Error, Result};

pub use hurwitz::{basis_values, hurwitz_zeta, riemann_zeta, BasisValues, HalfSystem};
pub use numerics::{BigFloat, Rational};
pub use relation::{find_integer_relation, probe_dimension, ProbeMode, RelationReport};
