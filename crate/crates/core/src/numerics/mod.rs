//! Arbitrary-precision real arithmetic: [`BigFloat`], π, Bernoulli numbers and
//! trigonometric values at rational multiples of π.

mod bernoulli;
mod bigfloat;
mod pi;
mod trig;

pub use bernoulli::{bernoulli_numbers, even_bernoulli};
pub use bigfloat::{digits_to_bits, BigFloat, MIN_PRECISION};
pub use pi::{pi, pi_agm};
pub use trig::{cos_sin_pi_rational, trig_at_rational};

/// Exact rational with arbitrary-precision numerator and denominator, always
/// in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Extra bits carried internally by compound evaluations before the final rounding.
pub const GUARD_BITS: u32 = 32;
