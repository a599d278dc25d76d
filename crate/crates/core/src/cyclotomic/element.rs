use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{cyclotomic_polynomial, rational, IntegerPolynomial};
use crate::arith::{coprime_residues, euler_phi, gcd};
use crate::error::{domain, usage, Error, Result};
use crate::numerics::{cos_sin_pi_rational, BigFloat, Rational, GUARD_BITS};

/// Exact element `Σ c_j ζ_q^j` of `Q(ζ_q)` in the power basis
/// `j = 0 … φ(q) − 1`, canonically reduced modulo `Φ_q`.
///
/// Two elements are equal as field elements iff their conductors and
/// coefficient vectors are identical. Conductors 1 and 2 both give `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    conductor: u64,
    coeffs: Vec<Rational>,
}

fn modulus(q: u64) -> IntegerPolynomial {
    cyclotomic_polynomial(q).expect("conductor is positive")
}

impl CyclotomicElement {
    /// Element with the given power-basis coefficients; any length is
    /// accepted and reduced modulo `Φ_q`.
    pub fn from_coefficients(conductor: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if conductor == 0 {
            return usage("conductor must be at least 1");
        }
        let coeffs = rational::reduce_mod_monic(coeffs, &modulus(conductor));
        Ok(CyclotomicElement { conductor, coeffs })
    }

    pub fn from_i64(conductor: u64, coeffs: &[i64]) -> Result<Self> {
        Self::from_coefficients(conductor, coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_rational(conductor: u64, value: Rational) -> Result<Self> {
        Self::from_coefficients(conductor, vec![value])
    }

    pub fn zero(conductor: u64) -> Result<Self> {
        Self::from_coefficients(conductor, Vec::new())
    }

    pub fn one(conductor: u64) -> Result<Self> {
        Self::from_rational(conductor, Rational::one())
    }

    /// `ζ_q^j` for any integer `j`.
    pub fn zeta_power(conductor: u64, j: i64) -> Result<Self> {
        if conductor == 0 {
            return usage("conductor must be at least 1");
        }
        let e = j.rem_euclid(conductor as i64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        Self::from_coefficients(conductor, c)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coefficients; always `φ(q)` of them.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value when every coefficient beyond index 0 vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.conductor != other.conductor {
            return usage(format!(
                "conductor mismatch: Q(ζ_{}) vs Q(ζ_{})",
                self.conductor, other.conductor
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicElement { conductor: self.conductor, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CyclotomicElement { conductor: self.conductor, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Self::from_coefficients(self.conductor, rational::mul(&self.coeffs, &other.coeffs))
    }

    pub fn neg(&self) -> Self {
        CyclotomicElement { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        CyclotomicElement { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.conductor).expect("valid conductor");
        for _ in 0..n {
            acc = acc.try_mul(self).expect("same conductor");
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_q`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return domain("cannot invert zero");
        }
        let phi: Vec<Rational> =
            modulus(self.conductor).coeffs().iter().map(|c| Rational::from(c.clone())).collect();
        let inv = rational::inverse_mod(&self.coeffs, &phi)
            .expect("Φ_q is irreducible, so nonzero elements are units");
        Self::from_coefficients(self.conductor, inv)
    }

    /// The automorphism `σ_t : ζ_q ↦ ζ_q^t`.
    pub fn galois_apply(&self, t: i64) -> Result<Self> {
        let q = self.conductor as i64;
        if gcd(t, q) != 1 {
            return usage(format!("σ_{t} is not an automorphism of Q(ζ_{q}): gcd({t}, {q}) ≠ 1"));
        }
        let mut out = vec![Rational::zero(); self.conductor as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let e = (t.rem_euclid(q) as i128 * j as i128).rem_euclid(q as i128) as usize;
            out[e] += c;
        }
        Self::from_coefficients(self.conductor, out)
    }

    /// Whether the element lies in `Q(ζ_d)`, tested as invariance under every
    /// `σ_t` with `t ≡ 1 (mod d)` and `gcd(t, q) = 1`. `d = 1` tests rationality.
    pub fn is_in_subfield(&self, d: u64) -> Result<bool> {
        let q = self.conductor;
        if d == 0 || q % d != 0 {
            return usage(format!("d = {d} does not divide the conductor {q}"));
        }
        for t in coprime_residues(q.max(2)).into_iter().filter(|t| t % d == 1 % d) {
            if &self.galois_apply(t as i64)? != self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Numeric value `Σ c_j e^{2πij/q}` as (real, imaginary), each within
    /// `2^(4 − precision)` relative to the size of the coefficients.
    pub fn embed_numeric(&self, precision: u32) -> Result<(BigFloat, BigFloat)> {
        BigFloat::check_precision(precision)?;
        let coeff_bits = self
            .coeffs
            .iter()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0) as u32;
        let w = precision + GUARD_BITS + coeff_bits.min(4096) + 8;
        let mut re = BigFloat::zero(w);
        let mut im = BigFloat::zero(w);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = BigFloat::from_rational(c, w);
            if j == 0 {
                re = &re + &cf;
                continue;
            }
            let (cos, sin) = cos_sin_pi_rational(2 * j as i64, self.conductor as i64, w)?;
            re = &re + &(&cf * &cos);
            im = &im + &(&cf * &sin);
        }
        Ok((re.with_precision(precision), im.with_precision(precision)))
    }
}

/// `u = i·cot(πa/q) = (1 + ζ_q^a) / (1 − ζ_q^a)` as an exact element of `Q(ζ_q)`.
pub fn i_cot_element(a: i64, q: i64) -> Result<CyclotomicElement> {
    if q < 2 || a < 1 || a >= q {
        return usage(format!("i_cot_element needs q ≥ 2 and 1 ≤ a < q, got a = {a}, q = {q}"));
    }
    if gcd(a, q) != 1 {
        return usage(format!("i_cot_element needs gcd(a, q) = 1, got a = {a}, q = {q}"));
    }
    let q = q as u64;
    let z = CyclotomicElement::zeta_power(q, a)?;
    let one = CyclotomicElement::one(q)?;
    let num = one.try_add(&z)?;
    let den = one.try_sub(&z)?;
    num.try_mul(&den.inverse()?)
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CyclotomicElement {
    /// Canonical text form `q; c_0, c_1, …` with rationals as `num/den`
    /// (integers without a denominator).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        write!(f, "{}; {}", self.conductor, cs.join(", "))
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for CyclotomicElement {
    type Err = Error;

    /// Parses the canonical text form. The coefficient list may be shorter
    /// or longer than `φ(q)`; it is reduced modulo `Φ_q`.
    fn from_str(s: &str) -> Result<Self> {
        let (q, rest) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected `q; c_0, c_1, …`, got `{s}`")))?;
        let q: u64 = q.trim().parse().map_err(|_| Error::Parse(format!("invalid conductor `{q}`")))?;
        let coeffs = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?
        };
        CyclotomicElement::from_coefficients(q, coeffs)
    }
}

/// Degree `[Q(ζ_q) : Q] = φ(q)`.
pub fn field_degree(q: u64) -> u64 {
    euler_phi(q)
}

/// Largest absolute value among the numerators and denominators of the coefficients.
pub fn height(x: &CyclotomicElement) -> BigInt {
    x.coeffs
        .iter()
        .flat_map(|c| [c.numer().abs(), c.denom().clone()])
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn el(q: u64, c: &[(i64, i64)]) -> CyclotomicElement {
        CyclotomicElement::from_coefficients(q, c.iter().map(|&(n, d)| r(n, d)).collect()).unwrap()
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = CyclotomicElement::zeta_power(4, 1).unwrap();
        assert_eq!(z.try_mul(&z).unwrap().coeffs(), &[r(-1, 1), r(0, 1)]);
    }

    #[test]
    fn inverses() {
        let z5 = CyclotomicElement::zeta_power(5, 1).unwrap();
        assert_eq!(z5.inverse().unwrap(), el(5, &[(-1, 1), (-1, 1), (-1, 1), (-1, 1)]));
        let one_minus = el(3, &[(1, 1), (-1, 1)]);
        assert_eq!(one_minus.inverse().unwrap(), el(3, &[(2, 3), (1, 3)]));
        assert!(matches!(CyclotomicElement::zero(7).unwrap().inverse(), Err(Error::Domain(_))));
    }

    #[test]
    fn conductor_mismatch_is_usage_error() {
        let a = CyclotomicElement::one(3).unwrap();
        let b = CyclotomicElement::one(4).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::Usage(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn i_cot_values() {
        assert_eq!(i_cot_element(1, 4).unwrap(), el(4, &[(0, 1), (1, 1)]));
        assert!(i_cot_element(1, 2).unwrap().is_zero());
        assert_eq!(i_cot_element(1, 2).unwrap().coeffs().len(), 1);
        assert_eq!(i_cot_element(1, 3).unwrap(), el(3, &[(1, 3), (2, 3)]));
        assert!(matches!(i_cot_element(2, 4), Err(Error::Usage(_))));
        assert!(i_cot_element(0, 4).is_err());
    }

    #[test]
    fn i_cot_embedding() {
        let (re, im) = i_cot_element(1, 3).unwrap().embed_numeric(128).unwrap();
        assert!(re.abs().log2_abs_ceil().map_or(true, |l| l < -120));
        let inv_sqrt3 = BigFloat::from_int(3, 128).sqrt().unwrap().recip();
        assert!((&im - &inv_sqrt3).abs().log2_abs_ceil().map_or(true, |l| l < -120));
        assert_eq!(im.to_decimal(10), "0.5773502692");
    }

    #[test]
    fn galois_action() {
        let z = CyclotomicElement::zeta_power(4, 1).unwrap();
        assert_eq!(z.galois_apply(3).unwrap(), z.neg());
        assert_eq!(z.galois_apply(1).unwrap(), z);
        assert!(matches!(z.galois_apply(2), Err(Error::Usage(_))));
        let u = i_cot_element(1, 5).unwrap();
        assert_eq!(u.galois_apply(2).unwrap(), i_cot_element(2, 5).unwrap());
    }

    #[test]
    fn subfield_membership() {
        assert!(el(7, &[(3, 5)]).is_in_subfield(1).unwrap());
        let z5 = CyclotomicElement::zeta_power(5, 1).unwrap();
        let real = z5.try_add(&z5.inverse().unwrap()).unwrap();
        assert!(!real.is_in_subfield(1).unwrap());
        assert!(real.is_in_subfield(5).unwrap());
        let z12_cubed = CyclotomicElement::zeta_power(12, 3).unwrap();
        assert!(z12_cubed.is_in_subfield(4).unwrap());
        assert!(!z12_cubed.is_in_subfield(3).unwrap());
        assert!(matches!(z12_cubed.is_in_subfield(5), Err(Error::Usage(_))));
    }

    #[test]
    fn embeddings_of_simple_elements() {
        let (re, im) = el(5, &[(1, 2)]).embed_numeric(64).unwrap();
        assert_eq!(re.to_f64(), 0.5);
        assert!(im.is_zero());
        let (re, im) = CyclotomicElement::zeta_power(4, 1).unwrap().embed_numeric(64).unwrap();
        assert!(re.to_f64().abs() < 1e-18);
        assert_eq!(im.to_f64(), 1.0);
    }

    #[test]
    fn text_form_round_trip() {
        let x = el(12, &[(1, 2), (0, 1), (-3, 7), (5, 1)]);
        assert_eq!(x.to_string(), "12; 1/2, 0, -3/7, 5");
        assert_eq!(x.to_string().parse::<CyclotomicElement>().unwrap(), x);
        // ζ_4^2 given with too many coefficients reduces to −1.
        assert_eq!("4; 0, 0, 1".parse::<CyclotomicElement>().unwrap(), el(4, &[(-1, 1)]));
        assert!("4 0 1".parse::<CyclotomicElement>().is_err());
        assert!("4; 1/0".parse::<CyclotomicElement>().is_err());
    }

    #[test]
    fn degenerate_conductors() {
        for q in [1, 2] {
            let one = CyclotomicElement::one(q).unwrap();
            assert_eq!(one.coeffs().len(), 1);
            assert!(one.is_in_subfield(1).unwrap());
        }
        assert_eq!(CyclotomicElement::zeta_power(2, 1).unwrap().as_rational(), Some(r(-1, 1)));
        assert_eq!(field_degree(12), 4);
    }
}
