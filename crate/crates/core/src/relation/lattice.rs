//! Exact LLL reduction over the integers.
//!
//! Gram-Schmidt data is kept in the integral form of de Weger / Cohen
//! (Algorithm 2.6.7): `d_i` is the Gram determinant of the first `i` rows and
//! `λ_{ij} = d_{j+1} μ_{ij}` is an integer, so no rational or floating-point
//! arithmetic appears anywhere in the reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{usage, Result};
use crate::numerics::Rational;

/// Linearly independent integer row vectors of a common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    rows: Vec<Vec<BigInt>>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integral Gram-Schmidt state.
struct Integral {
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl Integral {
    /// `None` when the rows are linearly dependent.
    fn new(rows: &[Vec<BigInt>]) -> Option<Self> {
        let n = rows.len();
        let mut d = vec![BigInt::zero(); n + 1];
        d[0] = BigInt::from(1);
        let mut lam = vec![vec![BigInt::zero(); n]; n];
        for k in 0..n {
            for j in 0..=k {
                let mut u = dot(&rows[k], &rows[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return None;
                    }
                    d[k + 1] = u;
                }
            }
        }
        Some(Integral { d, lam })
    }
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.is_empty() {
            return usage("a lattice basis needs at least one row");
        }
        let len = rows[0].len();
        if rows.iter().any(|r| r.len() != len) {
            return usage("lattice rows must share one length");
        }
        if Integral::new(&rows).is_none() {
            return usage("lattice rows are linearly dependent (zero Gram determinant)");
        }
        Ok(LatticeBasis { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    /// Determinant of the Gram matrix `B Bᵀ`.
    pub fn gram_determinant(&self) -> BigInt {
        let st = Integral::new(&self.rows).expect("basis rows are independent");
        st.d[self.rows.len()].clone()
    }
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    // den > 0
    (num * BigInt::from(2) + den).div_floor(&(den * BigInt::from(2)))
}

/// LLL-reduces `basis` with Lovász parameter `delta ∈ (1/4, 1)`.
///
/// The output spans the same lattice, is size reduced (`|μ_{ij}| ≤ 1/2`) and
/// satisfies `‖b*_k‖² ≥ (δ − μ_{k,k−1}²) ‖b*_{k−1}‖²` for every `k`.
pub fn lll_reduce(basis: &LatticeBasis, delta: &Rational) -> Result<LatticeBasis> {
    let quarter = Rational::new(1.into(), 4.into());
    if delta <= &quarter || delta >= &Rational::from_integer(1.into()) {
        return usage(format!("LLL parameter δ = {delta} outside (1/4, 1)"));
    }
    let (p, r) = (delta.numer().clone(), delta.denom().clone());
    let mut b = basis.rows.clone();
    let n = b.len();
    let Integral { mut d, mut lam } = Integral::new(&b).expect("validated on construction");

    let reduce = |b: &mut Vec<Vec<BigInt>>, lam: &mut Vec<Vec<BigInt>>, d: &[BigInt], k: usize, l: usize| {
        if (&lam[k][l] * BigInt::from(2)).abs() <= d[l + 1] {
            return;
        }
        let q = round_div(&lam[k][l], &d[l + 1]);
        let bl = b[l].clone();
        for (x, y) in b[k].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        lam[k][l] -= &q * &d[l + 1];
        for i in 0..l {
            let t = &q * &lam[l][i];
            lam[k][i] -= t;
        }
    };

    let mut k = 1;
    while k < n {
        reduce(&mut b, &mut lam, &d, k, k - 1);
        let lhs = &r * (&d[k + 1] * &d[k - 1] + &lam[k][k - 1] * &lam[k][k - 1]);
        let rhs = &p * &d[k] * &d[k];
        if lhs < rhs {
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = std::mem::take(&mut lam[k][j]);
                lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
            }
            let l = lam[k][k - 1].clone();
            let big_b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
            for i in k + 1..n {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                lam[i][k - 1] = (&big_b * &t + &l * &lam[i][k]) / &d[k + 1];
            }
            d[k] = big_b;
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                reduce(&mut b, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
    Ok(LatticeBasis { rows: b })
}
