//! Oracles shared by the integration tests. Nothing here calls the library's
//! own zeta, cotangent or reduction code; only `BigFloat`/`Rational`
//! arithmetic and `pi` are borrowed.
#![allow(dead_code)]

use chowla_milnor::numerics::{pi, BigFloat, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn close(x: &BigFloat, y: &BigFloat, log2_tol: i64) -> bool {
    (x - y).log2_abs_ceil().map_or(true, |l| l <= log2_tol)
}

/// Relative closeness: `|x − y| ≤ 2^log2_tol · max(|x|, |y|, 1)`.
pub fn close_rel(x: &BigFloat, y: &BigFloat, log2_tol: i64) -> bool {
    let scale = [x.log2_abs_ceil(), y.log2_abs_ceil(), Some(0)].into_iter().flatten().max().unwrap();
    close(x, y, log2_tol + scale)
}

/// `B_0 … B_n` from `Σ_{j=0}^{m} C(m+1, j) B_j = 0` with `B_1 = −1/2`.
pub fn bernoulli_oracle(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        let mut binom = BigInt::one(); // C(m+1, 0)
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from(BigInt::from(m + 1)));
    }
    b
}

/// `Σ_{n>N} (n + x)^{-s}` for `s ≥ 2` by Euler-Maclaurin at the point `N`,
/// `J` correction terms, evaluated at `w` bits.
fn tail(s: u32, x: &BigFloat, n: i64, corrections: usize, bern: &[Rational], w: u32) -> BigFloat {
    let y = &BigFloat::from_int(n, w) + x;
    let yi = y.recip();
    let ys = yi.powi(s as i64);
    let mut acc = &(&ys * &y).div_int(s as i64 - 1) - &ys.mul_pow2(-1);
    let mut deriv_scale = BigInt::from(s); // (s)_{2j-1}
    let mut fact = BigInt::from(2); // (2j)!
    let mut power = &ys * &yi; // y^{-s-2j+1}
    for j in 1..=corrections {
        let c = BigFloat::from_rational(&(&bern[2 * j] / Rational::from(fact.clone())), w);
        acc = &acc + &(&c * &power.mul_int(deriv_scale.clone()));
        let m = (2 * j) as i64;
        deriv_scale *= BigInt::from((s as i64 + m - 1) * (s as i64 + m));
        fact *= BigInt::from((m + 1) * (m + 2));
        power = &(&power * &yi) * &yi;
    }
    acc
}

/// `(−1)^{k−1}(k−1)! Σ_{n∈Z} (z + n)^{-k}` at `z = a/q`, the partial-fraction
/// form of `D^{k−1}(π cot πz)`. The sum over `|n| ≤ N` is taken directly and
/// both tails by Euler-Maclaurin; for `k = 1` the two tails are paired
/// (`∫ = −2 artanh(z/N)`).
pub fn cot_derivative_oracle(k: u32, a: i64, q: i64, precision: u32) -> BigFloat {
    let w = precision + 96;
    let n: i64 = 100;
    let corrections = 60;
    let bern = bernoulli_oracle(2 * corrections + 2);
    let z = BigFloat::from_ratio(&BigInt::from(a), &BigInt::from(q), w);
    let mut sum = BigFloat::zero(w);
    for m in -n..=n {
        let t = &z + &BigFloat::from_int(m, w);
        sum = &sum + &t.powi(-(k as i64));
    }
    let neg_z = -z.clone();
    if k >= 2 {
        let plus = tail(k, &z, n, corrections, &bern, w);
        let minus = tail(k, &neg_z, n, corrections, &bern, w);
        sum = &sum + &plus;
        sum = if k % 2 == 0 { &sum + &minus } else { &sum - &minus };
    } else {
        // Σ_{n>N} [1/(n+z) − 1/(n−z)]: integral, half-term and corrections of the pair.
        let r = &z / &BigFloat::from_int(n, w);
        let r2 = &r * &r;
        let mut atanh = BigFloat::zero(w);
        let mut p = r.clone();
        for i in 0..400 {
            atanh = &atanh + &p.div_int(2 * i + 1);
            p = &p * &r2;
        }
        let mut acc = -atanh.mul_int(2);
        let yp = (&BigFloat::from_int(n, w) + &z).recip();
        let ym = (&BigFloat::from_int(n, w) - &z).recip();
        acc = &acc - &(&yp - &ym).mul_pow2(-1);
        let mut fact = BigInt::from(2);
        let mut m_fact = BigInt::one(); // (2j-1)!
        let (mut pp, mut pm) = (&yp * &yp, &ym * &ym);
        let (yp2, ym2) = (&yp * &yp, &ym * &ym);
        for j in 1..=corrections {
            let c = BigFloat::from_rational(&(&bern[2 * j] / Rational::from(fact.clone())), w);
            // −f^{(2j−1)}(N) = (2j−1)! [(N+z)^{-2j} − (N−z)^{-2j}]
            acc = &acc + &(&c * &(&pp - &pm).mul_int(m_fact.clone()));
            let m = (2 * j) as i64;
            fact *= BigInt::from((m + 1) * (m + 2));
            m_fact *= BigInt::from(m * (m + 1));
            pp = &pp * &yp2;
            pm = &pm * &ym2;
        }
        sum = &sum + &acc;
    }
    let fact: BigInt = (1..k as i64).map(BigInt::from).product();
    let v = sum.mul_int(fact);
    let v = if k % 2 == 0 { -v } else { v };
    v.with_precision(precision)
}

/// Brute-force `Σ_{n<terms} (n + a/q)^{-k}`; only accurate when `k` is large.
pub fn hurwitz_brute(k: u32, a: i64, q: i64, terms: i64, precision: u32) -> BigFloat {
    let w = precision + 32;
    let mut acc = BigFloat::zero(w);
    for n in 0..terms {
        let t = BigFloat::from_ratio(&BigInt::from(n * q + a), &BigInt::from(q), w);
        acc = &acc + &t.powi(-(k as i64));
    }
    acc.with_precision(precision)
}

pub fn pi_at(p: u32) -> BigFloat {
    pi(p).unwrap()
}

/// Row-echelon rank of rational vectors.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether `v` lies in the rational span of `rows`.
pub fn in_span(rows: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut extended = rows.to_vec();
    extended.push(v.to_vec());
    rank(&extended) == rank(rows)
}

/// Rational Gram-Schmidt: `(μ, ‖b*_i‖²)`.
pub fn gram_schmidt(rows: &[Vec<BigInt>]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = rows.len();
    let b: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|x| Rational::from(x.clone())).collect()).collect();
    let dot = |x: &[Rational], y: &[Rational]| x.iter().zip(y).map(|(a, b)| a * b).sum::<Rational>();
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut norms: Vec<Rational> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        let mut v = b[i].clone();
        for j in 0..i {
            mu[i][j] = dot(&b[i], &star[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (mu, norms)
}

/// Size reduction and the Lovász condition, checked exactly.
pub fn is_lll_reduced(rows: &[Vec<BigInt>], delta: &Rational) -> bool {
    let (mu, norms) = gram_schmidt(rows);
    let half = rat(1, 2);
    for i in 0..rows.len() {
        for j in 0..i {
            if mu[i][j].abs() > half {
                return false;
            }
        }
        if i > 0 {
            let m = &mu[i][i - 1];
            if norms[i] < (delta - m * m) * &norms[i - 1] {
                return false;
            }
        }
    }
    true
}

/// Determinant by fraction-free elimination over the rationals.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|x| Rational::from(x.clone())).collect()).collect();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return BigInt::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            let pivot = a[c].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    assert!(d.is_integer());
    d.to_integer()
}
