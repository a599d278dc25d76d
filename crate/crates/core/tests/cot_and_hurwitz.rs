mod common;

use chowla_milnor::arith::gcd;
use chowla_milnor::cot_expansion::{expand, normalized_cyclotomic};
use chowla_milnor::hurwitz::{basis_values, euler_factor};
use chowla_milnor::numerics::{digits_to_bits, BigFloat};
use chowla_milnor::{hurwitz_zeta, riemann_zeta};
use common::{close_rel, cot_derivative_oracle, hurwitz_brute, pi_at};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_points(n: usize, seed: u64) -> Vec<(i64, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let q = rng.gen_range(2..60i64);
        let a = rng.gen_range(1..q);
        if gcd(a, q) == 1 {
            out.push((a, q));
        }
    }
    out
}

#[test]
fn expansion_matches_partial_fractions() {
    let p = digits_to_bits(50);
    for (a, q) in random_points(4, 7) {
        for k in 1..=12 {
            let got = expand(k).unwrap().evaluate_numeric(a, q, p).unwrap();
            let want = cot_derivative_oracle(k, a, q, p);
            assert!(close_rel(&got, &want, 8 - p as i64), "k = {k}, z = {a}/{q}: {} vs {}", got.to_decimal(30), want.to_decimal(30));
        }
    }
}

#[test]
fn normalized_element_embeds_to_derivative() {
    // D^{k−1}(π cot πz) = π^k i^{−k} w
    let p = 256;
    let pi = pi_at(p);
    for (a, q) in [(1, 3), (2, 5), (1, 8), (5, 12), (4, 9)] {
        for k in 1..=9u32 {
            let w = normalized_cyclotomic(k, a, q).unwrap();
            let (re, im) = w.embed_numeric(p).unwrap();
            let derivative = expand(k).unwrap().evaluate_numeric(a, q, p).unwrap();
            let pk = pi.powi(k as i64);
            // real part of i^{−k} w
            let value = match k % 4 {
                0 => &pk * &re,
                1 => &pk * &im,
                2 => -(&pk * &re),
                _ => -(&pk * &im),
            };
            assert!(close_rel(&value, &derivative, 16 - p as i64), "k = {k}, z = {a}/{q}");
            let other = if k % 2 == 0 { im } else { re };
            assert!(other.log2_abs_ceil().map_or(true, |l| l <= 24 - p as i64));
        }
    }
}

#[test]
fn coefficient_support() {
    for k in 2..=30u32 {
        let keys: Vec<u32> = expand(k).unwrap().coefficients().keys().copied().collect();
        assert_eq!(keys, (1..=k / 2).collect::<Vec<_>>(), "k = {k}");
    }
}

#[test]
fn hurwitz_against_brute_force() {
    let p = 200;
    for (k, a, q) in [(30, 1, 3), (40, 2, 5), (35, 5, 12), (30, 1, 1)] {
        let got = hurwitz_zeta(k, a, q, p).unwrap();
        let want = hurwitz_brute(k, a, q, 400, p);
        assert!(close_rel(&got, &want, 6 - p as i64), "k = {k}, a/q = {a}/{q}");
    }
}

#[test]
fn multiplication_theorem() {
    // Σ_{j<m} ζ(k, (a + jq)/(mq)) = m^k ζ(k, a/q)
    let p = 300;
    for (k, a, q, m) in [(2, 1, 3, 2), (3, 2, 5, 3), (5, 1, 4, 4), (4, 7, 12, 2)] {
        let mut sum = BigFloat::zero(p + 32);
        for j in 0..m {
            sum = &sum + &hurwitz_zeta(k, a + j * q, m * q, p + 32).unwrap();
        }
        let rhs = &hurwitz_zeta(k, a, q, p + 32).unwrap() * &BigFloat::from_int(BigInt::from(m).pow(k), p + 32);
        assert!(close_rel(&sum, &rhs, 8 - p as i64), "k = {k}, a/q = {a}/{q}, m = {m}");
    }
}

#[test]
fn closed_forms_at_high_precision() {
    let p = 1200;
    let pi = pi_at(p);
    let z2 = riemann_zeta(2, p).unwrap();
    assert!(close_rel(&z2, &(&pi * &pi).div_int(6), 6 - p as i64));
    let z6 = riemann_zeta(6, p).unwrap();
    assert!(close_rel(&z6, &pi.powi(6).div_int(945), 6 - p as i64));
    // ζ(2, 1/4) + ζ(2, 3/4) = 16 Σ_{n odd} n^{-2} = 2π²
    let s = &hurwitz_zeta(2, 1, 4, p).unwrap() + &hurwitz_zeta(2, 3, 4, p).unwrap();
    assert!(close_rel(&s, &(&pi * &pi).mul_int(2), 8 - p as i64));
}

#[test]
fn euler_factor_relation_among_raw_values() {
    let p = 400;
    for (k, q) in [(2u32, 5u64), (3, 8), (4, 12), (5, 7)] {
        let b = basis_values(k, q, p).unwrap();
        let sum = b.raw.values().fold(BigFloat::zero(p), |acc, v| &acc + v);
        let zeta = riemann_zeta(k, p).unwrap();
        let rhs = &(&zeta * &BigFloat::from_rational(&euler_factor(k, q), p))
            * &BigFloat::from_int(BigInt::from(q).pow(k), p);
        assert!(close_rel(&sum, &rhs, 12 - p as i64), "k = {k}, q = {q}");
    }
}

#[test]
fn large_order_is_close_to_leading_term() {
    // ζ(400, 1/3) = 3^400 + (3/4)^400 + (3/7)^400 + …
    let p = 1000;
    let v = hurwitz_zeta(400, 1, 3, p).unwrap();
    let lead = BigFloat::from_int(3, p).powi(400);
    let second = BigFloat::from_ratio(&3.into(), &4.into(), p).powi(400);
    assert!(close_rel(&(&v - &lead), &second, -150));
}
