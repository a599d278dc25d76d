mod common;

use chowla_milnor::cli::expr::evaluate;
use chowla_milnor::numerics::{BigFloat, Rational};
use chowla_milnor::relation::{find_integer_relation, lll_reduce, probe_dimension, LatticeBasis, RESIDUAL_SLACK_BITS};
use chowla_milnor::{Error, ProbeMode};
use common::{det, in_span, is_lll_reduced, rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// `A^{-1}` over the rationals for a nonsingular square integer matrix.
fn inverse(a: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational> = r.iter().map(|x| Rational::from(x.clone())).collect();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("nonsingular");
        m.swap(p, c);
        let pivot = m[c][c].clone();
        m[c].iter_mut().for_each(|x| *x /= &pivot);
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// `out = U · input` with `U` integral.
fn is_integral_transform(input: &[Vec<BigInt>], out: &[Vec<BigInt>]) -> bool {
    let inv = inverse(input);
    out.iter().all(|row| {
        (0..input.len()).all(|j| {
            let c: Rational = row.iter().zip(&inv).map(|(x, r)| Rational::from(x.clone()) * &r[j]).sum();
            c.is_integer()
        })
    })
}

fn square_basis() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-300i64..300, n), n))
}

fn wide_basis() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..6, 0usize..3).prop_flat_map(|(n, extra)| {
        prop::collection::vec(prop::collection::vec(-10_000i64..10_000, n + extra), n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lll_output_is_reduced(rows in wide_basis(), strict in any::<bool>()) {
        let Ok(basis) = LatticeBasis::new(big_rows(&rows)) else { return Ok(()) };
        let delta = if strict { rat(99, 100) } else { rat(3, 4) };
        let out = lll_reduce(&basis, &delta).unwrap();
        prop_assert!(is_lll_reduced(out.rows(), &delta));
        prop_assert_eq!(out.gram_determinant(), basis.gram_determinant());
    }

    #[test]
    fn lll_is_unimodular(rows in square_basis()) {
        let input = big_rows(&rows);
        prop_assume!(!det(&input).is_zero());
        let basis = LatticeBasis::new(input.clone()).unwrap();
        let out = lll_reduce(&basis, &rat(3, 4)).unwrap();
        let (d_in, d_out) = (det(&input), det(out.rows()));
        prop_assert!(d_in == d_out || d_in == -d_out);
        prop_assert!(is_integral_transform(&input, out.rows()));
        prop_assert!(is_integral_transform(out.rows(), &input));
    }
}

#[test]
fn two_dimensional_shortest_vector() {
    let basis = LatticeBasis::from_i64(&[&[201, 37], &[1648, 297]]).unwrap();
    let out = lll_reduce(&basis, &rat(3, 4)).unwrap();
    let mut shortest: Option<BigInt> = None;
    for x in -300i64..=300 {
        for y in -300i64..=300 {
            if x == 0 && y == 0 {
                continue;
            }
            let v = [201 * x + 1648 * y, 37 * x + 297 * y];
            let n = BigInt::from(v[0] * v[0] + v[1] * v[1]);
            if shortest.as_ref().map_or(true, |s| &n < s) {
                shortest = Some(n);
            }
        }
    }
    let b1: BigInt = out.rows()[0].iter().map(|x| x * x).sum();
    let shortest = shortest.unwrap();
    assert!(b1 <= &shortest * 2, "{b1} vs {shortest}");
    assert!(is_lll_reduced(out.rows(), &rat(3, 4)));
}

#[test]
fn random_five_by_five_determinants() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tested = 0;
    while tested < 25 {
        let rows: Vec<Vec<i64>> = (0..5).map(|_| (0..5).map(|_| rng.gen_range(-1000..1000)).collect()).collect();
        let Ok(basis) = LatticeBasis::new(big_rows(&rows)) else { continue };
        let out = lll_reduce(&basis, &rat(3, 4)).unwrap();
        let (a, b) = (det(basis.rows()), det(out.rows()));
        assert!(a == b || a == -b);
        assert_eq!(basis.gram_determinant(), &a * &a);
        tested += 1;
    }
}

fn values(exprs: &[&str], p: u32) -> Vec<BigFloat> {
    exprs.iter().map(|e| evaluate(e, p).unwrap()).collect()
}

#[test]
fn documented_relations() {
    let p = 332;
    let r = find_integer_relation(&values(&["1", "0.5"], p), p, 100).unwrap();
    assert_eq!(r.relations.len(), 1);
    assert!(r.contains(&[1, -2]));
    let r = find_integer_relation(&values(&["hurwitz(2,1,3)", "hurwitz(2,2,3)", "pi^2"], p), p, 10_000).unwrap();
    assert!(r.contains(&[3, 3, -4]));
    assert_eq!(r.empirical_independent_count, 2);
    let r = find_integer_relation(&values(&["1", "sqrt(2)", "sqrt(8)"], p), p, 100).unwrap();
    assert_eq!(r.relations[0].coeffs, vec![0, 2, -1]);
    assert_eq!(r.empirical_independent_count, 2);
}

#[test]
fn input_validation() {
    let p = 200;
    assert!(matches!(find_integer_relation(&values(&["pi"], p), p, 10), Err(Error::Usage(_))));
    match find_integer_relation(&values(&["pi", "1", "2", "3"], p), p, u64::MAX) {
        Err(Error::Usage(msg)) => assert!(msg.contains("need at least")),
        other => panic!("expected a precision error, got {other:?}"),
    }
    assert!(find_integer_relation(&values(&["pi", "1"], 100), p, 10).is_err());
}

fn planted_trial(rng: &mut ChaCha8Rng) -> bool {
    const PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let p = 480;
    let n = rng.gen_range(2..=4);
    let mut picks: Vec<u32> = PRIMES.to_vec();
    let mut xs = Vec::new();
    for _ in 0..n {
        let i = rng.gen_range(0..picks.len());
        let prime = picks.swap_remove(i);
        xs.push(BigFloat::from_int(prime, p + 64).sqrt().unwrap());
    }
    let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
    let forced = xs.iter().zip(&coeffs).map(|(x, &c)| x.mul_int(c)).sum::<BigFloat>();
    let mut inputs: Vec<BigFloat> = xs.iter().map(|x| x.with_precision(p)).collect();
    inputs.push(forced.with_precision(p));
    let mut expected = coeffs.clone();
    expected.push(-1);
    let r = find_integer_relation(&inputs, p, 1_000_000).unwrap();
    r.relations.len() == 1 && r.contains(&expected)
}

#[test]
fn planted_relations_are_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let recovered = (0..50).filter(|_| planted_trial(&mut rng)).count();
    assert_eq!(recovered, 50);
}

#[test]
fn reported_relations_survive_fresh_evaluation() {
    let cases: [&[&str]; 4] = [
        &["hurwitz(2,1,3)", "hurwitz(2,2,3)", "pi^2"],
        &["1", "sqrt(2)", "sqrt(8)", "sqrt(3)", "sqrt(12)"],
        &["zeta(4)", "pi^4"],
        &["hurwitz(3,1,4)", "hurwitz(3,3,4)", "pi^3"],
    ];
    let p = 400;
    for exprs in cases {
        let r = find_integer_relation(&values(exprs, p), p, 1_000_000).unwrap();
        assert!(!r.relations.is_empty(), "{exprs:?}");
        let fresh = values(exprs, 2 * p);
        for rel in &r.relations {
            let sum: BigFloat = fresh.iter().zip(&rel.coeffs).map(|(x, &c)| x.mul_int(c)).sum();
            let limit = rel.residual_log2.unwrap_or(RESIDUAL_SLACK_BITS + 8 - p as i64) + 4;
            assert!(sum.log2_abs_ceil().map_or(true, |l| l <= limit), "{exprs:?}: {:?}", rel.coeffs);
        }
    }
}

fn as_rationals(c: &[i64]) -> Vec<Rational> {
    c.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

#[test]
fn more_bound_or_precision_keeps_relations() {
    let exprs = ["1", "sqrt(2)", "sqrt(8)", "sqrt(3)", "sqrt(27)", "pi"];
    let runs = [(300u32, 100u64), (300, 10_000), (600, 10_000), (900, 1_000_000_000)];
    let reports: Vec<_> =
        runs.iter().map(|&(p, b)| find_integer_relation(&values(&exprs, p), p, b).unwrap()).collect();
    for pair in reports.windows(2) {
        let later: Vec<Vec<Rational>> = pair[1].relations.iter().map(|r| as_rationals(&r.coeffs)).collect();
        for rel in &pair[0].relations {
            assert!(in_span(&later, &as_rationals(&rel.coeffs)), "{:?} lost", rel.coeffs);
        }
        assert!(pair[1].empirical_independent_count <= pair[0].empirical_independent_count);
    }
    assert_eq!(reports[0].relations.len(), 2);
}

#[test]
fn probe_counts() {
    let p = 500;
    let r = probe_dimension(3, 4, ProbeMode::Plus, p, 1000).unwrap();
    assert_eq!((r.relations.len(), r.empirical_independent_count), (0, 1));
    let r = probe_dimension(3, 5, ProbeMode::Full, p, 10_000).unwrap();
    assert_eq!(r.empirical_independent_count, 4);
    // V_2(6) is spanned by ζ(2,1/6) and ζ(2,5/6)
    let r = probe_dimension(2, 6, ProbeMode::Full, p, 10_000).unwrap();
    assert_eq!(r.empirical_independent_count, 2);
    assert!(probe_dimension(2, 2, ProbeMode::Full, p, 10).is_err());
}
