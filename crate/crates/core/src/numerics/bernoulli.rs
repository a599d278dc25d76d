use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numerics::Rational;

/// `B_2, B_4, …` computed so far.
static EVEN_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Tangent numbers `T_1 … T_n` (Brent-Harvey recurrence, integer only).
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t
}

/// `B_{2j}` for `j = 1 ..= count`, via `B_{2j} = (-1)^(j-1) 2j T_j / (4^j (4^j − 1))`.
pub fn even_bernoulli(count: usize) -> Vec<Rational> {
    let mut cache = EVEN_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.len() < count {
        let tangent = tangent_numbers(count);
        *cache = (1..=count)
            .map(|j| {
                let four_j = BigInt::one() << (2 * j);
                let num = &tangent[j] * BigInt::from(2 * j);
                let den = &four_j * (&four_j - 1u32);
                let b = Rational::new(num, den);
                if j % 2 == 0 {
                    -b
                } else {
                    b
                }
            })
            .collect();
    }
    cache[..count].to_vec()
}

/// `B_0 … B_{n_max}` with `B_1 = −1/2`; odd indices beyond 1 are zero.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    let even = even_bernoulli(n_max / 2);
    (0..=n_max)
        .map(|n| match n {
            0 => Rational::one(),
            1 => Rational::new((-1).into(), 2.into()),
            n if n % 2 == 1 => Rational::zero(),
            n => even[n / 2 - 1].clone(),
        })
        .collect()
}
