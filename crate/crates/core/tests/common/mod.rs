#![allow(dead_code)]

use advreal::exact::RatMatrix;
use advreal::rational::{pow2, sqrt_bounds};
use advreal::{MatrixName, Rational, RealName, VectorName};

/// Deterministic offset in `{-1, 0, 1}` for a seed and precision.
fn wobble(seed: u64, n: u32) -> i64 {
    let h = (seed ^ 0x9e37_79b9_7f4a_7c15).wrapping_mul(u64::from(n) + 1).rotate_left(17).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    (h % 3) as i64 - 1
}

/// Name of `q` whose answers move by up to `2^-(n+1)`, so they stay within `2^-n`.
pub fn noisy(q: &Rational, seed: u64) -> RealName {
    let q = q.clone();
    RealName::from_fn(move |n| &q + Rational::from_integer(wobble(seed, n).into()) * pow2(-(n as i64) - 1))
}

pub fn noisy_vector(v: &[Rational], seed: u64) -> VectorName {
    VectorName::from_components(v.iter().enumerate().map(|(i, x)| noisy(x, seed.wrapping_add(i as u64 * 7919))).collect())
}

/// Entrywise noisy matrix name; symmetric inputs stay symmetric at every precision.
pub fn noisy_matrix(m: &RatMatrix, seed: u64) -> MatrixName {
    let m = m.clone();
    let (rows, cols) = m.shape();
    let symmetric = m.is_symmetric();
    MatrixName::from_fn(rows, cols, symmetric, move |n| {
        RatMatrix::from_fn(rows, cols, |i, j| {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            let s = wobble(seed.wrapping_add((a * 31 + b) as u64), n);
            m.get(i, j) + Rational::from_integer(s.into()) * pow2(-(n as i64) - 1)
        })
    })
}

/// `sqrt(q)` for a non-negative rational `q`.
pub fn sqrt_name(q: Rational) -> RealName {
    RealName::from_fn(move |n| sqrt_bounds(&q, n + 1).0)
}
