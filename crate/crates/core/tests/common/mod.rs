//! Naive reference implementations used as test oracles.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use stabilitylab::IntMatrix;

pub fn to_rows(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..a.rows()).map(|r| a.row(r).to_vec()).collect()
}

/// Cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][j] * laplace_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n).map(|i| (0..p).map(|j| (0..m).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

/// Number of `x` in `(1/D) Z^k / Z^k` with `B x ∈ Z^k`, by listing all `D^k`
/// candidates.
pub fn brute_force_kernel_count(b: &[Vec<i64>], denom: i64) -> u64 {
    let k = b.len();
    let total = (denom as u64).pow(k as u32);
    let mut count = 0;
    let mut x = vec![0i64; k];
    for idx in 0..total {
        let mut t = idx;
        for xi in x.iter_mut() {
            *xi = (t % denom as u64) as i64;
            t /= denom as u64;
        }
        if b.iter().all(|row| row.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() % denom == 0) {
            count += 1;
        }
    }
    count
}

/// Product of random elementary matrices `I + s E_ij` and row swaps.
pub fn random_unimodular(k: usize, steps: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = |m: u64| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) % m
    };
    let mut a: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let i = next(k as u64) as usize;
        let mut j = next(k as u64) as usize;
        if j == i {
            j = (i + 1) % k;
        }
        match next(3) {
            0 => a.swap(i, j),
            c => {
                let s = if c == 1 { 1 } else { -1 };
                let rj = a[j].clone();
                for (x, y) in a[i].iter_mut().zip(rj) {
                    *x += s * y;
                }
            }
        }
    }
    a
}
