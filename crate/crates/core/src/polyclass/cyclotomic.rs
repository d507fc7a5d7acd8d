use num_bigint::BigInt;
use num_traits::One;

use crate::{Error, IntPoly, Result};

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn mobius(n: u64) -> i8 {
    let mut m = n;
    let mut k = 0;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if m > 1 {
        k += 1;
    }
    if k % 2 == 0 { 1 } else { -1 }
}

/// The `n`-th cyclotomic polynomial, via `Φ_n = ∏_{d|n} (x^d - 1)^{μ(n/d)}`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in (1..=n).filter(|d| n % d == 0) {
        let xd = &IntPoly::monomial(BigInt::one(), d as usize) - &IntPoly::one();
        match mobius(n / d) {
            1 => num = &num * &xd,
            -1 => den = &den * &xd,
            _ => {}
        }
    }
    num.checked_div(&den).expect("Möbius product is exact")
}

/// Every `n` such that `Φ_n` could divide a polynomial of degree `deg`,
/// i.e. `φ(n) <= deg`. Since `φ(n) >= sqrt(n/2)`, it suffices to scan up to
/// `2·deg²`.
pub(crate) fn cyclotomic_candidates(deg: usize) -> impl Iterator<Item = u64> {
    let bound = 2 * (deg as u64) * (deg as u64);
    (1..=bound.max(2)).filter(move |&n| euler_phi(n) <= deg as u64)
}

/// All `n` with `Φ_n | p`, ascending.
pub fn cyclotomic_part(p: &IntPoly) -> Result<Vec<u64>> {
    Ok(cyclotomic_multiplicities(p)?.into_iter().map(|(n, _)| n).collect())
}

/// `(n, k)` pairs where `Φ_n^k` exactly divides `p`, ascending in `n`.
pub fn cyclotomic_multiplicities(p: &IntPoly) -> Result<Vec<(u64, u32)>> {
    let Some(deg) = p.degree() else {
        return Err(Error::Argument("cyclotomic part of the zero polynomial".into()));
    };
    let mut rest = p.clone();
    let mut out = Vec::new();
    for n in cyclotomic_candidates(deg) {
        let phi = cyclotomic(n);
        let mut k = 0;
        while let Some(q) = rest.checked_div(&phi) {
            rest = q;
            k += 1;
        }
        if k > 0 {
            out.push((n, k));
        }
    }
    Ok(out)
}

/// Divides every cyclotomic factor out of `p` (with multiplicity).
pub fn strip_cyclotomic(p: &IntPoly) -> Result<IntPoly> {
    let mut rest = p.clone();
    for (n, k) in cyclotomic_multiplicities(p)? {
        let phi = cyclotomic(n);
        for _ in 0..k {
            rest = rest.checked_div(&phi).expect("multiplicity was measured");
        }
    }
    Ok(rest)
}
