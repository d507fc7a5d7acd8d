use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cyclotomic::{cyclotomic_part, strip_cyclotomic};
use super::sturm::{cauchy_bound, isolate_real_roots, sturm_real_roots};
use crate::{Error, IntPoly, Result};

/// How a spectral statement was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    Exact,
    NumericCertified,
    Inconclusive,
}

impl std::fmt::Display for Certification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Certification::Exact => "exact",
            Certification::NumericCertified => "numeric-certified",
            Certification::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularReport {
    /// `n` such that a primitive `n`-th root of unity is a root.
    pub roots_of_unity: Vec<u64>,
    /// Distinct roots on the unit circle that are not roots of unity.
    pub other_unimodular_roots: usize,
    pub certification: Certification,
}

impl UnimodularReport {
    pub fn has_unimodular_roots(&self) -> bool {
        !self.roots_of_unity.is_empty() || self.other_unimodular_roots > 0
    }
}

/// Largest isolation interval width accepted as a certificate.
pub fn isolation_width() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10).pow(12))
}

/// Roots of `p` on the unit circle.
///
/// Roots of unity come from the cyclotomic factors. For the rest, any
/// unimodular root `z` also has `1/z = z̄` as a root, so it is a root of
/// `gcd(q, x^deg q(1/x))`. That gcd is self-reciprocal of even degree `2m`
/// and equals `x^m R(x + 1/x)`; unimodular pairs correspond to real roots of
/// `R` in `(-2, 2)`, which are counted exactly with Sturm sequences and then
/// isolated to confirm they sit clear of `±2`.
pub fn unimodular_root_report(p: &IntPoly) -> Result<UnimodularReport> {
    if p.is_zero() {
        return Err(Error::Argument("unimodular roots of the zero polynomial".into()));
    }
    let roots_of_unity = cyclotomic_part(p)?;
    let q = strip_cyclotomic(p)?;
    let g = q.gcd(&q.reciprocal());
    if g.is_constant() {
        return Ok(UnimodularReport { roots_of_unity, other_unimodular_roots: 0, certification: Certification::Exact });
    }
    let h = g.square_free_part();
    let Some(r) = trace_polynomial(&h) else {
        return Ok(UnimodularReport {
            roots_of_unity,
            other_unimodular_roots: 0,
            certification: Certification::Inconclusive,
        });
    };
    let two = BigRational::from_integer(BigInt::from(2));
    let minus_two = -two.clone();
    let mut inside = sturm_real_roots(&r, &minus_two, &two)?;
    if r.eval_rational(&two).is_zero() {
        inside -= 1;
    }
    // Roots at ±2 would be x = ±1, already stripped as cyclotomic; so an
    // empty Sturm count settles the question without isolation.
    if inside == 0 {
        return Ok(UnimodularReport { roots_of_unity, other_unimodular_roots: 0, certification: Certification::Exact });
    }

    let b = cauchy_bound(&r).max(two.clone() + BigRational::from_integer(BigInt::from(1)));
    let intervals = isolate_real_roots(&r, &-b.clone(), &b, &isolation_width())?;
    let mut certified_inside = 0;
    let mut straddles = false;
    for iv in &intervals {
        if iv.lo >= minus_two && iv.hi < two {
            certified_inside += 1;
        } else if iv.hi < minus_two || iv.lo >= two {
            // clear of the circle
        } else {
            straddles = true;
        }
    }
    let certification = if straddles || certified_inside != inside {
        Certification::Inconclusive
    } else {
        Certification::NumericCertified
    };
    Ok(UnimodularReport { roots_of_unity, other_unimodular_roots: 2 * inside, certification })
}

/// For a self-reciprocal `h` of degree `2m`, the degree-`m` polynomial `R`
/// with `h(x) = x^m R(x + 1/x)`. `None` if `h` is not of that shape.
pub(crate) fn trace_polynomial(h: &IntPoly) -> Option<IntPoly> {
    let d = h.degree()?;
    if d % 2 == 1 || h.reciprocal() != *h {
        return None;
    }
    let m = d / 2;
    // P_0 = 2, P_1 = t, P_{j+1} = t P_j - P_{j-1}; x^j + x^-j = P_j(x + 1/x)
    let t = IntPoly::x();
    let mut prev = IntPoly::constant(BigInt::from(2));
    let mut cur = t.clone();
    let mut r = IntPoly::constant(h.coeff(m));
    for j in 1..=m {
        r = &r + &cur.scale(&h.coeff(m + j));
        let next = &(&t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn examples() {
        let r = unimodular_root_report(&poly(&[1, -3, 1])).unwrap();
        assert_eq!(r, UnimodularReport { roots_of_unity: vec![], other_unimodular_roots: 0, certification: Certification::Exact });
        let r = unimodular_root_report(&poly(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(r.roots_of_unity, vec![5]);
        assert_eq!(r.other_unimodular_roots, 0);
    }

    #[test]
    fn salem_quartic_has_one_unimodular_pair() {
        // x^4 - x^3 - x^2 - x + 1: trace polynomial t^2 - t - 3, roots (1 ± √13)/2,
        // only (1 - √13)/2 ≈ -1.30 lies in (-2, 2).
        let p = poly(&[1, -1, -1, -1, 1]);
        assert_eq!(trace_polynomial(&p), Some(poly(&[-3, -1, 1])));
        let r = unimodular_root_report(&p).unwrap();
        assert!(r.roots_of_unity.is_empty());
        assert_eq!(r.other_unimodular_roots, 2);
        assert_eq!(r.certification, Certification::NumericCertified);
    }

    #[test]
    fn real_reciprocal_pairs_are_not_unimodular() {
        // (x^2 - 3x + 1)(x^2 + 1): roots of unity from x^2 + 1 only.
        let p = &poly(&[1, -3, 1]) * &poly(&[1, 0, 1]);
        let r = unimodular_root_report(&p).unwrap();
        assert_eq!(r.roots_of_unity, vec![4]);
        assert_eq!(r.other_unimodular_roots, 0);
        // x^4 - 3x^2 + 1 = (x^2-x-1)(x^2+x-1) is self-reciprocal, all roots real.
        let r = unimodular_root_report(&poly(&[1, 0, -3, 0, 1])).unwrap();
        assert_eq!(r.other_unimodular_roots, 0);
        assert_eq!(r.certification, Certification::Exact);
    }

    #[test]
    fn zero_rejected() {
        assert!(unimodular_root_report(&IntPoly::zero()).is_err());
    }
}
