use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::polyclass::{factor_over_integers_with, real_root_count};
use crate::{Error, IntPoly, Limits, Result};

/// `Q[x]/(f)` for a monic irreducible integer polynomial `f`, with elements
/// stored as integer polynomials of degree below `deg f` (the order
/// `Z[x]/(f)`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberField {
    f: IntPoly,
}

impl NumberField {
    pub fn new(f: IntPoly) -> Result<Self> {
        Self::new_with(f, &Limits::default())
    }

    pub fn new_with(f: IntPoly, limits: &Limits) -> Result<Self> {
        match f.degree() {
            None | Some(0) => return Err(Error::Argument(format!("field polynomial {f} must have degree at least 1"))),
            _ => {}
        }
        if !f.is_monic() {
            return Err(Error::Argument(format!("field polynomial {f} is not monic")));
        }
        if !factor_over_integers_with(&f, limits)?.is_irreducible() {
            return Err(Error::Argument(format!("field polynomial {f} is reducible over the rationals")));
        }
        Ok(NumberField { f })
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().expect("nonconstant")
    }

    /// Remainder modulo the monic `f`.
    pub fn reduce(&self, p: &IntPoly) -> IntPoly {
        let d = self.degree();
        let mut c: Vec<BigInt> = p.coeffs().to_vec();
        while c.len() > d {
            let top = c.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - d;
            for (j, fj) in self.f.coeffs()[..d].iter().enumerate() {
                c[shift + j] -= &top * fj;
            }
        }
        IntPoly::new(c)
    }

    pub fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        self.reduce(&(a * b))
    }

    pub fn pow(&self, a: &IntPoly, e: u64) -> IntPoly {
        let mut result = IntPoly::one();
        let mut base = self.reduce(a);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn is_one(&self, a: &IntPoly) -> bool {
        self.reduce(a) == IntPoly::one()
    }

    pub fn is_zero(&self, a: &IntPoly) -> bool {
        self.reduce(a).is_zero()
    }
}

/// Unit-rank-one signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankOneCase {
    RealQuadratic,
    ComplexCubic,
    TotallyImaginaryQuartic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldReport {
    pub polynomial: IntPoly,
    pub degree: usize,
    pub r1: usize,
    pub r2: usize,
    pub unit_rank: usize,
    pub totally_real: bool,
    pub totally_imaginary: bool,
    pub rank_one_case: Option<RankOneCase>,
}

impl FieldReport {
    pub fn is_consistent(&self) -> bool {
        self.r1 + 2 * self.r2 == self.degree
            && self.unit_rank + 1 == self.r1 + self.r2
            && self.totally_real == (self.r2 == 0)
            && self.totally_imaginary == (self.r1 == 0)
            && self.rank_one_case.is_some() == (self.unit_rank == 1)
    }
}

/// `(r1, r2)`: real roots counted exactly by Sturm sequences on the Cauchy
/// interval, the rest in conjugate pairs.
pub fn signature(f: &IntPoly) -> Result<(usize, usize)> {
    signature_with(f, &Limits::default())
}

pub fn signature_with(f: &IntPoly, limits: &Limits) -> Result<(usize, usize)> {
    let k = NumberField::new_with(f.clone(), limits)?;
    let r1 = real_root_count(k.polynomial())?;
    Ok((r1, (k.degree() - r1) / 2))
}

pub fn field_report(f: &IntPoly) -> Result<FieldReport> {
    field_report_with(f, &Limits::default())
}

pub fn field_report_with(f: &IntPoly, limits: &Limits) -> Result<FieldReport> {
    let (r1, r2) = signature_with(f, limits)?;
    let degree = r1 + 2 * r2;
    let rank_one_case = match (degree, r1, r2) {
        (2, 2, 0) => Some(RankOneCase::RealQuadratic),
        (3, 1, 1) => Some(RankOneCase::ComplexCubic),
        (4, 0, 2) => Some(RankOneCase::TotallyImaginaryQuartic),
        _ => None,
    };
    let report = FieldReport {
        polynomial: f.clone(),
        degree,
        r1,
        r2,
        unit_rank: r1 + r2 - 1,
        totally_real: r2 == 0,
        totally_imaginary: r1 == 0,
        rank_one_case,
    };
    if !report.is_consistent() {
        return Err(Error::Internal(format!("inconsistent field report for {f}")));
    }
    Ok(report)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&p("x^2-2")).unwrap(), (2, 0));
        assert_eq!(signature(&p("x^3-2")).unwrap(), (1, 1));
        assert_eq!(signature(&p("x^2+1")).unwrap(), (0, 1));
        assert!(signature(&p("x^2-1")).is_err());
        assert!(signature(&p("2x^2-1")).is_err());
        assert!(signature(&p("3")).is_err());
    }

    #[test]
    fn reports() {
        let r = field_report(&p("x^2-2")).unwrap();
        assert_eq!((r.unit_rank, r.rank_one_case), (1, Some(RankOneCase::RealQuadratic)));
        let r = field_report(&p("x^4+1")).unwrap();
        assert_eq!((r.r1, r.r2, r.unit_rank), (0, 2, 1));
        assert_eq!(r.rank_one_case, Some(RankOneCase::TotallyImaginaryQuartic));
        let r = field_report(&p("x^3-3x-1")).unwrap();
        assert_eq!((r.r1, r.r2, r.unit_rank, r.totally_real, r.rank_one_case), (3, 0, 2, true, None));
        let r = field_report(&p("x-5")).unwrap();
        assert_eq!((r.r1, r.unit_rank), (1, 0));
    }

    #[test]
    fn arithmetic_mod_f() {
        let k = NumberField::new(p("x^2-2")).unwrap();
        assert_eq!(k.mul(&p("x+1"), &p("x-1")), IntPoly::one());
        assert_eq!(k.pow(&p("x"), 5), p("4x"));
        assert!(k.is_one(&k.pow(&p("x+1"), 0)));
    }
}
