use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::NumberField;
use crate::intlinalg::{char_poly_with, det_exact};
use crate::polyclass::{factor_over_integers_with, unimodular_root_report, Certification};
use crate::{Error, IntMatrix, IntPoly, Limits, Result};

/// An element of `Z[x]/(f)` with its multiplication matrix on the power
/// basis, characteristic and minimal polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitCandidate {
    pub element: IntPoly,
    pub mult_matrix: IntMatrix,
    pub char_poly: IntPoly,
    pub min_poly: IntPoly,
    #[serde(with = "crate::serde_num::int")]
    pub norm: BigInt,
}

impl UnitCandidate {
    pub fn new(field: &NumberField, u: &IntPoly) -> Result<Self> {
        Self::new_with(field, u, &Limits::default())
    }

    pub fn new_with(field: &NumberField, u: &IntPoly, limits: &Limits) -> Result<Self> {
        let element = field.reduce(u);
        if element.is_zero() {
            return Err(Error::Argument("the zero element is not a unit candidate".into()));
        }
        let mult_matrix = multiplication_matrix(field, &element)?;
        let char_poly = char_poly_with(&mult_matrix, limits)?;
        let norm = det_exact(&mult_matrix)?;
        // Over a field the characteristic polynomial of an element is a
        // power of its minimal polynomial.
        let fl = factor_over_integers_with(&char_poly, limits)?;
        let min_poly = match fl.factors.as_slice() {
            [(m, _)] => m.clone(),
            _ => return Err(Error::Internal(format!("characteristic polynomial {char_poly} has several irreducible factors"))),
        };
        Ok(UnitCandidate { element, mult_matrix, char_poly, min_poly, norm })
    }

    pub fn is_unit(&self) -> bool {
        self.norm.abs().is_one()
    }
}

/// Column `j` holds the coordinates of `u·x^j mod f`.
pub fn multiplication_matrix(field: &NumberField, u: &IntPoly) -> Result<IntMatrix> {
    let d = field.degree();
    let mut entries = vec![BigInt::zero(); d * d];
    let mut col = field.reduce(u);
    for j in 0..d {
        for i in 0..d {
            entries[i * d + j] = col.coeff(i);
        }
        col = field.reduce(&(&col * &IntPoly::x()));
    }
    IntMatrix::new(d, d, entries)
}

/// `u⁻¹` for a unit by Cayley–Hamilton: with `χ(x) = x^d + ... + c_1 x + c_0`
/// and `c_0 = ±1`, `u⁻¹ = -(u^{d-1} + ... + c_1) / c_0`.
pub fn unit_inverse(field: &NumberField, u: &UnitCandidate) -> Result<IntPoly> {
    if !u.is_unit() {
        return Err(Error::Argument(format!("{} has norm {} and is not a unit", u.element, u.norm)));
    }
    let chi = &u.char_poly;
    let c0 = chi.coeff(0);
    let mut acc = IntPoly::zero();
    for i in (1..=field.degree()).rev() {
        acc = field.reduce(&(&(&acc * &u.element) + &IntPoly::constant(chi.coeff(i))));
    }
    // acc = u^{d-1} + c_{d-1} u^{d-2} + ... + c_1
    let inv = acc.scale(&-c0);
    debug_assert!(field.is_one(&field.mul(&inv, &u.element)));
    Ok(inv)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitConditions {
    pub is_unit: bool,
    pub generates_field: bool,
    pub is_hyperbolic: bool,
    pub certification: Certification,
    pub min_poly: IntPoly,
    #[serde(with = "crate::serde_num::int")]
    pub norm: BigInt,
}

/// Unit status from the norm, `Q(u) = k` from the degree of the minimal
/// polynomial, and hyperbolicity from its unimodular roots.
pub fn check_unit_conditions(field: &NumberField, u: &IntPoly) -> Result<UnitConditions> {
    check_unit_conditions_with(field, u, &Limits::default())
}

pub fn check_unit_conditions_with(field: &NumberField, u: &IntPoly, limits: &Limits) -> Result<UnitConditions> {
    let c = UnitCandidate::new_with(field, u, limits)?;
    let report = unimodular_root_report(&c.min_poly)?;
    Ok(UnitConditions {
        is_unit: c.is_unit(),
        generates_field: c.min_poly.degree() == Some(field.degree()),
        is_hyperbolic: !report.has_unimodular_roots() && report.certification != Certification::Inconclusive,
        certification: report.certification,
        min_poly: c.min_poly,
        norm: c.norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn sqrt2_units() {
        let k = NumberField::new(p("x^2-2")).unwrap();
        let c = check_unit_conditions(&k, &p("x+1")).unwrap();
        assert!(c.is_unit && c.generates_field && c.is_hyperbolic);
        assert_eq!(c.norm, BigInt::from(-1));
        assert_eq!(c.min_poly, p("x^2-2x-1"));
        let c = check_unit_conditions(&k, &p("1")).unwrap();
        assert!(c.is_unit && !c.generates_field && !c.is_hyperbolic);
        let c = check_unit_conditions(&k, &p("x")).unwrap();
        assert!(!c.is_unit);
        assert!(check_unit_conditions(&k, &p("x^2-2")).is_err());
    }

    #[test]
    fn cubic_unit_and_inverse() {
        let k = NumberField::new(p("x^3-3x-1")).unwrap();
        let c = check_unit_conditions(&k, &p("x")).unwrap();
        assert!(c.is_unit);
        let u = UnitCandidate::new(&k, &p("x+1")).unwrap();
        assert!(u.is_unit());
        let inv = unit_inverse(&k, &u).unwrap();
        assert!(k.is_one(&k.mul(&inv, &p("x+1"))));
        assert!(u.min_poly.divides(&u.char_poly));
    }
}
