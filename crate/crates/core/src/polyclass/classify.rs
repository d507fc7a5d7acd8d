use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::cyclotomic::{cyclotomic_multiplicities, strip_cyclotomic};
use super::factor::factor_over_integers_with;
use super::unimodular::{unimodular_root_report, Certification, UnimodularReport};
use crate::intlinalg::{char_poly_with, det_exact, mat_pow};
use crate::{Error, IntMatrix, IntPoly, Limits, Result};

/// Spectral labels of an integer automorphism of the torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralClass {
    pub char_poly: IntPoly,
    pub is_finite_order: bool,
    /// The exact order when `is_finite_order`.
    pub order: Option<u64>,
    pub has_root_of_unity_eigenvalue: bool,
    pub is_ergodic: bool,
    pub is_hyperbolic: bool,
    pub is_quasihyperbolic: bool,
    pub is_rationally_irreducible: bool,
    /// All eigenvalues equal to 1, i.e. char poly `(x-1)^k`.
    pub is_unipotent: bool,
    pub unimodular: UnimodularReport,
    /// Applies to the hyperbolic/quasihyperbolic split; the other flags are
    /// always exact.
    pub certification: Certification,
}

impl SpectralClass {
    /// Checks the flag implications every output must satisfy.
    pub fn is_consistent(&self) -> bool {
        self.is_ergodic == !self.has_root_of_unity_eigenvalue
            && (!self.is_hyperbolic || self.is_ergodic)
            && self.is_quasihyperbolic == (self.is_ergodic && !self.is_hyperbolic)
            && (!self.is_finite_order || !self.is_ergodic)
            && (!self.is_unipotent || !self.is_ergodic)
    }
}

pub fn classify_automorphism(a: &IntMatrix) -> Result<SpectralClass> {
    classify_automorphism_with(a, &Limits::default())
}

pub fn classify_automorphism_with(a: &IntMatrix, limits: &Limits) -> Result<SpectralClass> {
    a.require_square("automorphism classification")?;
    let det = det_exact(a)?;
    if det.magnitude() != &num_bigint::BigUint::from(1u32) {
        return Err(Error::NotAutomorphism(det.to_string()));
    }
    let cp = char_poly_with(a, limits)?;
    let cyc = cyclotomic_multiplicities(&cp)?;
    let has_root_of_unity_eigenvalue = !cyc.is_empty();
    let is_ergodic = !has_root_of_unity_eigenvalue;
    let unimodular = unimodular_root_report(&cp)?;
    let is_hyperbolic =
        is_ergodic && !unimodular.has_unimodular_roots() && unimodular.certification != Certification::Inconclusive;
    let is_quasihyperbolic = is_ergodic && !is_hyperbolic;
    let is_rationally_irreducible = factor_over_integers_with(&cp, limits)?.is_irreducible();
    let k = a.rows();
    let is_unipotent = cp == IntPoly::from_i64(&[-1, 1]).pow(k as u32);

    let mut order = None;
    if strip_cyclotomic(&cp)?.is_constant() {
        let m = cyc.iter().fold(1u64, |acc, (n, _)| acc.lcm(n));
        if mat_pow(a, m)?.is_identity() {
            order = Some((1..=m).find(|d| m % d == 0 && mat_pow(a, *d).is_ok_and(|p| p.is_identity())).unwrap_or(m));
        }
    }

    let certification = if !is_ergodic {
        Certification::Exact
    } else {
        unimodular.certification
    };
    let class = SpectralClass {
        char_poly: cp,
        is_finite_order: order.is_some(),
        order,
        has_root_of_unity_eigenvalue,
        is_ergodic,
        is_hyperbolic,
        is_quasihyperbolic,
        is_rationally_irreducible,
        is_unipotent,
        unimodular,
        certification,
    };
    if !class.is_consistent() {
        return Err(Error::Internal(format!("inconsistent spectral flags for {a}")));
    }
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> IntMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn cat_map() {
        let c = classify_automorphism(&m("2,1;1,1")).unwrap();
        assert!(c.is_ergodic && c.is_hyperbolic && c.is_rationally_irreducible);
        assert!(!c.is_finite_order && !c.is_quasihyperbolic && !c.is_unipotent);
        assert_eq!(c.certification, Certification::Exact);
    }

    #[test]
    fn companion_of_phi5_has_order_5() {
        let a = IntMatrix::companion(&IntPoly::from_i64(&[1, 1, 1, 1, 1])).unwrap();
        let c = classify_automorphism(&a).unwrap();
        assert!(!c.is_ergodic);
        assert_eq!(c.order, Some(5));
        assert!(c.is_rationally_irreducible);
    }

    #[test]
    fn shear_is_unipotent_not_finite_order() {
        let c = classify_automorphism(&m("1,1;0,1")).unwrap();
        assert!(!c.is_ergodic && !c.is_finite_order && c.is_unipotent);
        assert!(!c.is_rationally_irreducible);
    }

    #[test]
    fn finite_order_with_repeated_eigenvalues() {
        let c = classify_automorphism(&m("-1,0;0,-1")).unwrap();
        assert_eq!(c.order, Some(2));
        let c = classify_automorphism(&IntMatrix::identity(3)).unwrap();
        assert_eq!(c.order, Some(1));
        assert!(c.is_unipotent);
    }

    #[test]
    fn salem_companion_is_quasihyperbolic() {
        let a = IntMatrix::companion(&IntPoly::from_i64(&[1, -1, -1, -1, 1])).unwrap();
        let c = classify_automorphism(&a).unwrap();
        assert!(c.is_ergodic && c.is_quasihyperbolic && !c.is_hyperbolic);
        assert_eq!(c.certification, Certification::NumericCertified);
    }

    #[test]
    fn rejects_non_automorphisms() {
        assert!(matches!(classify_automorphism(&m("2,0;0,1")), Err(Error::NotAutomorphism(_))));
        assert!(matches!(classify_automorphism(&m("1,2,3")), Err(Error::Dimension(_))));
    }
}
