use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::measure::TorusMeasure;
use super::point::frac;
use crate::{Error, Result};

/// Largest support for which subgroup structure is detected by checking
/// closure of the atoms directly.
const SUBGROUP_DETECTION_ATOMS: usize = 4096;

/// A Fourier coefficient `μ̂(m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierValue {
    /// Set when the measure is uniform on a finite subgroup: the coefficient
    /// is then exactly 0 or 1.
    pub exact: Option<u8>,
    pub numeric: Complex64,
    /// Rigorous bound on `|numeric - true value|`.
    pub error_bound: f64,
}

impl FourierValue {
    pub fn exact(v: u8) -> Self {
        FourierValue { exact: Some(v), numeric: Complex64::new(v as f64, 0.0), error_bound: 0.0 }
    }
}

/// `μ̂(m) = Σ_x w_x e^{2πi m·x}`.
pub fn fourier_coefficient(mu: &TorusMeasure, m: &[BigInt]) -> Result<FourierValue> {
    if m.len() != mu.dim() {
        return Err(Error::Dimension(format!("frequency of length {} on a {}-torus", m.len(), mu.dim())));
    }
    let numeric = numeric_coefficient(mu, m);
    if mu.is_uniform_on_subgroup(SUBGROUP_DETECTION_ATOMS) {
        let annihilates = mu.atoms().all(|(x, _)| x.pair(m).is_integer());
        let exact = u8::from(annihilates);
        return Ok(FourierValue { exact: Some(exact), ..numeric });
    }
    Ok(numeric)
}

/// Compensated summation of `w · e^{2πi r}` with `r = frac(m·x)` reduced
/// exactly into `(-1/2, 1/2]` before conversion to floating point.
///
/// Error model (unit roundoff `u = 2^-53`, library sin/cos within one ulp):
/// each term carries at most `(3π + 5) u · w` from argument conversion,
/// the trig call, and the product with `w`; Neumaier summation adds at most
/// `2u Σ|t| + O(N u²) Σ|t|`. The reported bound rounds this up to
/// `(20 + 4 N u) u Σ w` per component and multiplies by √2 for the modulus.
fn numeric_coefficient(mu: &TorusMeasure, m: &[BigInt]) -> FourierValue {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    let mut total_weight = 0.0;
    let mut count = 0usize;
    for (x, w) in mu.atoms() {
        let mut r = frac(&x.pair(m));
        if r > half {
            r -= BigRational::one();
        }
        let theta = 2.0 * PI * r.to_f64().unwrap_or(0.0);
        let wf = w.to_f64().unwrap_or(0.0);
        re.add(wf * theta.cos());
        im.add(wf * theta.sin());
        total_weight += wf;
        count += 1;
    }
    let u = f64::EPSILON / 2.0;
    let bound = (20.0 + 4.0 * count as f64 * u) * u * total_weight * std::f64::consts::SQRT_2;
    let numeric = Complex64::new(re.total(), im.total());
    FourierValue { exact: None, numeric, error_bound: bound }
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

pub(crate) fn is_zero_vector(m: &[BigInt]) -> bool {
    m.iter().all(Zero::is_zero)
}
