use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::NumberField;
use super::unit::{unit_inverse, UnitCandidate};
use crate::polyclass::isolate_all_real_roots;
use crate::{Error, IntPoly, Limits, Result};

/// Largest exponent tried by the exact relation search.
pub const SEARCH_BOUND: i64 = 50;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Independence {
    Independent,
    /// `u^n = v^m` with `(n, m) ≠ (0, 0)`.
    Dependent { n: i64, m: i64 },
    Inconclusive,
}

/// Decides whether no relation `u^n = v^m` holds. An exact search over
/// `|n|, |m| <= 50` runs first; failing that, the logarithmic embeddings of
/// `u` and `v` must be certified linearly independent.
pub fn multiplicative_independence(field: &NumberField, u: &IntPoly, v: &IntPoly) -> Result<Independence> {
    multiplicative_independence_with(field, u, v, &Limits::default())
}

pub fn multiplicative_independence_with(
    field: &NumberField,
    u: &IntPoly,
    v: &IntPoly,
    limits: &Limits,
) -> Result<Independence> {
    let cu = UnitCandidate::new_with(field, u, limits)?;
    let cv = UnitCandidate::new_with(field, v, limits)?;
    if !cu.is_unit() || !cv.is_unit() {
        return Err(Error::Argument("both elements must be units".into()));
    }
    if let Some((n, m)) = find_relation(field, &cu, &cv)? {
        return Ok(Independence::Dependent { n, m });
    }
    for bits in [40u32, 80, 160] {
        if log_rank_two(field, &cu.element, &cv.element, bits)? {
            return Ok(Independence::Independent);
        }
    }
    Ok(Independence::Inconclusive)
}

/// Exponents in search order `0, 1, -1, 2, -2, ...`.
fn exponent_order() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=SEARCH_BOUND).flat_map(|k| [k, -k]))
}

/// Powers `w^e` for `|e| <= SEARCH_BOUND`, indexed by `e + SEARCH_BOUND`.
fn powers(field: &NumberField, c: &UnitCandidate) -> Result<Vec<IntPoly>> {
    let inv = unit_inverse(field, c)?;
    let b = SEARCH_BOUND as usize;
    let mut out = vec![IntPoly::one(); 2 * b + 1];
    for k in 1..=b {
        out[b + k] = field.mul(&out[b + k - 1], &c.element);
        out[b - k] = field.mul(&out[b - k + 1], &inv);
    }
    Ok(out)
}

/// Smallest relation: `n` ascending from 0, then `m` in exponent order,
/// with `n >= 0` (negating both exponents gives the same relation).
fn find_relation(field: &NumberField, u: &UnitCandidate, v: &UnitCandidate) -> Result<Option<(i64, i64)>> {
    let pu = powers(field, u)?;
    let pv = powers(field, v)?;
    let at = |p: &[IntPoly], e: i64| p[(e + SEARCH_BOUND) as usize].clone();
    for n in 0..=SEARCH_BOUND {
        for m in exponent_order() {
            if (n, m) == (0, 0) || (n == 0 && m < 0) {
                continue;
            }
            if at(&pu, n) == at(&pv, m) {
                return Ok(Some((n, m)));
            }
        }
    }
    Ok(None)
}

/// Closed interval of reals with outward-padded arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Iv {
    lo: f64,
    hi: f64,
}

fn pad_down(x: f64) -> f64 {
    x - x.abs() * 4.0 * f64::EPSILON - f64::MIN_POSITIVE
}

fn pad_up(x: f64) -> f64 {
    x + x.abs() * 4.0 * f64::EPSILON + f64::MIN_POSITIVE
}

impl Iv {
    fn new(lo: f64, hi: f64) -> Self {
        Iv { lo: pad_down(lo), hi: pad_up(hi) }
    }

    fn sub(self, o: Iv) -> Iv {
        Iv::new(self.lo - o.hi, self.hi - o.lo)
    }

    fn mul(self, o: Iv) -> Iv {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        Iv::new(c.iter().copied().fold(f64::INFINITY, f64::min), c.iter().copied().fold(f64::NEG_INFINITY, f64::max))
    }

    /// `ln` of a positive interval; `ln` is assumed correct to a few ulps.
    fn ln(self) -> Option<Iv> {
        (self.lo > 0.0).then(|| Iv::new(self.lo.ln() - 1e-15, self.hi.ln() + 1e-15))
    }

    fn excludes_zero(self) -> bool {
        self.lo > 0.0 || self.hi < 0.0
    }
}

fn rat_to_iv(lo: &BigRational, hi: &BigRational) -> Iv {
    Iv::new(lo.to_f64().unwrap_or(f64::NEG_INFINITY), hi.to_f64().unwrap_or(f64::INFINITY))
}

/// Exact range of `p` on a rational interval: endpoints plus critical
/// points would be needed in general, so the interval is narrowed until
/// `p` has no root of `p'` inside and then the endpoint values bound it.
fn abs_value_on(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Option<Iv> {
    let dp = p.derivative();
    let monotone = dp.is_zero() || crate::polyclass::sturm_real_roots(&dp, lo, hi).ok()? == 0 && !dp.eval_rational(lo).is_zero();
    if !monotone {
        return None;
    }
    let a = p.eval_rational(lo);
    let b = p.eval_rational(hi);
    if a.is_zero() || b.is_zero() || a.is_positive() != b.is_positive() {
        return None;
    }
    let (x, y) = (a.abs(), b.abs());
    let (mn, mx) = if x <= y { (x, y) } else { (y, x) };
    Some(rat_to_iv(&mn, &mx))
}

/// Real embeddings: `log|w(α)|` for every real root `α`, from rational
/// isolating intervals of width `2^-bits`.
fn real_logs(field: &NumberField, w: &IntPoly, bits: u32) -> Result<Option<Vec<Iv>>> {
    let width = BigRational::new(BigInt::from(1), BigInt::from(2).pow(bits));
    let roots = isolate_all_real_roots(field.polynomial(), &width)?;
    let mut out = Vec::new();
    for r in roots {
        match abs_value_on(w, &r.lo, &r.hi).and_then(Iv::ln) {
            Some(iv) => out.push(iv),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

fn horner(p: &[f64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Ehrlich–Aberth iteration for all complex roots of a monic polynomial.
fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let deriv: Vec<f64> = (1..=d).map(|i| coeffs[i] * i as f64).collect();
    let radius = 1.0 + coeffs[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> =
        (0..d).map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / d as f64)).collect();
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for i in 0..d {
            let ratio = horner(coeffs, z[i]) / horner(&deriv, z[i]);
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    z
}

/// Complex embeddings: for each root with positive imaginary part, a disk
/// `|z - ζ| <= n|f(z)/f'(z)|` (which must contain a root), the disks being
/// pairwise disjoint and clear of the real axis; then `log|w|` is bounded on
/// the disk by a first-order enclosure.
fn complex_logs(field: &NumberField, w: &IntPoly) -> Option<Vec<Iv>> {
    let f = field.polynomial();
    let d = field.degree();
    let fc: Vec<f64> = f.coeffs().iter().map(|c| c.to_f64()).collect::<Option<_>>()?;
    let dc: Vec<f64> = (1..=d).map(|i| fc[i] * i as f64).collect();
    let wc: Vec<f64> = w.coeffs().iter().map(|c| c.to_f64()).collect::<Option<_>>()?;
    let roots = aberth(&fc);
    let mut disks = Vec::new();
    for z in roots {
        let abs_coeffs: Vec<f64> = fc.iter().map(|c| c.abs()).collect();
        let rounding = 4.0 * (d as f64 + 2.0) * f64::EPSILON * horner(&abs_coeffs, Complex64::new(z.norm(), 0.0)).re;
        let fz = horner(&fc, z).norm() + rounding;
        let dfz = horner(&dc, z).norm();
        if dfz == 0.0 {
            return None;
        }
        let r = pad_up(d as f64 * fz / (dfz - rounding * d as f64).max(dfz * 0.5));
        disks.push((z, r));
    }
    for (i, a) in disks.iter().enumerate() {
        for b in &disks[i + 1..] {
            if (a.0 - b.0).norm() <= a.1 + b.1 {
                return None;
            }
        }
    }
    let mut out = Vec::new();
    for &(z, r) in disks.iter().filter(|(z, _)| z.im > 0.0) {
        if z.im <= r {
            return None;
        }
        let wz = horner(&wc, z).norm();
        let abs_w: Vec<f64> = wc.iter().map(|c| c.abs()).collect();
        let dw_bound: f64 = (1..abs_w.len()).map(|i| abs_w[i] * i as f64 * (z.norm() + r).powi(i as i32 - 1)).sum();
        let rounding = 4.0 * (abs_w.len() as f64 + 2.0) * f64::EPSILON * horner(&abs_w, Complex64::new(z.norm(), 0.0)).re;
        let slack = r * dw_bound + rounding;
        out.push(Iv::new(wz - slack, wz + slack).ln()?);
    }
    Some(out)
}

fn log_rank_two(field: &NumberField, u: &IntPoly, v: &IntPoly, bits: u32) -> Result<bool> {
    let (Some(mut lu), Some(mut lv)) = (real_logs(field, u, bits)?, real_logs(field, v, bits)?) else {
        return Ok(false);
    };
    let r1 = lu.len();
    if r1 < field.degree() {
        let (Some(cu), Some(cv)) = (complex_logs(field, u), complex_logs(field, v)) else {
            return Ok(false);
        };
        if r1 + 2 * cu.len() != field.degree() || cu.len() != cv.len() {
            return Ok(false);
        }
        lu.extend(cu);
        lv.extend(cv);
    }
    for i in 0..lu.len() {
        for j in i + 1..lu.len() {
            let minor = lu[i].mul(lv[j]).sub(lu[j].mul(lv[i]));
            if minor.excludes_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_relations() {
        let k = NumberField::new(p("x^2-2")).unwrap();
        let u = p("x+1");
        let u2 = k.mul(&u, &u);
        assert_eq!(multiplicative_independence(&k, &u, &u2).unwrap(), Independence::Dependent { n: 2, m: 1 });
        let inv = unit_inverse(&k, &UnitCandidate::new(&k, &u).unwrap()).unwrap();
        assert_eq!(multiplicative_independence(&k, &u, &inv).unwrap(), Independence::Dependent { n: 1, m: -1 });
        assert_eq!(multiplicative_independence(&k, &p("-1"), &u).unwrap(), Independence::Dependent { n: 2, m: 0 });
        assert!(multiplicative_independence(&k, &u, &p("x")).is_err());
    }

    #[test]
    fn totally_real_cubic_pair_is_independent() {
        let k = NumberField::new(p("x^3-3x-1")).unwrap();
        assert_eq!(multiplicative_independence(&k, &p("x"), &p("x+1")).unwrap(), Independence::Independent);
    }

    #[test]
    fn complex_embeddings_used() {
        // x^4 - x - 1: signature (2, 1), unit rank 2; x and x - 1 have norms ±f(0), ±f(1).
        let k = NumberField::new(p("x^4-x-1")).unwrap();
        assert_eq!(multiplicative_independence(&k, &p("x"), &p("x+1")).unwrap(), Independence::Dependent { n: 4, m: 1 });
        assert_eq!(multiplicative_independence(&k, &p("x"), &p("x-1")).unwrap(), Independence::Independent);
        // totally imaginary quartic: rank 1, so any two units are dependent
        let k = NumberField::new(p("x^4+1")).unwrap();
        assert!(matches!(
            multiplicative_independence(&k, &p("x"), &p("x^2+x+1")).unwrap(),
            Independence::Dependent { .. } | Independence::Inconclusive
        ));
    }

    #[test]
    fn aberth_finds_roots() {
        let z = aberth(&[1.0, 0.0, 0.0, 0.0, 1.0]);
        for r in z {
            assert!((r.powi(4) + 1.0).norm() < 1e-12);
        }
    }
}
