use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use super::jacobi::hermitian_eigenvalues;
use super::subgroup::Subgroup;
use crate::{Error, Result};

/// Tolerance for equality of trace values.
pub const VALUE_TOL: f64 = 1e-10;
/// Largest domain for which the Gram matrix is diagonalized.
pub const GRAM_CAP: usize = 256;

/// A complex function on a subgroup `H`, values listed in the order of
/// `H.elements()`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceFn {
    domain: Subgroup,
    values: Vec<Complex64>,
}

impl TraceFn {
    pub fn new(domain: Subgroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != domain.order() {
            return Err(Error::Argument(format!("{} values for a subgroup of order {}", values.len(), domain.order())));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Argument("trace values must be finite".into()));
        }
        Ok(TraceFn { domain, values })
    }

    pub fn from_fn(domain: Subgroup, f: impl Fn(usize) -> Complex64) -> Self {
        let values = domain.elements().iter().map(|&x| f(x)).collect();
        TraceFn { domain, values }
    }

    /// The constant function 1.
    pub fn trivial(domain: Subgroup) -> Self {
        Self::from_fn(domain, |_| Complex64::new(1.0, 0.0))
    }

    /// `1` at the identity, `0` elsewhere.
    pub fn regular(domain: Subgroup) -> Self {
        let e = domain.group().identity();
        Self::from_fn(domain, |x| Complex64::new(f64::from(u8::from(x == e)), 0.0))
    }

    /// The linear character of the cyclic group `⟨g⟩` sending `g` to
    /// `exp(2πi k / ord g)`.
    pub fn cyclic_character(group: &Arc<FiniteGroup>, g: usize, k: i64) -> Result<Self> {
        let dom = Subgroup::generated(group.clone(), &[g])?;
        let m = group.element_order(g);
        let mut values = vec![Complex64::new(0.0, 0.0); m];
        let mut p = group.identity();
        for j in 0..m {
            let frac = (k.rem_euclid(m as i64) as u128 * j as u128 % m as u128) as f64 / m as f64;
            values[dom.position(p).expect("power of a generator")] = Complex64::from_polar(1.0, std::f64::consts::TAU * frac);
            p = group.mul(p, g);
        }
        TraceFn::new(dom, values)
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.domain.group()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Value at a group element; `None` outside the domain.
    pub fn get(&self, x: usize) -> Option<Complex64> {
        self.domain.position(x).map(|i| self.values[i])
    }

    /// Value with the trivial extension by zero outside the domain.
    pub fn extended(&self, x: usize) -> Complex64 {
        self.get(x).unwrap_or_default()
    }

    /// `max_x |self(x) - other(x)|` over the common domain; errors if the
    /// domains differ.
    pub fn max_difference(&self, other: &TraceFn) -> Result<f64> {
        if self.domain != other.domain {
            return Err(Error::Argument("traces live on different subgroups".into()));
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// `t·self + (1-t)·other` on a common domain.
    pub fn convex_combination(&self, other: &TraceFn, t: f64) -> Result<TraceFn> {
        if self.domain != other.domain {
            return Err(Error::Argument("traces live on different subgroups".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * t + b * (1.0 - t)).collect();
        Ok(TraceFn { domain: self.domain.clone(), values })
    }

    /// Parses lines `element re [im]`, where `element` is a label or an
    /// index. Elements of the domain that are not listed are rejected.
    pub fn parse(text: &str, domain: Subgroup) -> Result<Self> {
        let g = domain.group().clone();
        let mut values: Vec<Option<Complex64>> = vec![None; domain.order()];
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (elem, nums) = split_value_line(line)?;
            let x = g.find(elem)?;
            let pos = domain
                .position(x)
                .ok_or_else(|| Error::Argument(format!("element {elem} is outside the subgroup")))?;
            values[pos] = Some(nums);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Parse(format!("no value for element {}", g.label(domain.elements()[i])))))
            .collect::<Result<Vec<_>>>()?;
        TraceFn::new(domain, values)
    }
}

/// Splits `label re [im]` where the label may contain spaces inside
/// parentheses.
fn split_value_line(line: &str) -> Result<(&str, Complex64)> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {s:?} in {line:?}")));
    let n = tokens.len();
    let two = n >= 3 && tokens[n - 1].parse::<f64>().is_ok() && tokens[n - 2].parse::<f64>().is_ok();
    let (k, z) = if two {
        (2, Complex64::new(num(tokens[n - 2])?, num(tokens[n - 1])?))
    } else if n >= 2 {
        (1, Complex64::new(num(tokens[n - 1])?, 0.0))
    } else {
        return Err(Error::Parse(format!("expected `element re [im]`, got {line:?}")));
    };
    let cut = line.trim_end().rfind(tokens[n - k]).expect("token comes from the line");
    Ok((line[..cut].trim(), z))
}

/// Outcome of the trace axioms check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceCheck {
    pub normalized: bool,
    pub class_invariant: bool,
    pub positive_definite: bool,
    pub min_eigenvalue: f64,
    pub violations: Vec<String>,
}

impl TraceCheck {
    pub fn ok(&self) -> bool {
        self.normalized && self.class_invariant && self.positive_definite
    }
}

/// Checks `φ(e) = 1`, invariance under conjugation inside the domain, and
/// that the Gram matrix `[φ(g_i⁻¹ g_j)]` has smallest eigenvalue at least
/// `-1e-9·|H|`.
pub fn is_trace(phi: &TraceFn) -> Result<TraceCheck> {
    let dom = phi.domain();
    let g = dom.group();
    let n = dom.order();
    if n > GRAM_CAP {
        return Err(Error::Capacity(format!("Gram matrix of order {n} exceeds the cap {GRAM_CAP}")));
    }
    let mut violations = Vec::new();
    let at_e = phi.extended(g.identity());
    let normalized = (at_e - Complex64::new(1.0, 0.0)).norm() <= VALUE_TOL;
    if !normalized {
        violations.push(format!("value at the identity is {at_e}, not 1"));
    }
    let mut class_invariant = true;
    'outer: for &x in dom.elements() {
        for &h in dom.elements() {
            let y = g.conj(x, h);
            if (phi.extended(x) - phi.extended(y)).norm() > VALUE_TOL {
                class_invariant = false;
                violations.push(format!("values differ on conjugates {} and {}", g.label(x), g.label(y)));
                break 'outer;
            }
        }
    }
    let elems = dom.elements();
    let mut gram = Vec::with_capacity(n * n);
    for &a in elems {
        for &b in elems {
            gram.push(phi.extended(g.mul(g.inv(a), b)));
        }
    }
    let hermitian_defect = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (gram[i * n + j] - gram[j * n + i].conj()).norm())
        .fold(0.0, f64::max);
    let min_eigenvalue = hermitian_eigenvalues(&gram, n)[0];
    let positive_definite = hermitian_defect <= VALUE_TOL && min_eigenvalue >= -1e-9 * n as f64;
    if hermitian_defect > VALUE_TOL {
        violations.push(format!("Gram matrix is not Hermitian (defect {hermitian_defect:e})"));
    } else if !positive_definite {
        violations.push(format!("Gram matrix has eigenvalue {min_eigenvalue}"));
    }
    Ok(TraceCheck { normalized, class_invariant, positive_definite, min_eigenvalue, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::preset("S3").unwrap())
    }

    #[test]
    fn basic_traces() {
        let g = s3();
        let whole = Subgroup::whole(g.clone());
        assert!(is_trace(&TraceFn::trivial(whole.clone())).unwrap().ok());
        let reg = is_trace(&TraceFn::regular(whole.clone())).unwrap();
        assert!(reg.ok());
        assert!((reg.min_eigenvalue - 1.0).abs() < 1e-12);
        let e = g.identity();
        let bad = TraceFn::from_fn(whole, |x| Complex64::new(if x == e { 1.0 } else { 2.0 }, 0.0));
        let c = is_trace(&bad).unwrap();
        assert!(c.normalized && c.class_invariant && !c.positive_definite);
    }

    #[test]
    fn class_invariance_detected() {
        let g = s3();
        let t = g.find("(1 2)").unwrap();
        let phi = TraceFn::from_fn(Subgroup::whole(g.clone()), |x| Complex64::new(if x == t { 0.5 } else { 0.0 }, 0.0) + if x == g.identity() { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
        assert!(!is_trace(&phi).unwrap().class_invariant);
    }

    #[test]
    fn cyclic_characters() {
        let g = s3();
        let r = g.find("(1 2 3)").unwrap();
        let chi = TraceFn::cyclic_character(&g, r, 1).unwrap();
        assert!(is_trace(&chi).unwrap().ok());
        let w = chi.get(r).unwrap();
        assert!((w - Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn parse_trace_file() {
        let g = s3();
        let h = Subgroup::generated(g.clone(), &[g.find("(1 2 3)").unwrap()]).unwrap();
        let text = "() 1\n(1 2 3) -0.5 0.8660254037844386\n(1 3 2) -0.5 -0.8660254037844386\n";
        let phi = TraceFn::parse(text, h.clone()).unwrap();
        assert!(is_trace(&phi).unwrap().ok());
        assert!(TraceFn::parse("() 1\n", h).is_err());
    }
}
