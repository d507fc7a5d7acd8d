use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::measure::TorusMeasure;
use super::point::TorusPoint;
use crate::intlinalg::{det_exact, mat_pow, smith_normal_form_with, SnfDecomposition};
use crate::{Error, IntMatrix, Limits, Result};

/// `Fix(A^n) = {x ∈ T^k : A^n x = x}`, a finite subgroup when `A^n - I` is
/// nonsingular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedSubgroup {
    pub n: u64,
    /// `A^n - I`; the subgroup is `relation^{-1} Z^k / Z^k`.
    pub relation: IntMatrix,
    /// Smith invariant factors `d_1 | ... | d_k` of `A^n - I`.
    #[serde(with = "crate::serde_num::int_vec")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(with = "crate::serde_num::int")]
    pub order: BigInt,
    /// Explicit points, present when enumeration was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<TorusPoint>>,
    #[serde(skip)]
    dual: Option<SnfDecomposition>,
}

pub fn fixed_subgroup(a: &IntMatrix, n: u64, enumerate: bool) -> Result<FixedSubgroup> {
    fixed_subgroup_with(a, n, enumerate, &Limits::default())
}

/// Solves `(A^n - I) x ≡ 0 mod Z^k` through the Smith form `U B V = D`:
/// the solutions are `x = V (c_1/d_1, ..., c_k/d_k)` with `0 <= c_i < d_i`.
pub fn fixed_subgroup_with(a: &IntMatrix, n: u64, enumerate: bool, limits: &Limits) -> Result<FixedSubgroup> {
    if n == 0 {
        return Err(Error::Argument("period n must be positive".into()));
    }
    a.require_square("fixed subgroup")?;
    a.require_unimodular()?;
    let k = a.rows();
    let relation = &mat_pow(a, n)? - &IntMatrix::identity(k);
    if det_exact(&relation)?.is_zero() {
        return Err(Error::NonIsolatedFixedSet(n));
    }
    let snf = smith_normal_form_with(&relation, limits)?;
    let invariant_factors = snf.invariant_factors();
    let order: BigInt = invariant_factors.iter().product();
    let dual = smith_normal_form_with(&relation.transpose(), limits)?;
    let mut fs = FixedSubgroup { n, relation, invariant_factors, order, points: None, dual: Some(dual) };
    if enumerate {
        if fs.order > BigInt::from(limits.enumeration) {
            return Err(Error::Capacity(format!(
                "fixed subgroup of order {} exceeds the enumeration cap {}",
                fs.order, limits.enumeration
            )));
        }
        fs.points = Some(enumerate_points(&snf.v, &fs.invariant_factors)?);
    }
    Ok(fs)
}

fn enumerate_points(v: &IntMatrix, d: &[BigInt]) -> Result<Vec<TorusPoint>> {
    let k = d.len();
    let dims: Vec<u64> = d.iter().map(|x| x.to_u64().expect("order below cap")).collect();
    let mut out = Vec::new();
    let mut c = vec![0u64; k];
    loop {
        let y: Vec<BigRational> =
            c.iter().zip(d).map(|(ci, di)| BigRational::new(BigInt::from(*ci), di.clone())).collect();
        let x: Vec<BigRational> = (0..k)
            .map(|r| v.row(r).iter().zip(&y).map(|(vi, yi)| yi * BigRational::from_integer(vi.clone())).sum())
            .collect();
        out.push(TorusPoint::new(x)?);
        // odometer
        let mut i = 0;
        loop {
            if i == k {
                out.sort();
                return Ok(out);
            }
            c[i] += 1;
            if c[i] < dims[i] {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

impl FixedSubgroup {
    pub fn dim(&self) -> usize {
        self.relation.rows()
    }

    fn dual_snf(&self) -> Result<std::borrow::Cow<'_, SnfDecomposition>> {
        match &self.dual {
            Some(d) => Ok(std::borrow::Cow::Borrowed(d)),
            None => Ok(std::borrow::Cow::Owned(smith_normal_form_with(
                &self.relation.transpose(),
                &Limits { matrix_dim: self.dim(), ..Limits::default() },
            )?)),
        }
    }

    /// True iff `m · x ∈ Z` for every `x` in the subgroup, i.e. `m` lies in
    /// the image lattice `Bᵀ Z^k`. Decided by an exact integer solve, no
    /// enumeration.
    pub fn annihilates(&self, m: &[BigInt]) -> Result<bool> {
        if m.len() != self.dim() {
            return Err(Error::Dimension(format!("frequency of length {} on a {}-torus", m.len(), self.dim())));
        }
        let snf = self.dual_snf()?;
        let w = snf.u.apply(m)?;
        Ok(w.iter().zip(snf.invariant_factors()).all(|(wi, di)| {
            if di.is_zero() { wi.is_zero() } else { wi.is_multiple_of(&di) }
        }))
    }

    /// Uniform probability measure on the enumerated points, tagged as a
    /// subgroup measure so Fourier coefficients come out exact.
    pub fn uniform_measure(&self) -> Result<TorusMeasure> {
        let pts = self
            .points
            .as_ref()
            .ok_or_else(|| Error::Argument("fixed subgroup was not enumerated".into()))?;
        Ok(super::measure::uniform_measure(pts)?.with_subgroup_relation(self.relation.clone()))
    }
}

/// Splits the enumerated subgroup into `A`-orbits. Each orbit starts at its
/// smallest point and follows `A`; orbits are sorted by that first point.
pub fn orbit_decomposition(a: &IntMatrix, s: &FixedSubgroup) -> Result<Vec<Vec<TorusPoint>>> {
    let pts = s.points.as_ref().ok_or_else(|| Error::Argument("fixed subgroup was not enumerated".into()))?;
    let members: BTreeSet<&TorusPoint> = pts.iter().collect();
    let mut seen: BTreeSet<TorusPoint> = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in members.iter() {
        if seen.contains(*p) {
            continue;
        }
        let mut orbit = vec![(*p).clone()];
        seen.insert((*p).clone());
        let mut q = p.apply(a)?;
        while &q != *p {
            if !members.contains(&q) {
                return Err(Error::Internal(format!("orbit of {p} leaves the fixed subgroup")));
            }
            seen.insert(q.clone());
            let next = q.apply(a)?;
            orbit.push(q);
            q = next;
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}
