use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::point::TorusPoint;
use crate::{Error, IntMatrix, Result};

/// Finitely supported probability measure on `Q^k / Z^k` with exact
/// rational weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusMeasure {
    dim: usize,
    #[serde(with = "crate::serde_num::ratio_entries")]
    atoms: BTreeMap<TorusPoint, BigRational>,
    /// When present, the measure is the uniform measure on the subgroup
    /// `B^{-1} Z^k / Z^k` for this nonsingular integer matrix `B`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subgroup_relation: Option<IntMatrix>,
}

impl TorusMeasure {
    /// Builds a measure from weighted atoms; duplicate points are merged.
    pub fn from_atoms(atoms: Vec<(TorusPoint, BigRational)>) -> Result<Self> {
        let dim = atoms.first().map(|(p, _)| p.dim()).ok_or_else(|| Error::Argument("measure with no atoms".into()))?;
        let mut merged: BTreeMap<TorusPoint, BigRational> = BTreeMap::new();
        for (p, w) in atoms {
            if p.dim() != dim {
                return Err(Error::Dimension("atoms of different dimension".into()));
            }
            if !w.is_positive() {
                return Err(Error::Argument(format!("non-positive weight {w} at {p}")));
            }
            *merged.entry(p).or_insert_with(BigRational::zero) += w;
        }
        let total: BigRational = merged.values().sum();
        if !total.is_one() {
            return Err(Error::Argument(format!("weights sum to {total}, not 1")));
        }
        Ok(TorusMeasure { dim, atoms: merged, subgroup_relation: None })
    }

    pub fn dirac(p: TorusPoint) -> Self {
        TorusMeasure { dim: p.dim(), atoms: BTreeMap::from([(p, BigRational::one())]), subgroup_relation: None }
    }

    pub(crate) fn with_subgroup_relation(mut self, relation: IntMatrix) -> Self {
        self.subgroup_relation = Some(relation);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&TorusPoint, &BigRational)> {
        self.atoms.iter()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn weight(&self, p: &TorusPoint) -> BigRational {
        self.atoms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn subgroup_relation(&self) -> Option<&IntMatrix> {
        self.subgroup_relation.as_ref()
    }

    /// Pushforward `A_* μ` under `x ↦ A x mod Z^k`.
    pub fn pushforward(&self, a: &IntMatrix) -> Result<TorusMeasure> {
        let atoms = self.atoms.iter().map(|(p, w)| Ok((p.apply(a)?, w.clone()))).collect::<Result<Vec<_>>>()?;
        TorusMeasure::from_atoms(atoms)
    }

    /// Uniform weights on a set that contains the origin and is closed under
    /// addition, i.e. a finite subgroup. Checked directly on the atoms, so
    /// only attempted for supports up to `max_atoms`.
    pub fn is_uniform_on_subgroup(&self, max_atoms: usize) -> bool {
        if self.subgroup_relation.is_some() {
            return true;
        }
        let n = self.atoms.len();
        if n > max_atoms {
            return false;
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(n));
        if self.atoms.values().any(|x| *x != w) {
            return false;
        }
        if !self.atoms.keys().any(TorusPoint::is_origin) {
            return false;
        }
        let pts: Vec<&TorusPoint> = self.atoms.keys().collect();
        pts.iter().all(|a| pts.iter().all(|b| self.atoms.contains_key(&a.add(b))))
    }
}

/// Uniform probability measure on the distinct points of the list.
pub fn uniform_measure(points: &[TorusPoint]) -> Result<TorusMeasure> {
    if points.is_empty() {
        return Err(Error::Argument("uniform measure on an empty set".into()));
    }
    let mut distinct: Vec<&TorusPoint> = points.iter().collect();
    distinct.sort();
    distinct.dedup();
    let w = BigRational::new(BigInt::one(), BigInt::from(distinct.len()));
    TorusMeasure::from_atoms(distinct.into_iter().map(|p| (p.clone(), w.clone())).collect())
}

/// `(1/|mats|) Σ_g g_* ν`.
pub fn coset_average(nu: &TorusMeasure, mats: &[IntMatrix]) -> Result<TorusMeasure> {
    if mats.is_empty() {
        return Err(Error::Argument("coset average over an empty family".into()));
    }
    let scale = BigRational::new(BigInt::one(), BigInt::from(mats.len()));
    let mut atoms = Vec::new();
    for g in mats {
        g.require_unimodular()?;
        for (p, w) in nu.atoms() {
            atoms.push((p.apply(g)?, w * &scale));
        }
    }
    TorusMeasure::from_atoms(atoms)
}

/// Measure file: one atom per line as `weight point`, e.g. `1/2 (0, 1/2)`.
impl FromStr for TorusMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut atoms = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (w, p) = line.split_once(char::is_whitespace).ok_or_else(|| Error::Parse(format!("bad atom line {line:?}")))?;
            let w: BigRational = w.parse().map_err(|_| Error::Parse(format!("bad weight {w:?}")))?;
            atoms.push((p.parse()?, w));
        }
        TorusMeasure::from_atoms(atoms)
    }
}
