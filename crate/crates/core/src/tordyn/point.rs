use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::{Error, IntMatrix, Result};

/// A point of `Q^k / Z^k` with every coordinate reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TorusPoint(Vec<BigRational>);

impl TryFrom<String> for TorusPoint {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TorusPoint> for String {
    fn from(p: TorusPoint) -> Self {
        p.to_string()
    }
}

pub(crate) fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl TorusPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Dimension("torus point needs at least one coordinate".into()));
        }
        Ok(TorusPoint(coords.iter().map(frac).collect()))
    }

    pub fn origin(k: usize) -> Self {
        TorusPoint(vec![BigRational::zero(); k])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Image under the linear map `x ↦ A x mod Z^k`.
    pub fn apply(&self, a: &IntMatrix) -> Result<TorusPoint> {
        if a.cols() != self.dim() || a.rows() != self.dim() {
            return Err(Error::Dimension(format!("{}x{} matrix on a {}-torus", a.rows(), a.cols(), self.dim())));
        }
        let coords = (0..a.rows())
            .map(|r| {
                a.row(r)
                    .iter()
                    .zip(&self.0)
                    .map(|(c, x)| x * BigRational::from_integer(c.clone()))
                    .sum::<BigRational>()
            })
            .collect();
        TorusPoint::new(coords)
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint(self.0.iter().zip(&other.0).map(|(a, b)| frac(&(a + b))).collect())
    }

    /// `m · x` as an exact rational (not reduced mod 1).
    pub fn pair(&self, m: &[BigInt]) -> BigRational {
        self.0.iter().zip(m).map(|(x, c)| x * BigRational::from_integer(c.clone())).sum()
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Parses `1/2,0` or `(1/2, 0)`.
impl FromStr for TorusPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = t
            .split(',')
            .map(|c| c.trim().parse::<BigRational>().map_err(|_| Error::Parse(format!("bad coordinate {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        TorusPoint::new(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_reduction() {
        let p: TorusPoint = "3/2,-1/3".parse().unwrap();
        assert_eq!(p.to_string(), "(1/2, 2/3)");
        let q: TorusPoint = "(1/2, 2/3)".parse().unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn linear_action() {
        let a: IntMatrix = "0,1;1,0".parse().unwrap();
        let p: TorusPoint = "1/2,0".parse().unwrap();
        assert_eq!(p.apply(&a).unwrap(), "0,1/2".parse().unwrap());
    }
}
