use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::serde_num::Int;
use crate::{Error, Result};

impl From<IntMatrix> for Vec<Vec<Int>> {
    fn from(m: IntMatrix) -> Self {
        (0..m.rows).map(|r| m.row(r).iter().map(|x| Int(x.clone())).collect()).collect()
    }
}

impl TryFrom<Vec<Vec<Int>>> for IntMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Int>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        IntMatrix::new(r, c, rows.into_iter().flatten().map(|i| i.0).collect())
    }
}

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<Int>>", try_from = "Vec<Vec<Int>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty matrix shape {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Builds a matrix from nested rows of machine integers.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|row| row.iter().map(|&v| v.into())).collect();
        IntMatrix::new(r, c, entries)
    }

    /// Constructor for torus automorphisms: square with determinant +1 or -1.
    pub fn automorphism(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        let m = IntMatrix::new(rows, cols, entries)?;
        m.require_unimodular()?;
        Ok(m)
    }

    pub fn identity(k: usize) -> Self {
        let mut m = IntMatrix::zeros(k, k);
        for i in 0..k {
            m.entries[i * k + i] = BigInt::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be positive");
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    /// Companion matrix of a monic polynomial of degree >= 1.
    pub fn companion(p: &super::IntPoly) -> Result<Self> {
        let n = p.degree().ok_or_else(|| Error::Argument("zero polynomial".into()))?;
        if n == 0 || !p.leading().is_one() {
            return Err(Error::Argument(format!("companion matrix needs a monic polynomial of degree >= 1, got {p}")));
        }
        let mut m = IntMatrix::zeros(n, n);
        for i in 1..n {
            m.entries[i * n + i - 1] = BigInt::one();
        }
        for i in 0..n {
            m.entries[i * n + n - 1] = -p.coeff(i);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub(crate) fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c { v.is_one() } else { v.is_zero() }
                })
            })
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn checked_zip(&self, rhs: &IntMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<IntMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn checked_add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.checked_zip(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.checked_zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| v * s).collect(),
        }
    }

    pub(crate) fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!("{what} needs a square matrix, got {}x{}", self.rows, self.cols)))
        }
    }

    pub(crate) fn require_unimodular(&self) -> Result<()> {
        let d = det_exact(self)?;
        if d.abs().is_one() {
            Ok(())
        } else {
            Err(Error::NotAutomorphism(d.to_string()))
        }
    }

    /// Row-major pretty text: one row per line, entries separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Compact inline form `a,b;c,d`.
    pub fn to_inline(&self) -> String {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_inline())
    }
}

/// Accepts either the inline form `a,b;c,d` or the text form with one row
/// per line and whitespace-separated entries. Lines starting with `#` are
/// ignored.
impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = if s.contains(';') || (s.contains(',') && !s.trim().contains('\n')) {
            s.split(';').collect()
        } else {
            s.lines().collect()
        };
        let mut parsed: Vec<Vec<BigInt>> = Vec::new();
        for line in rows {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad matrix entry {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            parsed.push(row);
        }
        if parsed.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        let cols = parsed[0].len();
        if parsed.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        let rows = parsed.len();
        IntMatrix::new(rows, cols, parsed.into_iter().flatten().collect())
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det_exact(a: &IntMatrix) -> Result<BigInt> {
    a.require_square("determinant")?;
    let n = a.rows;
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|r| a.row(r).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v.div_floor(&prev);
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// Exact power by binary exponentiation; `A^0` is the identity.
pub fn mat_pow(a: &IntMatrix, n: u64) -> Result<IntMatrix> {
    a.require_square("matrix power")?;
    let mut result = IntMatrix::identity(a.rows);
    let mut base = a.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_exact(&IntMatrix::identity(3)).unwrap(), BigInt::from(1));
        assert_eq!(det_exact(&m(&[vec![2, 1], vec![1, 1]])).unwrap(), BigInt::from(1));
        assert_eq!(det_exact(&m(&[vec![4, 3], vec![3, 1]])).unwrap(), BigInt::from(-5));
        assert_eq!(det_exact(&m(&[vec![0, 1], vec![1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(det_exact(&m(&[vec![1, 2], vec![2, 4]])).unwrap(), BigInt::from(0));
    }

    #[test]
    fn det_rejects_non_square() {
        assert!(matches!(det_exact(&m(&[vec![1, 2, 3]])), Err(Error::Dimension(_))));
    }

    #[test]
    fn pow_examples() {
        let cat = m(&[vec![2, 1], vec![1, 1]]);
        assert!(mat_pow(&cat, 0).unwrap().is_identity());
        assert_eq!(mat_pow(&cat, 2).unwrap(), m(&[vec![5, 3], vec![3, 2]]));
        assert!(mat_pow(&m(&[vec![0, 1], vec![1, 0]]), 2).unwrap().is_identity());
    }

    #[test]
    fn parse_inline_and_text() {
        let a: IntMatrix = "2,1;1,1".parse().unwrap();
        let b: IntMatrix = "2 1\n1 1\n".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_inline(), "2,1;1,1");
        assert_eq!(a.to_text(), "2 1\n1 1\n");
        assert!("1,2;3".parse::<IntMatrix>().is_err());
        assert!("".parse::<IntMatrix>().is_err());
        let single: IntMatrix = "1,2,3".parse().unwrap();
        assert_eq!((single.rows(), single.cols()), (1, 3));
    }

    #[test]
    fn automorphism_constructor_checks_det() {
        let e = vec![2, 0, 0, 1].into_iter().map(BigInt::from).collect();
        assert!(matches!(IntMatrix::automorphism(2, 2, e), Err(Error::NotAutomorphism(_))));
        let e = vec![2, 1, 1, 1].into_iter().map(BigInt::from).collect();
        assert!(IntMatrix::automorphism(2, 2, e).is_ok());
    }
}
