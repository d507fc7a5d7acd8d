use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::{Error, Limits, Result};

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// and divisibility-chained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Result<SnfDecomposition> {
    smith_normal_form_with(a, &Limits::default())
}

/// Smith normal form with transformation matrices.
///
/// Pivoting always moves the smallest nonzero entry (by absolute value) of
/// the active submatrix into place and reduces the pivot row and column with
/// nearest-integer quotients, which keeps intermediate entries small.
pub fn smith_normal_form_with(a: &IntMatrix, limits: &Limits) -> Result<SnfDecomposition> {
    let (r, c) = (a.rows(), a.cols());
    if r.max(c) > limits.matrix_dim {
        return Err(Error::Capacity(format!(
            "Smith normal form of a {r}x{c} matrix exceeds the {0}x{0} cap",
            limits.matrix_dim
        )));
    }
    let mut d = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&d, t) else {
                return finish(u, d, v);
            };
            swap_rows(&mut d, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clear = true;
            for i in t + 1..r {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = nearest_quotient(d.get(i, t), d.get(t, t));
                add_row_multiple(&mut d, i, t, &-&q);
                add_row_multiple(&mut u, i, t, &-&q);
                clear &= d.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = nearest_quotient(d.get(t, j), d.get(t, t));
                add_col_multiple(&mut d, j, t, &-&q);
                add_col_multiple(&mut v, j, t, &-&q);
                clear &= d.get(t, j).is_zero();
            }
            if !clear {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    add_row_multiple(&mut d, t, i, &one);
                    add_row_multiple(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    finish(u, d, v)
}

fn finish(mut u: IntMatrix, mut d: IntMatrix, v: IntMatrix) -> Result<SnfDecomposition> {
    for t in 0..d.rows().min(d.cols()) {
        if d.get(t, t).is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    Ok(SnfDecomposition { u, d, v })
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// `a / b` rounded to the nearest integer (ties toward negative infinity).
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    let twice: BigInt = &r * BigInt::from(2);
    // r carries the sign of b, so stepping q up moves r toward zero
    if twice.abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m.get(a, j).clone();
        let y = std::mem::replace(m.get_mut(b, j), x);
        *m.get_mut(a, j) = y;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let x = m.get(i, a).clone();
        let y = std::mem::replace(m.get_mut(i, b), x);
        *m.get_mut(i, a) = y;
    }
}

/// row[target] += k · row[source]
fn add_row_multiple(m: &mut IntMatrix, target: usize, source: usize, k: &BigInt) {
    for j in 0..m.cols() {
        let s = m.get(source, j) * k;
        *m.get_mut(target, j) += s;
    }
}

/// col[target] += k · col[source]
fn add_col_multiple(m: &mut IntMatrix, target: usize, source: usize, k: &BigInt) {
    for i in 0..m.rows() {
        let s = m.get(i, source) * k;
        *m.get_mut(i, target) += s;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        let x = -m.get(r, j);
        m.set(r, j, x);
    }
}
