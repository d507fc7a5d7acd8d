use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{IntMatrix, IntPoly};
use crate::{Error, Limits, Result};

pub fn char_poly(a: &IntMatrix) -> Result<IntPoly> {
    char_poly_with(a, &Limits::default())
}

/// `det(xI - A)` by Faddeev–LeVerrier. Every trace division is checked to be
/// exact; a nonzero remainder would mean an arithmetic bug and is reported as
/// an internal error.
pub fn char_poly_with(a: &IntMatrix, limits: &Limits) -> Result<IntPoly> {
    a.require_square("characteristic polynomial")?;
    let n = a.rows();
    if n > limits.matrix_dim {
        return Err(Error::Capacity(format!(
            "characteristic polynomial of a {n}x{n} matrix exceeds the {0}x{0} cap",
            limits.matrix_dim
        )));
    }
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    let id = IntMatrix::identity(n);
    for k in 1..=n {
        m = &(a * &m) + &id.scale(&coeffs[n - k + 1]);
        let am = a * &m;
        let tr: BigInt = (0..n).map(|i| am.get(i, i).clone()).sum();
        let (q, r) = tr.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Internal(format!("non-integral Faddeev-LeVerrier coefficient at step {k}")));
        }
        coeffs[n - k] = -q;
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(char_poly(&IntMatrix::identity(2)).unwrap(), IntPoly::from_i64(&[1, -2, 1]));
        let cat = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(char_poly(&cat).unwrap(), IntPoly::from_i64(&[1, -3, 1]));
        let phi5 = IntPoly::from_i64(&[1, 1, 1, 1, 1]);
        let c = IntMatrix::companion(&phi5).unwrap();
        assert_eq!(char_poly(&c).unwrap(), phi5);
    }

    #[test]
    fn rejects_non_square() {
        let a = IntMatrix::from_rows(&[vec![1, 2, 3]]).unwrap();
        assert!(matches!(char_poly(&a), Err(Error::Dimension(_))));
    }
}
