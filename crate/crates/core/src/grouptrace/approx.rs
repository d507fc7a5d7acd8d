use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::trace::{is_trace, TraceFn};
use crate::{Error, Result};

/// Element `(v, h)` of `Z^d × H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeProductElement {
    #[serde(with = "crate::serde_num::int_vec")]
    pub lattice: Vec<BigInt>,
    pub finite: usize,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Values of the stage-`n` trace on `Z^d × H` obtained by inducing
/// `ψ_n(k, h) = ψ(h)` from `(n!)Z^d × H`. Since the group is abelian, the
/// induction is the trivial extension: `ψ(h)` when `n!` divides every
/// coordinate of `v`, and `0` otherwise.
pub fn finite_dim_approximation(
    psi: &TraceFn,
    rank: usize,
    stage: u32,
    points: &[LatticeProductElement],
) -> Result<Vec<Complex64>> {
    let h = psi.domain();
    let g = h.group();
    if h.order() != g.order() {
        return Err(Error::Argument("the trace must be defined on the whole finite group".into()));
    }
    if !g.is_abelian() {
        return Err(Error::Unsupported("finite-dimensional approximation needs an abelian finite factor".into()));
    }
    if stage == 0 {
        return Err(Error::Argument("stage must be at least 1".into()));
    }
    let check = is_trace(psi)?;
    if !check.ok() {
        return Err(Error::Argument(format!("input is not a trace: {}", check.violations.join("; "))));
    }
    let nf = factorial(stage);
    points
        .iter()
        .map(|p| {
            if p.lattice.len() != rank {
                return Err(Error::Dimension(format!("lattice part has {} coordinates, expected {rank}", p.lattice.len())));
            }
            let v = psi.get(p.finite).ok_or_else(|| Error::Argument(format!("no element {} in H", p.finite)))?;
            Ok(if p.lattice.iter().all(|c| c.mod_floor(&nf).is_zero()) { v } else { Complex64::new(0.0, 0.0) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grouptrace::{FiniteGroup, Subgroup};

    fn sign_c2() -> TraceFn {
        let g = Arc::new(FiniteGroup::preset("C2").unwrap());
        let e = g.identity();
        TraceFn::from_fn(Subgroup::whole(g), |x| Complex64::new(if x == e { 1.0 } else { -1.0 }, 0.0))
    }

    fn pt(v: i64, h: usize) -> LatticeProductElement {
        LatticeProductElement { lattice: vec![BigInt::from(v)], finite: h }
    }

    #[test]
    fn stages() {
        let psi = sign_c2();
        for n in 1..=6 {
            let vals = finite_dim_approximation(&psi, 1, n, &[pt(0, 0), pt(0, 1)]).unwrap();
            assert_eq!(vals, vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        }
        assert_eq!(finite_dim_approximation(&psi, 1, 2, &[pt(2, 1)]).unwrap()[0], Complex64::new(-1.0, 0.0));
        assert_eq!(finite_dim_approximation(&psi, 1, 3, &[pt(5, 1)]).unwrap()[0], Complex64::new(0.0, 0.0));
        assert!(finite_dim_approximation(&psi, 2, 3, &[pt(5, 1)]).is_err());
    }

    #[test]
    fn nonabelian_rejected() {
        let g = Arc::new(FiniteGroup::preset("S3").unwrap());
        let psi = TraceFn::trivial(Subgroup::whole(g));
        assert!(matches!(finite_dim_approximation(&psi, 1, 1, &[]), Err(Error::Unsupported(_))));
    }
}
