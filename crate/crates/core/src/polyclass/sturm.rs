use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{Error, IntPoly, Result};

/// Sturm chain `p, p', -rem(p, p'), ...` with every term made primitive.
/// Pseudo-remainders are sign-corrected so the chain has the same sign
/// pattern as the classical one over the rationals.
fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone(), p.derivative().primitive_part_keep_sign()];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.is_zero() {
            chain.pop();
            break;
        }
        let mut r = a.pseudo_rem(b);
        let delta = a.degree().unwrap_or(0) + 1 - b.degree().unwrap_or(0);
        if b.leading().is_negative() && delta % 2 == 1 {
            r = -&r;
        }
        let r = -&r;
        if r.is_zero() {
            break;
        }
        chain.push(r.primitive_part_keep_sign());
    }
    chain
}

fn sign_changes(chain: &[IntPoly], x: &BigRational) -> usize {
    let signs: Vec<Ordering> = chain.iter().map(|q| q.sign_at(x)).filter(|s| *s != Ordering::Equal).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Exact count of distinct real roots of `p` in the half-open interval
/// `(lo, hi]`. Repeated roots are first collapsed by dividing out
/// `gcd(p, p')`.
pub fn sturm_real_roots(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    if lo >= hi {
        return Err(Error::Argument(format!("empty interval ({lo}, {hi}]")));
    }
    if p.is_zero() {
        return Err(Error::Argument("zero polynomial has no finite root count".into()));
    }
    let sf = p.square_free_part();
    if sf.is_constant() {
        return Ok(0);
    }
    Ok(count_in(&checked_chain(&sf)?, lo, hi))
}

fn checked_chain(sf: &IntPoly) -> Result<Vec<IntPoly>> {
    let chain = sturm_chain(sf);
    match chain.last() {
        Some(last) if last.is_constant() => Ok(chain),
        _ => Err(Error::Internal(format!("Sturm chain of {sf} does not end in a constant; input not square-free"))),
    }
}

fn count_in(chain: &[IntPoly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_changes(chain, lo) - sign_changes(chain, hi)
}

/// Cauchy bound `1 + max|a_i| / |a_n|`: every complex root has modulus
/// strictly below it.
pub fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lc = p.leading().abs();
    let m = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::from_integer(BigInt::from(1)) + BigRational::new(m, lc)
}

/// Number of distinct real roots.
pub fn real_root_count(p: &IntPoly) -> Result<usize> {
    let b = cauchy_bound(p);
    sturm_real_roots(p, &-b.clone(), &b)
}

/// Half-open rational interval `(lo, hi]` containing exactly one root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }
}

/// Isolates every distinct real root of `p` in `(lo, hi]` into disjoint
/// intervals of width at most `max_width`, sorted ascending.
pub fn isolate_real_roots(
    p: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
    max_width: &BigRational,
) -> Result<Vec<RootInterval>> {
    if lo >= hi {
        return Err(Error::Argument(format!("empty interval ({lo}, {hi}]")));
    }
    if !max_width.is_positive() {
        return Err(Error::Argument("isolation width must be positive".into()));
    }
    if p.is_zero() {
        return Err(Error::Argument("zero polynomial".into()));
    }
    let sf = p.square_free_part();
    if sf.is_constant() {
        return Ok(Vec::new());
    }
    let chain = checked_chain(&sf)?;
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), count_in(&chain, lo, hi))];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 && &(&b - &a) <= max_width {
            out.push(RootInterval { lo: a, hi: b });
            continue;
        }
        let mid = (&a + &b) / &two;
        let left = count_in(&chain, &a, &mid);
        stack.push((mid.clone(), b, n - left));
        stack.push((a, mid, left));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Isolates all real roots, using the Cauchy bound as the outer interval.
pub fn isolate_all_real_roots(p: &IntPoly, max_width: &BigRational) -> Result<Vec<RootInterval>> {
    let b = cauchy_bound(p);
    isolate_real_roots(p, &-b.clone(), &b, max_width)
}

trait PrimitiveKeepSign {
    fn primitive_part_keep_sign(&self) -> IntPoly;
}

impl PrimitiveKeepSign for IntPoly {
    fn primitive_part_keep_sign(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs().iter().map(|v| v / &c).collect())
    }
}
