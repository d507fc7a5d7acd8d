use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::modp::{self, Fp, PolyP};
use crate::{Error, IntPoly, Limits, Result};

/// Complete factorization over the integers:
/// `input = unit · content · ∏ factor^multiplicity`.
///
/// Factors are primitive, irreducible over the rationals, have positive
/// leading coefficient, and are listed by ascending degree and then
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorList {
    pub unit: i8,
    /// Positive integer content of the input (1 for primitive inputs).
    #[serde(with = "crate::serde_num::int")]
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl FactorList {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(&self.content * BigInt::from(self.unit));
        for (f, k) in &self.factors {
            acc = &acc * &f.pow(*k);
        }
        acc
    }

    /// True when the input is (up to sign and content) a single irreducible
    /// of multiplicity one.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor_over_integers(p: &IntPoly) -> Result<FactorList> {
    factor_over_integers_with(p, &Limits::default())
}

/// Factorization: square-free decomposition, then for each square-free part
/// a factorization modulo a good prime, Hensel lifting past the Mignotte
/// bound, and subset recombination.
pub fn factor_over_integers_with(p: &IntPoly, limits: &Limits) -> Result<FactorList> {
    let Some(deg) = p.degree() else {
        return Err(Error::Argument("cannot factor the zero polynomial".into()));
    };
    if deg > limits.degree {
        return Err(Error::Capacity(format!(
            "degree {deg} exceeds the factorization cap of {}",
            limits.degree
        )));
    }
    let unit: i8 = if p.leading().is_negative() { -1 } else { 1 };
    let content = p.content();
    let mut factors = Vec::new();
    if deg > 0 {
        for (part, k) in square_free_decomposition(&p.primitive_part()) {
            for f in factor_square_free(&part) {
                factors.push((f, k));
            }
        }
    }
    factors.sort_by(|(a, ka), (b, kb)| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)).then(ka.cmp(kb)));
    Ok(FactorList { unit, content, factors })
}

/// Yun's algorithm on a primitive polynomial with positive leading
/// coefficient: returns `(a_i, i)` with `f = ∏ a_i^i`, each `a_i` square-free.
pub(crate) fn square_free_decomposition(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.checked_div(&c).expect("gcd divides").primitive_part();
    let mut i = 1;
    while !c.is_constant() {
        let y = w.gcd(&c);
        let z = w.checked_div(&y).expect("gcd divides").primitive_part();
        if !z.is_constant() {
            out.push((z, i));
        }
        i += 1;
        c = c.checked_div(&y).expect("gcd divides").primitive_part();
        w = y;
    }
    if !w.is_constant() {
        out.push((w, i));
    }
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Factors a primitive square-free polynomial with positive leading
/// coefficient into irreducibles.
fn factor_square_free(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree().expect("nonzero");
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.leading();

    // Among the first few good primes keep the one with fewest modular factors.
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if tried >= 5 {
            break;
        }
        let fp = Fp::new(p);
        if fp.reduce_int(&lc) == 0 {
            continue;
        }
        let fbar = fp.monic(&fp.reduce_poly(f));
        let g = fp.gcd(&fbar, &fp.derivative(&fbar));
        if g.len() != 1 {
            continue;
        }
        tried += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(p.wrapping_mul(0x9E37_79B9) ^ n as u64);
        let mut facs = Vec::new();
        for (g, d) in fp.distinct_degree(&fbar) {
            facs.extend(fp.equal_degree(&g, d, &mut rng));
        }
        facs.sort();
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        if best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("some prime is good for a square-free polynomial");
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Lift until p^k exceeds twice the coefficient bound of lc·(factor).
    let norm2 = f.coeffs().iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = lc.abs() * (BigInt::one() << n) * norm2;
    let two_bound = &bound * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= two_bound {
        modulus *= &pb;
        k += 1;
    }
    let lc_inv = mod_inverse(&lc, &modulus);
    let monic_f: Vec<BigInt> = f.coeffs().iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    let lifted = lift_tree(&monic_f, &modular, p, k, &modulus);
    recombine(f.clone(), lifted, &modulus)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient must be invertible mod p^k");
    e.x.mod_floor(m)
}

fn poly_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

/// Lifts the monic factorization `f ≡ ∏ factors (mod p)` to `mod p^k` by
/// recursive binary splitting.
fn lift_tree(f: &[BigInt], factors: &[PolyP], p: u64, k: u32, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let fp = Fp::new(p);
    let mid = factors.len() / 2;
    let g0 = factors[..mid].iter().fold(vec![1u64], |acc, q| fp.mul_poly(&acc, q));
    let h0 = factors[mid..].iter().fold(vec![1u64], |acc, q| fp.mul_poly(&acc, q));
    let (g, h) = lift_pair(f, &g0, &h0, p, k, modulus);
    let mut out = lift_tree(&g, &factors[..mid], p, k, modulus);
    out.extend(lift_tree(&h, &factors[mid..], p, k, modulus));
    out
}

/// Linear Hensel lifting of `f ≡ g0·h0 (mod p)` to `f ≡ g·h (mod p^k)`,
/// keeping `g` and `h` monic.
fn lift_pair(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32, modulus: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let fp = Fp::new(p);
    let (one, s, t) = fp.ext_gcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut g = modp::to_bigint_poly(g0);
    let mut h = modp::to_bigint_poly(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let gh = poly_mul_mod(&g, &h, &next);
        let len = f.len().max(gh.len());
        let e: PolyP = modp::trim(
            (0..len)
                .map(|i| {
                    let fi = f.get(i).cloned().unwrap_or_default();
                    let ghi = gh.get(i).cloned().unwrap_or_default();
                    let diff = (fi - ghi).mod_floor(&next);
                    debug_assert!(diff.is_multiple_of(&pj));
                    fp.reduce_int(&(diff / &pj))
                })
                .collect(),
        );
        if !modp::is_zero(&e) {
            let (q, big_g) = fp.div_rem(&fp.mul_poly(&t, &e), g0);
            let big_h = fp.add(&fp.mul_poly(&s, &e), &fp.mul_poly(&q, h0));
            add_scaled(&mut g, &big_g, &pj, &next);
            add_scaled(&mut h, &big_h, &pj, &next);
        }
        pj = next;
    }
    debug_assert_eq!(&pj, modulus);
    (g, h)
}

fn add_scaled(target: &mut Vec<BigInt>, delta: &[u64], scale: &BigInt, m: &BigInt) {
    if target.len() < delta.len() {
        target.resize(delta.len(), BigInt::zero());
    }
    for (i, &d) in delta.iter().enumerate() {
        target[i] = (&target[i] + scale * BigInt::from(d)).mod_floor(m);
    }
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m { r - m } else { r }
}

/// Zassenhaus subset recombination of lifted monic factors.
fn recombine(mut f: IntPoly, mut lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in Combinations::new(lifted.len(), size) {
            let lc = f.leading();
            let mut cand = vec![lc.mod_floor(modulus)];
            for &i in &subset {
                cand = poly_mul_mod(&cand, &lifted[i], modulus);
            }
            let cand = IntPoly::new(cand.iter().map(|c| symmetric(c, modulus)).collect()).primitive_part();
            if let Some(q) = f.checked_div(&cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                f = q.primitive_part();
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if !f.is_constant() {
        out.push(f);
    }
    out
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
