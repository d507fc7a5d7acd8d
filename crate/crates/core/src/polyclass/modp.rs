//! Dense polynomials over a small prime field `F_p` (`p < 2^31`), used by
//! the modular stage of integer factorization.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::IntPoly;

pub(crate) type PolyP = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Fp { p }
    }

    pub fn reduce_int(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }

    pub fn reduce_poly(&self, f: &IntPoly) -> PolyP {
        trim(f.coeffs().iter().map(|c| self.reduce_int(c)).collect())
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (get(a, i) + get(b, i)) % self.p).collect())
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (get(a, i) + self.p - get(b, i)) % self.p).collect())
    }

    pub fn mul_poly(&self, a: &[u64], b: &[u64]) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(out)
    }

    pub fn scale(&self, a: &[u64], s: u64) -> PolyP {
        trim(a.iter().map(|&x| self.mul(x, s)).collect())
    }

    pub fn monic(&self, a: &[u64]) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn div_rem(&self, a: &[u64], b: &[u64]) -> (PolyP, PolyP) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), trim(r));
        }
        let lc_inv = self.inv(b[db]);
        let mut q = vec![0u64; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mul(r[i + db], lc_inv);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + self.p - self.mul(c, bj)) % self.p;
            }
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> PolyP {
        self.div_rem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> PolyP {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc_inv = self.inv(*r0.last().expect("gcd of zero polynomials"));
        (self.scale(&r0, lc_inv), self.scale(&s0, lc_inv), self.scale(&t0, lc_inv))
    }

    pub fn derivative(&self, a: &[u64]) -> PolyP {
        trim(a.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, i as u64 % self.p)).collect())
    }

    pub fn pow_mod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> PolyP {
        let mut result = vec![1u64];
        let mut b = self.rem(base, m);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = self.rem(&self.mul_poly(&result, &b), m);
            }
            b = self.rem(&self.mul_poly(&b, &b), m);
        }
        self.rem(&result, m)
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// pairs `(g, d)` where `g` is the product of all degree-`d` factors.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let p_big = BigUint::from(self.p);
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                out.push((f.clone(), f.len() - 1));
                break;
            }
            h = self.pow_mod(&h, &p_big, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Cantor–Zassenhaus equal-degree splitting of a monic product of
    /// distinct irreducibles of degree `d`.
    pub fn equal_degree<R: Rng>(&self, g: &[u64], d: usize, rng: &mut R) -> Vec<PolyP> {
        let n = g.len() - 1;
        if n == d {
            return vec![g.to_vec()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: PolyP = trim((0..n).map(|_| rng.random_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let mut b = self.pow_mod(&a, &e, g);
            b = self.sub(&b, &[1]);
            let t = self.gcd(&b, g);
            if t.len() > 1 && t.len() < g.len() {
                let u = self.div_rem(g, &t).0;
                let mut out = self.equal_degree(&t, d, rng);
                out.extend(self.equal_degree(&u, d, rng));
                return out;
            }
        }
    }
}

pub(crate) fn trim(mut v: PolyP) -> PolyP {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn get(a: &[u64], i: usize) -> u64 {
    a.get(i).copied().unwrap_or(0)
}

pub(crate) fn to_bigint_poly(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

pub(crate) fn is_zero(a: &[u64]) -> bool {
    a.iter().all(Zero::is_zero)
}
