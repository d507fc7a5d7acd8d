use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A configuration of `Z^d` that can be evaluated at any site.
pub trait Configuration {
    fn dim(&self) -> usize;
    fn alphabet(&self) -> u32;
    fn at(&self, g: &[i64]) -> u32;
}

/// Finite window `{0..e_1-1} × ... × {0..e_d-1}` with symbols stored in
/// lexicographic order (last coordinate fastest), and a default symbol
/// everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pattern {
    alphabet: u32,
    extents: Vec<u64>,
    symbols: Vec<u32>,
    default: u32,
}

pub(crate) fn box_volume(extents: &[u64]) -> Option<u64> {
    extents.iter().try_fold(1u64, |acc, &e| acc.checked_mul(e))
}

pub(crate) fn lex_index(extents: &[u64], g: &[u64]) -> usize {
    let mut idx = 0u64;
    for (&e, &c) in extents.iter().zip(g) {
        idx = idx * e + c;
    }
    idx as usize
}

impl Pattern {
    pub fn new(alphabet: u32, extents: Vec<u64>, symbols: Vec<u32>, default: u32) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::Argument("alphabet must be nonempty".into()));
        }
        if extents.is_empty() {
            return Err(Error::Argument("pattern dimension must be at least 1".into()));
        }
        let vol = box_volume(&extents).ok_or_else(|| Error::Capacity("pattern window too large".into()))?;
        if symbols.len() as u64 != vol {
            return Err(Error::Argument(format!("window holds {vol} sites but {} symbols were given", symbols.len())));
        }
        if let Some(s) = symbols.iter().chain(std::iter::once(&default)).find(|&&s| s >= alphabet) {
            return Err(Error::Argument(format!("symbol {s} outside alphabet of size {alphabet}")));
        }
        Ok(Pattern { alphabet, extents, symbols, default })
    }

    pub fn constant(dim: usize, alphabet: u32, symbol: u32) -> Result<Self> {
        Pattern::new(alphabet, vec![1; dim], vec![symbol], symbol)
    }

    /// Uniformly random symbols on the window, default 0.
    pub fn random(alphabet: u32, extents: Vec<u64>, seed: u64) -> Result<Self> {
        let vol = box_volume(&extents).ok_or_else(|| Error::Capacity("pattern window too large".into()))?;
        if alphabet == 0 {
            return Err(Error::Argument("alphabet must be nonempty".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let symbols = (0..vol).map(|_| rng.random_range(0..alphabet)).collect();
        Pattern::new(alphabet, extents, symbols, 0)
    }

    pub fn extents(&self) -> &[u64] {
        &self.extents
    }

    pub fn default_symbol(&self) -> u32 {
        self.default
    }
}

impl Configuration for Pattern {
    fn dim(&self) -> usize {
        self.extents.len()
    }

    fn alphabet(&self) -> u32 {
        self.alphabet
    }

    fn at(&self, g: &[i64]) -> u32 {
        assert_eq!(g.len(), self.dim(), "site dimension mismatch");
        let mut idx = Vec::with_capacity(g.len());
        for (&c, &e) in g.iter().zip(&self.extents) {
            if c < 0 || c as u64 >= e {
                return self.default;
            }
            idx.push(c as u64);
        }
        self.symbols[lex_index(&self.extents, &idx)]
    }
}

/// Text format: a header line `d alphabet e_1 ... e_d default`, then the
/// window symbols in lexicographic order separated by whitespace. Lines
/// starting with `#` are ignored.
impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .flat_map(str::split_whitespace)
            .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad pattern token {t:?}"))));
        let mut next = |what: &str| tokens.next().unwrap_or_else(|| Err(Error::Parse(format!("pattern file missing {what}"))));
        let d = next("dimension")? as usize;
        if d == 0 || d > 8 {
            return Err(Error::Parse(format!("pattern dimension {d} out of range 1..=8")));
        }
        let alphabet = u32::try_from(next("alphabet")?).map_err(|_| Error::Parse("alphabet too large".into()))?;
        let extents = (0..d).map(|_| next("extent")).collect::<Result<Vec<_>>>()?;
        let default = next("default symbol")? as u32;
        let vol = box_volume(&extents).ok_or_else(|| Error::Capacity("pattern window too large".into()))?;
        let symbols = (0..vol).map(|_| next("symbol").map(|v| v as u32)).collect::<Result<Vec<_>>>()?;
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing tokens after pattern symbols".into()));
        }
        Pattern::new(alphabet, extents, symbols, default)
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.dim(), self.alphabet)?;
        for e in &self.extents {
            write!(f, " {e}")?;
        }
        writeln!(f, " {}", self.default)?;
        let syms: Vec<String> = self.symbols.iter().map(ToString::to_string).collect();
        writeln!(f, "{}", syms.join(" "))
    }
}

/// The point `x_N(g) = x(g mod N)`, stored on its fundamental domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicPoint {
    alphabet: u32,
    dim: usize,
    period: u64,
    values: Vec<u32>,
}

impl PeriodicPoint {
    pub fn period(&self) -> u64 {
        self.period
    }
}

impl Configuration for PeriodicPoint {
    fn dim(&self) -> usize {
        self.dim
    }

    fn alphabet(&self) -> u32 {
        self.alphabet
    }

    fn at(&self, g: &[i64]) -> u32 {
        assert_eq!(g.len(), self.dim, "site dimension mismatch");
        let n = self.period as i64;
        let reduced: Vec<u64> = g.iter().map(|&c| c.rem_euclid(n) as u64).collect();
        self.values[lex_index(&vec![self.period; self.dim], &reduced)]
    }
}

/// Repeats `x` restricted to the box `{0..N-1}^d` with period `N` along
/// every axis.
pub fn periodicize(x: &impl Configuration, period: u64) -> Result<PeriodicPoint> {
    if period == 0 {
        return Err(Error::Argument("period must be at least 1".into()));
    }
    let dim = x.dim();
    let fb = FolnerBox::new(dim, period)?;
    let values = fb.sites().map(|g| x.at(&g)).collect();
    Ok(PeriodicPoint { alphabet: x.alphabet(), dim, period, values })
}

/// The box `{0..N-1}^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolnerBox {
    pub dim: usize,
    pub side: u64,
}

impl FolnerBox {
    pub fn new(dim: usize, side: u64) -> Result<Self> {
        if side == 0 || dim == 0 {
            return Err(Error::Argument("box side and dimension must be at least 1".into()));
        }
        side.checked_pow(dim as u32).ok_or_else(|| Error::Capacity("box volume overflows".into()))?;
        Ok(FolnerBox { dim, side })
    }

    pub fn volume(&self) -> u64 {
        self.side.pow(self.dim as u32)
    }

    /// Sites in lexicographic order.
    pub fn sites(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let side = self.side as i64;
        let dim = self.dim;
        (0..self.volume()).map(move |mut i| {
            let mut g = vec![0i64; dim];
            for c in g.iter_mut().rev() {
                *c = (i % side as u64) as i64;
                i /= side as u64;
            }
            g
        })
    }
}

pub fn folner_box(dim: usize, side: u64) -> Result<FolnerBox> {
    FolnerBox::new(dim, side)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boxes() {
        let b: Vec<_> = folner_box(1, 3).unwrap().sites().collect();
        assert_eq!(b, vec![vec![0], vec![1], vec![2]]);
        let b: Vec<_> = folner_box(2, 2).unwrap().sites().collect();
        assert_eq!(b, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(folner_box(1, 1).unwrap().sites().count(), 1);
        assert!(folner_box(1, 0).is_err());
    }

    #[test]
    fn periodicize_repeats_the_box() {
        let x = Pattern::new(2, vec![4], vec![0, 1, 0, 0], 0).unwrap();
        let p = periodicize(&x, 4).unwrap();
        let got: Vec<u32> = (0..8).map(|g| p.at(&[g])).collect();
        assert_eq!(got, vec![0, 1, 0, 0, 0, 1, 0, 0]);
        assert_eq!(p.at(&[-3]), 1);
        let c = Pattern::constant(2, 3, 2).unwrap();
        let pc = periodicize(&c, 5).unwrap();
        assert!(folner_box(2, 7).unwrap().sites().all(|g| pc.at(&g) == 2));
    }

    #[test]
    fn file_round_trip() {
        let x = Pattern::new(3, vec![2, 3], vec![0, 1, 2, 2, 1, 0], 1).unwrap();
        let text = x.to_string();
        assert_eq!(text.parse::<Pattern>().unwrap(), x);
        assert!("1 2 3 0\n0 1".parse::<Pattern>().is_err());
        assert!("1 2 2 0\n0 5".parse::<Pattern>().is_err());
    }
}
