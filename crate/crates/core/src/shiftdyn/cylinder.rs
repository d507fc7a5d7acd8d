use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::pattern::{box_volume, Configuration, FolnerBox};
use crate::{Error, Limits, Result};

/// Box window `{0..w_1-1} × ... × {0..w_d-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowShape(pub Vec<u64>);

impl WindowShape {
    pub fn size(&self) -> u64 {
        box_volume(&self.0).unwrap_or(u64::MAX)
    }

    fn offsets(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &w in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..w as i64).map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

/// Frequencies of window words, exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderDistribution {
    pub window: WindowShape,
    #[serde(with = "crate::serde_num::ratio_entries")]
    pub frequencies: BTreeMap<Vec<u32>, BigRational>,
}

impl CylinderDistribution {
    pub fn total(&self) -> BigRational {
        self.frequencies.values().fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn frequency(&self, word: &[u32]) -> BigRational {
        self.frequencies.get(word).cloned().unwrap_or_else(BigRational::zero)
    }
}

pub fn empirical_measure(x: &impl Configuration, f: &FolnerBox, w: &WindowShape) -> Result<CylinderDistribution> {
    empirical_measure_with(x, f, w, &Limits::default())
}

/// Frequencies of `(g·x)|_W` over `g ∈ F`, where `(g·x)(h) = x(h + g)`.
pub fn empirical_measure_with(
    x: &impl Configuration,
    f: &FolnerBox,
    w: &WindowShape,
    limits: &Limits,
) -> Result<CylinderDistribution> {
    if w.0.len() != x.dim() || f.dim != x.dim() {
        return Err(Error::Dimension("window, box and point must share the dimension".into()));
    }
    if w.0.iter().any(|&e| e == 0) {
        return Err(Error::Argument("window extents must be positive".into()));
    }
    let words = u32::try_from(w.size())
        .ok()
        .and_then(|s| (x.alphabet() as u64).checked_pow(s))
        .filter(|&n| n <= limits.window_words);
    if words.is_none() {
        return Err(Error::Capacity(format!(
            "alphabet {} on a window of {} sites exceeds {} words",
            x.alphabet(),
            w.size(),
            limits.window_words
        )));
    }
    if f.volume() > limits.enumeration {
        return Err(Error::Capacity(format!("box of {} sites exceeds the cap {}", f.volume(), limits.enumeration)));
    }
    let offsets = w.offsets();
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut site = vec![0i64; x.dim()];
    for g in f.sites() {
        let word = offsets
            .iter()
            .map(|h| {
                for (s, (a, b)) in site.iter_mut().zip(g.iter().zip(h)) {
                    *s = a + b;
                }
                x.at(&site)
            })
            .collect();
        *counts.entry(word).or_default() += 1;
    }
    let denom = BigInt::from(f.volume());
    let frequencies =
        counts.into_iter().map(|(w, c)| (w, BigRational::new(BigInt::from(c), denom.clone()))).collect();
    Ok(CylinderDistribution { window: w.clone(), frequencies })
}

/// Total variation `½ Σ_w |μ(w) - ν(w)|`.
pub fn cylinder_distance(mu: &CylinderDistribution, nu: &CylinderDistribution) -> Result<BigRational> {
    if mu.window != nu.window {
        return Err(Error::Argument("cylinder distributions on different windows".into()));
    }
    let mut sum = BigRational::zero();
    for (w, p) in &mu.frequencies {
        sum += (p - nu.frequency(w)).abs();
    }
    for (w, q) in &nu.frequencies {
        if !mu.frequencies.contains_key(w) {
            sum += q;
        }
    }
    Ok(sum / BigRational::from_integer(BigInt::from(2)))
}
