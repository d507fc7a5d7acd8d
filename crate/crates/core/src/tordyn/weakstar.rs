use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fixed::fixed_subgroup_with;
use super::fourier::{fourier_coefficient, is_zero_vector, FourierValue};
use super::measure::TorusMeasure;
use crate::polyclass::classify_automorphism_with;
use crate::{Error, IntMatrix, Limits, Result};

/// Reference measure for the weak-* diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeakStarTarget {
    /// Haar measure, kept symbolic: `ĥ(m) = 0` for `m ≠ 0`.
    Haar,
    Measure(TorusMeasure),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluation {
    Exact,
    Numeric,
    Skipped,
}

/// One line of the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakStarRow {
    pub n: u64,
    /// `|Fix(A^n)|`; absent when `A^n - I` is singular.
    #[serde(with = "crate::serde_num::int_opt")]
    pub order: Option<BigInt>,
    #[serde(with = "crate::serde_num::int_vec")]
    pub invariant_factors: Vec<BigInt>,
    /// `max_{0 < |m|∞ <= M} |μ̂_n(m) - target̂(m)|`.
    pub d_n: Option<f64>,
    /// Bound on the numerical error of `d_n` (0 for exact rows).
    pub error_bound: f64,
    pub evaluation: Evaluation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakStarReport {
    pub matrix: IntMatrix,
    pub target: String,
    pub freq_box: u32,
    pub rows: Vec<WeakStarRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl WeakStarReport {
    /// Smallest `n0` in range such that every evaluated row with `n >= n0`
    /// has `D_n = 0` exactly.
    pub fn vanishing_from(&self) -> Option<u64> {
        let mut n0 = None;
        for row in self.rows.iter().rev() {
            match (row.evaluation, row.d_n) {
                (Evaluation::Skipped, _) => continue,
                (Evaluation::Exact, Some(d)) if d == 0.0 => n0 = Some(row.n),
                _ => break,
            }
        }
        n0
    }

    /// Tab-separated table with a header line.
    pub fn to_table(&self) -> String {
        let mut s = String::from("n\torder\tinvariant_factors\tD_n\tevaluation\n");
        for r in &self.rows {
            let order = r.order.as_ref().map_or("-".to_string(), ToString::to_string);
            let inv = if r.invariant_factors.is_empty() {
                "-".to_string()
            } else {
                r.invariant_factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            };
            let d = r.d_n.map_or("-".to_string(), |d| format!("{d}"));
            let ev = match r.evaluation {
                Evaluation::Exact => "exact",
                Evaluation::Numeric => "numeric",
                Evaluation::Skipped => "skipped",
            };
            s.push_str(&format!("{}\t{order}\t{inv}\t{d}\t{ev}\n", r.n));
        }
        s
    }
}

/// All integer vectors with `0 < |m|∞ <= bound` in lexicographic order.
pub fn frequency_box(k: usize, bound: u32) -> Vec<Vec<BigInt>> {
    let b = bound as i64;
    let mut out = Vec::new();
    let mut cur = vec![-b; k];
    loop {
        if cur.iter().any(|&c| c != 0) {
            out.push(cur.iter().map(|&c| BigInt::from(c)).collect());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < b {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = -b;
                }
                break;
            }
        }
    }
}

pub fn weakstar_report(
    a: &IntMatrix,
    target: &WeakStarTarget,
    n_min: u64,
    n_max: u64,
    freq_box: u32,
) -> Result<WeakStarReport> {
    weakstar_report_with(a, target, n_min, n_max, freq_box, &Limits::default())
}

/// Compares the uniform measure on `Fix(A^n)` with the target on all
/// frequencies of the box, for each `n` in range. Subgroup coefficients are
/// decided by dual-lattice membership, so nothing is enumerated.
pub fn weakstar_report_with(
    a: &IntMatrix,
    target: &WeakStarTarget,
    n_min: u64,
    n_max: u64,
    freq_box: u32,
    limits: &Limits,
) -> Result<WeakStarReport> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::Argument(format!("bad period range {n_min}..={n_max}")));
    }
    if freq_box == 0 {
        return Err(Error::Argument("frequency box must be at least 1".into()));
    }
    let k = a.rows();
    let volume = (2 * freq_box as u64 + 1).checked_pow(k as u32).unwrap_or(u64::MAX);
    if volume > limits.enumeration {
        return Err(Error::Capacity(format!("frequency box of {volume} vectors exceeds the cap {}", limits.enumeration)));
    }
    let class = classify_automorphism_with(a, limits)?;
    let warning = match target {
        WeakStarTarget::Haar if !class.is_ergodic => {
            Some("automorphism is not ergodic; periodic measures need not approach Haar measure".to_string())
        }
        _ => None,
    };
    if let WeakStarTarget::Measure(mu) = target {
        if mu.dim() != k {
            return Err(Error::Dimension(format!("target measure on a {}-torus, matrix is {k}x{k}", mu.dim())));
        }
    }
    let freqs = frequency_box(k, freq_box);
    let target_coeffs: Vec<FourierValue> = match target {
        WeakStarTarget::Haar => vec![FourierValue::exact(0); freqs.len()],
        WeakStarTarget::Measure(mu) => {
            freqs.iter().map(|m| fourier_coefficient(mu, m)).collect::<Result<_>>()?
        }
    };

    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let fs = match fixed_subgroup_with(a, n, false, limits) {
            Ok(fs) => fs,
            Err(Error::NonIsolatedFixedSet(_)) => {
                rows.push(WeakStarRow {
                    n,
                    order: None,
                    invariant_factors: Vec::new(),
                    d_n: None,
                    error_bound: 0.0,
                    evaluation: Evaluation::Skipped,
                    note: Some("A^n - I is singular".into()),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut d_n: f64 = 0.0;
        let mut err: f64 = 0.0;
        let mut exact = true;
        for (m, t) in freqs.iter().zip(&target_coeffs) {
            debug_assert!(!is_zero_vector(m));
            let mine = u8::from(fs.annihilates(m)?);
            let diff = match t.exact {
                Some(tv) => (mine as f64 - tv as f64).abs(),
                None => {
                    exact = false;
                    err = err.max(t.error_bound);
                    (Complex64::new(mine as f64, 0.0) - t.numeric).norm()
                }
            };
            d_n = d_n.max(diff);
        }
        rows.push(WeakStarRow {
            n,
            order: Some(fs.order.clone()),
            invariant_factors: fs.invariant_factors.clone(),
            d_n: Some(d_n),
            error_bound: err,
            evaluation: if exact { Evaluation::Exact } else { Evaluation::Numeric },
            note: None,
        });
    }
    let target_name = match target {
        WeakStarTarget::Haar => "haar".to_string(),
        WeakStarTarget::Measure(mu) => format!("measure({} atoms)", mu.len()),
    };
    Ok(WeakStarReport { matrix: a.clone(), target: target_name, freq_box, rows, warning })
}
