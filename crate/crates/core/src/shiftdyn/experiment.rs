use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::cylinder::{cylinder_distance, empirical_measure_with, WindowShape};
use super::pattern::{periodicize, Configuration, FolnerBox};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub period: u64,
    pub window: WindowShape,
    #[serde(with = "crate::serde_num::ratio")]
    pub distance: BigRational,
    pub distance_f64: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Smallest `C` with `distance <= C / N` on every row.
    pub fitted_c: f64,
}

impl ConvergenceReport {
    pub fn to_table(&self) -> String {
        let mut s = String::from("N\twindow\tdistance\tdistance_f64\n");
        for r in &self.rows {
            let w: Vec<String> = r.window.0.iter().map(ToString::to_string).collect();
            s.push_str(&format!("{}\t{}\t{}\t{}\n", r.period, w.join("x"), r.distance, r.distance_f64));
        }
        s.push_str(&format!("# fitted C = {}\n", self.fitted_c));
        s
    }
}

/// For each period `N` and window `W`, the distance between the empirical
/// `W`-statistics of `x` and of its `N`-periodization, both over `{0..N-1}^d`.
pub fn periodization_experiment(
    x: &impl Configuration,
    periods: &[u64],
    windows: &[WindowShape],
    limits: &Limits,
) -> Result<ConvergenceReport> {
    periodization_experiment_in_box(x, periods, windows, None, limits)
}

/// As [`periodization_experiment`], but with both statistics taken over the
/// box `{0..B-1}^d` for a fixed side `B` instead of the period's own box.
pub fn periodization_experiment_in_box(
    x: &impl Configuration,
    periods: &[u64],
    windows: &[WindowShape],
    box_side: Option<u64>,
    limits: &Limits,
) -> Result<ConvergenceReport> {
    if periods.is_empty() || windows.is_empty() {
        return Err(Error::Argument("need at least one period and one window".into()));
    }
    let mut rows = Vec::new();
    let mut fitted_c: f64 = 0.0;
    for &n in periods {
        let fb = FolnerBox::new(x.dim(), box_side.unwrap_or(n))?;
        let xn = periodicize(x, n)?;
        for w in windows {
            let mu = empirical_measure_with(x, &fb, w, limits)?;
            let nu = empirical_measure_with(&xn, &fb, w, limits)?;
            let distance = cylinder_distance(&mu, &nu)?;
            let distance_f64 = distance.to_f64().unwrap_or(f64::NAN);
            fitted_c = fitted_c.max(distance_f64 * n as f64);
            rows.push(ConvergenceRow { period: n, window: w.clone(), distance, distance_f64 });
        }
    }
    Ok(ConvergenceReport { rows, fitted_c })
}
