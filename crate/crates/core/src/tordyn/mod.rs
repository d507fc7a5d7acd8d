//! Periodic points of toral automorphisms and the finitely supported
//! invariant measures they carry, with exact Fourier diagnostics for weak-*
//! convergence to a target measure.

mod fixed;
mod fourier;
mod measure;
mod point;
mod weakstar;

pub use fixed::{fixed_subgroup, fixed_subgroup_with, orbit_decomposition, FixedSubgroup};
pub use fourier::{fourier_coefficient, FourierValue};
pub use measure::{coset_average, uniform_measure, TorusMeasure};
pub use point::TorusPoint;
pub use weakstar::{
    frequency_box, weakstar_report, weakstar_report_with, Evaluation, WeakStarReport, WeakStarRow, WeakStarTarget,
};
