//! Full shifts over `Z^d` on a finite alphabet: periodic approximations of
//! a point and the empirical cylinder statistics used to compare them.
//! Distances between cylinder distributions are total variation on a
//! fixed window.

mod cylinder;
mod experiment;
mod pattern;

pub use cylinder::{cylinder_distance, empirical_measure, empirical_measure_with, CylinderDistribution, WindowShape};
pub use experiment::{periodization_experiment, periodization_experiment_in_box, ConvergenceReport, ConvergenceRow};
pub use pattern::{folner_box, periodicize, Configuration, FolnerBox, Pattern, PeriodicPoint};
