//! Integer polynomial analysis and the spectral classification of toral
//! automorphisms built on it.

mod classify;
mod cyclotomic;
mod factor;
mod modp;
mod sturm;
mod unimodular;

pub use classify::{classify_automorphism, classify_automorphism_with, SpectralClass};
pub use cyclotomic::{cyclotomic, cyclotomic_multiplicities, cyclotomic_part, euler_phi, strip_cyclotomic};
pub use factor::{factor_over_integers, factor_over_integers_with, FactorList};
pub use sturm::{cauchy_bound, isolate_all_real_roots, isolate_real_roots, real_root_count, sturm_real_roots, RootInterval};
pub use unimodular::{isolation_width, unimodular_root_report, Certification, UnimodularReport};
