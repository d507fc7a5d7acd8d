//! Exact computations around periodic measures of toral automorphisms,
//! induced traces on finite groups, and Hilbert–Schmidt stability.

mod error;
mod limits;
mod serde_num;

pub mod fieldrank;
pub mod grouptrace;
pub mod intlinalg;
pub mod polyclass;
pub mod shiftdyn;
pub mod tordyn;
pub mod verdict;

pub use error::{Error, ErrorKind, Result};
pub use intlinalg::{IntMatrix, IntPoly, SnfDecomposition};
pub use limits::Limits;
