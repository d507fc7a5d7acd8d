use serde::{Deserialize, Serialize};

/// Capacity caps shared by all modules.
///
/// Every algorithm that can blow up (matrix size, polynomial degree, point
/// enumeration, group order, window alphabet volume) checks against one of
/// these fields and fails with [`crate::Error::Capacity`] instead of running
/// away.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Largest square matrix accepted by SNF and characteristic polynomials.
    pub matrix_dim: usize,
    /// Largest polynomial degree accepted by the integer factorizer.
    pub degree: usize,
    /// Largest fixed subgroup that is listed point by point.
    pub enumeration: u64,
    /// Largest group order accepted by the group builder.
    pub group_order: usize,
    /// Largest number of distinct window words (alphabet^|W|).
    pub window_words: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            matrix_dim: 16,
            degree: 24,
            enumeration: 1_000_000,
            group_order: 5000,
            window_words: 1_000_000,
        }
    }
}

impl Limits {
    pub fn validate(&self) -> crate::Result<()> {
        if self.matrix_dim == 0
            || self.degree == 0
            || self.enumeration == 0
            || self.group_order == 0
            || self.window_words == 0
        {
            return Err(crate::Error::Argument("all caps must be positive".into()));
        }
        Ok(())
    }
}
