//! Benchmark inputs shared by the criterion targets.

use stabilitylab::IntMatrix;

/// Companion-like automorphism of `Z^k` with characteristic polynomial
/// `x^k - x - 1`.
pub fn shifted_companion(k: usize) -> IntMatrix {
    let mut rows = vec![vec![0i64; k]; k];
    for (i, row) in rows.iter_mut().enumerate().skip(1) {
        row[i - 1] = 1;
    }
    rows[0][k - 1] = 1;
    rows[1][k - 1] = 1;
    IntMatrix::from_rows(&rows).expect("square rows")
}
