//! Signatures and unit ranks of number fields given by a defining
//! polynomial, and checks on caller-supplied units.

mod field;
mod independence;
mod unit;

pub use field::{field_report, field_report_with, signature, signature_with, FieldReport, NumberField, RankOneCase};
pub use independence::{multiplicative_independence, multiplicative_independence_with, Independence, SEARCH_BOUND};
pub use unit::{
    check_unit_conditions, check_unit_conditions_with, multiplication_matrix, unit_inverse, UnitCandidate, UnitConditions,
};
