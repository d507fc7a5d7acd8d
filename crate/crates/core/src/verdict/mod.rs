//! Rule table from group descriptors to Hilbert–Schmidt stability
//! verdicts. Each verdict names the result it relies on and carries the
//! checks that triggered the rule, so it can be re-verified from the
//! descriptor alone.

mod descriptor;
mod engine;

pub use descriptor::GroupDescriptor;
pub use engine::{
    citation, evaluate, evaluate_with, mixed_type_example, recheck, reference_descriptors, Check, Citation, Detail, Status,
    Verdict,
};
