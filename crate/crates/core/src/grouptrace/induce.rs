use num_complex::Complex64;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::subgroup::Subgroup;
use super::trace::{is_trace, TraceFn, VALUE_TOL};
use crate::{Error, Result};

/// Choice of coset representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Transversal {
    /// Least element index of each coset.
    #[default]
    Canonical,
    /// A representative drawn at random from each coset.
    Seeded(u64),
}

/// `φ` on `H`, extended by zero to `ambient ⊇ H`.
pub fn trivial_extension(phi: &TraceFn, ambient: &Subgroup) -> Result<TraceFn> {
    if !phi.domain().is_subgroup_of(ambient) {
        return Err(Error::Argument("the trace domain is not contained in the ambient subgroup".into()));
    }
    Ok(TraceFn::from_fn(ambient.clone(), |x| phi.extended(x)))
}

/// `{g ∈ N(H) : φ(g⁻¹ h g) = φ(h) for all h ∈ H}`, with the normalizer
/// taken inside `ambient`.
pub fn trace_stabilizer(phi: &TraceFn, ambient: &Subgroup) -> Result<Subgroup> {
    let h = phi.domain();
    if !h.is_subgroup_of(ambient) {
        return Err(Error::Argument("the trace domain is not contained in the ambient subgroup".into()));
    }
    let g = h.group();
    let elems: Vec<usize> = h
        .normalizer_in(ambient)
        .elements()
        .iter()
        .copied()
        .filter(|&a| h.elements().iter().all(|&x| (phi.extended(g.conj(x, a)) - phi.extended(x)).norm() <= VALUE_TOL))
        .collect();
    Subgroup::new(g.clone(), elems)
}

pub fn induce_trace(phi: &TraceFn, ambient: &Subgroup) -> Result<TraceFn> {
    induce_trace_with(phi, ambient, Transversal::Canonical)
}

/// `Ind(x) = (1/|T|) Σ_{t ∈ T} φ̃(t⁻¹ x t)` for a left transversal `T` of
/// the stabilizer of `φ` in `ambient`. Fails if `φ` is not a trace.
pub fn induce_trace_with(phi: &TraceFn, ambient: &Subgroup, transversal: Transversal) -> Result<TraceFn> {
    let check = is_trace(phi)?;
    if !check.ok() {
        return Err(Error::Argument(format!("input is not a trace: {}", check.violations.join("; "))));
    }
    let stab = trace_stabilizer(phi, ambient)?;
    let cosets = stab.left_cosets_in(ambient);
    let reps: Vec<usize> = match transversal {
        Transversal::Canonical => cosets.iter().map(|c| c[0]).collect(),
        Transversal::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            cosets.iter().map(|c| *c.choose(&mut rng).expect("cosets are nonempty")).collect()
        }
    };
    let g = ambient.group();
    let w = 1.0 / reps.len() as f64;
    Ok(TraceFn::from_fn(ambient.clone(), |x| {
        reps.iter().map(|&t| phi.extended(g.conj(x, t))).sum::<Complex64>() * w
    }))
}

/// `max |Ind_L^G Ind_H^L φ - Ind_H^G φ|` with both sides computed from
/// their own stabilizers and transversals.
pub fn induction_in_stages_check(phi: &TraceFn, middle: &Subgroup, top: &Subgroup) -> Result<f64> {
    if !phi.domain().is_subgroup_of(middle) || !middle.is_subgroup_of(top) {
        return Err(Error::Argument("expected a chain H ≤ L ≤ G".into()));
    }
    let two_step = induce_trace(&induce_trace(phi, middle)?, top)?;
    let one_step = induce_trace(phi, top)?;
    two_step.max_difference(&one_step)
}
