use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;

use super::group::FiniteGroup;
use super::induce::induce_trace;
use super::subgroup::Subgroup;
use super::trace::TraceFn;
use crate::Result;

/// A random trace on `h`: a convex combination of traces induced from
/// linear characters of random cyclic subgroups.
pub fn random_trace<R: Rng>(h: &Subgroup, terms: usize, rng: &mut R) -> Result<TraceFn> {
    let g = h.group().clone();
    let mut acc: Option<(TraceFn, f64)> = None;
    for _ in 0..terms.max(1) {
        let x = *h.elements().choose(rng).expect("subgroups are nonempty");
        let k = rng.random_range(0..g.element_order(x) as i64);
        let ind = induce_trace(&TraceFn::cyclic_character(&g, x, k)?, h)?;
        let w: f64 = rng.random_range(0.1..1.0);
        acc = Some(match acc {
            None => (ind, w),
            Some((t, tw)) => (t.convex_combination(&ind, tw / (tw + w))?, tw + w),
        });
    }
    Ok(acc.expect("at least one term").0)
}

/// Presets with order at most 48 used to generate random instances.
pub fn small_presets() -> Vec<&'static str> {
    vec![
        "C1", "C2", "C6", "C12", "D3", "D4", "D6", "D8", "D12", "Q8", "S3", "S4", "A4", "C2xS3", "C2xD4", "C3xS3", "C2xA4",
        "C2xS4", "C4xS3", "C2xC2xC2", "Q8xC3", "D4xC3",
    ]
}

pub fn random_small_group<R: Rng>(rng: &mut R) -> Arc<FiniteGroup> {
    let name = small_presets().choose(rng).copied().expect("nonempty list");
    Arc::new(FiniteGroup::preset(name).expect("presets build"))
}

/// `(φ on H, L, G)` with `H ≤ L ≤ G` random.
pub fn random_chain<R: Rng>(rng: &mut R) -> Result<(TraceFn, Subgroup, Subgroup)> {
    let g = random_small_group(rng);
    let top = Subgroup::whole(g);
    let middle = top.random_subgroup(2, rng);
    let bottom = middle.random_subgroup(2, rng);
    let terms = rng.random_range(1..=3);
    Ok((random_trace(&bottom, terms, rng)?, middle, top))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::grouptrace::is_trace;

    #[test]
    fn presets_are_small_groups() {
        for name in small_presets() {
            let g = FiniteGroup::preset(name).unwrap();
            assert!(g.order() <= 48, "{name}");
        }
    }

    #[test]
    fn random_traces_are_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let (phi, _, _) = random_chain(&mut rng).unwrap();
            assert!(is_trace(&phi).unwrap().ok());
        }
    }
}
