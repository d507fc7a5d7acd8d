use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;

use super::group::FiniteGroup;
use crate::{Error, Result};

/// A subgroup, stored as the sorted list of its element indices.
#[derive(Debug, Clone)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    elements: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.elements == other.elements
    }
}

impl Subgroup {
    /// Validates closure under products and inverses.
    pub fn new(group: Arc<FiniteGroup>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let n = group.order();
        if let Some(&x) = elements.iter().find(|&&x| x >= n) {
            return Err(Error::Argument(format!("element {x} outside a group of order {n}")));
        }
        let s = Self::from_sorted(group, elements);
        if !s.contains(s.group.identity()) {
            return Err(Error::Argument("subgroup must contain the identity".into()));
        }
        for &a in &s.elements {
            if !s.contains(s.group.inv(a)) || s.elements.iter().any(|&b| !s.contains(s.group.mul(a, b))) {
                return Err(Error::Argument("element set is not closed under the group law".into()));
            }
        }
        Ok(s)
    }

    fn from_sorted(group: Arc<FiniteGroup>, elements: Vec<usize>) -> Self {
        let mut position = vec![None; group.order()];
        for (i, &x) in elements.iter().enumerate() {
            position[x] = Some(i);
        }
        Subgroup { group, elements, position }
    }

    pub fn whole(group: Arc<FiniteGroup>) -> Self {
        let elements = (0..group.order()).collect();
        Self::from_sorted(group, elements)
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let e = group.identity();
        Self::from_sorted(group, vec![e])
    }

    /// Subgroup generated by `gens`.
    pub fn generated(group: Arc<FiniteGroup>, gens: &[usize]) -> Result<Self> {
        let n = group.order();
        if let Some(&x) = gens.iter().find(|&&x| x >= n) {
            return Err(Error::Argument(format!("generator {x} outside a group of order {n}")));
        }
        let mut member = vec![false; n];
        let mut elems = vec![group.identity()];
        member[group.identity()] = true;
        let mut i = 0;
        while i < elems.len() {
            for &g in gens {
                let p = group.mul(elems[i], g);
                if !member[p] {
                    member[p] = true;
                    elems.push(p);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Ok(Self::from_sorted(group, elems))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position.get(x).is_some_and(Option::is_some)
    }

    /// Index of `x` within [`Self::elements`].
    pub fn position(&self, x: usize) -> Option<usize> {
        self.position.get(x).copied().flatten()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.elements.iter().all(|&x| other.contains(x))
    }

    /// `{g ∈ ambient : g⁻¹ H g = H}`.
    pub fn normalizer_in(&self, ambient: &Subgroup) -> Subgroup {
        let g = &self.group;
        let elems =
            ambient.elements.iter().copied().filter(|&a| self.elements.iter().all(|&h| self.contains(g.conj(h, a)))).collect();
        Self::from_sorted(self.group.clone(), elems)
    }

    pub fn is_normal_in(&self, ambient: &Subgroup) -> bool {
        self.normalizer_in(ambient).order() == ambient.order()
    }

    /// Left cosets `a·self` of this subgroup inside `ambient`, each listed
    /// as its sorted elements; cosets are ordered by their least element.
    pub fn left_cosets_in(&self, ambient: &Subgroup) -> Vec<Vec<usize>> {
        let g = &self.group;
        let mut seen = vec![false; g.order()];
        let mut out = Vec::new();
        for &a in &ambient.elements {
            if seen[a] {
                continue;
            }
            let mut coset: Vec<usize> = self.elements.iter().map(|&h| g.mul(a, h)).collect();
            coset.sort_unstable();
            for &c in &coset {
                seen[c] = true;
            }
            out.push(coset);
        }
        out
    }

    /// Random subgroup of `self` generated by up to `max_gens` random
    /// elements.
    pub fn random_subgroup<R: Rng>(&self, max_gens: usize, rng: &mut R) -> Subgroup {
        let k = rng.random_range(0..=max_gens);
        let gens: Vec<usize> = (0..k).filter_map(|_| self.elements.choose(rng).copied()).collect();
        Subgroup::generated(self.group.clone(), &gens).expect("elements come from the group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_checks() {
        let s3 = Arc::new(FiniteGroup::preset("S3").unwrap());
        let r = s3.find("(1 2 3)").unwrap();
        let t = s3.find("(1 2)").unwrap();
        let a3 = Subgroup::generated(s3.clone(), &[r]).unwrap();
        assert_eq!(a3.order(), 3);
        assert!(a3.is_normal_in(&Subgroup::whole(s3.clone())));
        assert!(Subgroup::new(s3.clone(), vec![s3.identity(), r]).is_err());
        let c2 = Subgroup::generated(s3.clone(), &[t]).unwrap();
        assert!(!c2.is_normal_in(&Subgroup::whole(s3.clone())));
        assert_eq!(c2.normalizer_in(&Subgroup::whole(s3.clone())), c2);
        assert_eq!(c2.left_cosets_in(&Subgroup::whole(s3.clone())).len(), 3);
        assert_eq!(Subgroup::generated(s3.clone(), &[r, t]).unwrap().order(), 6);
    }
}
