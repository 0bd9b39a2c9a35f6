//! Generator-image backtracking shared by automorphism enumeration and
//! isomorphism testing.
//!
//! The search fixes a generating sequence of the source group, assigns images
//! to generators one at a time, and closes the partial map under products as
//! it goes. Candidate images are pruned by per-element invariants (order and
//! centralizer size), which automorphisms and isomorphisms must preserve.

use std::sync::Arc;

use crate::group::{Elem, FiniteGroup};
use crate::subgroup::Subgroup;

/// Isomorphism-invariant fingerprint of a single element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Profile {
    order: u64,
    centralizer: u32,
}

pub(crate) fn element_profiles(group: &Arc<FiniteGroup>) -> Vec<Profile> {
    group
        .elements()
        .map(|e| Profile {
            order: group.element_order(e),
            centralizer: Subgroup::centralizer(group, e).order() as u32,
        })
        .collect()
}

/// Generating sequence picked greedily: each step adds the element whose
/// inclusion grows the generated subgroup the most (smallest index on ties).
pub(crate) fn greedy_generating_sequence(group: &Arc<FiniteGroup>) -> Vec<Elem> {
    let mut gens: Vec<Elem> = Vec::new();
    let mut current = Subgroup::trivial(group);
    while !current.is_whole() {
        let mut best: Option<(usize, Elem, Subgroup)> = None;
        for e in group.elements() {
            if current.contains(e) {
                continue;
            }
            let mut seed = current.elements().to_vec();
            seed.push(e);
            let grown = Subgroup::generated(group, &seed).expect("seed elements are valid");
            let better = match &best {
                None => true,
                Some((sz, _, _)) => grown.order() > *sz,
            };
            if better {
                let full = grown.is_whole();
                best = Some((grown.order(), e, grown));
                if full {
                    break;
                }
            }
        }
        let (_, e, grown) = best.expect("a proper subgroup always has an outside element");
        gens.push(e);
        current = grown;
    }
    gens
}

/// Partial homomorphism with images known on a growing subgroup.
#[derive(Clone)]
struct PartialMap {
    /// Source element -> image, `Elem::MAX` when unknown.
    img: Vec<Elem>,
    /// Known-image source elements, in discovery order.
    known: Vec<Elem>,
    /// Target elements already used (enforces injectivity).
    used: Vec<bool>,
}

impl PartialMap {
    fn new(src_order: usize, dst_order: usize) -> PartialMap {
        let mut pm = PartialMap {
            img: vec![Elem::MAX; src_order],
            known: Vec::with_capacity(src_order),
            used: vec![false; dst_order],
        };
        pm.img[0] = 0;
        pm.known.push(0);
        pm.used[0] = true;
        pm
    }

    /// Records `g -> h` and closes under products with everything known.
    /// Returns false on any conflict (inconsistent image, injectivity breach,
    /// or profile mismatch).
    fn assign(
        &mut self,
        src: &FiniteGroup,
        dst: &FiniteGroup,
        src_profiles: &[Profile],
        dst_profiles: &[Profile],
        g: Elem,
        h: Elem,
    ) -> bool {
        if !self.push_pair(src_profiles, dst_profiles, g, h) {
            return false;
        }
        let mut i = self.known.len() - 1;
        while i < self.known.len() {
            let x = self.known[i];
            let fx = self.img[x as usize];
            let mut j = 0;
            while j < self.known.len() {
                let y = self.known[j];
                let fy = self.img[y as usize];
                if !self.propagate(src_profiles, dst_profiles, src.mul(x, y), dst.mul(fx, fy)) {
                    return false;
                }
                if !self.propagate(src_profiles, dst_profiles, src.mul(y, x), dst.mul(fy, fx)) {
                    return false;
                }
                j += 1;
            }
            i += 1;
        }
        true
    }

    fn propagate(
        &mut self,
        src_profiles: &[Profile],
        dst_profiles: &[Profile],
        x: Elem,
        y: Elem,
    ) -> bool {
        match self.img[x as usize] {
            Elem::MAX => self.push_pair(src_profiles, dst_profiles, x, y),
            existing => existing == y,
        }
    }

    fn push_pair(
        &mut self,
        src_profiles: &[Profile],
        dst_profiles: &[Profile],
        x: Elem,
        y: Elem,
    ) -> bool {
        if src_profiles[x as usize] != dst_profiles[y as usize] {
            return false;
        }
        if std::mem::replace(&mut self.used[y as usize], true) {
            return false;
        }
        self.img[x as usize] = y;
        self.known.push(x);
        true
    }

    fn is_total(&self) -> bool {
        self.known.len() == self.img.len()
    }
}

/// Drives the generator-image DFS. Calls `on_found` with each completed
/// isomorphism map (source order = map length); the first `Some` return stops
/// the search and is passed through.
pub(crate) struct IsomorphismSearch {
    src: Arc<FiniteGroup>,
    dst: Arc<FiniteGroup>,
    src_profiles: Vec<Profile>,
    dst_profiles: Vec<Profile>,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
}

impl IsomorphismSearch {
    /// `None` when cheap invariants already rule out any isomorphism.
    pub(crate) fn prepare(src: &Arc<FiniteGroup>, dst: &Arc<FiniteGroup>) -> Option<IsomorphismSearch> {
        if src.order() != dst.order() {
            return None;
        }
        let src_profiles = element_profiles(src);
        let dst_profiles = element_profiles(dst);
        let mut a = src_profiles.clone();
        let mut b = dst_profiles.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let gens = greedy_generating_sequence(src);
        let candidates: Vec<Vec<Elem>> = gens
            .iter()
            .map(|&g| {
                dst.elements()
                    .filter(|&h| dst_profiles[h as usize] == src_profiles[g as usize])
                    .collect()
            })
            .collect();
        Some(IsomorphismSearch {
            src: Arc::clone(src),
            dst: Arc::clone(dst),
            src_profiles,
            dst_profiles,
            gens,
            candidates,
        })
    }

    pub(crate) fn run<R>(
        &self,
        on_found: &mut impl FnMut(&[Elem]) -> Option<R>,
    ) -> Option<R> {
        let pm = PartialMap::new(self.src.order(), self.dst.order());
        self.dfs(0, &pm, on_found)
    }

    fn dfs<R>(
        &self,
        level: usize,
        pm: &PartialMap,
        on_found: &mut impl FnMut(&[Elem]) -> Option<R>,
    ) -> Option<R> {
        if level == self.gens.len() {
            debug_assert!(pm.is_total());
            return on_found(&pm.img);
        }
        let g = self.gens[level];
        for &h in &self.candidates[level] {
            if pm.used[h as usize] {
                continue;
            }
            let mut next = pm.clone();
            if next.assign(&self.src, &self.dst, &self.src_profiles, &self.dst_profiles, g, h) {
                if let Some(r) = self.dfs(level + 1, &next, on_found) {
                    return Some(r);
                }
            }
        }
        None
    }
}

/// First isomorphism `src -> dst` in canonical search order, as a raw map.
pub(crate) fn find_isomorphism_map(src: &Arc<FiniteGroup>, dst: &Arc<FiniteGroup>) -> Option<Vec<Elem>> {
    let search = IsomorphismSearch::prepare(src, dst)?;
    search.run(&mut |map: &[Elem]| Some(map.to_vec()))
}

/// Isomorphism test: abelian invariants when both sides are abelian, full
/// generator-image search otherwise.
pub fn are_isomorphic(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    if a.order() != b.order() {
        return false;
    }
    if a.is_abelian() && b.is_abelian() {
        let da = crate::abelian::cyclic_decomposition(a).expect("checked abelian");
        let db = crate::abelian::cyclic_decomposition(b).expect("checked abelian");
        return da.canonical_divisors() == db.canonical_divisors();
    }
    find_isomorphism_map(a, b).is_some()
}

/// All isomorphisms `src -> dst` as raw maps, in canonical search order.
#[cfg(test)]
pub(crate) fn all_isomorphism_maps(src: &Arc<FiniteGroup>, dst: &Arc<FiniteGroup>) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    if let Some(search) = IsomorphismSearch::prepare(src, dst) {
        search.run(&mut |map: &[Elem]| {
            out.push(map.to_vec());
            None::<()>
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn generating_sequences_generate() {
        for entry in catalog::catalog() {
            let g = &entry.group;
            if g.order() > 32 {
                continue;
            }
            let gens = greedy_generating_sequence(g);
            let span = Subgroup::generated(g, &gens).unwrap();
            assert!(span.is_whole(), "{}", entry.name);
            // Small generating sequences: a 2-group of order 2^k needs at
            // most k generators, everything else here far fewer.
            assert!(gens.len() <= 5, "{}: {:?}", entry.name, gens);
        }
    }

    #[test]
    fn d4_and_q8_are_not_isomorphic() {
        let d4 = catalog::make_dihedral(4).unwrap().into_shared();
        let q8 = catalog::make_quaternion(8).unwrap().into_shared();
        assert!(!are_isomorphic(&d4, &q8));
        assert!(are_isomorphic(&d4, &d4));
    }

    #[test]
    fn relabeled_group_is_isomorphic() {
        // C6 as C2 x C3 has a different table but the same structure.
        let c6 = catalog::make_cyclic(6).unwrap().into_shared();
        let c2xc3 = catalog::make_cyclic(2)
            .unwrap()
            .direct_product(&catalog::make_cyclic(3).unwrap())
            .unwrap()
            .into_shared();
        assert!(are_isomorphic(&c6, &c2xc3));
        let map = find_isomorphism_map(&c6, &c2xc3).unwrap();
        crate::hom::Homomorphism::new(c6, c2xc3, map).unwrap();
    }

    #[test]
    fn isomorphism_count_equals_automorphism_count() {
        let s3 = catalog::make_symmetric(3).unwrap().into_shared();
        assert_eq!(all_isomorphism_maps(&s3, &s3).len(), 6);
        let klein = catalog::make_elementary_abelian(2, 2).unwrap().into_shared();
        assert_eq!(all_isomorphism_maps(&klein, &klein).len(), 6);
    }
}
