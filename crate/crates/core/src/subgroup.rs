//! Subgroups as validated element subsets of a shared parent group.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// A subgroup of a parent [`FiniteGroup`], stored as a sorted element set.
///
/// Construction validates closure under multiplication and inversion, so a
/// value of this type is always an actual subgroup. The parent is shared via
/// `Arc`, which keeps clones cheap and the whole structure thread-safe.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<Elem>,
    member_mask: Vec<bool>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.elements.len(), self.parent.order())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.order() == other.parent.order() && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Validates `elements` as a subgroup of `parent`.
    pub fn new(parent: &Arc<FiniteGroup>, elements: Vec<Elem>) -> Result<Subgroup> {
        let mut elems = elements;
        elems.sort_unstable();
        elems.dedup();
        let mut mask = vec![false; parent.order()];
        for &e in &elems {
            parent.check_element(e)?;
            mask[e as usize] = true;
        }
        if elems.first() != Some(&0) {
            return Err(Error::MissingIdentity);
        }
        for &a in &elems {
            if !mask[parent.inv(a) as usize] {
                return Err(Error::NotClosed { a, b: parent.inv(a) });
            }
            for &b in &elems {
                if !mask[parent.mul(a, b) as usize] {
                    return Err(Error::NotClosed { a, b });
                }
            }
        }
        Ok(Subgroup { parent: Arc::clone(parent), elements: elems, member_mask: mask })
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::new(parent, vec![0]).expect("trivial subgroup is always valid")
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::new(parent, parent.elements().collect()).expect("whole group is a subgroup")
    }

    /// Smallest subgroup containing `seed`: worklist closure under products
    /// and inversion. An empty seed yields the trivial subgroup.
    pub fn generated(parent: &Arc<FiniteGroup>, seed: &[Elem]) -> Result<Subgroup> {
        for &e in seed {
            parent.check_element(e)?;
        }
        let mut mask = vec![false; parent.order()];
        let mut members: Vec<Elem> = vec![0];
        mask[0] = true;
        for &e in seed {
            if !mask[e as usize] {
                mask[e as usize] = true;
                members.push(e);
            }
        }
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            let xi = parent.inv(x);
            if !mask[xi as usize] {
                mask[xi as usize] = true;
                members.push(xi);
            }
            let mut j = 0;
            while j < members.len() {
                let y = members[j];
                for v in [parent.mul(x, y), parent.mul(y, x)] {
                    if !mask[v as usize] {
                        mask[v as usize] = true;
                        members.push(v);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        members.sort_unstable();
        Ok(Subgroup { parent: Arc::clone(parent), elements: members, member_mask: mask })
    }

    /// `{ z : zg = gz for all g }`.
    pub fn center(parent: &Arc<FiniteGroup>) -> Subgroup {
        let elements: Vec<Elem> = parent
            .elements()
            .filter(|&z| parent.elements().all(|g| parent.mul(z, g) == parent.mul(g, z)))
            .collect();
        let mut mask = vec![false; parent.order()];
        for &e in &elements {
            mask[e as usize] = true;
        }
        Subgroup { parent: Arc::clone(parent), elements, member_mask: mask }
    }

    /// Centralizer of a single element.
    pub fn centralizer(parent: &Arc<FiniteGroup>, e: Elem) -> Subgroup {
        let elements: Vec<Elem> = parent
            .elements()
            .filter(|&g| parent.mul(g, e) == parent.mul(e, g))
            .collect();
        let mut mask = vec![false; parent.order()];
        for &x in &elements {
            mask[x as usize] = true;
        }
        Subgroup { parent: Arc::clone(parent), elements, member_mask: mask }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.member_mask[e as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// First `(g, s)` with `g^-1 s g` outside the subgroup, if any.
    pub fn normality_witness(&self) -> Option<(Elem, Elem)> {
        for g in self.parent.elements() {
            for &s in &self.elements {
                if !self.contains(self.parent.conjugate(s, g)) {
                    return Some((g, s));
                }
            }
        }
        None
    }

    pub fn check_normal(&self) -> Result<()> {
        match self.normality_witness() {
            None => Ok(()),
            Some((g, s)) => Err(Error::NotNormal { conjugator: g, element: s }),
        }
    }

    pub fn is_central(&self) -> bool {
        self.elements.iter().all(|&z| {
            self.parent.elements().all(|g| self.parent.mul(z, g) == self.parent.mul(g, z))
        })
    }

    pub fn check_central(&self) -> Result<()> {
        for &z in &self.elements {
            if self.parent.elements().any(|g| self.parent.mul(z, g) != self.parent.mul(g, z)) {
                return Err(Error::NotCentral { element: z, order: self.order() });
            }
        }
        Ok(())
    }

    /// Intersection with another subgroup of the same parent.
    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elements: Vec<Elem> =
            self.elements.iter().copied().filter(|&e| other.contains(e)).collect();
        let mut mask = vec![false; self.parent.order()];
        for &e in &elements {
            mask[e as usize] = true;
        }
        Subgroup { parent: Arc::clone(&self.parent), elements, member_mask: mask }
    }

    /// The subgroup as a standalone group over indices `0..order`, together
    /// with the translation maps. Element `i` of the result is
    /// `elements()[i]`; the identity stays at index 0 because the parent
    /// identity is the minimal element.
    pub fn as_group(&self) -> SubgroupGroup {
        let k = self.elements.len();
        let mut from_parent = vec![u16::MAX; self.parent.order()];
        for (i, &e) in self.elements.iter().enumerate() {
            from_parent[e as usize] = i as Elem;
        }
        let mut table = vec![0 as Elem; k * k];
        for i in 0..k {
            for j in 0..k {
                let p = self.parent.mul(self.elements[i], self.elements[j]);
                table[i * k + j] = from_parent[p as usize];
            }
        }
        let names = self.parent.names().map(|n| {
            self.elements.iter().map(|&e| n[e as usize].clone()).collect()
        });
        let group = FiniteGroup::from_flat_table(k, table, names)
            .expect("a validated subgroup induces a valid group table")
            .into_shared();
        SubgroupGroup { group, to_parent: self.elements.clone(), from_parent }
    }
}

/// A subgroup re-indexed as a standalone [`FiniteGroup`].
#[derive(Debug, Clone)]
pub struct SubgroupGroup {
    pub group: Arc<FiniteGroup>,
    /// Subgroup index -> parent element.
    pub to_parent: Vec<Elem>,
    /// Parent element -> subgroup index, `u16::MAX` for non-members.
    from_parent: Vec<Elem>,
}

impl SubgroupGroup {
    #[inline]
    pub fn index_of(&self, parent_elem: Elem) -> Option<Elem> {
        match self.from_parent[parent_elem as usize] {
            Elem::MAX => None,
            i => Some(i),
        }
    }
}
