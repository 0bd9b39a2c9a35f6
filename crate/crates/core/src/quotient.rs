//! Quotient groups over canonical (minimal-index) coset representatives.

use std::sync::Arc;

use crate::error::Result;
use crate::group::{Elem, FiniteGroup};
use crate::hom::Homomorphism;
use crate::subgroup::Subgroup;

/// A quotient `G/N` together with the projection and coset representatives.
///
/// Quotient element `q` stands for the coset whose minimal parent element is
/// `representatives[q]`; representatives are listed in ascending order, so
/// the identity coset is element 0 and the construction is canonical.
#[derive(Clone)]
pub struct QuotientData {
    pub quotient: Arc<FiniteGroup>,
    pub projection: Homomorphism,
    pub representatives: Vec<Elem>,
}

impl std::fmt::Debug for QuotientData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "QuotientData({}/{} = {})",
            self.projection.source().order(),
            self.projection.source().order() / self.quotient.order(),
            self.quotient.order()
        )
    }
}

impl QuotientData {
    #[inline]
    pub fn coset_of(&self, parent_elem: Elem) -> Elem {
        self.projection.apply(parent_elem)
    }

    #[inline]
    pub fn representative(&self, coset: Elem) -> Elem {
        self.representatives[coset as usize]
    }

    /// All parent elements of a coset, ascending.
    pub fn coset_members(&self, coset: Elem) -> Vec<Elem> {
        self.projection
            .source()
            .elements()
            .filter(|&g| self.coset_of(g) == coset)
            .collect()
    }
}

/// Quotient of `parent` by a normal subgroup.
pub fn quotient(parent: &Arc<FiniteGroup>, normal: &Subgroup) -> Result<QuotientData> {
    normal.check_normal()?;

    let n = parent.order();
    // coset_min[g] = minimal element of gN.
    let mut coset_min = vec![Elem::MAX; n];
    for g in parent.elements() {
        if coset_min[g as usize] != Elem::MAX {
            continue;
        }
        let members: Vec<Elem> = normal.elements().iter().map(|&s| parent.mul(g, s)).collect();
        let min = *members.iter().min().expect("cosets are nonempty");
        for m in members {
            coset_min[m as usize] = min;
        }
    }

    let mut representatives: Vec<Elem> = coset_min.clone();
    representatives.sort_unstable();
    representatives.dedup();
    debug_assert_eq!(representatives.len(), n / normal.order());
    debug_assert_eq!(representatives[0], 0);

    let mut coset_index = vec![0 as Elem; n];
    for (i, &r) in representatives.iter().enumerate() {
        coset_index[r as usize] = i as Elem;
    }
    let proj_map: Vec<Elem> = (0..n).map(|g| coset_index[coset_min[g] as usize]).collect();

    let k = representatives.len();
    let mut table = vec![0 as Elem; k * k];
    for i in 0..k {
        for j in 0..k {
            let p = parent.mul(representatives[i], representatives[j]);
            table[i * k + j] = proj_map[p as usize];
        }
    }
    let names = parent.names().map(|nm| {
        representatives.iter().map(|&r| format!("{}N", nm[r as usize])).collect()
    });
    let quotient_group = FiniteGroup::from_flat_table(k, table, names)?.into_shared();
    let projection = Homomorphism::new(Arc::clone(parent), Arc::clone(&quotient_group), proj_map)?;

    Ok(QuotientData { quotient: quotient_group, projection, representatives })
}

/// `G/gamma_2(G)`, the largest abelian quotient.
pub fn abelianization(parent: &Arc<FiniteGroup>) -> QuotientData {
    let derived = crate::series::lower_central(parent, 2);
    quotient(parent, &derived).expect("the derived subgroup is normal")
}
