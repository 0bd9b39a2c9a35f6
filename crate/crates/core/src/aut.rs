//! Automorphism groups of small finite groups and the restricted subgroups
//! cut out by normal-subgroup data: pointwise stabilizers, trivial-action
//! subgroups, and class-preserving automorphisms.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, MAX_ORDER};
use crate::hom::{Automorphism, Homomorphism};
use crate::quotient::{quotient, QuotientData};
use crate::search::IsomorphismSearch;
use crate::series::{lower_central, upper_central};
use crate::subgroup::{Subgroup, SubgroupGroup};

/// An explicit collection of automorphisms of a common base group, in
/// canonical (lexicographic-by-map) order.
#[derive(Clone)]
pub struct AutomorphismGroup {
    pub base: Arc<FiniteGroup>,
    pub members: Vec<Automorphism>,
    /// Verified witness that the members form a group: the closure of the
    /// member set under composition equals the set itself.
    pub closed: bool,
}

impl std::fmt::Debug for AutomorphismGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AutomorphismGroup(|G|={}, {} members)", self.base.order(), self.members.len())
    }
}

impl AutomorphismGroup {
    pub fn from_members(base: &Arc<FiniteGroup>, mut members: Vec<Automorphism>) -> AutomorphismGroup {
        members.sort_unstable();
        members.dedup();
        let closed = verify_closed(base, &members);
        AutomorphismGroup { base: Arc::clone(base), members, closed }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &Automorphism) -> bool {
        self.members.binary_search(f).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &AutomorphismGroup) -> bool {
        self.members.iter().all(|f| other.contains(f))
    }

    pub fn same_members(&self, other: &AutomorphismGroup) -> bool {
        self.members == other.members
    }

    /// The collection as an abstract group: composition table over member
    /// indices. Member 0 is the identity (it sorts first), so the table is a
    /// valid group table as-is.
    pub fn composition_table(&self) -> Result<Arc<FiniteGroup>> {
        let k = self.members.len();
        if k > MAX_ORDER {
            return Err(Error::OrderLimitExceeded { order: k, max: MAX_ORDER });
        }
        let index: std::collections::BTreeMap<&[Elem], usize> =
            self.members.iter().enumerate().map(|(i, m)| (m.map(), i)).collect();
        let mut table = vec![0 as Elem; k * k];
        for (i, f) in self.members.iter().enumerate() {
            for (j, g) in self.members.iter().enumerate() {
                let composed = f.compose(g);
                let idx = index
                    .get(composed.map())
                    .ok_or(Error::NotClosed { a: i as Elem, b: j as Elem })?;
                table[i * k + j] = *idx as Elem;
            }
        }
        Ok(FiniteGroup::from_flat_table(k, table, None)?.into_shared())
    }
}

/// Closure witness: composing members never leaves the set, checked by
/// generating the group from a small generating subset and comparing.
fn verify_closed(base: &Arc<FiniteGroup>, members: &[Automorphism]) -> bool {
    let set: BTreeSet<&[Elem]> = members.iter().map(|m| m.map()).collect();
    if set.len() != members.len() || !set.contains(Automorphism::identity(base).map()) {
        return false;
    }
    let mut generated: BTreeSet<Vec<Elem>> = BTreeSet::new();
    generated.insert(Automorphism::identity(base).map().to_vec());
    let mut gens: Vec<&Automorphism> = Vec::new();
    for m in members {
        if generated.contains(m.map()) {
            continue;
        }
        gens.push(m);
        // Re-close under all generators found so far.
        let mut queue: Vec<Vec<Elem>> = generated.iter().cloned().collect();
        while let Some(x) = queue.pop() {
            for g in &gens {
                let composed: Vec<Elem> = g.map().iter().map(|&v| x[v as usize]).collect();
                if !set.contains(composed.as_slice()) {
                    return false;
                }
                if generated.insert(composed.clone()) {
                    queue.push(composed);
                }
            }
        }
    }
    generated.len() == members.len()
}

/// Full automorphism group by generator-image backtracking.
pub fn automorphism_group(group: &Arc<FiniteGroup>) -> Result<AutomorphismGroup> {
    if group.order() > MAX_ORDER {
        return Err(Error::OrderLimitExceeded { order: group.order(), max: MAX_ORDER });
    }
    let search = IsomorphismSearch::prepare(group, group)
        .expect("a group always has at least the identity self-isomorphism");
    let mut members = Vec::new();
    search.run(&mut |map: &[Elem]| {
        members.push(Automorphism::from_checked_parts(Arc::clone(group), map.to_vec()));
        None::<()>
    });
    Ok(AutomorphismGroup::from_members(group, members))
}

/// `{conjugation by g : g in G}`; order `|G| / |Z(G)|`.
pub fn inner_automorphism_group(group: &Arc<FiniteGroup>) -> AutomorphismGroup {
    let members: Vec<Automorphism> =
        group.elements().map(|g| Automorphism::conjugation_by(group, g)).collect();
    AutomorphismGroup::from_members(group, members)
}

pub(crate) fn check_member_of_restricted(
    f: &Automorphism,
    fixed: &Subgroup,
    acts_trivially_mod: &Subgroup,
) -> Result<()> {
    for &e in fixed.elements() {
        if f.apply(e) != e {
            return Err(Error::NotMember { element: e });
        }
    }
    let g = f.group();
    for x in g.elements() {
        if !acts_trivially_mod.contains(g.mul(g.inv(x), f.apply(x))) {
            return Err(Error::NotMember { element: x });
        }
    }
    // Setwise fixing of M. Implied by trivial action modulo M, but the
    // definition states it separately, so it is checked separately.
    for &m in acts_trivially_mod.elements() {
        if !acts_trivially_mod.contains(f.apply(m)) {
            return Err(Error::NotMember { element: m });
        }
    }
    Ok(())
}

fn is_member_of_restricted(f: &Automorphism, fixed: &Subgroup, acts_trivially_mod: &Subgroup) -> bool {
    check_member_of_restricted(f, fixed, acts_trivially_mod).is_ok()
}

/// `Aut_N^M(G)`: automorphisms fixing `N` pointwise (and `M` setwise) that
/// act trivially on `G/M`, filtered from a precomputed `Aut(G)`.
pub fn aut_subgroup_in(
    aut: &AutomorphismGroup,
    trivial_mod: &Subgroup, // M
    fixed: &Subgroup,       // N
) -> Result<AutomorphismGroup> {
    trivial_mod.check_normal()?;
    fixed.check_normal()?;
    let members: Vec<Automorphism> = aut
        .members
        .iter()
        .filter(|f| is_member_of_restricted(f, fixed, trivial_mod))
        .cloned()
        .collect();
    Ok(AutomorphismGroup::from_members(&aut.base, members))
}

/// `Aut_N^M(G)`, computing `Aut(G)` on demand. Degenerate shapes skip the
/// full enumeration: trivial `M` forces the identity map, as does `N = G`.
pub fn aut_subgroup(group: &Arc<FiniteGroup>, trivial_mod: &Subgroup, fixed: &Subgroup) -> Result<AutomorphismGroup> {
    trivial_mod.check_normal()?;
    fixed.check_normal()?;
    if trivial_mod.is_trivial() || fixed.is_whole() {
        let members = vec![Automorphism::identity(group)];
        return Ok(AutomorphismGroup::from_members(group, members));
    }
    aut_subgroup_in(&automorphism_group(group)?, trivial_mod, fixed)
}

/// `Aut_{Z_n(G)}^{gamma_{n+1}(G)}(G)`, the subgroup the isoclinism transport
/// acts on.
pub fn aut_gamma_z(group: &Arc<FiniteGroup>, n: usize) -> Result<AutomorphismGroup> {
    let gamma = lower_central(group, n + 1);
    let z = upper_central(group, n);
    aut_subgroup(group, &gamma, &z)
}

fn is_nth_class_preserving(f: &Automorphism, gamma_n: &Subgroup) -> bool {
    let g = f.group();
    g.elements().all(|x| {
        let fx = f.apply(x);
        gamma_n.elements().iter().any(|&w| g.conjugate(x, w) == fx)
    })
}

/// `Aut_c^n(G)`: automorphisms sending every `g` to a conjugate `x^-1 g x`
/// with witness `x` in `gamma_n(G)` (the witness may depend on `g`).
pub fn nth_class_preserving(group: &Arc<FiniteGroup>, n: usize) -> Result<AutomorphismGroup> {
    if n < 1 {
        return Err(Error::ParameterOutOfRange { reason: "class preserving needs n >= 1".into() });
    }
    if group.is_abelian() {
        // Conjugation is trivial, so only the identity qualifies.
        return Ok(AutomorphismGroup::from_members(group, vec![Automorphism::identity(group)]));
    }
    nth_class_preserving_in(&automorphism_group(group)?, n)
}

pub fn nth_class_preserving_in(aut: &AutomorphismGroup, n: usize) -> Result<AutomorphismGroup> {
    if n < 1 {
        return Err(Error::ParameterOutOfRange { reason: "class preserving needs n >= 1".into() });
    }
    let gamma_n = lower_central(&aut.base, n);
    let members: Vec<Automorphism> = aut
        .members
        .iter()
        .filter(|f| is_nth_class_preserving(f, &gamma_n))
        .cloned()
        .collect();
    Ok(AutomorphismGroup::from_members(&aut.base, members))
}

/// The homomorphism `G/N -> M` attached to `f` in `Aut_N^M(G)` for central
/// `M`: `gN -> g^-1 f(g)`.
pub struct QuotientHom {
    pub quotient: QuotientData,
    pub target: SubgroupGroup,
    pub hom: Homomorphism,
}

pub fn t2_alpha(
    group: &Arc<FiniteGroup>,
    trivial_mod: &Subgroup, // M, central
    fixed: &Subgroup,       // N
    f: &Automorphism,
) -> Result<QuotientHom> {
    trivial_mod.check_central()?;
    fixed.check_normal()?;
    check_member_of_restricted(f, fixed, trivial_mod)?;

    let q = quotient(group, fixed)?;
    let target = trivial_mod.as_group();
    let displacement = |g: Elem| group.mul(group.inv(g), f.apply(g));
    let map: Vec<Elem> = q
        .representatives
        .iter()
        .map(|&rep| {
            target
                .index_of(displacement(rep))
                .expect("members of the restricted subgroup displace into M")
        })
        .collect();
    // Well-definedness across each whole coset, not just the representative.
    for g in group.elements() {
        let via_rep = map[q.coset_of(g) as usize];
        let direct = target.index_of(displacement(g)).ok_or(Error::NotMember { element: g })?;
        if via_rep != direct {
            return Err(Error::NotMember { element: g });
        }
    }
    let hom = Homomorphism::new(Arc::clone(&q.quotient), Arc::clone(&target.group), map)?;
    Ok(QuotientHom { quotient: q, target, hom })
}

/// Inverse direction of the correspondence: a homomorphism
/// `chi : G/N -> M` with `M <= N` central induces the automorphism
/// `g -> g * chi(gN)` lying in `Aut_N^M(G)`.
pub fn t2_inverse(
    group: &Arc<FiniteGroup>,
    trivial_mod: &Subgroup, // M
    fixed: &Subgroup,       // N
    chi: &Homomorphism,
) -> Result<Automorphism> {
    trivial_mod.check_central().map_err(|_| Error::HypothesisFails {
        reason: "M must be central".into(),
    })?;
    if !trivial_mod.is_subgroup_of(fixed) {
        return Err(Error::HypothesisFails { reason: "M must be contained in N".into() });
    }
    fixed.check_normal()?;
    let q = quotient(group, fixed)?;
    let target = trivial_mod.as_group();
    if chi.source().table_rows() != q.quotient.table_rows()
        || chi.target().table_rows() != target.group.table_rows()
    {
        return Err(Error::WrongDomains);
    }
    let map: Vec<Elem> = group
        .elements()
        .map(|g| group.mul(g, target.to_parent[chi.apply(q.coset_of(g)) as usize]))
        .collect();
    Automorphism::new(group, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn shared(name: &str) -> Arc<FiniteGroup> {
        Arc::clone(&catalog::find_entry(name).unwrap().group)
    }

    #[test]
    fn trivial_group_has_one_automorphism() {
        let triv = catalog::make_cyclic(1).unwrap().into_shared();
        let aut = automorphism_group(&triv).unwrap();
        assert_eq!(aut.len(), 1);
        assert!(aut.closed);
    }

    #[test]
    fn klein_four_has_six_automorphisms() {
        let klein = shared("C2xC2");
        let aut = automorphism_group(&klein).unwrap();
        assert_eq!(aut.len(), 6);
        assert!(aut.closed);
    }

    #[test]
    fn q8_has_twenty_four_automorphisms() {
        let q8 = shared("Q8");
        let aut = automorphism_group(&q8).unwrap();
        assert_eq!(aut.len(), 24);
        assert!(aut.closed);
    }

    #[test]
    fn cyclic_automorphism_counts() {
        // |Aut(C_n)| = phi(n).
        for (n, phi) in [(1usize, 1usize), (4, 2), (6, 2), (8, 4), (12, 4)] {
            let g = catalog::make_cyclic(n).unwrap().into_shared();
            assert_eq!(automorphism_group(&g).unwrap().len(), phi, "C{n}");
        }
    }

    #[test]
    fn inner_automorphism_counts() {
        assert_eq!(inner_automorphism_group(&shared("C6")).len(), 1);
        assert_eq!(inner_automorphism_group(&shared("D4")).len(), 4);
        assert_eq!(inner_automorphism_group(&shared("S3")).len(), 6);
    }

    #[test]
    fn aut_subgroup_degenerate_shapes() {
        let d4 = shared("D4");
        let aut = automorphism_group(&d4).unwrap();
        assert_eq!(aut.len(), 8);
        // M = G, N = trivial: no constraint.
        let all = aut_subgroup(&d4, &Subgroup::whole(&d4), &Subgroup::trivial(&d4)).unwrap();
        assert_eq!(all.len(), 8);
        // M trivial: identity only.
        let only_id =
            aut_subgroup(&d4, &Subgroup::trivial(&d4), &Subgroup::trivial(&d4)).unwrap();
        assert_eq!(only_id.len(), 1);
        assert!(only_id.members[0].is_identity());
    }

    #[test]
    fn d4_central_restricted_subgroup() {
        let d4 = shared("D4");
        let gamma2 = lower_central(&d4, 2);
        let z = Subgroup::center(&d4);
        let sub = aut_subgroup(&d4, &gamma2, &z).unwrap();
        assert_eq!(sub.len(), 4);
        assert!(sub.closed);
    }

    #[test]
    fn aut_subgroup_rejects_non_normal() {
        let s3 = shared("S3");
        let t = s3.elements().find(|&e| s3.element_order(e) == 2).unwrap();
        let refl = Subgroup::generated(&s3, &[t]).unwrap();
        assert!(matches!(
            aut_subgroup(&s3, &refl, &Subgroup::trivial(&s3)),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn class_preserving_abelian_is_identity_only() {
        let c6 = shared("C6");
        let cp = nth_class_preserving(&c6, 1).unwrap();
        assert_eq!(cp.len(), 1);
    }

    #[test]
    fn class_preserving_d4() {
        let d4 = shared("D4");
        let cp1 = nth_class_preserving(&d4, 1).unwrap();
        let inn = inner_automorphism_group(&d4);
        assert_eq!(cp1.len(), 4);
        assert!(cp1.same_members(&inn));
        // Witnesses from gamma_2 = Z(D4) conjugate trivially.
        let cp2 = nth_class_preserving(&d4, 2).unwrap();
        assert_eq!(cp2.len(), 1);
    }

    #[test]
    fn t2_alpha_identity_gives_zero_map() {
        let d4 = shared("D4");
        let z = Subgroup::center(&d4);
        let gamma2 = lower_central(&d4, 2);
        let alpha = t2_alpha(&d4, &gamma2, &z, &Automorphism::identity(&d4)).unwrap();
        assert!(alpha.hom.map().iter().all(|&v| v == 0));
    }

    #[test]
    fn t2_alpha_of_conjugation_by_r() {
        let d4 = shared("D4");
        let z = Subgroup::center(&d4);
        let gamma2 = lower_central(&d4, 2);
        let f = Automorphism::conjugation_by(&d4, 1);
        let alpha = t2_alpha(&d4, &gamma2, &z, &f).unwrap();
        // alpha_f(gZ) = [g, r]: the coset of s maps to r^2, the coset of r
        // to the identity; cosets of the identity always map to it.
        let s_coset = alpha.quotient.coset_of(4);
        let r_coset = alpha.quotient.coset_of(1);
        assert_eq!(alpha.target.to_parent[alpha.hom.apply(s_coset) as usize], d4.commutator(4, 1));
        assert_eq!(d4.commutator(4, 1), 2);
        assert_eq!(alpha.hom.apply(r_coset), 0);
        for &n in z.elements() {
            assert_eq!(alpha.hom.apply(alpha.quotient.coset_of(n)), 0);
        }
    }

    #[test]
    fn t2_alpha_rejects_non_members() {
        let d4 = shared("D4");
        let gamma2 = lower_central(&d4, 2);
        // Conjugation by r does not fix N = G pointwise.
        let f = Automorphism::conjugation_by(&d4, 1);
        assert!(matches!(
            t2_alpha(&d4, &gamma2, &Subgroup::whole(&d4), &f),
            Err(Error::NotMember { .. })
        ));
        // M must be central.
        let s3 = shared("S3");
        let g2 = lower_central(&s3, 2);
        assert!(matches!(
            t2_alpha(&s3, &g2, &Subgroup::trivial(&s3), &Automorphism::identity(&s3)),
            Err(Error::NotCentral { .. })
        ));
    }

    #[test]
    fn t2_inverse_round_trip_on_d4() {
        let d4 = shared("D4");
        let z = Subgroup::center(&d4);
        let homs = crate::abelian::hom_group(
            &quotient(&d4, &z).unwrap().quotient,
            &z.as_group().group,
        )
        .unwrap();
        assert_eq!(homs.len(), 4);
        let mut images = BTreeSet::new();
        for chi in &homs.members {
            let f = t2_inverse(&d4, &z, &z, chi).unwrap();
            assert!(is_member_of_restricted(&f, &z, &z));
            let back = t2_alpha(&d4, &z, &z, &f).unwrap();
            assert_eq!(back.hom.map(), chi.map());
            images.insert(f.map().to_vec());
        }
        assert_eq!(images.len(), 4);
        // chi = zero map gives the identity automorphism.
        let zero = &homs.members[0];
        assert!(zero.map().iter().all(|&v| v == 0));
        assert!(t2_inverse(&d4, &z, &z, zero).unwrap().is_identity());
    }

    #[test]
    fn t2_inverse_hypothesis_checks() {
        let d4 = shared("D4");
        let z = Subgroup::center(&d4);
        let q = quotient(&d4, &Subgroup::trivial(&d4)).unwrap();
        let chi = Homomorphism::zero(&q.quotient, &z.as_group().group);
        // M = Z not contained in N = trivial.
        assert!(matches!(
            t2_inverse(&d4, &z, &Subgroup::trivial(&d4), &chi),
            Err(Error::HypothesisFails { .. })
        ));
    }

    #[test]
    fn composition_table_of_inner_d4() {
        let d4 = shared("D4");
        let inn = inner_automorphism_group(&d4);
        let table = inn.composition_table().unwrap();
        assert_eq!(table.order(), 4);
        assert_eq!(table.exponent(), 2); // Inn(D4) is the Klein four group
    }
}
