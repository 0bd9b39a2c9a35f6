//! Structure theory of finite abelian groups: primary decomposition, cyclic
//! bases, and explicit Hom-group enumeration.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{gcd, prime_factors, Elem, FiniteGroup};
use crate::hom::Homomorphism;
use crate::quotient::quotient;
use crate::subgroup::Subgroup;

/// Hom-group enumeration is explicit by design; this caps runaway requests
/// like `Hom(C2^9, C2^9)` that no consumer of this crate needs.
const MAX_HOM_MEMBERS: u64 = 1 << 22;

fn check_abelian(group: &Arc<FiniteGroup>) -> Result<()> {
    match group.nonabelian_witness() {
        None => Ok(()),
        Some((a, b)) => Err(Error::NotAbelian { order: group.order(), a, b }),
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p >= 2 && prime_factors(p) == vec![p] {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { reason: format!("{p} is not prime") })
    }
}

/// Subgroup of elements whose order is a power of `p`.
pub fn primary_component(group: &Arc<FiniteGroup>, p: u64) -> Result<Subgroup> {
    check_abelian(group)?;
    check_prime(p)?;
    let elements: Vec<Elem> = group
        .elements()
        .filter(|&e| {
            let mut ord = group.element_order(e);
            while ord.is_multiple_of(p) {
                ord /= p;
            }
            ord == 1
        })
        .collect();
    Subgroup::new(group, elements)
}

/// Cyclic-factor decomposition of a finite abelian group.
#[derive(Debug, Clone)]
pub struct AbelianDecomposition {
    pub parent: Arc<FiniteGroup>,
    /// Prime -> descending list of p-power factor orders.
    pub primaries: BTreeMap<u64, Vec<u64>>,
    /// Prime -> generators of the factors, aligned with `primaries`.
    pub generators: BTreeMap<u64, Vec<Elem>>,
}

impl AbelianDecomposition {
    /// All prime-power factor orders as a sorted multiset; two finite abelian
    /// groups are isomorphic exactly when these lists agree.
    pub fn canonical_divisors(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.primaries.values().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Flat `(generator, order)` list across all primes, deterministic order.
    pub fn factors(&self) -> Vec<(Elem, u64)> {
        let mut out = Vec::new();
        for (p, orders) in &self.primaries {
            let gens = &self.generators[p];
            for (g, o) in gens.iter().zip(orders) {
                out.push((*g, *o));
            }
        }
        out
    }
}

/// Basis of an abelian p-group, greedy maximal-order extraction: pick a
/// maximal-order element, quotient by it, recurse, and lift each quotient
/// generator to a representative of the same order (one exists because the
/// first pick has maximal order).
fn p_group_basis(group: &Arc<FiniteGroup>) -> Vec<(Elem, u64)> {
    if group.order() == 1 {
        return Vec::new();
    }
    let g = group
        .elements()
        .max_by_key(|&e| (group.element_order(e), std::cmp::Reverse(e)))
        .unwrap();
    let g_order = group.element_order(g);
    let head = Subgroup::generated(group, &[g]).expect("cyclic subgroup");
    let q = quotient(group, &head).expect("abelian subgroups are normal");
    let mut basis = vec![(g, g_order)];
    for (qe, q_order) in p_group_basis(&q.quotient) {
        let lift = group
            .elements()
            .find(|&x| q.coset_of(x) == qe && group.element_order(x) == q_order)
            .expect("a maximal-order head guarantees an order-preserving representative");
        basis.push((lift, q_order));
    }
    basis
}

/// Greedy cyclic decomposition, one primary component at a time.
pub fn cyclic_decomposition(group: &Arc<FiniteGroup>) -> Result<AbelianDecomposition> {
    check_abelian(group)?;
    let mut primaries = BTreeMap::new();
    let mut generators = BTreeMap::new();
    for p in group.prime_support() {
        let component = primary_component(group, p)?;
        let component_group = component.as_group();
        let basis = p_group_basis(&component_group.group);
        let orders: Vec<u64> = basis.iter().map(|&(_, o)| o).collect();
        let gens: Vec<Elem> =
            basis.iter().map(|&(e, _)| component_group.to_parent[e as usize]).collect();
        primaries.insert(p, orders);
        generators.insert(p, gens);
    }
    Ok(AbelianDecomposition { parent: Arc::clone(group), primaries, generators })
}

/// True iff some element has order `|A|`.
pub fn is_cyclic(group: &Arc<FiniteGroup>) -> Result<bool> {
    check_abelian(group)?;
    let n = group.order() as u64;
    Ok(group.elements().any(|e| group.element_order(e) == n))
}

/// The abelian group of all homomorphisms `A -> B`, enumerated explicitly.
#[derive(Debug, Clone)]
pub struct HomGroup {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    /// All homomorphisms, sorted lexicographically by map array.
    pub members: Vec<Homomorphism>,
    /// Cyclic factor orders of the Hom-group as a sorted multiset of prime
    /// powers: `Hom(C_a, C_b) = C_gcd(a,b)` factor by factor.
    pub structure: Vec<u64>,
}

impl HomGroup {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `prod gcd(a_i, b_j)` over the cyclic factor orders of source and target.
    pub fn predicted_order(source_factors: &[u64], target_factors: &[u64]) -> u64 {
        source_factors
            .iter()
            .map(|&a| target_factors.iter().map(|&b| gcd(a, b)).product::<u64>())
            .product()
    }
}

/// Enumerates `Hom(A, B)` for abelian `A`, `B` by assigning each basis
/// generator of `A` (order `m`) to a target element of order dividing `m`.
pub fn hom_group(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Result<HomGroup> {
    check_abelian(source)?;
    check_abelian(target)?;
    let src_dec = cyclic_decomposition(source)?;
    let tgt_dec = cyclic_decomposition(target)?;
    let factors = src_dec.factors();

    let predicted = HomGroup::predicted_order(
        &factors.iter().map(|&(_, o)| o).collect::<Vec<_>>(),
        &tgt_dec.factors().iter().map(|&(_, o)| o).collect::<Vec<_>>(),
    );
    if predicted > MAX_HOM_MEMBERS {
        return Err(Error::ParameterOutOfRange {
            reason: format!("hom group would have {predicted} members"),
        });
    }

    // Structure: per-factor-pair gcd's, dropping trivial ones.
    let mut structure: Vec<u64> = Vec::new();
    for &(_, a) in &factors {
        for (_, b) in tgt_dec.factors() {
            let d = gcd(a, b);
            if d > 1 {
                structure.push(d);
            }
        }
    }
    structure.sort_unstable();

    // Exponent vector of every source element relative to the basis.
    let k = factors.len();
    let n = source.order();
    let mut exponents: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut digits = vec![0u32; k];
    loop {
        let mut x = 0 as Elem;
        for (i, &(g, _)) in factors.iter().enumerate() {
            for _ in 0..digits[i] {
                x = source.mul(x, g);
            }
        }
        debug_assert!(exponents[x as usize].is_empty() || n == 1);
        exponents[x as usize] = digits.clone();
        // Mixed-radix increment.
        let mut pos = 0;
        loop {
            if pos == k {
                break;
            }
            digits[pos] += 1;
            if (digits[pos] as u64) < factors[pos].1 {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }

    // Candidate images per generator: target elements of dividing order.
    let target_orders: Vec<u64> = target.elements().map(|e| target.element_order(e)).collect();
    let candidates: Vec<Vec<Elem>> = factors
        .iter()
        .map(|&(_, m)| {
            target.elements().filter(|&e| m % target_orders[e as usize] == 0).collect()
        })
        .collect();

    let mut members = Vec::with_capacity(predicted as usize);
    let mut choice = vec![0usize; k];
    loop {
        let images: Vec<Elem> = (0..k).map(|i| candidates[i][choice[i]]).collect();
        // Precompute image powers up to each factor order.
        let powers: Vec<Vec<Elem>> = (0..k)
            .map(|i| {
                let m = factors[i].1 as usize;
                let mut pw = Vec::with_capacity(m);
                let mut acc = 0 as Elem;
                for _ in 0..m {
                    pw.push(acc);
                    acc = target.mul(acc, images[i]);
                }
                pw
            })
            .collect();
        let map: Vec<Elem> = (0..n)
            .map(|x| {
                let mut v = 0 as Elem;
                for (i, &d) in exponents[x].iter().enumerate() {
                    v = target.mul(v, powers[i][d as usize]);
                }
                v
            })
            .collect();
        members.push(Homomorphism::from_checked_parts(
            Arc::clone(source),
            Arc::clone(target),
            map,
        ));

        if k == 0 {
            break;
        }
        let mut pos = 0;
        loop {
            if pos == k {
                break;
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }

    members.sort_unstable_by(|a, b| a.map().cmp(b.map()));
    debug_assert_eq!(members.len() as u64, predicted);

    Ok(HomGroup {
        source: Arc::clone(source),
        target: Arc::clone(target),
        members,
        structure,
    })
}

/// Verdict of the cyclicity criterion for Hom-groups of abelian p-groups:
/// with `exp(A) | exp(B)`, `Hom(A, B)` is isomorphic to `A` exactly when `B`
/// is cyclic. Both sides are computed independently; `agree` reports whether
/// the equivalence held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalyVerdict {
    pub hom_isomorphic_to_source: bool,
    pub target_cyclic: bool,
    pub agree: bool,
    pub hom_structure: Vec<u64>,
    pub source_structure: Vec<u64>,
}

pub fn maly_criterion(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Result<MalyVerdict> {
    check_abelian(source)?;
    check_abelian(target)?;
    let ps = source.prime_support();
    let pt = target.prime_support();
    if ps.len() > 1 {
        return Err(Error::MixedPrimes { left: ps[0], right: ps[1] });
    }
    if pt.len() > 1 {
        return Err(Error::MixedPrimes { left: pt[0], right: pt[1] });
    }
    if let (Some(&p), Some(&q)) = (ps.first(), pt.first()) {
        if p != q {
            return Err(Error::MixedPrimes { left: p, right: q });
        }
    }
    let src_exp = source.exponent();
    let tgt_exp = target.exponent();
    if !tgt_exp.is_multiple_of(src_exp) {
        return Err(Error::ExponentHypothesisFails { source_exp: src_exp, target_exp: tgt_exp });
    }

    let hom = hom_group(source, target)?;
    let source_structure = cyclic_decomposition(source)?.canonical_divisors();
    let hom_isomorphic_to_source = hom.structure == source_structure;
    let target_cyclic = is_cyclic(target)?;
    Ok(MalyVerdict {
        hom_isomorphic_to_source,
        target_cyclic,
        agree: hom_isomorphic_to_source == target_cyclic,
        hom_structure: hom.structure,
        source_structure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn named(name: &str) -> Arc<FiniteGroup> {
        Arc::clone(&catalog::catalog().iter().find(|e| e.name == name).unwrap().group)
    }

    #[test]
    fn primary_components_of_c6() {
        let c6 = catalog::make_cyclic(6).unwrap().into_shared();
        assert_eq!(primary_component(&c6, 2).unwrap().order(), 2);
        assert_eq!(primary_component(&c6, 3).unwrap().order(), 3);
        assert!(primary_component(&c6, 5).unwrap().is_trivial());
    }

    #[test]
    fn primary_component_of_c12xc2() {
        let g = catalog::make_cyclic(12)
            .unwrap()
            .direct_product(&catalog::make_cyclic(2).unwrap())
            .unwrap()
            .into_shared();
        assert_eq!(primary_component(&g, 2).unwrap().order(), 8);
    }

    #[test]
    fn rejects_nonabelian() {
        let d4 = catalog::make_dihedral(4).unwrap().into_shared();
        assert!(matches!(primary_component(&d4, 2), Err(Error::NotAbelian { .. })));
        assert!(matches!(cyclic_decomposition(&d4), Err(Error::NotAbelian { .. })));
        assert!(matches!(is_cyclic(&d4), Err(Error::NotAbelian { .. })));
    }

    #[test]
    fn decompositions() {
        let triv = catalog::make_cyclic(1).unwrap().into_shared();
        assert!(cyclic_decomposition(&triv).unwrap().primaries.is_empty());

        let klein = named("C2xC2");
        let d = cyclic_decomposition(&klein).unwrap();
        assert_eq!(d.primaries[&2], vec![2, 2]);

        let c12 = catalog::make_cyclic(12).unwrap().into_shared();
        let d = cyclic_decomposition(&c12).unwrap();
        assert_eq!(d.primaries[&2], vec![4]);
        assert_eq!(d.primaries[&3], vec![3]);
    }

    #[test]
    fn decomposition_invariants_on_catalog() {
        for entry in catalog::catalog() {
            let g = &entry.group;
            if !g.is_abelian() || g.order() > 32 {
                continue;
            }
            let d = cyclic_decomposition(g).unwrap();
            let product: u64 = d.canonical_divisors().iter().product::<u64>().max(1);
            assert_eq!(product, g.order() as u64, "{}", entry.name);
            for (p, orders) in &d.primaries {
                let gens = &d.generators[p];
                for (&gen, &ord) in gens.iter().zip(orders) {
                    assert_eq!(g.element_order(gen), ord, "{}", entry.name);
                }
                // Distinct factors intersect trivially.
                for i in 0..gens.len() {
                    for j in (i + 1)..gens.len() {
                        let a = Subgroup::generated(g, &[gens[i]]).unwrap();
                        let b = Subgroup::generated(g, &[gens[j]]).unwrap();
                        assert!(a.intersect(&b).is_trivial(), "{}", entry.name);
                    }
                }
                // The factors generate the primary component.
                let span = Subgroup::generated(g, gens).unwrap();
                assert_eq!(span, primary_component(g, *p).unwrap(), "{}", entry.name);
            }
        }
    }

    #[test]
    fn cyclicity() {
        assert!(is_cyclic(&catalog::make_cyclic(1).unwrap().into_shared()).unwrap());
        assert!(!is_cyclic(&named("C2xC2")).unwrap());
        // Coprime factor orders give a cyclic product.
        let c2xc3 = catalog::make_cyclic(2)
            .unwrap()
            .direct_product(&catalog::make_cyclic(3).unwrap())
            .unwrap()
            .into_shared();
        assert!(is_cyclic(&c2xc3).unwrap());
    }

    #[test]
    fn hom_group_sizes() {
        let c2 = catalog::make_cyclic(2).unwrap().into_shared();
        let c4 = catalog::make_cyclic(4).unwrap().into_shared();
        let triv = catalog::make_cyclic(1).unwrap().into_shared();
        let klein = named("C2xC2");

        assert_eq!(hom_group(&c4, &triv).unwrap().len(), 1);
        assert_eq!(hom_group(&c2, &c4).unwrap().len(), 2);

        let kk = hom_group(&klein, &klein).unwrap();
        assert_eq!(kk.len(), 16);
        assert_eq!(kk.structure, vec![2, 2, 2, 2]);

        // Hom(C4, Klein) has order 4 but exponent 2.
        let ck = hom_group(&c4, &klein).unwrap();
        assert_eq!(ck.len(), 4);
        assert_eq!(ck.structure, vec![2, 2]);
    }

    #[test]
    fn hom_members_are_closed_under_pointwise_product() {
        let c4 = catalog::make_cyclic(4).unwrap().into_shared();
        let klein = named("C2xC2");
        for (a, b) in [(&c4, &klein), (&klein, &c4), (&c4, &c4)] {
            let hom = hom_group(a, b).unwrap();
            let maps: std::collections::BTreeSet<Vec<Elem>> =
                hom.members.iter().map(|h| h.map().to_vec()).collect();
            assert!(maps.contains(&vec![0; a.order()]));
            for f in &hom.members {
                for g in &hom.members {
                    let prod: Vec<Elem> =
                        (0..a.order()).map(|x| b.mul(f.map()[x], g.map()[x])).collect();
                    assert!(maps.contains(&prod));
                }
            }
        }
    }

    #[test]
    fn maly_verdicts() {
        let c2 = catalog::make_cyclic(2).unwrap().into_shared();
        let c4 = catalog::make_cyclic(4).unwrap().into_shared();
        let klein = named("C2xC2");
        let c3 = catalog::make_cyclic(3).unwrap().into_shared();

        let v = maly_criterion(&c4, &c4).unwrap();
        assert!(v.hom_isomorphic_to_source && v.target_cyclic && v.agree);

        let v = maly_criterion(&klein, &c2).unwrap();
        assert!(v.hom_isomorphic_to_source && v.target_cyclic && v.agree);

        let v = maly_criterion(&c2, &klein).unwrap();
        assert!(!v.hom_isomorphic_to_source && !v.target_cyclic && v.agree);

        // exp(C4) = 4 does not divide exp(Klein) = 2.
        assert!(matches!(
            maly_criterion(&c4, &klein),
            Err(Error::ExponentHypothesisFails { source_exp: 4, target_exp: 2 })
        ));
        assert!(matches!(maly_criterion(&c2, &c3), Err(Error::MixedPrimes { .. })));
    }
}
