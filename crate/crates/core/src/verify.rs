//! Exhaustive verification suites over the catalog, plus the independent
//! brute-force oracles the cheap algorithms are checked against.
//!
//! Each suite quantifies a theorem statement over every applicable catalog
//! instance up to a per-run order bound and reports one pass/fail instance
//! at a time. Reports are fully deterministic: instances are generated in
//! catalog order and sorted by id, and no timing or environment data is
//! included.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::abelian::{hom_group, maly_criterion, HomGroup};
use crate::aut::{
    aut_subgroup_in, automorphism_group, nth_class_preserving, nth_class_preserving_in, t2_alpha,
    AutomorphismGroup,
};
use crate::catalog::{catalog, CatalogEntry};
use crate::error::Result;
use crate::group::{Elem, FiniteGroup};
use crate::hom::Automorphism;
use crate::isoclinism::{find_n_isoclinism, hekster_invariant_check, psi, t5_verdict};
use crate::quotient::{abelianization, quotient};
use crate::series::{CentralSeries, Nilpotency, nilpotency_class};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_order: usize,
    pub total: usize,
    pub failed: usize,
    pub instances: Vec<InstanceReport>,
}

impl SuiteReport {
    fn new(suite: &str, max_order: usize) -> SuiteReport {
        SuiteReport { suite: suite.into(), max_order, total: 0, failed: 0, instances: Vec::new() }
    }

    fn push(&mut self, id: String, passed: bool, detail: String) {
        self.total += 1;
        if !passed {
            self.failed += 1;
        }
        self.instances.push(InstanceReport { id, passed, detail });
    }

    fn finalize(mut self) -> SuiteReport {
        self.instances.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn entries_up_to(max_order: usize) -> impl Iterator<Item = &'static CatalogEntry> {
    catalog().iter().filter(move |e| e.group.order() <= max_order)
}

fn format_elements(sub: &Subgroup) -> String {
    let inner: Vec<String> = sub.elements().iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Candidate normal subgroups for the correspondence suite: lower and upper
/// central terms, the center, and every cyclic central subgroup.
fn normal_pool(group: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut pool: BTreeMap<Vec<Elem>, Subgroup> = BTreeMap::new();
    let mut add = |s: Subgroup| {
        pool.entry(s.elements().to_vec()).or_insert(s);
    };
    for term in &CentralSeries::lower(group).terms {
        add(term.clone());
    }
    for term in &CentralSeries::upper(group).terms {
        add(term.clone());
    }
    let center = Subgroup::center(group);
    for &z in center.elements() {
        add(Subgroup::generated(group, &[z]).expect("cyclic central subgroup"));
    }
    add(center);
    let mut out: Vec<Subgroup> = pool.into_values().collect();
    out.sort_by_key(|s| (s.order(), s.elements().to_vec()));
    out
}

/// All subgroups of the parent lying inside `container` (which must be a
/// subgroup closed under the parent operations), by join-closure from
/// cyclic subgroups.
fn subgroups_within(container: &Subgroup) -> Vec<Subgroup> {
    let parent = container.parent();
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let trivial = Subgroup::trivial(parent);
    seen.insert(trivial.elements().to_vec());
    let mut queue = vec![trivial];
    let mut out = Vec::new();
    while let Some(s) = queue.pop() {
        out.push(s.clone());
        for &z in container.elements() {
            let mut seed = s.elements().to_vec();
            seed.push(z);
            let grown = Subgroup::generated(parent, &seed).expect("valid seed");
            if seen.insert(grown.elements().to_vec()) {
                queue.push(grown);
            }
        }
    }
    out.sort_by_key(|s| (s.order(), s.elements().to_vec()));
    out
}

/// Correspondence suite: for every catalog group and every central `M`
/// inside a normal `N` (both from the computed pool),
/// `|Aut_N^M(G)| = |Hom(G/N, M)|` and the displacement map `f -> alpha_f`
/// is a bijective homomorphism onto the Hom-group.
pub fn t2_suite(max_order: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("t2", max_order);
    for entry in entries_up_to(max_order) {
        let g = &entry.group;
        let aut = automorphism_group(g)?;
        let pool = normal_pool(g);
        for m in pool.iter().filter(|m| m.is_central()) {
            for n_sub in pool.iter().filter(|n| m.is_subgroup_of(n)) {
                let id = format!(
                    "{} M={} N={}",
                    entry.name,
                    format_elements(m),
                    format_elements(n_sub)
                );
                let (passed, detail) = check_t2_instance(g, &aut, m, n_sub)?;
                report.push(id, passed, detail);
            }
        }
    }
    Ok(report.finalize())
}

fn check_t2_instance(
    g: &Arc<FiniteGroup>,
    aut: &AutomorphismGroup,
    m: &Subgroup,
    n_sub: &Subgroup,
) -> Result<(bool, String)> {
    let restricted = aut_subgroup_in(aut, m, n_sub)?;
    let q = quotient(g, n_sub)?;
    let m_group = m.as_group();

    // Hom(G/N, M) via the largest abelian quotient of G/N, lifted back.
    let ab = abelianization(&q.quotient);
    let homs = hom_group(&ab.quotient, &m_group.group)?;
    let lifted: BTreeSet<Vec<Elem>> = homs
        .members
        .iter()
        .map(|h| q.quotient.elements().map(|x| h.apply(ab.projection.apply(x))).collect())
        .collect();

    let mut images: Vec<Vec<Elem>> = Vec::with_capacity(restricted.len());
    for f in &restricted.members {
        images.push(t2_alpha(g, m, n_sub, f)?.hom.map().to_vec());
    }
    let image_set: BTreeSet<Vec<Elem>> = images.iter().cloned().collect();
    let injective = image_set.len() == restricted.len();
    let surjective = image_set == lifted;

    // phi(f1 . f2) = phi(f1) * phi(f2) pointwise in the Hom-group.
    let mut homomorphic = true;
    'outer: for (i, f1) in restricted.members.iter().enumerate() {
        for (j, f2) in restricted.members.iter().enumerate() {
            let composed = f1.compose(f2);
            // A composition escaping the subgroup is itself a failure.
            let Ok(composed_alpha) = t2_alpha(g, m, n_sub, &composed) else {
                homomorphic = false;
                break 'outer;
            };
            let pointwise: Vec<Elem> = (0..q.quotient.order())
                .map(|x| m_group.group.mul(images[i][x], images[j][x]))
                .collect();
            if composed_alpha.hom.map() != pointwise.as_slice() {
                homomorphic = false;
                break 'outer;
            }
        }
    }

    let counts_match = restricted.len() == homs.len();
    let passed = counts_match && injective && surjective && homomorphic && restricted.closed;
    let detail = format!(
        "|Aut_N^M|={} |Hom(G/N,M)|={} injective={injective} onto={surjective} homomorphic={homomorphic} closed={}",
        restricted.len(),
        homs.len(),
        restricted.closed
    );
    Ok((passed, detail))
}

/// Levels at which the pair suites search for isoclinisms.
const PAIR_LEVELS: [usize; 2] = [1, 2];

fn catalog_pairs(max_order: usize) -> Vec<(&'static CatalogEntry, &'static CatalogEntry)> {
    let entries: Vec<&CatalogEntry> = entries_up_to(max_order).collect();
    let mut pairs = Vec::new();
    for i in 0..entries.len() {
        for j in i..entries.len() {
            pairs.push((entries[i], entries[j]));
        }
    }
    pairs
}

/// Transport suite: for every isoclinic catalog pair at levels 1 and 2, the
/// induced map between the restricted automorphism subgroups is a bijective
/// homomorphism carrying class-preserving automorphisms onto each other.
pub fn t4_suite(max_order: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("t4", max_order);
    for (a, b) in catalog_pairs(max_order) {
        for n in PAIR_LEVELS {
            let Some(iso) = find_n_isoclinism(&a.group, &b.group, n)? else {
                continue;
            };
            let id = format!("{}~{} n={n}", a.name, b.name);
            let psi_report = psi(&iso)?;
            let passed = psi_report.is_bijective
                && psi_report.is_homomorphism
                && psi_report.class_preserving_image_equal;
            let detail = format!(
                "|lhs|={} |rhs|={} bijective={} homomorphic={} class_image_equal={} |Autc^{n}(G)|={} |Autc^{n}(H)|={}",
                psi_report.source_subgroup.len(),
                psi_report.target_subgroup.len(),
                psi_report.is_bijective,
                psi_report.is_homomorphism,
                psi_report.class_preserving_image_equal,
                psi_report.source_class_preserving.len(),
                psi_report.target_class_preserving.len(),
            );
            report.push(id, passed, detail);
        }
    }
    Ok(report.finalize())
}

/// Invariant suite: every isoclinism the searcher finds satisfies the coset
/// compatibility, conjugation transport, and graded intersection identities.
pub fn hekster_suite(max_order: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("hekster", max_order);
    for (a, b) in catalog_pairs(max_order) {
        for n in PAIR_LEVELS {
            let Some(iso) = find_n_isoclinism(&a.group, &b.group, n)? else {
                continue;
            };
            let id = format!("{}~{} n={n}", a.name, b.name);
            let checks = hekster_invariant_check(&iso);
            let passed = checks.all_passed();
            let detail = format!(
                "coset={} conjugation={} intersections={}{}",
                checks.coset_compatibility.passed,
                checks.conjugation_transport.passed,
                checks.graded_intersections.passed,
                [
                    &checks.coset_compatibility,
                    &checks.conjugation_transport,
                    &checks.graded_intersections,
                ]
                .into_iter()
                .filter_map(|c| c.witness.as_deref())
                .map(|w| format!(" witness[{w}]"))
                .collect::<String>(),
            );
            report.push(id, passed, detail);
        }
    }
    Ok(report.finalize())
}

/// Cyclicity-criterion suite: for every nilpotent non-abelian catalog group,
/// every applicable level, and every central `M` containing the relevant
/// lower-central term, the two sides are isomorphic exactly when every
/// primary component of `M` (over the hypercenter-quotient primes) is
/// cyclic. Levels beyond the nilpotency class repeat the degenerate
/// trivial-trivial instance, so `n` stops at the class.
pub fn t5_suite(max_order: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("t5", max_order);
    for entry in entries_up_to(max_order) {
        let g = &entry.group;
        if g.is_abelian() {
            continue;
        }
        let Nilpotency::Class(class) = nilpotency_class(g) else {
            continue;
        };
        let center = Subgroup::center(g);
        let lower = CentralSeries::lower(g);
        for n in 1..=class {
            let gamma_next = lower.term(n + 1);
            if !gamma_next.is_subgroup_of(&center) {
                continue; // no central M can contain gamma_{n+1}
            }
            for m in subgroups_within(&center) {
                if !gamma_next.is_subgroup_of(&m) {
                    continue;
                }
                let id = format!("{} n={n} M={}", entry.name, format_elements(&m));
                let verdict = t5_verdict(g, &m, n)?;
                let passed = verdict.isomorphic == verdict.cyclicity_condition;
                let detail = format!(
                    "lhs={} rhs={} isomorphic={} cyclic={} primes={:?}{}",
                    verdict.lhs_order,
                    verdict.rhs_order,
                    verdict.isomorphic,
                    verdict.cyclicity_condition,
                    verdict.primes_tested,
                    if verdict.readings_agree {
                        String::new()
                    } else {
                        format!(
                            " READINGS-DIFFER alt_primes={:?} alt_cyclic={}",
                            verdict.primes_tested_alt, verdict.cyclicity_condition_alt
                        )
                    },
                );
                report.push(id, passed, detail);
            }
        }
    }
    Ok(report.finalize())
}

/// Smaller standing lemmas: the containment of class-preserving
/// automorphisms in the restricted subgroup, the exponent identity for
/// exact-class groups, prime-support monotonicity under exponent
/// divisibility, and the Hom cyclicity criterion agreement.
pub fn lemma_suite(max_order: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemmas", max_order);

    // Aut_c^n(G) <= Aut_{Z_n(G)}^{gamma_{n+1}(G)}(G) for n in 1..=3.
    for entry in entries_up_to(max_order) {
        let g = &entry.group;
        let aut = if g.is_abelian() { None } else { Some(automorphism_group(g)?) };
        for n in 1..=3usize {
            let id = format!("containment {} n={n}", entry.name);
            let upper = CentralSeries::upper(g);
            let lower = CentralSeries::lower(g);
            let (class_preserving, restricted) = match &aut {
                None => (
                    nth_class_preserving(g, n)?,
                    crate::aut::aut_subgroup(g, lower.term(n + 1), upper.term(n))?,
                ),
                Some(aut) => (
                    nth_class_preserving_in(aut, n)?,
                    aut_subgroup_in(aut, lower.term(n + 1), upper.term(n))?,
                ),
            };
            let passed = class_preserving.is_subgroup_of(&restricted);
            let detail = format!(
                "|Autc^{n}|={} |restricted|={}",
                class_preserving.len(),
                restricted.len()
            );
            report.push(id, passed, detail);
        }
    }

    // exp(G/Z_n(G)) = exp(gamma_{n+1}(G)) for groups of exact class n+1.
    for entry in entries_up_to(max_order) {
        let g = &entry.group;
        let Nilpotency::Class(class) = nilpotency_class(g) else {
            continue;
        };
        if class < 2 {
            continue;
        }
        let n = class - 1;
        let id = format!("exponent {} n={n}", entry.name);
        let z_n = CentralSeries::upper(g).term(n).clone();
        let gamma = CentralSeries::lower(g).term(n + 1).clone();
        let quotient_exp = quotient(g, &z_n)?.quotient.exponent();
        let gamma_exp = gamma.as_group().group.exponent();
        report.push(
            id,
            quotient_exp == gamma_exp,
            format!("exp(G/Z_{n})={quotient_exp} exp(gamma_{})={gamma_exp}", n + 1),
        );
    }

    // exp(H) | exp(G) forces the prime support of H inside that of G.
    for a in entries_up_to(max_order) {
        for b in entries_up_to(max_order) {
            if b.group.exponent() % a.group.exponent() != 0 {
                continue;
            }
            let id = format!("prime-support {} into {}", a.name, b.name);
            let pa: BTreeSet<u64> = a.group.prime_support().into_iter().collect();
            let pb: BTreeSet<u64> = b.group.prime_support().into_iter().collect();
            let passed = pa.is_subset(&pb);
            report.push(id, passed, format!("pi(H)={pa:?} pi(G)={pb:?}"));
        }
    }

    // Hom cyclicity criterion agreement on valid abelian p-group pairs.
    for a in entries_up_to(max_order) {
        for b in entries_up_to(max_order) {
            let (ga, gb) = (&a.group, &b.group);
            if !ga.is_abelian() || !gb.is_abelian() || ga.order() == 1 || gb.order() == 1 {
                continue;
            }
            let (pa, pb) = (ga.prime_support(), gb.prime_support());
            if pa.len() != 1 || pb.len() != 1 || pa[0] != pb[0] {
                continue;
            }
            if gb.exponent() % ga.exponent() != 0 {
                continue;
            }
            let id = format!("maly {} -> {}", a.name, b.name);
            let verdict = maly_criterion(ga, gb)?;
            let detail = format!(
                "hom_iso_to_source={} target_cyclic={} hom={:?}",
                verdict.hom_isomorphic_to_source, verdict.target_cyclic, verdict.hom_structure
            );
            report.push(id, verdict.agree, detail);
        }
    }

    Ok(report.finalize())
}

/// Oracle suite: the backtracking automorphism search against the filter of
/// all permutations, and Hom-group enumeration against both the gcd count
/// and the filter of all functions.
pub fn oracle_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("oracle", 32);

    for entry in entries_up_to(10) {
        let g = &entry.group;
        let id = format!("aut-brute {}", entry.name);
        let fast: Vec<Vec<Elem>> =
            automorphism_group(g)?.members.iter().map(|m| m.map().to_vec()).collect();
        let brute = brute_force_automorphism_maps(g);
        report.push(
            id,
            fast == brute,
            format!("backtracking={} brute-force={}", fast.len(), brute.len()),
        );
    }

    for a in entries_up_to(32) {
        for b in entries_up_to(32) {
            let (ga, gb) = (&a.group, &b.group);
            if !ga.is_abelian() || !gb.is_abelian() {
                continue;
            }
            let hom = hom_group(ga, gb)?;
            let predicted = predicted_hom_order(&hom)?;
            let mut passed = hom.len() as u64 == predicted;
            let mut detail = format!("enumerated={} gcd-formula={predicted}", hom.len());
            if ga.order() <= 8 {
                let filtered = count_homs_by_function_filter(ga, gb);
                passed = passed && filtered == hom.len() as u64;
                detail.push_str(&format!(" function-filter={filtered}"));
            }
            report.push(format!("hom-count {} -> {}", a.name, b.name), passed, detail);
        }
    }

    Ok(report.finalize())
}

fn predicted_hom_order(hom: &HomGroup) -> Result<u64> {
    let src = crate::abelian::cyclic_decomposition(&hom.source)?;
    let tgt = crate::abelian::cyclic_decomposition(&hom.target)?;
    let src_orders: Vec<u64> = src.factors().iter().map(|&(_, o)| o).collect();
    let tgt_orders: Vec<u64> = tgt.factors().iter().map(|&(_, o)| o).collect();
    Ok(HomGroup::predicted_order(&src_orders, &tgt_orders))
}

/// Every permutation of the elements, filtered by the homomorphism law.
/// Quadratic per candidate and factorial overall; the point is that it
/// shares no machinery with the backtracking search it validates.
pub fn brute_force_automorphism_maps(group: &Arc<FiniteGroup>) -> Vec<Vec<Elem>> {
    let n = group.order();
    let mut perm: Vec<Elem> = group.elements().collect();
    let mut out = Vec::new();
    let check = |perm: &[Elem], out: &mut Vec<Vec<Elem>>| {
        if perm[0] != 0 {
            return;
        }
        for a in 0..n as Elem {
            for b in 0..n as Elem {
                if perm[group.mul(a, b) as usize] != group.mul(perm[a as usize], perm[b as usize])
                {
                    return;
                }
            }
        }
        out.push(perm.to_vec());
    };

    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    check(&perm, &mut out);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            check(&perm, &mut out);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out.sort_unstable();
    out
}

/// Counts maps `A -> B` satisfying the homomorphism law by depth-first
/// search over raw function space, checking the law on the assigned prefix.
/// No structure theory involved.
pub fn count_homs_by_function_filter(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> u64 {
    fn consistent_at(a: &FiniteGroup, b: &FiniteGroup, map: &[Elem], x: Elem) -> bool {
        for y in 0..=x {
            for (p, q) in [(y, x), (x, y)] {
                let prod = a.mul(p, q);
                if prod <= x && b.mul(map[p as usize], map[q as usize]) != map[prod as usize] {
                    return false;
                }
            }
        }
        for y in 0..x {
            for z in 0..x {
                if a.mul(y, z) == x && b.mul(map[y as usize], map[z as usize]) != map[x as usize] {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(a: &FiniteGroup, b: &FiniteGroup, map: &mut Vec<Elem>, x: usize) -> u64 {
        if x == a.order() {
            return 1;
        }
        let mut count = 0;
        for v in 0..b.order() as Elem {
            map[x] = v;
            if consistent_at(a, b, map, x as Elem) {
                count += dfs(a, b, map, x + 1);
            }
        }
        count
    }

    let mut map = vec![0 as Elem; a.order()];
    dfs(a, b, &mut map, 0)
}

/// Identity of a CLI-selectable suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    T2,
    T4,
    T5,
    Hekster,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::T2, Suite::T4, Suite::T5, Suite::Hekster];

    pub fn name(self) -> &'static str {
        match self {
            Suite::T2 => "t2",
            Suite::T4 => "t4",
            Suite::T5 => "t5",
            Suite::Hekster => "hekster",
        }
    }

    pub fn run(self, max_order: usize) -> Result<SuiteReport> {
        match self {
            Suite::T2 => t2_suite(max_order),
            Suite::T4 => t4_suite(max_order),
            Suite::T5 => t5_suite(max_order),
            Suite::Hekster => hekster_suite(max_order),
        }
    }
}

/// The standing invariants of the automorphism lattice, exercised by tests:
/// inner automorphisms are class preserving and normal in the full group.
pub fn inner_class_preserving_normality(group: &Arc<FiniteGroup>) -> Result<(bool, bool, bool)> {
    let aut = automorphism_group(group)?;
    let inn = crate::aut::inner_automorphism_group(group);
    let cp = nth_class_preserving_in(&aut, 1)?;
    let inn_in_cp = inn.is_subgroup_of(&cp);
    let cp_in_aut = cp.is_subgroup_of(&aut);
    let mut inn_normal = true;
    'outer: for f in &aut.members {
        let f_inv = f.inverse();
        for i in &inn.members {
            let conj: Automorphism = f.compose(i).compose(&f_inv);
            if !inn.contains(&conj) {
                inn_normal = false;
                break 'outer;
            }
        }
    }
    Ok((inn_in_cp, cp_in_aut, inn_normal))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_agreement_on_tiny_groups() {
        // The full oracle suite runs in the acceptance tests; spot-check the
        // brute-force path here on the two order-8 non-abelian groups.
        for name in ["D4", "Q8"] {
            let g = &crate::catalog::find_entry(name).unwrap().group;
            let fast: Vec<Vec<Elem>> =
                automorphism_group(g).unwrap().members.iter().map(|m| m.map().to_vec()).collect();
            assert_eq!(fast, brute_force_automorphism_maps(g), "{name}");
        }
    }

    #[test]
    fn function_filter_matches_enumeration() {
        let c4 = crate::catalog::make_cyclic(4).unwrap().into_shared();
        let klein = crate::catalog::make_elementary_abelian(2, 2).unwrap().into_shared();
        assert_eq!(count_homs_by_function_filter(&c4, &klein), 4);
        assert_eq!(count_homs_by_function_filter(&klein, &klein), 16);
        assert_eq!(count_homs_by_function_filter(&c4, &c4), 4);
    }

    #[test]
    fn t2_suite_smoke() {
        let report = t2_suite(8).unwrap();
        assert!(report.total > 0);
        assert!(report.all_passed(), "{:?}", report.instances.iter().find(|i| !i.passed));
    }

    #[test]
    fn t5_suite_smoke() {
        let report = t5_suite(8).unwrap();
        assert!(report.total > 0);
        assert!(report.all_passed(), "{:?}", report.instances.iter().find(|i| !i.passed));
    }

    #[test]
    fn pair_suites_smoke() {
        let t4 = t4_suite(8).unwrap();
        assert!(t4.instances.iter().any(|i| i.id == "D4~Q8 n=1"));
        assert!(t4.all_passed(), "{:?}", t4.instances.iter().find(|i| !i.passed));
        let hk = hekster_suite(8).unwrap();
        assert!(hk.all_passed(), "{:?}", hk.instances.iter().find(|i| !i.passed));
    }

    #[test]
    fn inner_automorphism_lattice_facts() {
        for name in ["S3", "D4", "Q8", "D6"] {
            let g = &crate::catalog::find_entry(name).unwrap().group;
            let (inn_in_cp, cp_in_aut, inn_normal) =
                inner_class_preserving_normality(g).unwrap();
            assert!(inn_in_cp && cp_in_aut && inn_normal, "{name}");
        }
    }
}
