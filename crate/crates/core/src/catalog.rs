//! Deterministic constructors for the test corpus, plus group file I/O.

use std::path::Path;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{prime_factors, Elem, FiniteGroup, MAX_ORDER};

/// Cyclic group of order `m`, table `(i + j) mod m`.
pub fn make_cyclic(m: usize) -> Result<FiniteGroup> {
    check_order(m)?;
    let table: Vec<Elem> =
        (0..m).flat_map(|i| (0..m).map(move |j| ((i + j) % m) as Elem)).collect();
    FiniteGroup::from_flat_table(m, table, None)
}

/// Dihedral group of order `2m`: rotations `r^i` at indices `0..m`, then
/// reflections `r^i s` at `m..2m`.
pub fn make_dihedral(m: usize) -> Result<FiniteGroup> {
    if m < 1 {
        return Err(Error::ParameterOutOfRange { reason: "dihedral parameter must be >= 1".into() });
    }
    check_order(2 * m)?;
    let n = 2 * m;
    let rot = |i: usize| i % m;
    let mut table = vec![0 as Elem; n * n];
    for i in 0..m {
        for j in 0..m {
            table[i * n + j] = rot(i + j) as Elem; // r^i r^j
            table[i * n + (m + j)] = (m + rot(i + j)) as Elem; // r^i (r^j s)
            table[(m + i) * n + j] = (m + rot(m + i - j)) as Elem; // (r^i s) r^j
            table[(m + i) * n + (m + j)] = rot(m + i - j) as Elem; // (r^i s)(r^j s)
        }
    }
    let mut names = Vec::with_capacity(n);
    for i in 0..m {
        names.push(rot_name("r", i));
    }
    for i in 0..m {
        names.push(if i == 0 { "s".into() } else { format!("{}s", rot_name("r", i)) });
    }
    FiniteGroup::from_flat_table(n, table, Some(names))
}

/// Generalized quaternion group of order `n = 2^k`, `k >= 3`: powers of the
/// order-`n/2` generator `a` first, then `a^i b`.
pub fn make_quaternion(n: usize) -> Result<FiniteGroup> {
    if n < 8 || !n.is_power_of_two() {
        return Err(Error::ParameterOutOfRange {
            reason: format!("quaternion order must be 2^k with k >= 3, got {n}"),
        });
    }
    check_order(n)?;
    let m = n / 2;
    let half = m / 2; // b^2 = a^half
    let rot = |i: usize| i % m;
    let mut table = vec![0 as Elem; n * n];
    for i in 0..m {
        for j in 0..m {
            table[i * n + j] = rot(i + j) as Elem;
            table[i * n + (m + j)] = (m + rot(i + j)) as Elem;
            table[(m + i) * n + j] = (m + rot(m + i - j)) as Elem;
            table[(m + i) * n + (m + j)] = rot(m + i - j + half) as Elem;
        }
    }
    let mut names = Vec::with_capacity(n);
    for i in 0..m {
        names.push(rot_name("a", i));
    }
    for i in 0..m {
        names.push(if i == 0 { "b".into() } else { format!("{}b", rot_name("a", i)) });
    }
    FiniteGroup::from_flat_table(n, table, Some(names))
}

fn rot_name(letter: &str, i: usize) -> String {
    match i {
        0 => "1".into(),
        1 => letter.into(),
        _ => format!("{letter}{i}"),
    }
}

/// Symmetric group on `k <= 4` letters; permutations enumerated in
/// lexicographic one-line order, so the identity is element 0.
pub fn make_symmetric(k: usize) -> Result<FiniteGroup> {
    if !(1..=4).contains(&k) {
        return Err(Error::ParameterOutOfRange {
            reason: format!("symmetric group parameter must be 1..=4, got {k}"),
        });
    }
    let mut perms: Vec<Vec<u8>> = Vec::new();
    let mut current: Vec<u8> = (0..k as u8).collect();
    loop {
        perms.push(current.clone());
        // Next lexicographic permutation.
        let Some(i) = (0..k - 1).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    let n = perms.len();
    let index_of = |p: &[u8]| perms.iter().position(|q| q == p).unwrap();
    let mut table = vec![0 as Elem; n * n];
    for (a, pa) in perms.iter().enumerate() {
        for (b, pb) in perms.iter().enumerate() {
            // (a . b)(i) = a(b(i)): apply b first.
            let prod: Vec<u8> = (0..k).map(|i| pa[pb[i] as usize]).collect();
            table[a * n + b] = index_of(&prod) as Elem;
        }
    }
    FiniteGroup::from_flat_table(n, table, None)
}

/// Heisenberg group over the field of `p` elements (`p` an odd prime): upper
/// unitriangular 3x3 matrices, free entries enumerated row-major. This is
/// the extraspecial group of order `p^3` and exponent `p`.
pub fn make_heisenberg(p: usize) -> Result<FiniteGroup> {
    check_odd_prime(p)?;
    let n = p * p * p;
    check_order(n)?;
    // index = x*p^2 + z*p + y for matrix [[1,x,z],[0,1,y],[0,0,1]].
    let enc = |x: usize, z: usize, y: usize| x * p * p + z * p + y;
    let mut table = vec![0 as Elem; n * n];
    for x1 in 0..p {
        for z1 in 0..p {
            for y1 in 0..p {
                let a = enc(x1, z1, y1);
                for x2 in 0..p {
                    for z2 in 0..p {
                        for y2 in 0..p {
                            let b = enc(x2, z2, y2);
                            let x = (x1 + x2) % p;
                            let y = (y1 + y2) % p;
                            let z = (z1 + z2 + x1 * y2) % p;
                            table[a * n + b] = enc(x, z, y) as Elem;
                        }
                    }
                }
            }
        }
    }
    FiniteGroup::from_flat_table(n, table, None)
}

/// The other extraspecial group of order `p^3` (`p` an odd prime): the
/// semidirect product of a cyclic group of order `p^2` by one of order `p`,
/// with exponent `p^2`. Element `a^i b^j` is index `i*p + j`.
pub fn make_modular(p: usize) -> Result<FiniteGroup> {
    check_odd_prime(p)?;
    let n = p * p * p;
    check_order(n)?;
    let p2 = p * p;
    // (1+p)^j mod p^2, the action of b^j on a.
    let mut unit_pow = vec![1usize; p];
    for j in 1..p {
        unit_pow[j] = unit_pow[j - 1] * (1 + p) % p2;
    }
    let mut table = vec![0 as Elem; n * n];
    for i1 in 0..p2 {
        for (j1, &action) in unit_pow.iter().enumerate() {
            let a = i1 * p + j1;
            for i2 in 0..p2 {
                for j2 in 0..p {
                    let b = i2 * p + j2;
                    let i = (i1 + i2 * action) % p2;
                    let j = (j1 + j2) % p;
                    table[a * n + b] = (i * p + j) as Elem;
                }
            }
        }
    }
    FiniteGroup::from_flat_table(n, table, None)
}

/// Direct power of the cyclic group of prime order `p`.
pub fn make_elementary_abelian(p: usize, rank: u32) -> Result<FiniteGroup> {
    if prime_factors(p as u64) != vec![p as u64] {
        return Err(Error::ParameterOutOfRange { reason: format!("{p} is not prime") });
    }
    let n = p.checked_pow(rank).filter(|&n| n <= MAX_ORDER).ok_or_else(|| {
        Error::ParameterOutOfRange { reason: format!("{p}^{rank} exceeds the order limit") }
    })?;
    let mut table = vec![0 as Elem; n * n];
    for a in 0..n {
        for b in 0..n {
            let (mut x, mut y, mut s, mut digit) = (a, b, 0usize, 1usize);
            for _ in 0..rank {
                s += (x % p + y % p) % p * digit;
                x /= p;
                y /= p;
                digit *= p;
            }
            table[a * n + b] = s as Elem;
        }
    }
    FiniteGroup::from_flat_table(n, table, None)
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        Err(Error::OrderLimitExceeded { order: n, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

fn check_odd_prime(p: usize) -> Result<()> {
    if p <= 2 || prime_factors(p as u64) != vec![p as u64] {
        Err(Error::ParameterOutOfRange { reason: format!("{p} is not an odd prime") })
    } else {
        Ok(())
    }
}

/// Known invariants recorded for each catalog entry; checked against
/// recomputation by the test suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogNotes {
    pub order: usize,
    /// `None` for non-nilpotent groups.
    pub nilpotency_class: Option<usize>,
    pub center_order: usize,
    pub derived_order: usize,
    pub exponent: u64,
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub group: Arc<FiniteGroup>,
    pub notes: CatalogNotes,
}

fn notes(
    order: usize,
    nilpotency_class: Option<usize>,
    center_order: usize,
    derived_order: usize,
    exponent: u64,
) -> CatalogNotes {
    CatalogNotes { order, nilpotency_class, center_order, derived_order, exponent }
}

/// The fixed verification corpus, ascending by order (ties by name).
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn catalog_names() -> Vec<&'static str> {
    catalog().iter().map(|e| e.name).collect()
}

pub fn find_entry(name: &str) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.name == name)
}

fn build_catalog() -> Vec<CatalogEntry> {
    let cyclic = |m: usize| make_cyclic(m).unwrap();
    let ea = |p: usize, r: u32| make_elementary_abelian(p, r).unwrap();
    let prod = |a: &FiniteGroup, b: &FiniteGroup| a.direct_product(b).unwrap();

    let c2 = cyclic(2);
    let c3 = cyclic(3);
    let c4 = cyclic(4);
    let c8 = cyclic(8);
    let c9 = cyclic(9);
    let klein = ea(2, 2);
    let d4 = make_dihedral(4).unwrap();
    let q8 = make_quaternion(8).unwrap();
    let heis3 = make_heisenberg(3).unwrap();

    let entries: Vec<(&'static str, FiniteGroup, CatalogNotes)> = vec![
        ("C1", cyclic(1), notes(1, Some(0), 1, 1, 1)),
        ("C2", cyclic(2), notes(2, Some(1), 2, 1, 2)),
        ("C3", cyclic(3), notes(3, Some(1), 3, 1, 3)),
        ("C2xC2", klein.clone(), notes(4, Some(1), 4, 1, 2)),
        ("C4", cyclic(4), notes(4, Some(1), 4, 1, 4)),
        ("C5", cyclic(5), notes(5, Some(1), 5, 1, 5)),
        ("C6", cyclic(6), notes(6, Some(1), 6, 1, 6)),
        ("S3", make_symmetric(3).unwrap(), notes(6, None, 1, 3, 6)),
        ("C7", cyclic(7), notes(7, Some(1), 7, 1, 7)),
        ("C2xC2xC2", ea(2, 3), notes(8, Some(1), 8, 1, 2)),
        ("C4xC2", prod(&c4, &c2), notes(8, Some(1), 8, 1, 4)),
        ("C8", cyclic(8), notes(8, Some(1), 8, 1, 8)),
        ("D4", d4.clone(), notes(8, Some(2), 2, 2, 4)),
        ("Q8", q8.clone(), notes(8, Some(2), 2, 2, 4)),
        ("C3xC3", ea(3, 2), notes(9, Some(1), 9, 1, 3)),
        ("C9", cyclic(9), notes(9, Some(1), 9, 1, 9)),
        ("C10", cyclic(10), notes(10, Some(1), 10, 1, 10)),
        ("D5", make_dihedral(5).unwrap(), notes(10, None, 1, 5, 10)),
        ("C12", cyclic(12), notes(12, Some(1), 12, 1, 12)),
        ("D6", make_dihedral(6).unwrap(), notes(12, None, 2, 3, 6)),
        ("C16", cyclic(16), notes(16, Some(1), 16, 1, 16)),
        ("C2xC2xC2xC2", ea(2, 4), notes(16, Some(1), 16, 1, 2)),
        ("C4xC2xC2", prod(&c4, &ea(2, 2)), notes(16, Some(1), 16, 1, 4)),
        ("C4xC4", prod(&c4, &c4), notes(16, Some(1), 16, 1, 4)),
        ("C8xC2", prod(&c8, &c2), notes(16, Some(1), 16, 1, 8)),
        ("D4xC2", prod(&d4, &c2), notes(16, Some(2), 4, 2, 4)),
        ("D8", make_dihedral(8).unwrap(), notes(16, Some(3), 2, 4, 8)),
        ("Q16", make_quaternion(16).unwrap(), notes(16, Some(3), 2, 4, 8)),
        ("Q8xC2", prod(&q8, &c2), notes(16, Some(2), 4, 2, 4)),
        ("C18", cyclic(18), notes(18, Some(1), 18, 1, 18)),
        ("C6xC3", prod(&cyclic(6), &c3), notes(18, Some(1), 18, 1, 6)),
        ("S4", make_symmetric(4).unwrap(), notes(24, None, 1, 12, 12)),
        ("C27", cyclic(27), notes(27, Some(1), 27, 1, 27)),
        ("C3xC3xC3", ea(3, 3), notes(27, Some(1), 27, 1, 3)),
        ("C9xC3", prod(&c9, &c3), notes(27, Some(1), 27, 1, 9)),
        ("Heis3", heis3.clone(), notes(27, Some(2), 3, 3, 3)),
        ("M27", make_modular(3).unwrap(), notes(27, Some(2), 3, 3, 9)),
        ("D16", make_dihedral(16).unwrap(), notes(32, Some(4), 2, 8, 16)),
        ("D4xC2xC2", prod(&d4, &ea(2, 2)), notes(32, Some(2), 8, 2, 4)),
        ("D4xC4", prod(&d4, &c4), notes(32, Some(2), 8, 2, 4)),
        ("Q32", make_quaternion(32).unwrap(), notes(32, Some(4), 2, 8, 16)),
        ("Heis3xC2", prod(&heis3, &c2), notes(54, Some(2), 6, 3, 6)),
        ("D4xD4", prod(&d4, &d4), notes(64, Some(2), 4, 4, 4)),
    ];

    entries
        .into_iter()
        .map(|(name, group, notes)| CatalogEntry { name, group: group.into_shared(), notes })
        .collect()
}

/// Resolves a CLI group argument: exact catalog name first, then file path.
pub fn resolve(name_or_path: &str) -> Result<Arc<FiniteGroup>> {
    if let Some(entry) = find_entry(name_or_path) {
        return Ok(Arc::clone(&entry.group));
    }
    let path = Path::new(name_or_path);
    if path.exists() {
        return Ok(load_group(path)?.into_shared());
    }
    Err(Error::UnknownGroup(name_or_path.to_string()))
}

/// External group file schema: `{"order": n, "table": [[..]], "names": [..]}`.
#[derive(Serialize, Deserialize)]
struct GroupFile {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

pub fn group_from_json(text: &str) -> Result<FiniteGroup> {
    let file: GroupFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let group = FiniteGroup::validate_cayley_table(file.order, file.table)?;
    match file.names {
        None => Ok(group),
        Some(names) => {
            let order = group.order();
            if names.len() != order {
                return Err(Error::Parse(format!(
                    "expected {order} names, got {}",
                    names.len()
                )));
            }
            FiniteGroup::from_flat_table(
                order,
                group.table_rows().into_iter().flatten().map(|v| v as Elem).collect(),
                Some(names),
            )
        }
    }
}

pub fn group_to_json(group: &FiniteGroup) -> String {
    let file = GroupFile {
        order: group.order(),
        table: group.table_rows(),
        names: group.names().map(<[String]>::to_vec),
    };
    serde_json::to_string_pretty(&file).expect("group file serialization cannot fail")
}

pub fn load_group(path: &Path) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    group_from_json(&text)
}

pub fn save_group(group: &FiniteGroup, path: &Path) -> Result<()> {
    std::fs::write(path, group_to_json(group) + "\n")
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{nilpotency_class, lower_central, Nilpotency};
    use crate::subgroup::Subgroup;

    #[test]
    fn recorded_invariants_match_recomputation() {
        for entry in catalog() {
            let g = &entry.group;
            let n = &entry.notes;
            assert_eq!(g.order(), n.order, "{}", entry.name);
            assert_eq!(Subgroup::center(g).order(), n.center_order, "{}", entry.name);
            assert_eq!(lower_central(g, 2).order(), n.derived_order, "{}", entry.name);
            assert_eq!(g.exponent(), n.exponent, "{}", entry.name);
            match (nilpotency_class(g), n.nilpotency_class) {
                (Nilpotency::Class(c), Some(expected)) => {
                    assert_eq!(c, expected, "{}", entry.name)
                }
                (Nilpotency::NotNilpotent { .. }, None) => {}
                (got, expected) => {
                    panic!("{}: class {got:?} but notes say {expected:?}", entry.name)
                }
            }
        }
    }

    #[test]
    fn catalog_sorted_and_unique() {
        let entries = catalog();
        for pair in entries.windows(2) {
            let a = (pair[0].notes.order, pair[0].name);
            let b = (pair[1].notes.order, pair[1].name);
            assert!(a < b, "{a:?} !< {b:?}");
        }
    }

    #[test]
    fn heisenberg_rejects_even_or_composite() {
        assert!(make_heisenberg(2).is_err());
        assert!(make_heisenberg(9).is_err());
        assert!(make_modular(2).is_err());
    }

    #[test]
    fn order_27_extraspecials() {
        // Center and derived subgroup coincide with order 3 in both; the
        // exponents (3 vs 9) tell them apart.
        for (name, exponent) in [("Heis3", 3), ("M27", 9)] {
            let g = &find_entry(name).unwrap().group;
            let z = Subgroup::center(g);
            let derived = lower_central(g, 2);
            assert_eq!(z, derived, "{name}");
            assert_eq!(z.order(), 3, "{name}");
            assert_eq!(g.exponent(), exponent, "{name}");
        }
        let heis = &find_entry("Heis3").unwrap().group;
        let m27 = &find_entry("M27").unwrap().group;
        assert!(!crate::search::are_isomorphic(heis, m27));
    }

    #[test]
    fn symmetric_bounds() {
        assert!(make_symmetric(0).is_err());
        assert!(make_symmetric(5).is_err());
        assert_eq!(make_symmetric(4).unwrap().order(), 24);
    }

    #[test]
    fn make_cyclic_one_is_trivial() {
        assert_eq!(make_cyclic(1).unwrap().order(), 1);
    }

    #[test]
    fn json_round_trip() {
        let d4 = make_dihedral(4).unwrap();
        let text = group_to_json(&d4);
        let back = group_from_json(&text).unwrap();
        assert_eq!(back.table_rows(), d4.table_rows());
        assert_eq!(back.names(), d4.names());
    }

    #[test]
    fn json_errors() {
        assert!(matches!(group_from_json("{"), Err(Error::Parse(_))));
        // Non-square table.
        let bad = r#"{"order": 2, "table": [[0, 1]]}"#;
        assert!(group_from_json(bad).is_err());
        // A Latin square with identity that is not associative (the smallest
        // non-associative loop has order 5): (1*1)*2 = 2 but 1*(1*2) = 4.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        let text =
            serde_json::to_string(&GroupFile { order: 5, table: loop5, names: None }).unwrap();
        let err = group_from_json(&text).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }), "{err:?}");
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d4.json");
        let d4 = make_dihedral(4).unwrap();
        save_group(&d4, &path).unwrap();
        let back = load_group(&path).unwrap();
        assert_eq!(back.table_rows(), d4.table_rows());
    }

    #[test]
    fn resolve_names_and_paths() {
        assert_eq!(resolve("D4").unwrap().order(), 8);
        assert!(matches!(resolve("NoSuchGroup"), Err(Error::UnknownGroup(_))));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        save_group(&make_cyclic(6).unwrap(), &path).unwrap();
        assert_eq!(resolve(path.to_str().unwrap()).unwrap().order(), 6);
    }
}
