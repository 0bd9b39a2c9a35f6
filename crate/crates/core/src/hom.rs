//! Homomorphisms and automorphisms as validated element maps.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// A total map between two finite groups respecting multiplication.
#[derive(Clone)]
pub struct Homomorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<Elem>,
}

impl std::fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Homomorphism({} -> {}, {:?})", self.source.order(), self.target.order(), self.map)
    }
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && self.source.order() == other.source.order()
            && self.target.order() == other.target.order()
    }
}

impl Eq for Homomorphism {}

impl Homomorphism {
    /// Validates the homomorphism law `map[a*b] = map[a]*map[b]` on all pairs.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<Elem>) -> Result<Homomorphism> {
        if map.len() != source.order() {
            return Err(Error::WrongDomains);
        }
        for &v in &map {
            target.check_element(v)?;
        }
        let n = source.order() as Elem;
        for a in 0..n {
            for b in 0..n {
                let lhs = map[source.mul(a, b) as usize];
                let rhs = target.mul(map[a as usize], map[b as usize]);
                if lhs != rhs {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Homomorphism {
        Homomorphism {
            source: Arc::clone(group),
            target: Arc::clone(group),
            map: group.elements().collect(),
        }
    }

    /// The zero map, sending everything to the identity.
    pub fn zero(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Homomorphism {
        Homomorphism {
            source: Arc::clone(source),
            target: Arc::clone(target),
            map: vec![0; source.order()],
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e as usize]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &v in &self.map {
            seen[v as usize] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// `self . inner`: apply `inner` first. Endpoint orders must chain.
    pub fn compose(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        if inner.target.order() != self.source.order() {
            return Err(Error::WrongDomains);
        }
        Ok(Homomorphism {
            source: Arc::clone(&inner.source),
            target: Arc::clone(&self.target),
            map: inner.map.iter().map(|&v| self.map[v as usize]).collect(),
        })
    }

    /// Construction bypass for maps valid by construction (e.g. built on a
    /// basis); callers own the proof obligation.
    pub(crate) fn from_checked_parts(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<Elem>,
    ) -> Homomorphism {
        Homomorphism { source, target, map }
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<Homomorphism> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let mut inv = vec![0 as Elem; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v as usize] = i as Elem;
        }
        Ok(Homomorphism {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            map: inv,
        })
    }
}

/// A bijective self-homomorphism.
///
/// Stored as a bare permutation over the base group; ordering and equality
/// compare the permutation arrays, which gives automorphism collections a
/// canonical lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct Automorphism {
    group: Arc<FiniteGroup>,
    map: Vec<Elem>,
}

impl std::fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Automorphism({:?})", self.map)
    }
}

impl PartialOrd for Automorphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Automorphism {
    fn cmp(&self, other: &Self) -> Ordering {
        self.map.cmp(&other.map)
    }
}

impl Automorphism {
    /// Validates `map` as a bijective homomorphism of `group`.
    pub fn new(group: &Arc<FiniteGroup>, map: Vec<Elem>) -> Result<Automorphism> {
        if map.len() != group.order() {
            return Err(Error::WrongDomains);
        }
        let mut seen = vec![false; group.order()];
        for &v in &map {
            group.check_element(v)?;
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::NotBijective);
            }
        }
        let n = group.order() as Elem;
        for a in 0..n {
            for b in 0..n {
                if map[group.mul(a, b) as usize] != group.mul(map[a as usize], map[b as usize]) {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Automorphism { group: Arc::clone(group), map })
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Automorphism {
        Automorphism { group: Arc::clone(group), map: group.elements().collect() }
    }

    /// Conjugation `g -> x^-1 g x`.
    pub fn conjugation_by(group: &Arc<FiniteGroup>, x: Elem) -> Automorphism {
        Automorphism {
            group: Arc::clone(group),
            map: group.elements().map(|g| group.conjugate(g, x)).collect(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e as usize]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self . inner`: apply `inner` first.
    pub fn compose(&self, inner: &Automorphism) -> Automorphism {
        Automorphism {
            group: Arc::clone(&self.group),
            map: inner.map.iter().map(|&v| self.map[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0 as Elem; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v as usize] = i as Elem;
        }
        Automorphism { group: Arc::clone(&self.group), map: inv }
    }

    pub fn as_homomorphism(&self) -> Homomorphism {
        Homomorphism {
            source: Arc::clone(&self.group),
            target: Arc::clone(&self.group),
            map: self.map.clone(),
        }
    }

    /// Construction bypass for maps already proven valid by a search; still
    /// checked in debug builds.
    pub(crate) fn from_checked_parts(group: Arc<FiniteGroup>, map: Vec<Elem>) -> Automorphism {
        debug_assert!(Automorphism::new(&group, map.clone()).is_ok());
        Automorphism { group, map }
    }
}
