//! Finite groups as validated Cayley tables.
//!
//! A [`FiniteGroup`] owns a dense `order x order` multiplication table over
//! element indices `0..order`, with element `0` fixed as the identity.
//! Everything downstream (series, automorphisms, isoclinism) multiplies
//! through this table, so construction validates the full group axioms.

use std::sync::Arc;

use crate::error::{Axis, Error, Result};

/// Group element index. Orders are capped at [`MAX_ORDER`], so `u16` suffices.
pub type Elem = u16;

/// Largest supported group order. All algorithms are dense-table based;
/// this is a documented limit, not a soft heuristic.
pub const MAX_ORDER: usize = 512;

/// Orders up to this bound get the full `O(n^3)` associativity scan; larger
/// tables use Light's generator test, which is equally complete but cheaper.
const FULL_ASSOC_SCAN_LIMIT: usize = 256;

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major `order x order` table: `table[a * order + b] = a * b`.
    table: Vec<Elem>,
    /// Precomputed two-sided inverses.
    inverse: Vec<Elem>,
    names: Option<Vec<String>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a raw table as a group: Latin square, identity at index 0,
    /// associativity, and two-sided inverses.
    pub fn validate_cayley_table(order: usize, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        if order == 0 {
            return Err(Error::ParameterOutOfRange {
                reason: "order must be at least 1".into(),
            });
        }
        if order > MAX_ORDER {
            return Err(Error::OrderLimitExceeded { order, max: MAX_ORDER });
        }
        if table.len() != order {
            return Err(Error::BadDimensions { order, rows: table.len(), cols: 0 });
        }
        let mut flat = Vec::with_capacity(order * order);
        for (r, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::BadDimensions { order, rows: table.len(), cols: row.len() });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::EntryOutOfRange { row: r, col: c, value: v, order });
                }
                flat.push(v as Elem);
            }
        }
        Self::from_flat_table(order, flat, None)
    }

    /// Validates a flattened row-major table. Used by the constructors in
    /// `catalog`, which build tables entry-wise.
    pub fn from_flat_table(order: usize, table: Vec<Elem>, names: Option<Vec<String>>) -> Result<FiniteGroup> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::OrderLimitExceeded { order, max: MAX_ORDER });
        }
        if table.len() != order * order {
            return Err(Error::BadDimensions { order, rows: table.len() / order.max(1), cols: 0 });
        }
        if let Some(ref n) = names {
            if n.len() != order {
                return Err(Error::BadDimensions { order, rows: n.len(), cols: 1 });
            }
        }

        // Latin square: each row and column is a permutation of 0..order.
        let mut seen = vec![false; order];
        for r in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..order {
                let v = table[r * order + c] as usize;
                if v >= order {
                    return Err(Error::EntryOutOfRange { row: r, col: c, value: v, order });
                }
                if seen[v] {
                    return Err(Error::NotLatinSquare { axis: Axis::Row, index: r, position: c });
                }
                seen[v] = true;
            }
        }
        for c in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..order {
                let v = table[r * order + c] as usize;
                if seen[v] {
                    return Err(Error::NotLatinSquare { axis: Axis::Column, index: c, position: r });
                }
                seen[v] = true;
            }
        }

        // Identity at index 0, both sides.
        for i in 0..order {
            if table[i] as usize != i {
                return Err(Error::NoIdentityAtZero { index: i });
            }
            if table[i * order] as usize != i {
                return Err(Error::NoIdentityAtZero { index: i });
            }
        }

        let group = FiniteGroup { order, table, inverse: Vec::new(), names };
        group.check_associativity()?;

        let mut inverse = vec![0 as Elem; order];
        for a in 0..order as Elem {
            let mut found = None;
            for b in 0..order as Elem {
                if group.mul(a, b) == 0 && group.mul(b, a) == 0 {
                    found = Some(b);
                    break;
                }
            }
            match found {
                Some(b) => inverse[a as usize] = b,
                None => return Err(Error::NoInverse { element: a }),
            }
        }

        Ok(FiniteGroup { inverse, ..group })
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        if n <= FULL_ASSOC_SCAN_LIMIT {
            for a in 0..n as Elem {
                for b in 0..n as Elem {
                    let ab = self.mul(a, b);
                    for c in 0..n as Elem {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::NotAssociative { a, b, c });
                        }
                    }
                }
            }
            return Ok(());
        }
        // Light's associativity test: it suffices to check triples whose
        // middle element runs over a generating set of the magma.
        let gens = self.light_generating_set();
        for &g in &gens {
            for a in 0..n as Elem {
                let ag = self.mul(a, g);
                for b in 0..n as Elem {
                    if self.mul(ag, b) != self.mul(a, self.mul(g, b)) {
                        return Err(Error::NotAssociative { a, b: g, c: b });
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy generating set under table-closure, used only by the Light test
    /// (so it must not assume associativity: every generated element is a
    /// product of two earlier ones, which is what the test's induction needs).
    fn light_generating_set(&self) -> Vec<Elem> {
        let n = self.order;
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut members: Vec<Elem> = vec![0];
        while members.len() < n {
            let next = (0..n as Elem).find(|&e| !reached[e as usize]).unwrap();
            gens.push(next);
            reached[next as usize] = true;
            members.push(next);
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                let mut j = 0;
                while j < members.len() {
                    let y = members[j];
                    for v in [self.mul(x, y), self.mul(y, x)] {
                        if !reached[v as usize] {
                            reached[v as usize] = true;
                            members.push(v);
                        }
                    }
                    j += 1;
                }
                i += 1;
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    /// All element indices, ascending.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        0..self.order as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// `x^-1 * g * x`.
    #[inline]
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), g), x)
    }

    /// `[a, b] = a^-1 * b^-1 * a * b`.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Left-normed iterated commutator `[[..[e1,e2],e3..],ek]`.
    pub fn left_normed_commutator(&self, elems: &[Elem]) -> Result<Elem> {
        if elems.len() < 2 {
            return Err(Error::ListTooShort { len: elems.len() });
        }
        for &e in elems {
            self.check_element(e)?;
        }
        let mut acc = self.commutator(elems[0], elems[1]);
        for &e in &elems[2..] {
            acc = self.commutator(acc, e);
        }
        Ok(acc)
    }

    pub fn check_element(&self, e: Elem) -> Result<()> {
        if (e as usize) < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: e as usize, order: self.order })
        }
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        let mut x = a;
        let mut ord = 1u64;
        while x != 0 {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }

    /// Least `n >= 1` with `g^n = 1` for all `g`: the lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.elements().fold(1u64, |acc, e| lcm(acc, self.element_order(e)))
    }

    /// Prime divisors of the group order, ascending.
    pub fn prime_support(&self) -> Vec<u64> {
        prime_factors(self.order as u64)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order as Elem;
        for a in 0..n {
            for b in (a + 1)..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// First witness pair `(a, b)` with `a*b != b*a`, if any.
    pub fn nonabelian_witness(&self) -> Option<(Elem, Elem)> {
        let n = self.order as Elem;
        for a in 0..n {
            for b in (a + 1)..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name_of(&self, e: Elem) -> String {
        match &self.names {
            Some(n) => n[e as usize].clone(),
            None => e.to_string(),
        }
    }

    /// Table row-by-row, for serialization.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|r| (0..self.order).map(|c| self.table[r * self.order + c] as usize).collect())
            .collect()
    }

    pub fn into_shared(self) -> Arc<FiniteGroup> {
        Arc::new(self)
    }

    /// Direct product `self x other`, element `(i, j)` encoded as `i * |other| + j`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let n = self.order.checked_mul(other.order).ok_or(Error::OrderLimitExceeded {
            order: usize::MAX,
            max: MAX_ORDER,
        })?;
        if n > MAX_ORDER {
            return Err(Error::OrderLimitExceeded { order: n, max: MAX_ORDER });
        }
        let m = other.order;
        let mut table = vec![0 as Elem; n * n];
        for a1 in 0..self.order {
            for a2 in 0..m {
                let a = a1 * m + a2;
                for b1 in 0..self.order {
                    for b2 in 0..m {
                        let b = b1 * m + b2;
                        let p1 = self.mul(a1 as Elem, b1 as Elem) as usize;
                        let p2 = other.mul(a2 as Elem, b2 as Elem) as usize;
                        table[a * n + b] = (p1 * m + p2) as Elem;
                    }
                }
            }
        }
        let names = match (&self.names, &other.names) {
            (Some(ln), Some(rn)) => {
                let mut out = Vec::with_capacity(n);
                for l in ln {
                    for r in rn {
                        out.push(format!("({l},{r})"));
                    }
                }
                Some(out)
            }
            _ => None,
        };
        FiniteGroup::from_flat_table(n, table, names)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division; fine for orders up to 512.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
