//! Lower and upper central series, nilpotency class, and the induced
//! multilinear commutator map on central quotients.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::quotient::quotient;
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Lower,
    Upper,
}

/// A central series computed out to stabilization.
///
/// For the lower series `terms[i]` is `gamma_{i+1}(G)` (so `terms[0] = G`);
/// for the upper series `terms[i]` is `Z_i(G)` (so `terms[0]` is trivial).
/// Requests beyond `stabilized_at` return the stable term, since both series
/// are eventually constant in a finite group.
#[derive(Debug, Clone)]
pub struct CentralSeries {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    pub stabilized_at: usize,
}

impl CentralSeries {
    pub fn lower(group: &Arc<FiniteGroup>) -> CentralSeries {
        let mut terms = vec![Subgroup::whole(group)];
        loop {
            let current = terms.last().unwrap();
            let mut commutators: Vec<Elem> = Vec::new();
            for &x in current.elements() {
                for g in group.elements() {
                    commutators.push(group.commutator(x, g));
                }
            }
            let next = Subgroup::generated(group, &commutators)
                .expect("commutator values are valid elements");
            if &next == current {
                break;
            }
            terms.push(next);
        }
        let stabilized_at = terms.len() - 1;
        CentralSeries { kind: SeriesKind::Lower, terms, stabilized_at }
    }

    pub fn upper(group: &Arc<FiniteGroup>) -> CentralSeries {
        let mut terms = vec![Subgroup::trivial(group)];
        loop {
            let current = terms.last().unwrap();
            let q = quotient(group, current).expect("upper central terms are normal");
            let qz = Subgroup::center(&q.quotient);
            let lifted: Vec<Elem> = group
                .elements()
                .filter(|&g| qz.contains(q.coset_of(g)))
                .collect();
            let next = Subgroup::new(group, lifted).expect("center pullback is a subgroup");
            if &next == current {
                break;
            }
            terms.push(next);
        }
        let stabilized_at = terms.len() - 1;
        CentralSeries { kind: SeriesKind::Upper, terms, stabilized_at }
    }

    /// `gamma_i` for the lower series (`i >= 1`), `Z_i` for the upper
    /// (`i >= 0`); indexes past stabilization are clamped.
    pub fn term(&self, i: usize) -> &Subgroup {
        let idx = match self.kind {
            SeriesKind::Lower => i.saturating_sub(1),
            SeriesKind::Upper => i,
        };
        &self.terms[idx.min(self.stabilized_at)]
    }

    pub fn term_orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }
}

/// `gamma_i(G)`; `i >= 1`.
pub fn lower_central(group: &Arc<FiniteGroup>, i: usize) -> Subgroup {
    assert!(i >= 1, "lower central series starts at gamma_1");
    CentralSeries::lower(group).term(i).clone()
}

/// `Z_i(G)`; `i >= 0`.
pub fn upper_central(group: &Arc<FiniteGroup>, i: usize) -> Subgroup {
    CentralSeries::upper(group).term(i).clone()
}

/// Nilpotency class, or the stabilized non-trivial term as a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nilpotency {
    Class(usize),
    NotNilpotent { stabilized: Subgroup },
}

impl Nilpotency {
    pub fn class(&self) -> Option<usize> {
        match self {
            Nilpotency::Class(c) => Some(*c),
            Nilpotency::NotNilpotent { .. } => None,
        }
    }
}

pub fn nilpotency_class(group: &Arc<FiniteGroup>) -> Nilpotency {
    let series = CentralSeries::lower(group);
    let last = series.terms.last().unwrap();
    if last.is_trivial() {
        Nilpotency::Class(series.stabilized_at)
    } else {
        Nilpotency::NotNilpotent { stabilized: last.clone() }
    }
}

/// Evaluates the induced map `gamma(n, G)` on a tuple of `n + 1` coset
/// representatives: the left-normed commutator of the chosen representatives.
/// Well-definedness over the choice of representatives is a theorem, tested
/// exhaustively in the suite rather than assumed here.
pub fn gamma_map_eval(group: &Arc<FiniteGroup>, n: usize, coset_reps: &[Elem]) -> Result<Elem> {
    if n < 1 {
        return Err(Error::ParameterOutOfRange { reason: "gamma map needs n >= 1".into() });
    }
    if coset_reps.len() != n + 1 {
        return Err(Error::WrongArity { expected: n + 1, got: coset_reps.len() });
    }
    group.left_normed_commutator(coset_reps)
}
