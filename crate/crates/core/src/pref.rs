//! Preference relations over states, with no order axioms assumed.

use alloc::vec::Vec;

use crate::bitset::BitSet;

/// Index of a state within a model.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

/// A binary relation `≺` on `0..len`. `(a, b)` in the relation reads `a ≺ b`.
///
/// Stored as predecessor sets: `preds[b]` holds every `a` with `a ≺ b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Preference {
    preds: Vec<BitSet>,
}

impl Preference {
    pub fn empty(len: usize) -> Self {
        Preference { preds: (0..len).map(|_| BitSet::new(len)).collect() }
    }

    pub fn from_pairs(len: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut rel = Self::empty(len);
        for (a, b) in pairs {
            rel.insert(a, b);
        }
        rel
    }

    pub fn len(&self) -> usize {
        self.preds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.preds.is_empty()
    }

    pub fn insert(&mut self, better: usize, worse: usize) {
        self.preds[worse].insert(better);
    }

    pub fn contains(&self, better: usize, worse: usize) -> bool {
        self.preds.get(worse).is_some_and(|p| p.contains(better))
    }

    pub fn predecessors(&self, s: usize) -> &BitSet {
        &self.preds[s]
    }

    /// All pairs, ordered by `(better, worse)`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| self.contains(a, b)).map(move |b| (a, b)))
    }

    pub fn pair_count(&self) -> usize {
        self.preds.iter().map(BitSet::count).sum()
    }

    /// Members of `candidates` with no predecessor inside `candidates`.
    pub fn minimal_within(&self, candidates: &BitSet) -> BitSet {
        let mut out = candidates.clone();
        for s in candidates.iter() {
            if !self.preds[s].is_disjoint(candidates) {
                out.remove(s);
            }
        }
        out
    }

    /// Whether every member of `candidates` outside the minimal ones has a
    /// minimal predecessor. Returns the first offending state otherwise.
    pub fn first_unsmooth(&self, candidates: &BitSet) -> Option<usize> {
        let minimal = self.minimal_within(candidates);
        candidates
            .iter()
            .filter(|s| !minimal.contains(*s))
            .find(|&s| self.preds[s].is_disjoint(&minimal))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.len()).all(|s| !self.contains(s, s))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        (0..n).all(|c| {
            self.preds[c].iter().all(|b| self.preds[b].is_subset(&self.preds[c]))
        })
    }
}
