//! Arbitrary, not necessarily closed, sets of formula classes.

use core::fmt;

use crate::bitset::BitSet;
use crate::logic::{SemFormula, Theory, Vocab, MAX_CLASS_VOCAB};

/// A finite set of formula classes over a vocabulary of at most
/// [`MAX_CLASS_VOCAB`] symbols.
///
/// The whole class space is materialized, so the set of all formulas (`L`
/// read as a formula set) is an ordinary value: see [`FormulaSet::everything`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormulaSet {
    all_models: u64,
    bits: BitSet,
}

impl FormulaSet {
    /// # Panics
    ///
    /// If the vocabulary is larger than [`MAX_CLASS_VOCAB`]; callers building
    /// models check [`Vocab::guard_classes`] first.
    pub fn empty(vocab: &Vocab) -> Self {
        assert!(
            vocab.len() <= MAX_CLASS_VOCAB,
            "formula sets need a vocabulary of at most {MAX_CLASS_VOCAB} symbols"
        );
        FormulaSet { all_models: vocab.all_models(), bits: BitSet::new(vocab.class_count() as usize) }
    }

    pub fn everything(vocab: &Vocab) -> Self {
        let mut set = Self::empty(vocab);
        set.bits = BitSet::full(set.bits.universe());
        set
    }

    pub fn from_classes(vocab: &Vocab, classes: impl IntoIterator<Item = SemFormula>) -> Self {
        let mut set = Self::empty(vocab);
        for f in classes {
            set.insert(f);
        }
        set
    }

    /// Every class entailed by `t`, i.e. `t` itself read as a formula set.
    pub fn entailed_by(vocab: &Vocab, t: Theory) -> Self {
        let mut set = Self::empty(vocab);
        let base = t.models();
        let free = set.all_models & !base;
        // walk every subset of the non-models and add it to the theory's models
        let mut sub = free;
        loop {
            set.bits.insert((base | sub) as usize);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        set
    }

    pub(crate) fn vocab_all_models(&self) -> u64 {
        self.all_models
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn contains(&self, f: SemFormula) -> bool {
        self.bits.contains(f.index())
    }

    pub fn insert(&mut self, f: SemFormula) {
        assert!(f.models() & !self.all_models == 0, "class outside the vocabulary");
        self.bits.insert(f.index());
    }

    pub fn remove(&mut self, f: SemFormula) {
        self.bits.remove(f.index());
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_everything(&self) -> bool {
        self.bits.is_full()
    }

    pub fn is_subset(&self, other: &FormulaSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &FormulaSet) -> FormulaSet {
        let mut out = self.clone();
        out.bits.union_with(&other.bits);
        out
    }

    pub fn intersection(&self, other: &FormulaSet) -> FormulaSet {
        let mut out = self.clone();
        out.bits.intersect_with(&other.bits);
        out
    }

    pub fn difference(&self, other: &FormulaSet) -> FormulaSet {
        let mut out = self.clone();
        out.bits.difference_with(&other.bits);
        out
    }

    pub fn intersect_with(&mut self, other: &FormulaSet) {
        self.bits.intersect_with(&other.bits);
    }

    /// Members in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = SemFormula> + '_ {
        self.bits.iter().map(|i| SemFormula(i as u64))
    }

    /// Whether the set is deductively closed, i.e. equal to `Th` of itself.
    pub fn is_closed(&self) -> bool {
        self.first_missing_consequence().is_none()
    }

    /// First class (canonical order) entailed by the set but not in it.
    pub fn first_missing_consequence(&self) -> Option<SemFormula> {
        let th = Theory(self.iter().fold(self.all_models, |acc, f| acc & f.models()));
        let free = self.all_models & !th.models();
        // consequences are supersets of the closure's models; visit them in increasing order
        let mut sub = 0u64;
        loop {
            let f = SemFormula(th.models() | sub);
            if !self.contains(f) {
                return Some(f);
            }
            if sub == free {
                return None;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
    }
}

impl fmt::Debug for FormulaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
