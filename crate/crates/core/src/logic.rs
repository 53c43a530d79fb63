//! Classical propositional semantics over a small, fixed vocabulary.
//!
//! An interpretation over `n` symbols is an index in `0..2^n` whose bit `j`
//! says whether symbol `j` is true. Formulas and theories are identified with
//! their model sets, stored as a `u64` whose bit `i` is set when interpretation
//! `i` is a model. Reading that mask as an integer gives the canonical order
//! used by every enumerator: it is the lexicographic order of the
//! characteristic bitstring written with the highest interpretation first.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::formula_set::FormulaSet;

/// Largest vocabulary whose model sets fit the `u64` representation.
pub const MAX_VOCAB: usize = 6;

/// Largest vocabulary for which formula classes can be materialized as sets.
pub const MAX_CLASS_VOCAB: usize = 4;

/// Default bound on the size of any exhaustively enumerated domain.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 16;

/// An ordered list of distinct proposition names.
#[derive(Clone, Debug)]
pub struct Vocab {
    symbols: Vec<String>,
    size_cap: u64,
}

impl PartialEq for Vocab {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Vocab {}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Vocab {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidVocab("no symbols".into()));
        }
        if symbols.len() > MAX_VOCAB {
            return Err(Error::InvalidVocab(alloc::format!(
                "{} symbols, at most {MAX_VOCAB} are supported",
                symbols.len()
            )));
        }
        for (i, s) in symbols.iter().enumerate() {
            if !is_identifier(s) || s == "true" || s == "false" || s == "L" {
                return Err(Error::InvalidVocab(alloc::format!("`{s}` is not a symbol name")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidVocab(alloc::format!("`{s}` listed twice")));
            }
        }
        Ok(Vocab { symbols, size_cap: DEFAULT_SIZE_CAP })
    }

    /// Replaces the bound used by size guards.
    pub fn with_size_cap(mut self, cap: u64) -> Self {
        self.size_cap = cap;
        self
    }

    pub fn size_cap(&self) -> u64 {
        self.size_cap
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn interpretation_count(&self) -> usize {
        1 << self.len()
    }

    /// Mask with one bit per interpretation.
    pub fn all_models(&self) -> u64 {
        let m = self.interpretation_count();
        if m == 64 {
            u64::MAX
        } else {
            (1u64 << m) - 1
        }
    }

    /// Number of formula classes (equivalently, of theories): `2^2^n`.
    pub fn class_count(&self) -> u128 {
        1u128 << self.interpretation_count()
    }

    /// Fails unless `2^2^n` is within the size cap.
    pub fn guard_classes(&self, what: &'static str) -> Result<usize> {
        let required = self.class_count();
        if required > self.size_cap as u128 || self.len() > MAX_CLASS_VOCAB {
            return Err(Error::SizeGuard { what, required, cap: self.size_cap });
        }
        Ok(required as usize)
    }

    pub fn guard(&self, what: &'static str, required: u128) -> Result<()> {
        if required > self.size_cap as u128 {
            return Err(Error::SizeGuard { what, required, cap: self.size_cap });
        }
        Ok(())
    }

    /// Characteristic bitstring of a model set, highest interpretation first.
    pub fn bitstring(&self, models: u64) -> String {
        let m = self.interpretation_count();
        (0..m).rev().map(|i| if models >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    pub fn parse_bitstring(&self, text: &str) -> Option<u64> {
        let m = self.interpretation_count();
        if text.len() != m {
            return None;
        }
        let mut mask = 0u64;
        for (k, c) in text.chars().enumerate() {
            let bit = m - 1 - k;
            match c {
                '1' => mask |= 1 << bit,
                '0' => {}
                _ => return None,
            }
        }
        Some(mask)
    }

    pub fn interpretations(&self) -> impl Iterator<Item = Interpretation> {
        (0..self.interpretation_count() as u32).map(Interpretation)
    }
}

/// The symbols an interpretation makes true, as a bit index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation(pub u32);

impl Interpretation {
    pub fn from_true_symbols<'a>(
        vocab: &Vocab,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self> {
        let mut bits = 0u32;
        for name in names {
            let i = vocab
                .index_of(name)
                .ok_or_else(|| Error::InvalidVocab(alloc::format!("unknown symbol `{name}`")))?;
            bits |= 1 << i;
        }
        Ok(Interpretation(bits))
    }

    #[inline]
    pub fn holds(self, symbol: usize) -> bool {
        self.0 >> symbol & 1 == 1
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn true_symbols(self, vocab: &Vocab) -> impl Iterator<Item = &str> {
        vocab.symbols().iter().enumerate().filter(move |(i, _)| self.holds(*i)).map(|(_, s)| s.as_str())
    }
}

/// A formula up to logical equivalence, i.e. its set of models.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemFormula(pub u64);

/// A deductively closed set of formulas, represented by its models.
///
/// Containment reverses: `t1 ⊆ t2` as formula sets iff `t2.models() ⊆ t1.models()`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Theory(pub u64);

impl SemFormula {
    pub fn from_models(models: u64) -> Self {
        SemFormula(models)
    }

    pub fn models(self) -> u64 {
        self.0
    }

    pub fn top(vocab: &Vocab) -> Self {
        SemFormula(vocab.all_models())
    }

    pub fn bottom() -> Self {
        SemFormula(0)
    }

    /// Position in the canonical class order.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn satisfied_by(self, mu: Interpretation) -> bool {
        self.0 >> mu.0 & 1 == 1
    }

    pub fn and(self, other: Self) -> Self {
        SemFormula(self.0 & other.0)
    }

    pub fn or(self, other: Self) -> Self {
        SemFormula(self.0 | other.0)
    }

    pub fn not(self, vocab: &Vocab) -> Self {
        SemFormula(!self.0 & vocab.all_models())
    }
}

impl Theory {
    pub fn from_models(models: u64) -> Self {
        Theory(models)
    }

    pub fn models(self) -> u64 {
        self.0
    }

    /// The inconsistent theory `L`, containing every formula.
    pub fn inconsistent() -> Self {
        Theory(0)
    }

    /// The theory of tautologies.
    pub fn tautologies(vocab: &Vocab) -> Self {
        Theory(vocab.all_models())
    }

    /// `Th(φ)`.
    pub fn of(f: SemFormula) -> Self {
        Theory(f.0)
    }

    /// A single formula axiomatizing the theory.
    pub fn axiom(self) -> SemFormula {
        SemFormula(self.0)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_consistent(self) -> bool {
        self.0 != 0
    }

    pub fn model_count(self) -> u32 {
        self.0.count_ones()
    }

    /// `φ ∈ T`.
    pub fn entails(self, f: SemFormula) -> bool {
        self.0 & !f.0 == 0
    }

    /// `other ⊆ self` as formula sets.
    pub fn entails_theory(self, other: Theory) -> bool {
        self.0 & !other.0 == 0
    }

    /// `Th(self ∪ other)`.
    pub fn join(self, other: Theory) -> Theory {
        Theory(self.0 & other.0)
    }

    pub fn is_complete(self) -> bool {
        self.0.count_ones() == 1
    }
}

impl fmt::Debug for SemFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SemFormula({:#b})", self.0)
    }
}

impl fmt::Debug for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Theory({:#b})", self.0)
    }
}

/// `Th(X)`: the theory whose models are those of every member of `x`.
pub fn closure(x: &FormulaSet) -> Theory {
    Theory(x.iter().fold(x.vocab_all_models(), |acc, f| acc & f.0))
}

pub fn entails(t: Theory, f: SemFormula) -> bool {
    t.entails(f)
}

pub fn is_complete(t: Theory) -> bool {
    t.is_complete()
}

pub fn enumerate_interpretations(vocab: &Vocab) -> impl Iterator<Item = Interpretation> {
    vocab.interpretations()
}

/// All formula classes in canonical order.
pub fn enumerate_semformulas(vocab: &Vocab) -> Result<impl Iterator<Item = SemFormula>> {
    let count = vocab.class_count();
    vocab.guard("formula classes", count)?;
    Ok((0..count as u64).map(SemFormula))
}

/// All theories in canonical order.
pub fn enumerate_theories(vocab: &Vocab) -> Result<impl Iterator<Item = Theory>> {
    let count = vocab.class_count();
    vocab.guard("theories", count)?;
    Ok((0..count as u64).map(Theory))
}
