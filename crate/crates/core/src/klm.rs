//! Labelled preferential models: states carry theories, and a premise is
//! answered by the union of the models of its minimal satisfying states.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::logic::{Theory, Vocab};
use crate::pref::{Preference, StateId};

/// Name given to the state standing for `t` in simplified and strictly
/// singular models: `T` followed by the theory's bitstring.
pub fn canonical_state_name(vocab: &Vocab, t: Theory) -> String {
    alloc::format!("T{}", vocab.bitstring(t.models()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlmModel {
    vocab: Vocab,
    names: Vec<String>,
    labels: Vec<Theory>,
    pref: Preference,
}

/// Structural classification of a [`KlmModel`].
///
/// `strictly_singular` uses the complete-theory reading: states are exactly
/// the complete theories under canonical names, labelled by themselves. Such a
/// model is singular but never simplified, since a simplified model also holds
/// the non-complete theories.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KlmKind {
    pub consistent_states: bool,
    pub simplified: bool,
    pub singular: bool,
    pub strictly_singular: bool,
    pub smooth: bool,
    /// Only computed when requested through [`ClassifyOptions::strict_order`].
    pub irreflexive: Option<bool>,
    pub transitive: Option<bool>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ClassifyOptions {
    pub strict_order: bool,
}

impl KlmModel {
    /// Builds a model from named, labelled states and `(better, worse)` index pairs.
    pub fn new(
        vocab: Vocab,
        states: impl IntoIterator<Item = (String, Theory)>,
        pref: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let (names, labels): (Vec<String>, Vec<Theory>) = states.into_iter().unzip();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateState(name.clone()));
            }
        }
        let all = vocab.all_models();
        if let Some(t) = labels.iter().find(|t| t.models() & !all != 0) {
            return Err(Error::InvalidVocab(alloc::format!("label {t:?} has models outside the vocabulary")));
        }
        let n = names.len();
        let mut rel = Preference::empty(n);
        for (a, b) in pref {
            if a >= n || b >= n {
                return Err(Error::UnknownState(alloc::format!("#{}", a.max(b))));
            }
            rel.insert(a, b);
        }
        Ok(KlmModel { vocab, names, labels, pref: rel })
    }

    /// Like [`KlmModel::new`] with the preference given by state names.
    pub fn with_named_pref<'a>(
        vocab: Vocab,
        states: impl IntoIterator<Item = (String, Theory)>,
        pref: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut model = Self::new(vocab, states, [])?;
        for (a, b) in pref {
            let (a, b) = (model.state(a)?, model.state(b)?);
            model.pref.insert(a.0, b.0);
        }
        Ok(model)
    }

    pub(crate) fn from_parts(vocab: Vocab, names: Vec<String>, labels: Vec<Theory>, pref: Preference) -> Self {
        debug_assert_eq!(names.len(), labels.len());
        debug_assert_eq!(names.len(), pref.len());
        KlmModel { vocab, names, labels, pref }
    }

    pub fn vocab(&self) -> &Vocab {
        &self.vocab
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn labels(&self) -> &[Theory] {
        &self.labels
    }

    pub fn pref(&self) -> &Preference {
        &self.pref
    }

    pub fn state(&self, name: &str) -> Result<StateId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(StateId)
            .ok_or_else(|| Error::UnknownState(name.into()))
    }

    pub fn name(&self, s: StateId) -> Result<&str> {
        self.names.get(s.0).map(String::as_str).ok_or_else(|| Error::UnknownState(alloc::format!("#{}", s.0)))
    }

    pub fn label(&self, s: StateId) -> Result<Theory> {
        self.labels.get(s.0).copied().ok_or_else(|| Error::UnknownState(alloc::format!("#{}", s.0)))
    }

    /// `s ⊨ T`: the label entails the theory.
    pub fn sat(&self, s: StateId, t: Theory) -> Result<bool> {
        Ok(self.label(s)?.entails_theory(t))
    }

    /// `S(T)`.
    pub fn states_of(&self, t: Theory) -> BitSet {
        BitSet::from_indices(
            self.len(),
            self.labels.iter().enumerate().filter(|(_, l)| l.entails_theory(t)).map(|(i, _)| i),
        )
    }

    /// `S_≺(T)`: minimality is taken among `S(T)` only.
    pub fn minimal(&self, t: Theory) -> BitSet {
        self.pref.minimal_within(&self.states_of(t))
    }

    /// The preferential conclusion theory of `t`; `L` when no state is minimal.
    pub fn entail(&self, t: Theory) -> Theory {
        Theory::from_models(self.minimal(t).iter().fold(0, |acc, s| acc | self.labels[s].models()))
    }

    /// First theory (canonical order) with a nonminimal satisfying state that
    /// no minimal satisfying state dominates, with that state.
    pub fn first_unsmooth(&self) -> Result<Option<(Theory, StateId)>> {
        let count = self.vocab.class_count();
        self.vocab.guard("theories for smoothness", count)?;
        for bits in 0..count as u64 {
            let t = Theory::from_models(bits);
            if let Some(s) = self.pref.first_unsmooth(&self.states_of(t)) {
                return Ok(Some((t, StateId(s))));
            }
        }
        Ok(None)
    }

    pub fn is_smooth(&self) -> Result<bool> {
        Ok(self.first_unsmooth()?.is_none())
    }

    pub fn is_simplified(&self) -> bool {
        self.len() as u128 == self.vocab.class_count() && self.has_canonical_names()
    }

    pub fn is_strictly_singular(&self) -> bool {
        self.len() == self.vocab.interpretation_count()
            && self.labels.iter().all(|l| l.is_complete())
            && self.has_canonical_names()
    }

    fn has_canonical_names(&self) -> bool {
        self.names.iter().zip(&self.labels).all(|(n, &l)| *n == canonical_state_name(&self.vocab, l))
    }

    pub fn classify(&self) -> Result<KlmKind> {
        self.classify_with(ClassifyOptions::default())
    }

    pub fn classify_with(&self, options: ClassifyOptions) -> Result<KlmKind> {
        Ok(KlmKind {
            consistent_states: self.labels.iter().all(|l| l.is_consistent()),
            simplified: self.is_simplified(),
            singular: self.labels.iter().all(|l| l.is_complete()),
            strictly_singular: self.is_strictly_singular(),
            smooth: self.is_smooth()?,
            irreflexive: options.strict_order.then(|| self.pref.is_irreflexive()),
            transitive: options.strict_order.then(|| self.pref.is_transitive()),
        })
    }
}
