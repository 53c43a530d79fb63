//! Preferential models over an unconstrained satisfaction relation. Each state
//! stores the set of formula classes it satisfies, closed or not.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::formula_set::FormulaSet;
use crate::logic::{closure, SemFormula, Vocab};
use crate::pref::{Preference, StateId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MakModel {
    vocab: Vocab,
    names: Vec<String>,
    sat: Vec<FormulaSet>,
    pref: Preference,
}

/// Classification of a [`MakModel`]'s satisfaction relation.
///
/// `classical` is computed from its definition (every state satisfies exactly
/// a complete theory), independently of `supra_classical` and `r_neg`.
///
/// `r_and` checks binary conjunctions only. It coincides with
/// `supra_classical` except on a state satisfying nothing at all, which
/// respects every binary conjunction but misses the tautology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MakKind {
    pub supra_classical: bool,
    pub classical: bool,
    pub unicity_of_states: bool,
    pub r_and: bool,
    pub r_neg: bool,
    pub r_or: bool,
}

impl MakModel {
    pub fn new(
        vocab: Vocab,
        states: impl IntoIterator<Item = (String, FormulaSet)>,
        pref: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        vocab.guard_classes("formula classes")?;
        let (names, sat): (Vec<String>, Vec<FormulaSet>) = states.into_iter().unzip();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateState(name.clone()));
            }
        }
        if sat.iter().any(|x| x.vocab_all_models() != vocab.all_models()) {
            return Err(Error::VocabMismatch("model and state formula set"));
        }
        let n = names.len();
        let mut rel = Preference::empty(n);
        for (a, b) in pref {
            if a >= n || b >= n {
                return Err(Error::UnknownState(alloc::format!("#{}", a.max(b))));
            }
            rel.insert(a, b);
        }
        Ok(MakModel { vocab, names, sat, pref: rel })
    }

    pub fn with_named_pref<'a>(
        vocab: Vocab,
        states: impl IntoIterator<Item = (String, FormulaSet)>,
        pref: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut model = Self::new(vocab, states, [])?;
        for (a, b) in pref {
            let (a, b) = (model.state(a)?, model.state(b)?);
            model.pref.insert(a.0, b.0);
        }
        Ok(model)
    }

    pub(crate) fn from_parts(vocab: Vocab, names: Vec<String>, sat: Vec<FormulaSet>, pref: Preference) -> Self {
        MakModel { vocab, names, sat, pref }
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

    pub fn sat_sets(&self) -> &[FormulaSet] {
        &self.sat
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

    /// `Cn(s)`: the stored set of classes `s` satisfies.
    pub fn cn_state(&self, s: StateId) -> Result<&FormulaSet> {
        self.sat.get(s.0).ok_or_else(|| Error::UnknownState(alloc::format!("#{}", s.0)))
    }

    /// `s ⊨ X`.
    pub fn sat(&self, s: StateId, x: &FormulaSet) -> Result<bool> {
        Ok(x.is_subset(self.cn_state(s)?))
    }

    /// `s ⊨_≺ X`.
    pub fn minsat(&self, s: StateId, x: &FormulaSet) -> Result<bool> {
        if !self.sat(s, x)? {
            return Ok(false);
        }
        Ok(self.pref.predecessors(s.0).iter().all(|t| !x.is_subset(&self.sat[t])))
    }

    /// `S(X)`.
    pub fn states_of(&self, x: &FormulaSet) -> BitSet {
        BitSet::from_indices(
            self.len(),
            self.sat.iter().enumerate().filter(|(_, c)| x.is_subset(c)).map(|(i, _)| i),
        )
    }

    pub fn minimal(&self, x: &FormulaSet) -> BitSet {
        self.pref.minimal_within(&self.states_of(x))
    }

    fn meet(&self, states: &BitSet) -> FormulaSet {
        let mut out = FormulaSet::everything(&self.vocab);
        for s in states.iter() {
            out.intersect_with(&self.sat[s]);
        }
        out
    }

    /// `Cn_⊨(X)`: classes satisfied by every state satisfying `x`.
    pub fn cn_entail(&self, x: &FormulaSet) -> FormulaSet {
        self.meet(&self.states_of(x))
    }

    /// `C_MAK(X)`: classes satisfied by every minimal state satisfying `x`.
    pub fn mak_entail(&self, x: &FormulaSet) -> FormulaSet {
        self.meet(&self.minimal(x))
    }

    /// First state (with a class it lacks) whose satisfied set is not closed.
    pub fn first_unclosed_state(&self) -> Option<(StateId, SemFormula)> {
        self.sat.iter().enumerate().find_map(|(i, c)| c.first_missing_consequence().map(|f| (StateId(i), f)))
    }

    pub fn is_supra_classical(&self) -> bool {
        self.first_unclosed_state().is_none()
    }

    pub fn classify(&self) -> Result<MakKind> {
        let classes = self.vocab.class_count();
        self.vocab.guard("class pairs", classes * classes)?;
        let classes = classes as u64;
        let v = &self.vocab;
        let r_and = self.sat.iter().all(|c| {
            (0..classes).all(|a| {
                (0..classes).all(|b| {
                    let (a, b) = (SemFormula(a), SemFormula(b));
                    c.contains(a.and(b)) == (c.contains(a) && c.contains(b))
                })
            })
        });
        let r_or = self.sat.iter().all(|c| {
            (0..classes).all(|a| {
                (0..classes).all(|b| {
                    let (a, b) = (SemFormula(a), SemFormula(b));
                    c.contains(a.or(b)) == (c.contains(a) || c.contains(b))
                })
            })
        });
        let r_neg = self
            .sat
            .iter()
            .all(|c| (0..classes).map(SemFormula).all(|f| !c.contains(f) == c.contains(f.not(v))));
        let supra_classical = self.is_supra_classical();
        let classical = self.sat.iter().all(|c| c.is_closed() && closure(c).is_complete());
        let unicity_of_states = self.sat.iter().enumerate().all(|(i, c)| !self.sat[..i].contains(c));
        Ok(MakKind { supra_classical, classical, unicity_of_states, r_and, r_neg, r_or })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Theory;
    use alloc::vec;

    fn pq() -> Vocab {
        Vocab::new(["p", "q"]).unwrap()
    }

    const P: SemFormula = SemFormula(0b1010);
    const Q: SemFormula = SemFormula(0b1100);
    const P_AND_Q: SemFormula = SemFormula(0b1000);

    fn set(classes: &[SemFormula]) -> FormulaSet {
        FormulaSet::from_classes(&pq(), classes.iter().copied())
    }

    fn one_state(classes: &[SemFormula]) -> MakModel {
        MakModel::new(pq(), [("s".into(), set(classes))], []).unwrap()
    }

    #[test]
    fn sat_has_no_closure() {
        let m = one_state(&[P_AND_Q]);
        let s = StateId(0);
        assert!(m.sat(s, &set(&[P_AND_Q])).unwrap());
        assert!(!m.sat(s, &set(&[P])).unwrap());
        assert!(m.sat(s, &set(&[])).unwrap());
        assert!(m.sat(StateId(1), &set(&[])).is_err());
        assert_eq!(m.cn_state(s).unwrap(), &set(&[P_AND_Q]));
    }

    #[test]
    fn minsat_examples() {
        let m = one_state(&[P]);
        assert!(m.minsat(StateId(0), &set(&[P])).unwrap());
        let m = MakModel::new(pq(), [("s1".into(), set(&[P])), ("s2".into(), set(&[P, Q]))], [(0, 1)]).unwrap();
        assert!(!m.minsat(StateId(1), &set(&[P])).unwrap());
        assert!(m.minsat(StateId(1), &set(&[Q])).unwrap());
        let m = MakModel::new(pq(), [("s".into(), set(&[P]))], [(0, 0)]).unwrap();
        assert!(!m.minsat(StateId(0), &set(&[P])).unwrap());
    }

    #[test]
    fn cn_entail_examples() {
        assert_eq!(one_state(&[P_AND_Q]).cn_entail(&set(&[])), set(&[P_AND_Q]));
        let m = MakModel::new(pq(), [("a".into(), set(&[P])), ("b".into(), set(&[P, Q]))], []).unwrap();
        assert_eq!(m.cn_entail(&set(&[P])), set(&[P]));
        let everything = m.cn_entail(&set(&[P_AND_Q]));
        assert!(everything.is_everything());
        assert_eq!(everything.len(), 16);
    }

    #[test]
    fn mak_entail_concludes_a_conjunction_without_its_conjunct() {
        let m = one_state(&[P_AND_Q]);
        let out = m.mak_entail(&set(&[]));
        assert!(out.contains(P_AND_Q));
        assert!(!out.contains(P));
        let killed = MakModel::new(pq(), [("s".into(), set(&[P]))], [(0, 0)]).unwrap();
        assert!(killed.mak_entail(&set(&[])).is_everything());
    }

    #[test]
    fn classification_examples() {
        let v = pq();
        let th_p = MakModel::new(v.clone(), [("s".into(), FormulaSet::entailed_by(&v, Theory(0b1010)))], []).unwrap();
        let kind = th_p.classify().unwrap();
        assert!(kind.supra_classical && kind.r_and);
        assert!(!kind.classical && !kind.r_neg);

        let kind = one_state(&[P_AND_Q]).classify().unwrap();
        assert!(!kind.supra_classical && !kind.r_and);

        let complete = MakModel::new(v.clone(), [("s".into(), FormulaSet::entailed_by(&v, Theory(0b1000)))], []).unwrap();
        let kind = complete.classify().unwrap();
        assert!(kind.classical && kind.r_neg && kind.r_or && kind.supra_classical);
    }

    #[test]
    fn empty_state_respects_binary_conjunction_without_being_closed() {
        let kind = one_state(&[]).classify().unwrap();
        assert!(kind.r_and);
        assert!(!kind.supra_classical);
        assert!(!kind.r_neg);
    }

    #[test]
    fn unicity() {
        let v = pq();
        let a = FormulaSet::entailed_by(&v, Theory(0b1010));
        let m = MakModel::new(v.clone(), vec![("a".into(), a.clone()), ("b".into(), a)], []).unwrap();
        assert!(!m.classify().unwrap().unicity_of_states);
    }

    #[test]
    fn vocab_guard() {
        let v5 = Vocab::new(["a", "b", "c", "d", "e"]).unwrap();
        assert!(matches!(MakModel::new(v5, [], []), Err(Error::SizeGuard { .. })));
        let v3 = Vocab::new(["a", "b", "c"]).unwrap();
        let m = MakModel::new(v3.clone(), [("s".into(), FormulaSet::empty(&v3))], []).unwrap();
        assert!(m.classify().is_ok());
        let v4 = Vocab::new(["a", "b", "c", "d"]).unwrap();
        let m = MakModel::new(v4.clone(), [("s".into(), FormulaSet::empty(&v4))], []).unwrap();
        assert!(matches!(m.classify(), Err(Error::SizeGuard { .. })));
        assert!(m.cn_entail(&FormulaSet::empty(&v4)).is_empty());
    }
}
