//! Passages between labelled and satisfaction-based models, tabulation of an
//! entailment over all theories, and the construction of a smooth simplified
//! labelled model from a cumulative table.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::formula_set::FormulaSet;
use crate::klm::{canonical_state_name, KlmModel};
use crate::logic::{closure, Theory, Vocab};
use crate::mak::MakModel;
use crate::pref::Preference;

/// An extensive map from every theory of the vocabulary to a theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecircTable {
    vocab: Vocab,
    map: Vec<Theory>,
}

/// A violated cumulativity rule at a pair of theories. `other` lies between
/// `premise` and its conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleViolation {
    pub rule: &'static str,
    pub premise: Theory,
    pub other: Theory,
    pub premise_out: Theory,
    pub other_out: Theory,
}

impl From<RuleViolation> for Error {
    fn from(v: RuleViolation) -> Self {
        Error::NotCumulative {
            rule: v.rule,
            premise: v.premise,
            other: v.other,
            premise_out: v.premise_out,
            other_out: v.other_out,
        }
    }
}

impl PrecircTable {
    /// `map[i]` is the image of the theory with model mask `i`.
    pub fn new(vocab: Vocab, map: Vec<Theory>) -> Result<Self> {
        let count = vocab.class_count();
        vocab.guard("theories", count)?;
        if map.len() as u128 != count {
            return Err(Error::InvalidSpec(alloc::format!("table has {} rows, expected {count}", map.len())));
        }
        for (i, &out) in map.iter().enumerate() {
            let t = Theory::from_models(i as u64);
            if !out.entails_theory(t) || out.models() & !vocab.all_models() != 0 {
                return Err(Error::NotExtensive { premise: t, out });
            }
        }
        Ok(PrecircTable { vocab, map })
    }

    pub fn from_fn(vocab: Vocab, f: impl Fn(Theory) -> Theory) -> Result<Self> {
        let count = vocab.class_count();
        vocab.guard("theories", count)?;
        let map = (0..count as u64).map(|m| f(Theory::from_models(m))).collect();
        Self::new(vocab, map)
    }

    pub fn identity(vocab: Vocab) -> Result<Self> {
        Self::from_fn(vocab, |t| t)
    }

    pub fn vocab(&self) -> &Vocab {
        &self.vocab
    }

    pub fn get(&self, t: Theory) -> Theory {
        self.map[t.index()]
    }

    /// Rows in canonical order.
    pub fn rows(&self) -> impl Iterator<Item = (Theory, Theory)> + '_ {
        self.map.iter().enumerate().map(|(i, &o)| (Theory::from_models(i as u64), o))
    }

    /// First row (canonical order) where the tables differ.
    pub fn first_difference(&self, other: &PrecircTable) -> Option<Theory> {
        self.rows().zip(other.rows()).find(|((_, a), (_, b))| a != b).map(|((t, _), _)| t)
    }

    fn first_interval_violation(&self, rule: &'static str, holds: impl Fn(Theory, Theory) -> bool) -> Option<RuleViolation> {
        for (t, c) in self.rows() {
            let free = t.models() & !c.models();
            let mut sub = 0u64;
            loop {
                let other = Theory::from_models(c.models() | sub);
                let other_out = self.get(other);
                if !holds(c, other_out) {
                    return Some(RuleViolation { rule, premise: t, other, premise_out: c, other_out });
                }
                if sub == free {
                    break;
                }
                sub = sub.wrapping_sub(free) & free;
            }
        }
        None
    }

    /// (CT): every theory between `T` and `f(T)` concludes at least `f(T)`.
    pub fn first_ct_violation(&self) -> Option<RuleViolation> {
        self.first_interval_violation("CT", |c, other_out| c.entails_theory(other_out))
    }

    /// (CM): every theory between `T` and `f(T)` concludes at most `f(T)`.
    pub fn first_cm_violation(&self) -> Option<RuleViolation> {
        self.first_interval_violation("CM", |c, other_out| other_out.entails_theory(c))
    }

    pub fn is_cumulative(&self) -> bool {
        self.first_ct_violation().is_none() && self.first_cm_violation().is_none()
    }

    /// Whether `t` is the image of some theory.
    pub fn range(&self) -> BitSet {
        BitSet::from_indices(self.map.len(), self.map.iter().map(|t| t.index()))
    }
}

#[derive(Clone, Copy, Debug)]
pub enum EntailSource<'a> {
    Klm(&'a KlmModel),
    Mak(&'a MakModel),
}

impl<'a> From<&'a KlmModel> for EntailSource<'a> {
    fn from(m: &'a KlmModel) -> Self {
        EntailSource::Klm(m)
    }
}

impl<'a> From<&'a MakModel> for EntailSource<'a> {
    fn from(m: &'a MakModel) -> Self {
        EntailSource::Mak(m)
    }
}

/// The model's entailment at every theory. A satisfaction-based model must be
/// supra classical, so that its conclusions are theories.
pub fn tabulate<'a>(source: impl Into<EntailSource<'a>>) -> Result<PrecircTable> {
    match source.into() {
        EntailSource::Klm(m) => PrecircTable::from_fn(m.vocab().clone(), |t| m.entail(t)),
        EntailSource::Mak(m) => {
            check_supra(m)?;
            let v = m.vocab().clone();
            PrecircTable::from_fn(v.clone(), |t| closure(&m.mak_entail(&FormulaSet::entailed_by(&v, t))))
        }
    }
}

fn check_supra(m: &MakModel) -> Result<()> {
    match m.first_unclosed_state() {
        Some((s, missing)) => Err(Error::NotSupraClassical { state: m.names()[s.0].clone(), missing }),
        None => Ok(()),
    }
}

/// Same states and preference; each state satisfies what its label entails.
pub fn klm_to_mak(m: &KlmModel) -> Result<MakModel> {
    let v = m.vocab().clone();
    v.guard_classes("formula classes")?;
    let sat = m.labels().iter().map(|&l| FormulaSet::entailed_by(&v, l)).collect();
    Ok(MakModel::from_parts(v, m.names().to_vec(), sat, m.pref().clone()))
}

/// Same states and preference; each state is labelled by its satisfied set,
/// which must already be a theory.
pub fn mak_to_klm(m: &MakModel) -> Result<KlmModel> {
    check_supra(m)?;
    let labels = m.sat_sets().iter().map(closure).collect();
    Ok(KlmModel::from_parts(m.vocab().clone(), m.names().to_vec(), labels, m.pref().clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Klm,
    Mak,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub source_kind: ModelKind,
    pub target_kind: ModelKind,
    pub validated: bool,
    /// First theory (canonical order) where the two entailments differ.
    pub mismatch_witness: Option<Theory>,
}

impl TranslationReport {
    fn compare(source_kind: ModelKind, target_kind: ModelKind, a: &PrecircTable, b: &PrecircTable) -> Self {
        let mismatch_witness = a.first_difference(b);
        TranslationReport { source_kind, target_kind, validated: mismatch_witness.is_none(), mismatch_witness }
    }
}

/// [`klm_to_mak`] plus a comparison of both entailments on every theory. The
/// target side is read off the raw conclusions, without closing them.
pub fn klm_to_mak_validated(m: &KlmModel) -> Result<(MakModel, TranslationReport)> {
    let out = klm_to_mak(m)?;
    let v = m.vocab().clone();
    let source = tabulate(m)?;
    let mut mismatch_witness = None;
    for (t, expected) in source.rows() {
        if out.mak_entail(&FormulaSet::entailed_by(&v, t)) != FormulaSet::entailed_by(&v, expected) {
            mismatch_witness = Some(t);
            break;
        }
    }
    let report = TranslationReport {
        source_kind: ModelKind::Klm,
        target_kind: ModelKind::Mak,
        validated: mismatch_witness.is_none(),
        mismatch_witness,
    };
    Ok((out, report))
}

pub fn mak_to_klm_validated(m: &MakModel) -> Result<(KlmModel, TranslationReport)> {
    let out = mak_to_klm(m)?;
    let report = TranslationReport::compare(ModelKind::Mak, ModelKind::Klm, &tabulate(m)?, &tabulate(&out)?);
    Ok((out, report))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ConstructOptions {
    /// Run the construction on tables that satisfy (CT) but not (CM). The
    /// result is still validated against the table.
    pub allow_non_cumulative: bool,
}

/// Builds the simplified model whose states are all theories, labelled by
/// themselves, ordered by
///
/// * `L ≺ T2` when `T2` is not an image of the table, and
/// * `T1 ≺ T2` when `T2 ≠ L`, `T2 ≠ T1`, `T2 = f(T4)` for some `T4`, and
///   `T1 = f(T3)` for some `T3` contained in `T2`.
///
/// The result is tabulated and compared with `f` before it is returned.
pub fn precirc_to_simplified_klm(f: &PrecircTable, options: ConstructOptions) -> Result<KlmModel> {
    let v = f.vocab().clone();
    if let Some(violation) = f.first_ct_violation() {
        return Err(violation.into());
    }
    if !options.allow_non_cumulative {
        if let Some(violation) = f.first_cm_violation() {
            return Err(violation.into());
        }
    }
    let n = f.map.len();
    v.guard("theory pairs", (n as u128) * (n as u128))?;
    let range = f.range();
    let mut preimages: Vec<Vec<u64>> = (0..n).map(|_| Vec::new()).collect();
    for (t, out) in f.rows() {
        preimages[out.index()].push(t.models());
    }
    let bottom = Theory::inconsistent().index();
    let mut pref = Preference::empty(n);
    for t2 in 0..n {
        if !range.contains(t2) {
            pref.insert(bottom, t2);
            continue;
        }
        if t2 == bottom {
            continue;
        }
        let t2_models = t2 as u64;
        for (t1, pre) in preimages.iter().enumerate() {
            // T3 ⊆ T2 as formula sets: T2's models lie inside T3's
            if t1 != t2 && pre.iter().any(|&t3| t2_models & !t3 == 0) {
                pref.insert(t1, t2);
            }
        }
    }
    let names: Vec<String> = (0..n as u64).map(|m| canonical_state_name(&v, Theory::from_models(m))).collect();
    let labels = (0..n as u64).map(Theory::from_models).collect();
    let model = KlmModel::from_parts(v, names, labels, pref);
    let table = tabulate(&model)?;
    if let Some(premise) = f.first_difference(&table) {
        return Err(Error::ConstructionMismatch { premise, expected: f.get(premise), got: table.get(premise) });
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::SemFormula;
    use alloc::string::ToString;

    fn pq() -> Vocab {
        Vocab::new(["p", "q"]).unwrap()
    }

    const P_AND_Q: Theory = Theory(0b1000);
    const NOT_P_AND_Q: Theory = Theory(0b0100);
    const Q: Theory = Theory(0b1100);

    fn two_state() -> KlmModel {
        KlmModel::new(pq(), [("s1".to_string(), P_AND_Q), ("s2".to_string(), NOT_P_AND_Q)], [(0, 1)]).unwrap()
    }

    #[test]
    fn klm_to_mak_closes_labels() {
        let v = pq();
        let mak = klm_to_mak(&two_state()).unwrap();
        let sat = &mak.sat_sets()[0];
        assert_eq!(sat.len(), 8);
        assert!(sat.iter().all(|f| f.models() & 0b1000 != 0));
        let incons = KlmModel::new(v.clone(), [("s".into(), Theory::inconsistent())], []).unwrap();
        assert!(klm_to_mak(&incons).unwrap().sat_sets()[0].is_everything());
        assert!(mak.classify().unwrap().supra_classical);
    }

    #[test]
    fn klm_to_mak_preserves_entailment() {
        let (_, report) = klm_to_mak_validated(&two_state()).unwrap();
        assert!(report.validated);
        assert_eq!(report.mismatch_witness, None);
    }

    #[test]
    fn mak_to_klm_examples() {
        let v = pq();
        let closed = MakModel::new(v.clone(), [("s".into(), FormulaSet::entailed_by(&v, Theory(0b1010)))], []).unwrap();
        assert_eq!(mak_to_klm(&closed).unwrap().labels(), &[Theory(0b1010)]);

        let raw = MakModel::new(v.clone(), [("s".into(), FormulaSet::from_classes(&v, [SemFormula(0b1000)]))], []).unwrap();
        match mak_to_klm(&raw) {
            Err(Error::NotSupraClassical { state, missing }) => {
                assert_eq!(state, "s");
                assert!(Theory(0b1000).entails(missing));
                assert_ne!(missing, SemFormula(0b1000));
            }
            other => panic!("expected NotSupraClassical, got {other:?}"),
        }
        assert!(tabulate(&raw).is_err());

        let m = two_state();
        assert_eq!(mak_to_klm(&klm_to_mak(&m).unwrap()).unwrap().labels(), m.labels());
    }

    #[test]
    fn tabulate_examples() {
        let v = pq();
        assert_eq!(tabulate(&two_state()).unwrap().get(Q), P_AND_Q);
        let empty = KlmModel::new(v.clone(), [], []).unwrap();
        assert!(tabulate(&empty).unwrap().rows().all(|(_, o)| o == Theory::inconsistent()));
        let simplified = precirc_to_simplified_klm(&PrecircTable::identity(v.clone()).unwrap(), Default::default());
        assert!(simplified.is_ok());
        let plain = KlmModel::new(
            v.clone(),
            (0..16).map(|m| (canonical_state_name(&v, Theory(m)), Theory(m))),
            [],
        )
        .unwrap();
        assert!(plain.is_simplified());
        assert_eq!(tabulate(&plain).unwrap(), PrecircTable::identity(v).unwrap());
    }

    #[test]
    fn table_rejects_non_extensive_rows() {
        let v = pq();
        let mut map: Vec<Theory> = (0..16).map(Theory).collect();
        map[0b1100] = Theory(0b0011);
        assert!(matches!(PrecircTable::new(v.clone(), map), Err(Error::NotExtensive { .. })));
        assert!(PrecircTable::new(v, Vec::new()).is_err());
    }

    #[test]
    fn construction_reproduces_the_table() {
        let f = tabulate(&two_state()).unwrap();
        assert!(f.is_cumulative());
        let m = precirc_to_simplified_klm(&f, ConstructOptions::default()).unwrap();
        assert!(m.is_simplified());
        assert!(m.pref().is_irreflexive());
        assert!(m.is_smooth().unwrap());
        assert_eq!(tabulate(&m).unwrap(), f);
    }

    #[test]
    fn construction_refuses_cm_violations() {
        let v = pq();
        // a three-cycle leaves nothing minimal at the top but something below it
        let m = KlmModel::new(
            v,
            [("a".into(), P_AND_Q), ("b".into(), NOT_P_AND_Q), ("c".into(), Theory(0b0010))],
            [(0, 1), (1, 2), (2, 0)],
        )
        .unwrap();
        let f = tabulate(&m).unwrap();
        let err = precirc_to_simplified_klm(&f, ConstructOptions::default());
        match err {
            Err(Error::NotCumulative { rule, .. }) => assert_eq!(rule, "CM"),
            other => panic!("expected a CM violation, got {other:?}"),
        }
    }
}
