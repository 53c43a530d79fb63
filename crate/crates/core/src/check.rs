//! Property checkers for entailments.
//!
//! Every check runs exhaustively when its quantifier domain fits the
//! vocabulary's size cap and falls back to seeded sampling otherwise, in which
//! case a passing verdict is reported as [`Verdict::HoldsOnSample`]. A failing
//! verdict always carries a [`Violation`] that can be replayed against the
//! oracle with [`Violation::reproduces`].

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula_set::FormulaSet;
use crate::klm::KlmModel;
use crate::logic::{closure, SemFormula, Theory, Vocab};
use crate::mak::MakModel;
use crate::translate::PrecircTable;

/// Whether an oracle is known to depend on its premises only through their
/// closure and to answer with closed sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    TheoryRespecting,
    Raw,
}

/// An entailment `C : P(L) → P(L)` over a fixed vocabulary.
pub trait EntailOracle {
    fn vocab(&self) -> &Vocab;
    fn domain(&self) -> Domain;
    fn entail(&self, premises: &FormulaSet) -> FormulaSet;
}

/// Entailment of a labelled model, answered on the closure of the premises.
pub struct KlmOracle<'a>(pub &'a KlmModel);

/// Preferential entailment `C_MAK` of a satisfaction-based model.
pub struct MakOracle<'a>(pub &'a MakModel);

/// The Tarski entailment `Cn_⊨` of a satisfaction-based model.
pub struct CnOracle<'a>(pub &'a MakModel);

pub struct TableOracle<'a>(pub &'a PrecircTable);

/// Classical consequence `Th`.
pub struct Classical(pub Vocab);

/// An arbitrary function declared with a domain kind.
pub struct FnOracle<F> {
    pub vocab: Vocab,
    pub domain: Domain,
    pub f: F,
}

impl EntailOracle for KlmOracle<'_> {
    fn vocab(&self) -> &Vocab {
        self.0.vocab()
    }
    fn domain(&self) -> Domain {
        Domain::TheoryRespecting
    }
    fn entail(&self, x: &FormulaSet) -> FormulaSet {
        FormulaSet::entailed_by(self.0.vocab(), self.0.entail(closure(x)))
    }
}

impl EntailOracle for MakOracle<'_> {
    fn vocab(&self) -> &Vocab {
        self.0.vocab()
    }
    fn domain(&self) -> Domain {
        Domain::Raw
    }
    fn entail(&self, x: &FormulaSet) -> FormulaSet {
        self.0.mak_entail(x)
    }
}

impl EntailOracle for CnOracle<'_> {
    fn vocab(&self) -> &Vocab {
        self.0.vocab()
    }
    fn domain(&self) -> Domain {
        Domain::Raw
    }
    fn entail(&self, x: &FormulaSet) -> FormulaSet {
        self.0.cn_entail(x)
    }
}

impl EntailOracle for TableOracle<'_> {
    fn vocab(&self) -> &Vocab {
        self.0.vocab()
    }
    fn domain(&self) -> Domain {
        Domain::TheoryRespecting
    }
    fn entail(&self, x: &FormulaSet) -> FormulaSet {
        FormulaSet::entailed_by(self.0.vocab(), self.0.get(closure(x)))
    }
}

impl EntailOracle for Classical {
    fn vocab(&self) -> &Vocab {
        &self.0
    }
    fn domain(&self) -> Domain {
        Domain::TheoryRespecting
    }
    fn entail(&self, x: &FormulaSet) -> FormulaSet {
        FormulaSet::entailed_by(&self.0, closure(x))
    }
}

impl<F: Fn(&FormulaSet) -> FormulaSet> EntailOracle for FnOracle<F> {
    fn vocab(&self) -> &Vocab {
        &self.vocab
    }
    fn domain(&self) -> Domain {
        self.domain
    }
    fn entail(&self, x: &FormulaSet) -> FormulaSet {
        (self.f)(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    HoldsOnSample,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HoldsOnSample => "holds-on-sample",
        }
    }

    pub fn passed(self) -> bool {
        self != Verdict::Fails
    }
}

/// A counterexample to one of the checked properties, with both sides of the
/// violated relation as computed at check time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `x ⊄ C(x)`.
    Extensivity { x: FormulaSet, out: FormulaSet },
    /// `Th(x) ⊄ Th(C(x))`.
    ExtensivityUpToClosure { x: FormulaSet, out: FormulaSet },
    /// `C(C(x)) ≠ C(x)`.
    Idempotence { x: FormulaSet, once: FormulaSet, twice: FormulaSet },
    /// `x ⊆ y` but `C(x) ⊄ C(y)`.
    Monotony { x: FormulaSet, y: FormulaSet, out_x: FormulaSet, out_y: FormulaSet },
    /// `extra ⊆ C(x)` but `C(x ∪ extra) ⊄ C(x)`.
    Cut { x: FormulaSet, extra: FormulaSet, out_x: FormulaSet, out_union: FormulaSet },
    /// `extra ⊆ C(x)` but `C(x) ⊄ C(x ∪ extra)`.
    CumulativeMonotony { x: FormulaSet, extra: FormulaSet, out_x: FormulaSet, out_union: FormulaSet },
    /// `Th(x1) = Th(x2)` but `C(x1) ≠ C(x2)`.
    LeftSide { x1: FormulaSet, x2: FormulaSet, out1: FormulaSet, out2: FormulaSet },
    /// `C(x)` entails `missing` without containing it.
    RightSide { x: FormulaSet, out: FormulaSet, missing: SemFormula },
    /// `Th(x)` contains `missing`, `C(x)` does not.
    SupraClassical { x: FormulaSet, out: FormulaSet, missing: SemFormula },
    /// The two oracles disagree at `x`.
    Unequal { x: FormulaSet, out1: FormulaSet, out2: FormulaSet },
    /// `C1(x) ⊄ C2(x)`.
    NotIncluded { x: FormulaSet, out1: FormulaSet, out2: FormulaSet },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Extensivity { .. } => "extensivity",
            Violation::ExtensivityUpToClosure { .. } => "extensivity",
            Violation::Idempotence { .. } => "idempotence",
            Violation::Monotony { .. } => "monotony",
            Violation::Cut { .. } => "ct",
            Violation::CumulativeMonotony { .. } => "cm",
            Violation::LeftSide { .. } => "left-side",
            Violation::RightSide { .. } => "right-side",
            Violation::SupraClassical { .. } => "supra-classical",
            Violation::Unequal { .. } => "unequal",
            Violation::NotIncluded { .. } => "inclusion",
        }
    }

    /// Re-evaluates the violated relation through `o` (for the two-oracle
    /// violations, use [`Violation::reproduces_pair`]).
    pub fn reproduces(&self, o: &dyn EntailOracle) -> bool {
        match self {
            Violation::Extensivity { x, .. } => !x.is_subset(&o.entail(x)),
            Violation::ExtensivityUpToClosure { x, .. } => !closure(&o.entail(x)).entails_theory(closure(x)),
            Violation::Idempotence { x, .. } => {
                let once = o.entail(x);
                o.entail(&once) != once
            }
            Violation::Monotony { x, y, .. } => x.is_subset(y) && !o.entail(x).is_subset(&o.entail(y)),
            Violation::Cut { x, extra, .. } => {
                let out_x = o.entail(x);
                extra.is_subset(&out_x) && !o.entail(&x.union(extra)).is_subset(&out_x)
            }
            Violation::CumulativeMonotony { x, extra, .. } => {
                let out_x = o.entail(x);
                extra.is_subset(&out_x) && !out_x.is_subset(&o.entail(&x.union(extra)))
            }
            Violation::LeftSide { x1, x2, .. } => closure(x1) == closure(x2) && o.entail(x1) != o.entail(x2),
            Violation::RightSide { x, missing, .. } => {
                let out = o.entail(x);
                closure(&out).entails(*missing) && !out.contains(*missing)
            }
            Violation::SupraClassical { x, missing, .. } => {
                closure(x).entails(*missing) && !o.entail(x).contains(*missing)
            }
            Violation::Unequal { .. } | Violation::NotIncluded { .. } => false,
        }
    }

    pub fn reproduces_pair(&self, o1: &dyn EntailOracle, o2: &dyn EntailOracle) -> bool {
        match self {
            Violation::Unequal { x, .. } => o1.entail(x) != o2.entail(x),
            Violation::NotIncluded { x, .. } => !o1.entail(x).is_subset(&o2.entail(x)),
            other => other.reproduces(o1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub property: &'static str,
    pub verdict: Verdict,
    pub witness: Option<Violation>,
    /// Number of premise sets (or premise pairs) examined.
    pub trials: u64,
    pub seed: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    /// Premise sets drawn when a domain is too large to enumerate.
    pub premise_samples: usize,
    /// Subsets of each conclusion drawn for (CT)/(CM) on raw oracles.
    pub subset_samples: usize,
    /// Sets the sampler draws sub-premises from, e.g. a model's state sets.
    pub anchors: Vec<FormulaSet>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: 0, premise_samples: 1000, subset_samples: 100, anchors: Vec::new() }
    }
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> Self {
        CheckConfig { seed, ..Default::default() }
    }
}

/// Seeded premise-set sampler.
pub struct Sampler<'a> {
    vocab: &'a Vocab,
    anchors: &'a [FormulaSet],
    classes: u64,
    rng: ChaCha8Rng,
}

impl<'a> Sampler<'a> {
    pub fn new(vocab: &'a Vocab, config: &'a CheckConfig) -> Self {
        Sampler {
            vocab,
            anchors: &config.anchors,
            classes: vocab.class_count() as u64,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
        }
    }

    pub fn class(&mut self) -> SemFormula {
        SemFormula(self.rng.gen_range(0..self.classes))
    }

    /// Each member of `from` kept with probability one half.
    pub fn subset_of(&mut self, from: &FormulaSet) -> FormulaSet {
        let mut out = FormulaSet::empty(self.vocab);
        for f in from.iter() {
            if self.rng.gen_bool(0.5) {
                out.insert(f);
            }
        }
        out
    }

    /// A premise set: a few random classes, a dense random set, a theory, or a
    /// subset of an anchor.
    pub fn premises(&mut self) -> FormulaSet {
        let roll = self.rng.gen_range(0..10);
        if roll < 4 && !self.anchors.is_empty() {
            let anchor = &self.anchors[self.rng.gen_range(0..self.anchors.len())];
            return self.subset_of(anchor);
        }
        match roll {
            0..=5 => {
                let k = self.rng.gen_range(0..=3);
                FormulaSet::from_classes(self.vocab, (0..k).map(|_| self.class()).collect::<Vec<_>>())
            }
            6 | 7 => {
                let t = Theory(self.rng.gen_range(0..self.classes));
                FormulaSet::entailed_by(self.vocab, t)
            }
            _ => {
                let p = self.rng.gen_range(0.05..0.5);
                let mut out = FormulaSet::empty(self.vocab);
                for c in 0..self.classes {
                    if self.rng.gen_bool(p) {
                        out.insert(SemFormula(c));
                    }
                }
                out
            }
        }
    }

    /// Another presentation of the same theory as `x`.
    pub fn equivalent_to(&mut self, x: &FormulaSet) -> FormulaSet {
        let th = closure(x);
        let mut out = self.subset_of(&FormulaSet::entailed_by(self.vocab, th));
        out.insert(th.axiom());
        out
    }
}

fn theory_count(vocab: &Vocab) -> Option<u64> {
    let n = vocab.class_count();
    (n <= vocab.size_cap() as u128).then_some(n as u64)
}

/// All `2^(2^2^n)` formula sets, when within the cap.
fn all_sets_count(vocab: &Vocab) -> Option<u64> {
    let classes = vocab.class_count();
    if classes >= 64 {
        return None;
    }
    let n = 1u128 << classes;
    (n <= vocab.size_cap() as u128).then_some(n as u64)
}

fn set_from_bits(vocab: &Vocab, bits: u64) -> FormulaSet {
    let mut x = FormulaSet::empty(vocab);
    let mut b = bits;
    while b != 0 {
        x.insert(SemFormula(b.trailing_zeros() as u64));
        b &= b - 1;
    }
    x
}

fn theories(vocab: &Vocab) -> impl Iterator<Item = Theory> {
    (0..vocab.class_count() as u64).map(Theory)
}

fn report(property: &'static str, exhaustive: bool, witness: Option<Violation>, trials: u64, seed: u64) -> CheckReport {
    let verdict = match (&witness, exhaustive) {
        (Some(_), _) => Verdict::Fails,
        (None, true) => Verdict::Holds,
        (None, false) => Verdict::HoldsOnSample,
    };
    CheckReport { property, verdict, witness, trials, seed }
}

/// Extensivity, idempotence and monotony.
pub fn check_tarski(o: &dyn EntailOracle, config: &CheckConfig) -> CheckReport {
    let v = o.vocab();
    let exhaustive = o.domain() == Domain::TheoryRespecting
        && theory_count(v).is_some_and(|n| (n as u128) * (n as u128) <= v.size_cap() as u128);
    let mut trials = 0u64;
    if exhaustive {
        let sets: Vec<(Theory, FormulaSet, FormulaSet)> = theories(v)
            .map(|t| {
                let x = FormulaSet::entailed_by(v, t);
                let out = o.entail(&x);
                (t, x, out)
            })
            .collect();
        let mut witness = None;
        for (_, x, out) in &sets {
            trials += 1;
            if !x.is_subset(out) {
                witness = Some(Violation::Extensivity { x: x.clone(), out: out.clone() });
                break;
            }
        }
        if witness.is_none() {
            for (_, x, once) in &sets {
                let twice = o.entail(once);
                if &twice != once {
                    witness = Some(Violation::Idempotence { x: x.clone(), once: once.clone(), twice });
                    break;
                }
            }
        }
        if witness.is_none() {
            'outer: for (tx, x, out_x) in &sets {
                for (ty, y, out_y) in &sets {
                    // x ⊆ y as formula sets
                    if ty.entails_theory(*tx) {
                        trials += 1;
                        if !out_x.is_subset(out_y) {
                            witness = Some(Violation::Monotony {
                                x: x.clone(),
                                y: y.clone(),
                                out_x: out_x.clone(),
                                out_y: out_y.clone(),
                            });
                            break 'outer;
                        }
                    }
                }
            }
        }
        return report("tarski", true, witness, trials, config.seed);
    }
    let mut sampler = Sampler::new(v, config);
    for _ in 0..config.premise_samples {
        trials += 1;
        let x = sampler.premises();
        let out = o.entail(&x);
        if !x.is_subset(&out) {
            return report("tarski", false, Some(Violation::Extensivity { x, out }), trials, config.seed);
        }
        let twice = o.entail(&out);
        if twice != out {
            return report("tarski", false, Some(Violation::Idempotence { x, once: out, twice }), trials, config.seed);
        }
        let extra = sampler.premises();
        let y = x.union(&extra);
        let out_y = o.entail(&y);
        if !out.is_subset(&out_y) {
            let w = Violation::Monotony { x, y, out_x: out, out_y };
            return report("tarski", false, Some(w), trials, config.seed);
        }
    }
    report("tarski", false, None, trials, config.seed)
}

fn interval_tabulation(o: &dyn EntailOracle) -> Option<Vec<Theory>> {
    let v = o.vocab();
    if o.domain() != Domain::TheoryRespecting {
        return None;
    }
    let n = theory_count(v)?;
    if (n as u128) * (n as u128) > v.size_cap() as u128 {
        return None;
    }
    let mut table = Vec::with_capacity(n as usize);
    for t in theories(v) {
        let out = o.entail(&FormulaSet::entailed_by(v, t));
        if !out.is_closed() {
            return None;
        }
        table.push(closure(&out));
    }
    Some(table)
}

/// Shared driver for (CT) and (CM). `cut` selects (CT).
fn check_cumulative_rule(o: &dyn EntailOracle, config: &CheckConfig, cut: bool) -> CheckReport {
    let property = if cut { "ct" } else { "cm" };
    let v = o.vocab();
    let mut trials = 0u64;
    let make = |x: FormulaSet, extra: FormulaSet, out_x: FormulaSet, out_union: FormulaSet| {
        if cut {
            Violation::Cut { x, extra, out_x, out_union }
        } else {
            Violation::CumulativeMonotony { x, extra, out_x, out_union }
        }
    };
    if let Some(table) = interval_tabulation(o) {
        // T ∪ T' for T' ⊆ C(T) ranges exactly over the theories between T and C(T)
        for t in theories(v) {
            let c = table[t.index()];
            let free = t.models() & !c.models();
            let mut sub = 0u64;
            loop {
                trials += 1;
                let between = Theory(c.models() | sub);
                let other = table[between.index()];
                let ok = if cut { c.entails_theory(other) } else { other.entails_theory(c) };
                if !ok {
                    let w = make(
                        FormulaSet::entailed_by(v, t),
                        FormulaSet::entailed_by(v, between),
                        FormulaSet::entailed_by(v, c),
                        FormulaSet::entailed_by(v, other),
                    );
                    return report(property, true, Some(w), trials, config.seed);
                }
                if sub == free {
                    break;
                }
                sub = sub.wrapping_sub(free) & free;
            }
        }
        return report(property, true, None, trials, config.seed);
    }
    let mut sampler = Sampler::new(v, config);
    for _ in 0..config.premise_samples {
        let x = sampler.premises();
        let out_x = o.entail(&x);
        for _ in 0..config.subset_samples {
            trials += 1;
            let extra = sampler.subset_of(&out_x);
            let out_union = o.entail(&x.union(&extra));
            let ok = if cut { out_union.is_subset(&out_x) } else { out_x.is_subset(&out_union) };
            if !ok {
                return report(property, false, Some(make(x, extra, out_x, out_union)), trials, config.seed);
            }
        }
    }
    report(property, false, None, trials, config.seed)
}

/// (CT): `T' ⊆ C(T)` implies `C(T ∪ T') ⊆ C(T)`.
pub fn check_ct(o: &dyn EntailOracle, config: &CheckConfig) -> CheckReport {
    check_cumulative_rule(o, config, true)
}

/// (CM): `T' ⊆ C(T)` implies `C(T) ⊆ C(T ∪ T')`.
pub fn check_cm(o: &dyn EntailOracle, config: &CheckConfig) -> CheckReport {
    check_cumulative_rule(o, config, false)
}

/// Premise sets to examine: every formula set when that domain fits the cap,
/// else a seeded sample. Returns whether the domain was exhaustive.
fn premise_domain(v: &Vocab, config: &CheckConfig) -> (bool, Vec<FormulaSet>) {
    match all_sets_count(v) {
        Some(n) => (true, (0..n).map(|bits| set_from_bits(v, bits)).collect()),
        None => {
            let mut sampler = Sampler::new(v, config);
            let mut sets: Vec<FormulaSet> = theories(v)
                .take(config.premise_samples.min(v.size_cap() as usize))
                .map(|t| FormulaSet::entailed_by(v, t))
                .collect();
            sets.extend((0..config.premise_samples).map(|_| sampler.premises()));
            (false, sets)
        }
    }
}

/// Extensivity up to closure, closed conclusions (right side) and equal
/// conclusions for equivalent premises (left side).
pub fn check_precirc(o: &dyn EntailOracle, config: &CheckConfig) -> CheckReport {
    let v = o.vocab();
    let (exhaustive, sets) = premise_domain(v, config);
    let mut representative: Vec<Option<(FormulaSet, FormulaSet)>> =
        if exhaustive { (0..v.class_count()).map(|_| None).collect() } else { Vec::new() };
    let mut sampler = Sampler::new(v, config);
    let mut trials = 0u64;
    for x in sets {
        trials += 1;
        let out = o.entail(&x);
        let th = closure(&x);
        if !closure(&out).entails_theory(th) {
            return report("precirc", exhaustive, Some(Violation::ExtensivityUpToClosure { x, out }), trials, config.seed);
        }
        if let Some(missing) = out.first_missing_consequence() {
            return report("precirc", exhaustive, Some(Violation::RightSide { x, out, missing }), trials, config.seed);
        }
        let other = if exhaustive {
            match &representative[th.index()] {
                Some(rep) => Some(rep.clone()),
                None => {
                    representative[th.index()] = Some((x.clone(), out.clone()));
                    None
                }
            }
        } else {
            let x2 = sampler.equivalent_to(&x);
            let out2 = o.entail(&x2);
            Some((x2, out2))
        };
        if let Some((x1, out1)) = other {
            if out1 != out {
                let w = Violation::LeftSide { x1, x2: x, out1, out2: out };
                return report("precirc", exhaustive, Some(w), trials, config.seed);
            }
        }
    }
    report("precirc", exhaustive, None, trials, config.seed)
}

/// `Th(X) ⊆ C(X)` for every premise set.
pub fn check_supra_entail(o: &dyn EntailOracle, config: &CheckConfig) -> CheckReport {
    let v = o.vocab();
    let (exhaustive, sets) = premise_domain(v, config);
    let mut trials = 0u64;
    for x in sets {
        trials += 1;
        let out = o.entail(&x);
        let required = FormulaSet::entailed_by(v, closure(&x));
        if let Some(missing) = required.difference(&out).iter().next() {
            return report("supra", exhaustive, Some(Violation::SupraClassical { x, out, missing }), trials, config.seed);
        }
    }
    report("supra", exhaustive, None, trials, config.seed)
}

/// Equality of two entailments on every theory, and on sampled raw premise
/// sets when either oracle is raw.
pub fn check_equal(o1: &dyn EntailOracle, o2: &dyn EntailOracle, config: &CheckConfig) -> Result<CheckReport> {
    let v = o1.vocab();
    if v != o2.vocab() {
        return Err(Error::VocabMismatch("compared oracles"));
    }
    let count = v.class_count();
    v.guard("theories", count)?;
    let mut trials = 0u64;
    for t in theories(v) {
        trials += 1;
        let x = FormulaSet::entailed_by(v, t);
        let (out1, out2) = (o1.entail(&x), o2.entail(&x));
        if out1 != out2 {
            return Ok(report("equal", true, Some(Violation::Unequal { x, out1, out2 }), trials, config.seed));
        }
    }
    let raw = o1.domain() == Domain::Raw || o2.domain() == Domain::Raw;
    if raw {
        let mut sampler = Sampler::new(v, config);
        for _ in 0..config.premise_samples {
            trials += 1;
            let x = sampler.premises();
            let (out1, out2) = (o1.entail(&x), o2.entail(&x));
            if out1 != out2 {
                return Ok(report("equal", false, Some(Violation::Unequal { x, out1, out2 }), trials, config.seed));
            }
        }
    }
    Ok(report("equal", !raw, None, trials, config.seed))
}

/// Every theory, then `premise_samples` sampled premise sets unless the
/// oracle is theory-respecting. Returns whether the domain was exhaustive.
fn theories_then_samples(o: &dyn EntailOracle, config: &CheckConfig) -> Result<(bool, Vec<FormulaSet>)> {
    let v = o.vocab();
    v.guard("theories", v.class_count())?;
    let mut sets: Vec<FormulaSet> = theories(v).map(|t| FormulaSet::entailed_by(v, t)).collect();
    let exhaustive = o.domain() == Domain::TheoryRespecting;
    if !exhaustive {
        let mut sampler = Sampler::new(v, config);
        sets.extend((0..config.premise_samples).map(|_| sampler.premises()));
    }
    Ok((exhaustive, sets))
}

/// `x ⊆ C(x)`.
pub fn check_extensivity(o: &dyn EntailOracle, config: &CheckConfig) -> Result<CheckReport> {
    let (exhaustive, sets) = theories_then_samples(o, config)?;
    let mut trials = 0u64;
    for x in sets {
        trials += 1;
        let out = o.entail(&x);
        if !x.is_subset(&out) {
            return Ok(report("extensivity", exhaustive, Some(Violation::Extensivity { x, out }), trials, config.seed));
        }
    }
    Ok(report("extensivity", exhaustive, None, trials, config.seed))
}

/// `C(C(x)) = C(x)`.
pub fn check_idempotence(o: &dyn EntailOracle, config: &CheckConfig) -> Result<CheckReport> {
    let (exhaustive, sets) = theories_then_samples(o, config)?;
    let mut trials = 0u64;
    for x in sets {
        trials += 1;
        let once = o.entail(&x);
        let twice = o.entail(&once);
        if twice != once {
            return Ok(report("idempotence", exhaustive, Some(Violation::Idempotence { x, once, twice }), trials, config.seed));
        }
    }
    Ok(report("idempotence", exhaustive, None, trials, config.seed))
}

/// `C1(x) ⊆ C2(x)` on every theory and on sampled premise sets when either
/// oracle is raw.
pub fn check_included(o1: &dyn EntailOracle, o2: &dyn EntailOracle, config: &CheckConfig) -> Result<CheckReport> {
    let v = o1.vocab();
    if v != o2.vocab() {
        return Err(Error::VocabMismatch("compared oracles"));
    }
    let probe = if o1.domain() == Domain::Raw { o1 } else { o2 };
    let (exhaustive, sets) = theories_then_samples(probe, config)?;
    let mut trials = 0u64;
    for x in sets {
        trials += 1;
        let (out1, out2) = (o1.entail(&x), o2.entail(&x));
        if !out1.is_subset(&out2) {
            return Ok(report("inclusion", exhaustive, Some(Violation::NotIncluded { x, out1, out2 }), trials, config.seed));
        }
    }
    Ok(report("inclusion", exhaustive, None, trials, config.seed))
}
