//! Verification campaigns and counterexample searches.
//!
//! A campaign runs one claim over many seeded random models. Trial `i` draws
//! its model from the stream `trial_rng(seed, i)`, so trials are independent
//! of each other and of scheduling; results are merged by trial index.
//!
//! Positive claims count failures over every trial. Negative claims search
//! for a witness and stop after the first batch of trials that contains one;
//! the reported witness is the one with the lowest trial index.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use prefent_core::check::{
    check_cm, check_ct, check_equal, check_extensivity, check_idempotence, check_included, check_precirc,
    check_tarski, CheckConfig, CheckReport, CnOracle, KlmOracle, MakOracle, Sampler,
    TableOracle, Violation,
};
use prefent_core::gen::{gen_klm_with, gen_mak_with, trial_rng, GenSpec, KlmTarget, MakTarget};
use prefent_core::klm::{canonical_state_name, ClassifyOptions};
use prefent_core::translate::{
    klm_to_mak, mak_to_klm, precirc_to_simplified_klm, tabulate, ConstructOptions,
};
use prefent_core::{closure, Error, FormulaSet, KlmModel, MakModel, PrecircTable, SemFormula, Theory, Vocab};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::format::{premises_text, write_klm, write_mak};
use crate::report::{check_doc, class_bits, dnf, set_bits, theory_bits, KvDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// Labelled entailments are pre-circumscriptions satisfying (CT).
    KlmCut,
    /// `C_MAK` is extensive and satisfies (CT).
    MakCut,
    /// `C_MAK` is idempotent.
    Idem,
    /// `Cn_⊨` is a Tarski entailment and fixes every state's set.
    Tarski,
    /// `Cn_⊨(x) ⊆ C_MAK(x)`.
    CnSub,
    /// The satisfaction model of a labelled model has the same entailment.
    TKlm2Mak,
    /// A satisfaction-based entailment is labelled iff it is a pre-circumscription.
    TEquiv,
    /// A supra-classical satisfaction model labelled by its sets has the same entailment.
    TSupra,
    /// Supra classicality is (R∧); classical is supra classical plus (R¬);
    /// supra-classical models give pre-circumscriptions.
    RAnd,
    /// (R∧) and (R¬) imply (R∨).
    ROr,
    /// Smooth labelled models give (CM).
    SmoothCm,
    /// The simplified-model construction reproduces a cumulative table.
    Constr,
    /// Search: `C_MAK` is not monotone.
    NonMono,
    /// Search: `C_MAK` can conclude a conjunction without a conjunct.
    NonClose,
    /// Search: a labelled entailment no strictly singular model expresses.
    SingLimit,
}

impl Claim {
    pub const ALL: [Claim; 15] = [
        Claim::KlmCut,
        Claim::MakCut,
        Claim::Idem,
        Claim::Tarski,
        Claim::CnSub,
        Claim::TKlm2Mak,
        Claim::TEquiv,
        Claim::TSupra,
        Claim::RAnd,
        Claim::ROr,
        Claim::SmoothCm,
        Claim::Constr,
        Claim::NonMono,
        Claim::NonClose,
        Claim::SingLimit,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::KlmCut => "P3.6",
            Claim::MakCut => "P3.10",
            Claim::Idem => "IDEM",
            Claim::Tarski => "TARSKI",
            Claim::CnSub => "CN-SUB",
            Claim::TKlm2Mak => "T-KLM2MAK",
            Claim::TEquiv => "T-EQUIV",
            Claim::TSupra => "T-SUPRA",
            Claim::RAnd => "R-AND",
            Claim::ROr => "R-OR",
            Claim::SmoothCm => "SMOOTH-CM",
            Claim::Constr => "CONSTR",
            Claim::NonMono => "NONMONO",
            Claim::NonClose => "NONCLOSE",
            Claim::SingLimit => "SING-LIMIT",
        }
    }

    /// Whether the claim is established by finding a witness.
    pub fn is_search(self) -> bool {
        matches!(self, Claim::NonMono | Claim::NonClose | Claim::SingLimit)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownClaim(pub String);

impl fmt::Display for UnknownClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<&str> = Claim::ALL.iter().map(|c| c.id()).collect();
        write!(f, "unknown claim `{}` (expected one of {})", self.0, ids.join(", "))
    }
}

impl std::error::Error for UnknownClaim {}

impl FromStr for Claim {
    type Err = UnknownClaim;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL.into_iter().find(|c| c.id().eq_ignore_ascii_case(s)).ok_or_else(|| UnknownClaim(s.into()))
    }
}

#[derive(Clone, Debug)]
pub struct CampaignSpec {
    pub claim: Claim,
    pub trials: u64,
    /// Shape of the generated models; the claim picks the model targets.
    pub gen: GenSpec,
    /// Sampled premise sets per check (claim default when `None`).
    pub premise_samples: Option<usize>,
    /// Sampled subsets per premise set for (CT) on raw entailments.
    pub subset_samples: Option<usize>,
}

impl CampaignSpec {
    pub fn new(claim: Claim, trials: u64, gen: GenSpec) -> Self {
        CampaignSpec { claim, trials, gen, premise_samples: None, subset_samples: None }
    }

    fn premise_samples(&self) -> usize {
        self.premise_samples.unwrap_or(match self.claim {
            Claim::TKlm2Mak | Claim::TSupra | Claim::TEquiv => 200,
            _ => 100,
        })
    }

    fn subset_samples(&self) -> usize {
        self.subset_samples.unwrap_or(50)
    }
}

/// A failing trial of a positive claim, or the witness of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: u64,
    /// `klm`, `mak` or `table`.
    pub model_kind: &'static str,
    /// The model in its file format.
    pub model: String,
    pub details: KvDoc,
}

#[derive(Clone, Debug)]
pub struct CampaignResult {
    pub claim: Claim,
    pub seed: u64,
    pub vocab_size: usize,
    pub trials_requested: u64,
    pub trials_run: u64,
    /// Failing trials (positive claims) or witness-bearing trials (searches).
    pub failures: u64,
    pub first: Option<Counterexample>,
    /// Named counters, e.g. verdicts per checked property.
    pub tallies: BTreeMap<String, u64>,
    pub wall_time: Duration,
}

impl CampaignResult {
    pub fn outcome(&self) -> &'static str {
        match (self.claim.is_search(), self.first.is_some()) {
            (false, false) => "verified",
            (false, true) => "refuted",
            (true, true) => "witness-found",
            (true, false) => "no-witness",
        }
    }

    /// Zero failures for a positive claim; a witness for a search.
    pub fn passed(&self) -> bool {
        self.claim.is_search() == self.first.is_some()
    }

    /// The machine-readable report. Wall time is left out so that equal
    /// seeds give byte-identical documents.
    pub fn doc(&self) -> KvDoc {
        let mut d = KvDoc::new();
        d.push("claim", self.claim.id())
            .push("kind", if self.claim.is_search() { "search" } else { "verification" })
            .push("seed", self.seed)
            .push("vocab", self.vocab_size)
            .push("trials_requested", self.trials_requested)
            .push("trials_run", self.trials_run)
            .push(if self.claim.is_search() { "witnesses" } else { "failures" }, self.failures)
            .push("outcome", self.outcome());
        for (k, v) in &self.tallies {
            d.push(format!("tally.{k}"), v);
        }
        if let Some(c) = &self.first {
            d.push("counterexample.trial", c.trial)
                .push("counterexample.model_kind", c.model_kind)
                .push("counterexample.model", &c.model);
            d.extend_prefixed("counterexample.", &c.details);
        }
        d
    }

    pub fn summary(&self) -> String {
        let what = if self.claim.is_search() { "witnesses" } else { "failures" };
        format!(
            "{}: {} ({} {what} in {} of {} trials, {:.2?})",
            self.claim,
            self.outcome(),
            self.failures,
            self.trials_run,
            self.trials_requested,
            self.wall_time
        )
    }
}

#[derive(Default)]
struct Trial {
    hit: Option<Counterexample>,
    tallies: Vec<String>,
}

impl Trial {
    fn tally(&mut self, key: impl Into<String>) {
        self.tallies.push(key.into());
    }

    fn verdict(&mut self, prefix: &str, r: &CheckReport) {
        self.tally(format!("{prefix}{}.{}", r.property, r.verdict.as_str()));
    }

    fn hit(&mut self, c: Counterexample) {
        if self.hit.is_none() {
            self.hit = Some(c);
        }
    }
}

struct Ctx<'a> {
    spec: &'a CampaignSpec,
    trial: u64,
    rng: ChaCha8Rng,
}

impl Ctx<'_> {
    fn klm(&mut self, target: KlmTarget) -> Result<KlmModel, Error> {
        let gen = GenSpec { klm: target, ..self.spec.gen.clone() };
        gen_klm_with(&gen, &mut self.rng)
    }

    fn mak(&mut self, target: MakTarget) -> Result<MakModel, Error> {
        let gen = GenSpec { mak: target, ..self.spec.gen.clone() };
        gen_mak_with(&gen, &mut self.rng)
    }

    fn config(&mut self, anchors: Vec<FormulaSet>) -> CheckConfig {
        CheckConfig {
            seed: self.rng.gen(),
            premise_samples: self.spec.premise_samples(),
            subset_samples: self.spec.subset_samples(),
            anchors,
        }
    }

    fn klm_case(&self, m: &KlmModel, details: KvDoc) -> Counterexample {
        Counterexample { trial: self.trial, model_kind: "klm", model: write_klm(m), details }
    }

    fn mak_case(&self, m: &MakModel, details: KvDoc) -> Counterexample {
        Counterexample { trial: self.trial, model_kind: "mak", model: write_mak(m), details }
    }
}

/// Check details, with the witness premises also written as formulas.
fn report_details(r: &CheckReport, v: &Vocab) -> KvDoc {
    let mut d = check_doc(r, v);
    if let Some(w) = &r.witness {
        let premises: Vec<(&str, &FormulaSet)> = match w {
            Violation::Monotony { x, y, .. } => vec![("x", x), ("y", y)],
            Violation::Cut { x, extra, .. } | Violation::CumulativeMonotony { x, extra, .. } => {
                vec![("x", x), ("extra", extra)]
            }
            Violation::LeftSide { x1, x2, .. } => vec![("x1", x1), ("x2", x2)],
            Violation::Extensivity { x, .. }
            | Violation::ExtensivityUpToClosure { x, .. }
            | Violation::Idempotence { x, .. }
            | Violation::RightSide { x, .. }
            | Violation::SupraClassical { x, .. }
            | Violation::Unequal { x, .. }
            | Violation::NotIncluded { x, .. } => vec![("x", x)],
        };
        for (k, x) in premises {
            d.push(format!("witness.{k}_premises"), premises_text(x, v));
        }
    }
    d
}

fn note(what: &str) -> KvDoc {
    let mut d = KvDoc::new();
    d.push("failed", what);
    d
}

fn run_trial(spec: &CampaignSpec, trial: u64) -> Result<Trial, Error> {
    let mut cx = Ctx { spec, trial, rng: trial_rng(spec.gen.seed, trial) };
    let mut t = Trial::default();
    match spec.claim {
        Claim::KlmCut => {
            let m = cx.klm(KlmTarget::Any)?;
            let table = tabulate(&m)?;
            let cfg = cx.config(Vec::new());
            for r in [check_precirc(&KlmOracle(&m), &cfg), check_ct(&TableOracle(&table), &cfg)] {
                t.verdict("", &r);
                if !r.passed() {
                    t.hit(cx.klm_case(&m, report_details(&r, m.vocab())));
                }
            }
        }
        Claim::MakCut | Claim::Idem | Claim::CnSub => {
            let m = cx.mak(MakTarget::Raw)?;
            let cfg = cx.config(m.sat_sets().to_vec());
            let o = MakOracle(&m);
            let reports = match spec.claim {
                Claim::MakCut => vec![check_extensivity(&o, &cfg)?, check_ct(&o, &cfg)],
                Claim::Idem => vec![check_idempotence(&o, &cfg)?],
                _ => vec![check_included(&CnOracle(&m), &o, &cfg)?],
            };
            for r in reports {
                t.verdict("", &r);
                if !r.passed() {
                    t.hit(cx.mak_case(&m, report_details(&r, m.vocab())));
                }
            }
        }
        Claim::Tarski => {
            let m = cx.mak(MakTarget::Raw)?;
            let cfg = cx.config(m.sat_sets().to_vec());
            let r = check_tarski(&CnOracle(&m), &cfg);
            t.verdict("", &r);
            if !r.passed() {
                t.hit(cx.mak_case(&m, report_details(&r, m.vocab())));
            }
            for (name, set) in m.names().iter().zip(m.sat_sets()) {
                let cn = m.cn_entail(set);
                if &cn != set {
                    let mut d = note("state-fixpoint");
                    d.push("state", name).push("sat", set_bits(set, m.vocab())).push("cn", set_bits(&cn, m.vocab()));
                    t.hit(cx.mak_case(&m, d));
                }
            }
            t.tally("state-fixpoint.checked");
        }
        Claim::TKlm2Mak => {
            let m = cx.klm(KlmTarget::Any)?;
            let mm = klm_to_mak(&m)?;
            if let Some((s, missing)) = mm.first_unclosed_state() {
                let mut d = note("target-supra-classical");
                d.push("state", &mm.names()[s.0]).push("missing", class_bits(missing, m.vocab()));
                t.hit(cx.klm_case(&m, d));
            }
            let cfg = cx.config(mm.sat_sets().to_vec());
            let r = check_equal(&KlmOracle(&m), &MakOracle(&mm), &cfg)?;
            t.verdict("", &r);
            if !r.passed() {
                t.hit(cx.klm_case(&m, report_details(&r, m.vocab())));
            }
        }
        Claim::TSupra => {
            let m = cx.mak(MakTarget::Supra)?;
            let k = mak_to_klm(&m)?;
            let cfg = cx.config(m.sat_sets().to_vec());
            let r = check_equal(&MakOracle(&m), &KlmOracle(&k), &cfg)?;
            t.verdict("", &r);
            if !r.passed() {
                t.hit(cx.mak_case(&m, report_details(&r, m.vocab())));
            }
            if mak_to_klm(&klm_to_mak(&k)?)?.labels() != k.labels() {
                t.hit(cx.mak_case(&m, note("label-round-trip")));
            }
        }
        Claim::TEquiv => equivalence_trial(&mut cx, &mut t)?,
        Claim::RAnd | Claim::ROr => {
            const TARGETS: [MakTarget; 4] = [MakTarget::Raw, MakTarget::Supra, MakTarget::Classical, MakTarget::Unicity];
            let target = TARGETS[(trial % 4) as usize];
            let m = cx.mak(target)?;
            let kind = m.classify()?;
            t.tally(format!("target.{target:?}").to_lowercase());
            let fail = |what: &str, t: &mut Trial| {
                let mut d = note(what);
                d.push("classification", format!("{kind:?}"));
                t.hit(cx.mak_case(&m, d));
            };
            if spec.claim == Claim::ROr {
                if kind.r_and && kind.r_neg {
                    t.tally("r-and-and-r-neg");
                    if !kind.r_or {
                        fail("r-and-and-r-neg-imply-r-or", &mut t);
                    }
                }
            } else {
                if kind.supra_classical != kind.r_and {
                    fail("supra-classical-iff-r-and", &mut t);
                }
                if kind.classical != (kind.supra_classical && kind.r_neg) {
                    fail("classical-iff-supra-and-r-neg", &mut t);
                }
                let cfg = cx.config(m.sat_sets().to_vec());
                let r = check_precirc(&MakOracle(&m), &cfg);
                let prefix = if kind.supra_classical { "supra." } else { "non-supra." };
                t.verdict(prefix, &r);
                if kind.supra_classical && !r.passed() {
                    t.hit(cx.mak_case(&m, report_details(&r, m.vocab())));
                }
                if matches!(r.witness, Some(Violation::RightSide { .. })) {
                    t.tally("non-supra.right-side-witness");
                }
            }
        }
        Claim::SmoothCm => {
            let m = cx.klm(KlmTarget::Smooth)?;
            let table = tabulate(&m)?;
            let cfg = cx.config(Vec::new());
            let r = check_cm(&TableOracle(&table), &cfg);
            t.verdict("", &r);
            if !r.passed() {
                t.hit(cx.klm_case(&m, report_details(&r, m.vocab())));
            }
        }
        Claim::Constr => {
            let m = cx.klm(KlmTarget::Smooth)?;
            let table = tabulate(&m)?;
            match precirc_to_simplified_klm(&table, ConstructOptions::default()) {
                Err(e) => {
                    let mut d = note("construction");
                    d.push("error", e);
                    t.hit(cx.klm_case(&m, d));
                }
                Ok(k) => {
                    let kind = k.classify_with(ClassifyOptions { strict_order: true })?;
                    let ok = kind.simplified && kind.smooth && kind.irreflexive == Some(true);
                    if !ok || tabulate(&k)? != table {
                        let mut d = note("constructed-model");
                        d.push("classification", format!("{kind:?}"));
                        t.hit(cx.klm_case(&m, d));
                    }
                    t.tally("constructed");
                }
            }
        }
        Claim::NonMono => {
            let m = cx.mak(MakTarget::Raw)?;
            let cfg = cx.config(m.sat_sets().to_vec());
            let r = check_tarski(&MakOracle(&m), &cfg);
            if let Some(Violation::Monotony { .. }) = &r.witness {
                t.hit(cx.mak_case(&m, report_details(&r, m.vocab())));
            }
        }
        Claim::NonClose => {
            let m = cx.mak(MakTarget::Raw)?;
            let cfg = cx.config(m.sat_sets().to_vec());
            if let Some(d) = nonclose_witness(&m, &cfg) {
                t.hit(cx.mak_case(&m, d));
            }
        }
        Claim::SingLimit => unreachable!("run separately"),
    }
    Ok(t)
}

/// Necessity on a translated labelled model, sufficiency on a raw model whose
/// entailment turns out to be a pre-circumscription.
fn equivalence_trial(cx: &mut Ctx<'_>, t: &mut Trial) -> Result<(), Error> {
    let k = cx.klm(KlmTarget::Any)?;
    let mk = klm_to_mak(&k)?;
    let cfg = cx.config(Vec::new());
    let r = check_precirc(&MakOracle(&mk), &cfg);
    t.verdict("labelled.", &r);
    if !r.passed() {
        t.hit(cx.klm_case(&k, report_details(&r, k.vocab())));
    }

    let m = cx.mak(MakTarget::Raw)?;
    let cfg = cx.config(m.sat_sets().to_vec());
    let r = check_precirc(&MakOracle(&m), &cfg);
    t.verdict("raw.", &r);
    if !r.passed() {
        return Ok(());
    }
    let v = m.vocab().clone();
    let table = PrecircTable::from_fn(v.clone(), |th| closure(&m.mak_entail(&FormulaSet::entailed_by(&v, th))))?;
    if let Some(violation) = table.first_ct_violation() {
        let mut d = note("precirc-table-ct");
        d.push("premise", theory_bits(violation.premise, &v)).push("other", theory_bits(violation.other, &v));
        t.hit(cx.mak_case(&m, d));
        return Ok(());
    }
    let witness = if m.is_supra_classical() {
        t.tally("raw.witness.supra-path");
        Some(mak_to_klm(&m)?)
    } else {
        match precirc_to_simplified_klm(&table, ConstructOptions { allow_non_cumulative: true }) {
            Ok(k) => {
                t.tally("raw.witness.simplified-construction");
                Some(k)
            }
            Err(_) => {
                t.tally("raw.witness.open");
                None
            }
        }
    };
    if let Some(k) = witness {
        let r = check_equal(&MakOracle(&m), &KlmOracle(&k), &cfg)?;
        t.verdict("raw.witness.", &r);
        if !r.passed() {
            t.hit(cx.mak_case(&m, report_details(&r, &v)));
        }
    }
    Ok(())
}

/// A premise set whose conclusion contains a conjunction `a ∧ b` but not `a`:
/// the first conclusion class (canonical order) with a missing weakening.
pub fn nonclose_witness(m: &MakModel, cfg: &CheckConfig) -> Option<KvDoc> {
    let v = m.vocab();
    let all = v.all_models();
    let mut sampler = Sampler::new(v, cfg);
    let mut sets: Vec<FormulaSet> = (0..v.class_count() as u64).map(|t| FormulaSet::entailed_by(v, Theory(t))).collect();
    sets.extend((0..cfg.premise_samples).map(|_| sampler.premises()));
    for x in sets {
        let out = m.mak_entail(&x);
        for c in out.iter() {
            // the weakenings of c are the classes whose models include c's
            let free = all & !c.models();
            let mut sub = 0u64;
            loop {
                sub = sub.wrapping_sub(free) & free;
                if sub == 0 {
                    break;
                }
                let a = SemFormula(c.models() | sub);
                if !out.contains(a) {
                    // a ∧ b = c for b = c ∨ ¬a
                    let b = SemFormula(c.models() | (all & !a.models()));
                    let mut d = KvDoc::new();
                    d.push("witness.kind", "conjunction-without-conjunct")
                        .push("witness.x", set_bits(&x, v))
                        .push("witness.x_premises", premises_text(&x, v))
                        .push("witness.out", set_bits(&out, v))
                        .push("witness.conjunction", class_bits(c, v))
                        .push("witness.conjunction_formula", dnf(c, v))
                        .push("witness.missing", class_bits(a, v))
                        .push("witness.missing_formula", dnf(a, v))
                        .push("witness.other_conjunct", class_bits(b, v));
                    return Some(d);
                }
            }
        }
    }
    None
}

/// Trials per parallel batch of a search.
const SEARCH_BATCH: u64 = 256;

pub fn run_campaign(spec: &CampaignSpec) -> Result<CampaignResult, Error> {
    let start = Instant::now();
    spec.gen.validate()?;
    let mut result = CampaignResult {
        claim: spec.claim,
        seed: spec.gen.seed,
        vocab_size: spec.gen.vocab_size,
        trials_requested: spec.trials,
        trials_run: 0,
        failures: 0,
        first: None,
        tallies: BTreeMap::new(),
        wall_time: Duration::ZERO,
    };
    if spec.claim == Claim::SingLimit {
        sing_limit(spec, &mut result)?;
        result.wall_time = start.elapsed();
        return Ok(result);
    }
    let mut next = 0u64;
    while next < spec.trials {
        let end = if spec.claim.is_search() { (next + SEARCH_BATCH).min(spec.trials) } else { spec.trials };
        let trials: Vec<Trial> = (next..end).into_par_iter().map(|i| run_trial(spec, i)).collect::<Result<_, _>>()?;
        for (i, trial) in (next..end).zip(trials) {
            if spec.claim.is_search() && result.first.is_some() {
                break;
            }
            result.trials_run = i + 1;
            for key in trial.tallies {
                *result.tallies.entry(key).or_default() += 1;
            }
            if let Some(hit) = trial.hit {
                result.failures += 1;
                result.first.get_or_insert(hit);
            }
        }
        if spec.claim.is_search() && result.first.is_some() {
            break;
        }
        next = end;
    }
    result.wall_time = start.elapsed();
    Ok(result)
}

/// Tables of every strictly singular model over `v`: one state per
/// interpretation, under its canonical name, with any preference relation.
fn strictly_singular_tables(v: &Vocab) -> Result<HashSet<Vec<Theory>>, Error> {
    let m = v.interpretation_count();
    let relations = 1u128 << (m * m);
    v.guard("strictly singular preference relations", relations)?;
    let labels: Vec<Theory> = (0..m).map(|i| Theory(1 << i)).collect();
    let states: Vec<(String, Theory)> = labels.iter().map(|&t| (canonical_state_name(v, t), t)).collect();
    let mut tables = HashSet::new();
    for bits in 0..relations as u64 {
        let pairs = (0..m * m).filter(|b| bits >> b & 1 == 1).map(|b| (b / m, b % m));
        let model = KlmModel::new(v.clone(), states.clone(), pairs)?;
        tables.insert(tabulate(&model)?.rows().map(|(_, c)| c).collect());
    }
    Ok(tables)
}

/// Enumerates labelled models with up to `spec.gen.max_states` (at most 3)
/// states over one and then two symbols, looking for an entailment table
/// outside the strictly singular ones.
fn sing_limit(spec: &CampaignSpec, result: &mut CampaignResult) -> Result<(), Error> {
    let max_states = spec.gen.max_states.clamp(1, 3);
    let mut examined = 0u64;
    for n in 1..=spec.gen.vocab_size.min(2) {
        let v = GenSpec { vocab_size: n, ..spec.gen.clone() }.vocab()?;
        let singular = strictly_singular_tables(&v)?;
        result.tallies.insert(format!("vocab{n}.strictly-singular-tables"), singular.len() as u64);
        let theories = v.class_count() as u64;
        for k in 1..=max_states {
            let pref_count = 1u64 << (k * k);
            let label_count = theories.pow(k as u32);
            result.tallies.insert(format!("vocab{n}.states{k}.models"), label_count * pref_count);
            for labels in 0..label_count {
                let states: Vec<(String, Theory)> = (0..k)
                    .map(|i| (format!("s{}", i + 1), Theory(labels / theories.pow(i as u32) % theories)))
                    .collect();
                for bits in 0..pref_count {
                    examined += 1;
                    if examined > spec.trials {
                        result.trials_run = spec.trials;
                        return Ok(());
                    }
                    let pairs = (0..k * k).filter(|b| bits >> b & 1 == 1).map(|b| (b / k, b % k));
                    let model = KlmModel::new(v.clone(), states.clone(), pairs)?;
                    let table: Vec<Theory> = tabulate(&model)?.rows().map(|(_, c)| c).collect();
                    if !singular.contains(&table) {
                        result.trials_run = examined;
                        result.failures = 1;
                        let mut d = KvDoc::new();
                        d.push("witness.kind", "not-strictly-singular").push("witness.vocab", n);
                        let diff: Vec<String> = table
                            .iter()
                            .enumerate()
                            .map(|(t, c)| format!("{}->{}", v.bitstring(t as u64), theory_bits(*c, &v)))
                            .collect();
                        d.push("witness.table", diff.join(","));
                        result.first = Some(Counterexample {
                            trial: examined - 1,
                            model_kind: "klm",
                            model: write_klm(&model),
                            details: d,
                        });
                        return Ok(());
                    }
                }
            }
        }
    }
    result.trials_run = examined;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(claim: Claim, trials: u64) -> CampaignSpec {
        CampaignSpec::new(claim, trials, GenSpec { seed: 11, ..GenSpec::default() })
    }

    #[test]
    fn claim_ids_parse() {
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>().unwrap(), c);
        }
        assert!("P9.9".parse::<Claim>().is_err());
    }

    #[test]
    fn small_positive_campaigns_pass() {
        for claim in [Claim::KlmCut, Claim::Idem, Claim::CnSub, Claim::TSupra, Claim::SmoothCm, Claim::Constr] {
            let r = run_campaign(&spec(claim, 8)).unwrap();
            assert!(r.passed(), "{}", r.summary());
            assert_eq!(r.trials_run, 8);
        }
    }

    #[test]
    fn nonclose_finds_the_single_conjunction_state() {
        let v = Vocab::new(["p", "q"]).unwrap();
        let m = MakModel::new(v.clone(), [("s".into(), FormulaSet::from_classes(&v, [SemFormula(0b1000)]))], []).unwrap();
        let d = nonclose_witness(&m, &CheckConfig::default()).unwrap();
        assert_eq!(d.get("witness.conjunction"), Some("1000"));
        assert_eq!(d.get("witness.missing"), Some("1001"));
    }

    #[test]
    fn searches_stop_at_the_first_witness() {
        let r = run_campaign(&spec(Claim::NonClose, 1000)).unwrap();
        assert!(r.passed());
        assert_eq!(r.first.as_ref().unwrap().trial + 1, r.trials_run);
        assert_eq!(r.failures, 1);
    }

    #[test]
    fn reports_are_reproducible() {
        let a = run_campaign(&spec(Claim::NonMono, 500)).unwrap();
        let b = run_campaign(&spec(Claim::NonMono, 500)).unwrap();
        assert_eq!(a.doc().render(), b.doc().render());
    }
}
