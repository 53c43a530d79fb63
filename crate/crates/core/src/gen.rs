//! Seeded random model generators.
//!
//! A [`GenSpec`] fixes the shape of the models; the randomness comes from a
//! [`ChaCha8Rng`], either seeded from `spec.seed` or supplied by the caller
//! (see [`trial_rng`] for per-trial streams).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula_set::FormulaSet;
use crate::klm::{canonical_state_name, KlmModel};
use crate::logic::{SemFormula, Theory, Vocab, DEFAULT_SIZE_CAP, MAX_VOCAB};
use crate::mak::MakModel;
use crate::pref::Preference;

/// Symbol names used for generated vocabularies, in order.
pub const SYMBOLS: [&str; MAX_VOCAB] = ["p", "q", "r", "s", "t", "u"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MakTarget {
    /// Each state draws a density uniformly from `[0, 1]` and satisfies each
    /// class with that probability, so empty and full sets both occur.
    Raw,
    /// Each state satisfies exactly the consequences of a random theory.
    Supra,
    /// Each state satisfies exactly the consequences of a complete theory.
    Classical,
    /// Supra classical with pairwise distinct theories.
    Unicity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KlmTarget {
    /// Labels drawn uniformly from all theories, inconsistent included.
    Any,
    /// As `Any`, resampled until smooth.
    Smooth,
    /// One state per theory under its canonical name, labelled by it.
    Simplified,
    /// Labels drawn from the complete theories.
    Singular,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub vocab_size: usize,
    /// Inclusive bounds on the number of states (ignored by `Simplified`).
    pub min_states: usize,
    pub max_states: usize,
    /// Each model draws a density uniformly from this range, then includes
    /// every ordered pair of states (loops included) with that probability.
    pub pref_density: (f64, f64),
    pub mak: MakTarget,
    pub klm: KlmTarget,
    pub seed: u64,
    /// Attempts before a rejection-sampled target gives up.
    pub resample_budget: u32,
    /// Size cap given to the generated vocabulary.
    pub size_cap: u64,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            vocab_size: 2,
            min_states: 1,
            max_states: 4,
            pref_density: (0.0, 0.5),
            mak: MakTarget::Raw,
            klm: KlmTarget::Any,
            seed: 0,
            resample_budget: 10_000,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

/// A generator stream for trial `trial` of a campaign seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

impl GenSpec {
    pub fn vocab(&self) -> Result<Vocab> {
        if self.vocab_size == 0 || self.vocab_size > MAX_VOCAB {
            return Err(Error::InvalidSpec(format!("vocabulary size {} outside 1..={MAX_VOCAB}", self.vocab_size)));
        }
        Ok(Vocab::new(SYMBOLS[..self.vocab_size].iter().copied())?.with_size_cap(self.size_cap))
    }

    pub fn validate(&self) -> Result<Vocab> {
        let (lo, hi) = self.pref_density;
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return Err(Error::InvalidSpec(format!("preference density range {lo}..{hi} not within [0, 1]")));
        }
        if self.min_states > self.max_states {
            return Err(Error::InvalidSpec(format!(
                "state range {}..={} is empty",
                self.min_states, self.max_states
            )));
        }
        self.vocab()
    }

    fn state_count(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(self.min_states..=self.max_states)
    }

    fn random_pref(&self, rng: &mut ChaCha8Rng, n: usize) -> Preference {
        let (lo, hi) = self.pref_density;
        let density = if lo < hi { rng.gen_range(lo..=hi) } else { lo };
        let mut pref = Preference::empty(n);
        for a in 0..n {
            for b in 0..n {
                if rng.gen_bool(density) {
                    pref.insert(a, b);
                }
            }
        }
        pref
    }
}

fn state_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("s{i}")).collect()
}

fn random_theory(rng: &mut ChaCha8Rng, v: &Vocab) -> Theory {
    Theory(rng.gen::<u64>() & v.all_models())
}

fn random_complete(rng: &mut ChaCha8Rng, v: &Vocab) -> Theory {
    Theory(1 << rng.gen_range(0..v.interpretation_count()))
}

/// A labelled model drawn from `spec.seed`.
pub fn gen_klm(spec: &GenSpec) -> Result<KlmModel> {
    gen_klm_with(spec, &mut ChaCha8Rng::seed_from_u64(spec.seed))
}

pub fn gen_klm_with(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<KlmModel> {
    let v = spec.validate()?;
    match spec.klm {
        KlmTarget::Any => Ok(random_klm(spec, &v, rng, random_theory)),
        KlmTarget::Singular => Ok(random_klm(spec, &v, rng, random_complete)),
        KlmTarget::Simplified => {
            let count = v.guard_classes("theories")?;
            let names = (0..count as u64).map(|m| canonical_state_name(&v, Theory(m))).collect();
            let labels = (0..count as u64).map(Theory).collect();
            let pref = spec.random_pref(rng, count);
            Ok(KlmModel::from_parts(v, names, labels, pref))
        }
        KlmTarget::Smooth => {
            v.guard("theories", v.class_count())?;
            for _ in 0..spec.resample_budget {
                let m = random_klm(spec, &v, rng, random_theory);
                if m.is_smooth()? {
                    return Ok(m);
                }
            }
            Err(Error::TargetUnreachable { attempts: spec.resample_budget })
        }
    }
}

fn random_klm(
    spec: &GenSpec,
    v: &Vocab,
    rng: &mut ChaCha8Rng,
    label: fn(&mut ChaCha8Rng, &Vocab) -> Theory,
) -> KlmModel {
    let n = spec.state_count(rng);
    let labels = (0..n).map(|_| label(rng, v)).collect();
    let pref = spec.random_pref(rng, n);
    KlmModel::from_parts(v.clone(), state_names(n), labels, pref)
}

/// A satisfaction-based model drawn from `spec.seed`.
pub fn gen_mak(spec: &GenSpec) -> Result<MakModel> {
    gen_mak_with(spec, &mut ChaCha8Rng::seed_from_u64(spec.seed))
}

pub fn gen_mak_with(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<MakModel> {
    let v = spec.validate()?;
    let classes = v.guard_classes("formula classes")? as u64;
    let n = spec.state_count(rng);
    let mut sat = Vec::with_capacity(n);
    match spec.mak {
        MakTarget::Raw => {
            for _ in 0..n {
                let density: f64 = rng.gen_range(0.0..=1.0);
                let set = FormulaSet::from_classes(&v, (0..classes).filter(|_| rng.gen_bool(density)).map(SemFormula));
                sat.push(set);
            }
        }
        MakTarget::Supra => sat.extend((0..n).map(|_| FormulaSet::entailed_by(&v, random_theory(rng, &v)))),
        MakTarget::Classical => sat.extend((0..n).map(|_| FormulaSet::entailed_by(&v, random_complete(rng, &v)))),
        MakTarget::Unicity => {
            if n as u64 > classes {
                return Err(Error::InvalidSpec(format!("{n} distinct states need more than {classes} theories")));
            }
            let mut chosen: Vec<Theory> = Vec::with_capacity(n);
            let mut attempts = 0u32;
            while chosen.len() < n {
                if attempts == spec.resample_budget {
                    return Err(Error::TargetUnreachable { attempts });
                }
                attempts += 1;
                let t = random_theory(rng, &v);
                if !chosen.contains(&t) {
                    chosen.push(t);
                }
            }
            sat.extend(chosen.into_iter().map(|t| FormulaSet::entailed_by(&v, t)));
        }
    }
    let pref = spec.random_pref(rng, n);
    Ok(MakModel::from_parts(v, state_names(n), sat, pref))
}
