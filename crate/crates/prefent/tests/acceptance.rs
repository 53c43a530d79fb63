//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! The process fails when a criterion fails for a reason other than the
//! documented empty-state deviation, which is checked to reproduce exactly.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use prefent::campaign::{run_campaign, CampaignResult, CampaignSpec, Claim};
use prefent::report::parse_set_bits;
use prefent::{parse_model, KvDoc, ModelFile};
use prefent_core::check::{check_precirc, CheckConfig, MakOracle, Violation};
use prefent_core::gen::{gen_klm_with, gen_mak_with, trial_rng, GenSpec, KlmTarget, MakTarget};
use prefent_core::{FormulaSet, KlmModel, MakModel, SemFormula, Theory};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

const SEED: u64 = 2026;

fn gen() -> GenSpec {
    GenSpec { vocab_size: 2, min_states: 1, max_states: 4, pref_density: (0.0, 1.0), seed: SEED, ..GenSpec::default() }
}

fn campaign(claim: Claim, trials: u64) -> CampaignResult {
    campaign_with(CampaignSpec::new(claim, trials, gen()))
}

fn campaign_with(spec: CampaignSpec) -> CampaignResult {
    let r = run_campaign(&spec).expect("campaign runs");
    let _ = writeln!(std::io::stdout(), "    {}", r.summary());
    r
}

struct Outcome {
    pass: bool,
    /// A failure that matches a recorded analysis exactly.
    explained: bool,
    note: String,
}

impl Outcome {
    fn new(pass: bool, note: impl Into<String>) -> Self {
        Outcome { pass, explained: false, note: note.into() }
    }
}

fn criterion_1() -> Outcome {
    let r = campaign(Claim::KlmCut, 1000);
    let exhaustive = r.tallies.get("precirc.holds") == Some(&1000) && r.tallies.get("ct.holds") == Some(&1000);
    let fast = r.wall_time < Duration::from_secs(60);
    Outcome::new(
        r.passed() && exhaustive && fast,
        format!("1000 labelled models, {} failures, exhaustive verdicts {exhaustive}, {:.1?}", r.failures, r.wall_time),
    )
}

fn criterion_2() -> Outcome {
    let cut = campaign_with(CampaignSpec { premise_samples: Some(100), subset_samples: Some(50), ..CampaignSpec::new(Claim::MakCut, 1000, gen()) });
    let idem = campaign_with(CampaignSpec { premise_samples: Some(100), ..CampaignSpec::new(Claim::Idem, 1000, gen()) });
    let sub = campaign(Claim::CnSub, 1000);
    let failures = cut.failures + idem.failures + sub.failures;
    Outcome::new(
        cut.passed() && idem.passed() && sub.passed(),
        format!("1000 raw models: extensivity and cut, idempotence, Cn inclusion; {failures} failures"),
    )
}

fn criterion_3() -> Outcome {
    let r = campaign_with(CampaignSpec { premise_samples: Some(100), ..CampaignSpec::new(Claim::Tarski, 1000, gen()) });
    let fixpoints = r.tallies.get("state-fixpoint.checked") == Some(&1000);
    Outcome::new(r.passed() && fixpoints, format!("1000 raw models, Tarski operator and state fixpoints; {} failures", r.failures))
}

fn criterion_4() -> Outcome {
    let forward = campaign(Claim::TKlm2Mak, 500);
    let back = campaign(Claim::TSupra, 500);
    Outcome::new(
        forward.passed() && back.passed(),
        format!("500 labelled to satisfaction, 500 supra classical back; {} failures", forward.failures + back.failures),
    )
}

/// A state satisfying no formula at all: (R∧) holds vacuously there while
/// the tautology is missing, so supra classicality fails.
fn has_empty_state(m: &MakModel) -> bool {
    m.sat_sets().iter().any(FormulaSet::is_empty)
}

fn criterion_5(dir: &Path) -> Outcome {
    let and = campaign(Claim::RAnd, 2000);
    let or = campaign(Claim::ROr, 2000);

    // Regenerate the raw-target trials to account for every failure.
    let spec = GenSpec { mak: MakTarget::Raw, ..gen() };
    let (mut mismatches, mut explained) = (0u64, 0u64);
    for trial in (0..2000u64).filter(|t| t % 4 == 0) {
        let m = gen_mak_with(&spec, &mut trial_rng(SEED, trial)).unwrap();
        let k = m.classify().unwrap();
        if k.supra_classical != k.r_and {
            mismatches += 1;
            if has_empty_state(&m) && k.r_and {
                explained += 1;
            }
        }
    }

    let witness = right_side_witness(dir);
    let other_subchecks = or.passed()
        && and.tallies.get("supra.precirc.holds").copied().unwrap_or(0) > 0
        && !and.tallies.contains_key("supra.precirc.fails");
    let deviation_only = and.failures == mismatches && mismatches == explained;
    let mut o = Outcome::new(
        and.passed() && other_subchecks && witness.is_some(),
        format!(
            "2000 models (500 per class); supra-iff-rAnd failures {}, all from empty states: {}; other sub-checks hold: {other_subchecks}; right-side witness: {}",
            and.failures,
            deviation_only,
            witness.as_deref().unwrap_or("none"),
        ),
    );
    o.explained = !o.pass && deviation_only && other_subchecks && witness.is_some();
    o
}

/// The first raw model whose entailment fails the right side of the
/// pre-circumscription check, replayed in-process and through the CLI.
fn right_side_witness(dir: &Path) -> Option<String> {
    let spec = GenSpec { mak: MakTarget::Raw, ..gen() };
    for trial in 0..2000u64 {
        let m = gen_mak_with(&spec, &mut trial_rng(SEED ^ 0x5eed, trial)).unwrap();
        let cfg = CheckConfig { anchors: m.sat_sets().to_vec(), ..CheckConfig::with_seed(trial) };
        let r = check_precirc(&MakOracle(&m), &cfg);
        let Some(w @ Violation::RightSide { .. }) = &r.witness else { continue };
        if !w.reproduces(&MakOracle(&m)) {
            return None;
        }
        let file = dir.join("right-side.mak");
        fs::write(&file, prefent::format::write_mak(&m)).unwrap();
        let out = cli(&["check", "--model", file.to_str()?, "--property", "precirc", "--seed", &trial.to_string()]);
        let doc = KvDoc::parse(&out.1);
        let replayed = out.0 == Some(1) && doc.get("witness.kind") == Some("right-side");
        return replayed.then(|| format!("trial {trial}, missing {}", doc.get("witness.missing_formula").unwrap_or("?")));
    }
    None
}

fn criterion_6() -> Outcome {
    let cm = campaign(Claim::SmoothCm, 200);
    let constr = campaign(Claim::Constr, 200);
    let time = cm.wall_time + constr.wall_time;
    Outcome::new(
        cm.passed() && constr.passed() && constr.tallies.get("constructed") == Some(&200) && time < Duration::from_secs(300),
        format!("200 smooth models, cumulative and reconstructed exactly; {} mismatches, {time:.1?}", cm.failures + constr.failures),
    )
}

fn cli(args: &[&str]) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_prefent")).args(args).env_remove("PREFENT_SIZE_CAP").output().unwrap();
    (o.status.code(), String::from_utf8(o.stdout).unwrap())
}

fn entail_set(file: &str, premises: &str) -> Option<String> {
    let (code, out) = cli(&["entail", "--model", file, "--mak", "--premises", premises, "--format", "kv"]);
    (code == Some(0)).then(|| KvDoc::parse(&out).get("set").map(str::to_string)).flatten()
}

fn criterion_7(dir: &Path) -> Outcome {
    let mono = campaign(Claim::NonMono, 10_000);
    let close = campaign(Claim::NonClose, 1000);
    let mut notes = Vec::new();

    let mono_replayed = mono.first.as_ref().is_some_and(|c| {
        let file = dir.join("nonmono.mak");
        fs::write(&file, &c.model).unwrap();
        let f = file.to_str().unwrap();
        let d = &c.details;
        let v = parse_model(&c.model, None).unwrap().vocab().clone();
        let (Some(xp), Some(yp)) = (d.get("witness.x_premises"), d.get("witness.y_premises")) else { return false };
        let (Some(out_x), Some(out_y)) = (entail_set(f, xp), entail_set(f, yp)) else { return false };
        let direct = Some(out_x.as_str()) == d.get("witness.out_x")
            && Some(out_y.as_str()) == d.get("witness.out_y")
            && !parse_set_bits(&out_x, &v).unwrap().is_subset(&parse_set_bits(&out_y, &v).unwrap());
        let (code, out) = cli(&[
            "check", "--model", f, "--property", "tarski", "--seed", d.get("seed").unwrap(), "--samples", "100", "--subsets", "50",
        ]);
        let check = KvDoc::parse(&out);
        let rechecked = code == Some(1) && check.get("witness.kind") == Some("monotony") && check.get("witness.x") == d.get("witness.x");
        notes.push(format!("monotony at trial {} replayed by entail {direct}, by check {rechecked}", c.trial));
        direct && rechecked
    });

    let close_replayed = close.first.as_ref().is_some_and(|c| {
        let file = dir.join("nonclose.mak");
        fs::write(&file, &c.model).unwrap();
        let d = &c.details;
        let v = parse_model(&c.model, None).unwrap().vocab().clone();
        let Some(out) = entail_set(file.to_str().unwrap(), d.get("witness.x_premises").unwrap()) else { return false };
        let out = parse_set_bits(&out, &v).unwrap();
        let class = |k: &str| SemFormula(v.parse_bitstring(d.get(k).unwrap()).unwrap());
        let (conj, a, b) = (class("witness.conjunction"), class("witness.missing"), class("witness.other_conjunct"));
        let ok = a.and(b) == conj && out.contains(conj) && !out.contains(a);
        notes.push(format!("conjunction without conjunct at trial {} replayed {ok}", c.trial));
        ok
    });

    Outcome::new(mono.passed() && close.passed() && mono_replayed && close_replayed, notes.join("; "))
}

/// Labelled entailment transcribed from its definition: a formula follows
/// when every minimal state satisfying all premises has a label entailing it.
fn naive_klm(m: &KlmModel, premise_models: u64) -> Vec<bool> {
    let labels = m.labels();
    let n = labels.len();
    let sat = |s: usize| labels[s].models() & !premise_models == 0;
    let minimal: Vec<usize> = (0..n).filter(|&s| sat(s) && !(0..n).any(|s2| sat(s2) && m.pref().contains(s2, s))).collect();
    let classes = 1u64 << m.vocab().interpretation_count();
    (0..classes).map(|phi| minimal.iter().all(|&s| labels[s].models() & !phi == 0)).collect()
}

/// Satisfaction entailment transcribed from its definition, premises as a
/// plain list of class indices.
fn naive_mak(m: &MakModel, premises: &[u64], minimal_only: bool) -> Vec<bool> {
    let classes = 1u64 << m.vocab().interpretation_count();
    let sat: Vec<Vec<bool>> = m
        .sat_sets()
        .iter()
        .map(|x| {
            let members: Vec<u64> = x.iter().map(|f| f.models()).collect();
            (0..classes).map(|c| members.contains(&c)).collect()
        })
        .collect();
    let n = sat.len();
    let satisfies = |s: usize| premises.iter().all(|&p| sat[s][p as usize]);
    let chosen: Vec<usize> = (0..n)
        .filter(|&s| satisfies(s) && (!minimal_only || !(0..n).any(|s2| satisfies(s2) && m.pref().contains(s2, s))))
        .collect();
    (0..classes).map(|phi| chosen.iter().all(|&s| sat[s][phi as usize])).collect()
}

fn as_flags(x: &FormulaSet, classes: u64) -> Vec<bool> {
    (0..classes).map(|c| x.contains(SemFormula(c))).collect()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = 0u64;
    let mut comparisons = 0u64;
    for trial in 0..100u64 {
        let k = gen_klm_with(&GenSpec { klm: KlmTarget::Any, ..gen() }, &mut trial_rng(SEED, trial)).unwrap();
        let v = k.vocab().clone();
        let classes = v.class_count() as u64;
        for t in 0..classes {
            comparisons += 1;
            let module = as_flags(&FormulaSet::entailed_by(&v, k.entail(Theory(t))), classes);
            if module != naive_klm(&k, t) {
                mismatches += 1;
            }
        }
        let m = gen_mak_with(&GenSpec { mak: MakTarget::Raw, ..gen() }, &mut trial_rng(SEED, trial)).unwrap();
        for _ in 0..200 {
            let mask: u16 = rng.gen();
            let premises: Vec<u64> = (0..classes).filter(|c| mask >> c & 1 == 1).collect();
            let x = FormulaSet::from_classes(&v, premises.iter().copied().map(SemFormula));
            comparisons += 2;
            if as_flags(&m.mak_entail(&x), classes) != naive_mak(&m, &premises, true) {
                mismatches += 1;
            }
            if as_flags(&m.cn_entail(&x), classes) != naive_mak(&m, &premises, false) {
                mismatches += 1;
            }
        }
    }
    Outcome::new(mismatches == 0, format!("100 labelled and 100 raw models, {comparisons} comparisons, {mismatches} mismatches"))
}

fn criterion_9(dir: &Path) -> Outcome {
    let mut identical = true;
    for (claim, trials) in [(Claim::KlmCut, 50), (Claim::RAnd, 200), (Claim::NonMono, 2000), (Claim::SingLimit, 10_000)] {
        let a = run_campaign(&CampaignSpec::new(claim, trials, gen())).unwrap().doc().render();
        let b = run_campaign(&CampaignSpec::new(claim, trials, gen())).unwrap().doc().render();
        identical &= a == b;
    }
    let (a, b) = (dir.join("a.kv"), dir.join("b.kv"));
    for p in [&a, &b] {
        cli(&["fuzz", "--claim", "NONCLOSE", "--trials", "300", "--seed", "7", "--report", p.to_str().unwrap()]);
    }
    let files = fs::read(&a).unwrap() == fs::read(&b).unwrap();
    Outcome::new(identical && files, format!("repeated campaigns byte-identical {identical}, CLI reports byte-identical {files}"))
}

fn main() {
    let dir = TempDir::new().unwrap();
    let start = Instant::now();
    let criteria: [(u32, &dyn Fn() -> Outcome); 9] = [
        (1, &criterion_1),
        (2, &criterion_2),
        (3, &criterion_3),
        (4, &criterion_4),
        (5, &|| criterion_5(dir.path())),
        (6, &criterion_6),
        (7, &|| criterion_7(dir.path())),
        (8, &criterion_8),
        (9, &|| criterion_9(dir.path())),
    ];
    let mut unexplained = Vec::new();
    for (n, run) in criteria {
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        let tag = if o.explained { " [known deviation, reproduced exactly]" } else { "" };
        println!("criterion {n}: {status}{tag}: {}", o.note);
        if !o.pass && !o.explained {
            unexplained.push(n);
        }
    }
    // sanity: the documented deviation is the model with one empty state
    let empty = parse_model("vocab p q\nstate s1 sat\n", None).unwrap();
    let ModelFile::Mak(m) = empty else { unreachable!() };
    let k = m.classify().unwrap();
    assert!(k.r_and && !k.supra_classical);
    println!("acceptance finished in {:.1?}", start.elapsed());
    if !unexplained.is_empty() {
        eprintln!("unexplained failures: {unexplained:?}");
        std::process::exit(1);
    }
}
