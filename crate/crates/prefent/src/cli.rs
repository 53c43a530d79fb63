//! The `prefent` command line.
//!
//! Exit status: 0 on success or the expected verdict, 1 when a property
//! fails (or a search finds nothing), 2 on usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use prefent_core::check::{
    check_cm, check_ct, check_extensivity, check_idempotence, check_precirc, check_supra_entail, check_tarski,
    CheckConfig, CheckReport, CnOracle, EntailOracle, KlmOracle, MakOracle, TableOracle,
};
use prefent_core::gen::GenSpec;
use prefent_core::klm::ClassifyOptions;
use prefent_core::translate::{
    klm_to_mak_validated, mak_to_klm_validated, precirc_to_simplified_klm, tabulate, ConstructOptions,
};
use prefent_core::{closure, Error as CoreError, FormulaSet, KlmModel, MakModel, Vocab};

use crate::campaign::{run_campaign, CampaignSpec, Claim};
use crate::format::{parse_model, parse_premises, parse_table, write_klm, write_mak, write_table, ModelFile};
use crate::report::{check_doc, dnf, set_bits, theory_bits, KvDoc};

/// Environment variable overriding the enumeration size cap.
pub const SIZE_CAP_ENV: &str = "PREFENT_SIZE_CAP";

#[derive(Parser, Debug)]
#[command(name = "prefent", version, about = "Preferential entailment over finite propositional vocabularies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the conclusions of a premise set.
    Entail(EntailArgs),
    /// Check a property of a model's entailment.
    Check(CheckArgs),
    /// Print the structural classification of a model.
    Classify(ModelArgs),
    /// Translate a model into another representation.
    Translate(TranslateArgs),
    /// Build the simplified labelled model of a cumulative table.
    Construct(ConstructArgs),
    /// Run a verification campaign or counterexample search.
    Fuzz(FuzzArgs),
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Kv,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("semantics").required(true).args(["klm", "mak"])))]
struct EntailArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    /// Labelled entailment; premises are closed first.
    #[arg(long)]
    klm: bool,
    /// Satisfaction-based entailment on the raw premise set.
    #[arg(long)]
    mak: bool,
    /// With `--mak`, use the Tarski operator instead of the preferential one.
    #[arg(long, requires = "mak")]
    cn: bool,
    /// Formulas separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    premises: String,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    Tarski,
    Ct,
    Cm,
    Precirc,
    Supra,
    Extensivity,
    Idempotence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    /// The file's own entailment.
    Default,
    /// The Tarski operator of a satisfaction-based model.
    Cn,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    #[arg(long, value_enum)]
    property: Property,
    #[arg(long, value_enum, default_value = "default")]
    oracle: OracleKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampled premise sets, for entailments on arbitrary formula sets.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Sampled subsets per premise set.
    #[arg(long, default_value_t = 100)]
    subsets: usize,
    #[arg(long, value_enum, default_value = "kv")]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Klm,
    Mak,
    Table,
}

#[derive(Args, Debug)]
struct TranslateArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    #[arg(long, value_enum)]
    to: Target,
    /// Write the translated model here instead of standard output.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_name = "FILE")]
    table: PathBuf,
    /// Run the construction on (CT)-only tables; the result is still validated.
    #[arg(long)]
    allow_non_cumulative: bool,
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long)]
    claim: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    vocab: usize,
    #[arg(long, default_value_t = 1)]
    min_states: usize,
    #[arg(long, default_value_t = 4)]
    max_states: usize,
    /// Preference density range `LO,HI`.
    #[arg(long, default_value = "0,0.5")]
    density: String,
    /// Write the key-value report here.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

/// A failed command: its message and exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn property_failure(message: impl ToString) -> Failure {
    Failure { code: 1, message: message.to_string() }
}

/// Size guards are usage errors; refusals naming a witness are failures.
fn core_failure(e: CoreError) -> Failure {
    match e {
        CoreError::NotSupraClassical { .. }
        | CoreError::NotCumulative { .. }
        | CoreError::ConstructionMismatch { .. }
        | CoreError::NotExtensive { .. } => property_failure(e),
        _ => usage(e),
    }
}

fn size_cap() -> Result<Option<u64>, Failure> {
    match std::env::var(SIZE_CAP_ENV) {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| usage(format!("{SIZE_CAP_ENV} must be a non-negative integer, got `{text}`"))),
        Err(_) => Ok(None),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ModelFile, Failure> {
    parse_model(&read(path)?, size_cap()?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| usage(format!("write failed: {e}")))
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => emit(out, text),
    }
}

/// Runs the command line and returns the exit status. Output goes to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Entail(a) => entail(a, out),
        Command::Check(a) => check(a, out),
        Command::Classify(a) => classify(a, out),
        Command::Translate(a) => translate(a, out),
        Command::Construct(a) => construct(a, out),
        Command::Fuzz(a) => fuzz(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn as_klm(file: ModelFile) -> Result<KlmModel, Failure> {
    match file {
        ModelFile::Klm(m) => Ok(m),
        ModelFile::Mak(m) => prefent_core::translate::mak_to_klm(&m).map_err(core_failure),
        ModelFile::Table(t) => precirc_to_simplified_klm(&t, ConstructOptions::default()).map_err(core_failure),
    }
}

fn as_mak(file: ModelFile) -> Result<MakModel, Failure> {
    match file {
        ModelFile::Mak(m) => Ok(m),
        other => prefent_core::translate::klm_to_mak(&as_klm(other)?).map_err(core_failure),
    }
}

fn set_lines(x: &FormulaSet, v: &Vocab) -> String {
    let items: Vec<String> = x.iter().map(|f| dnf(f, v)).collect();
    format!("{{{}}}", items.join("; "))
}

fn entail(a: EntailArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let file = load(&a.model)?;
    let v = file.vocab().clone();
    let premises = parse_premises(&a.premises, &v).map_err(usage)?;
    let mut doc = KvDoc::new();
    let text = if a.klm {
        let m = as_klm(file)?;
        let c = m.entail(closure(&premises));
        doc.push("semantics", "klm").push("premises", set_bits(&premises, &v)).push("theory", theory_bits(c, &v));
        if c.is_consistent() { format!("Th({})\n", dnf(c.axiom(), &v)) } else { "L\n".to_string() }
    } else {
        let m = as_mak(file)?;
        let c = if a.cn { m.cn_entail(&premises) } else { m.mak_entail(&premises) };
        doc.push("semantics", if a.cn { "cn" } else { "mak" })
            .push("premises", set_bits(&premises, &v))
            .push("classes", c.len())
            .push("set", set_bits(&c, &v));
        format!("{}\n", set_lines(&c, &v))
    };
    match a.format {
        OutputFormat::Kv => emit(out, &doc.render())?,
        OutputFormat::Text => emit(out, &text)?,
    }
    Ok(0)
}

fn run_check(o: &dyn EntailOracle, property: Property, cfg: &CheckConfig) -> Result<CheckReport, Failure> {
    Ok(match property {
        Property::Tarski => check_tarski(o, cfg),
        Property::Ct => check_ct(o, cfg),
        Property::Cm => check_cm(o, cfg),
        Property::Precirc => check_precirc(o, cfg),
        Property::Supra => check_supra_entail(o, cfg),
        Property::Extensivity => check_extensivity(o, cfg).map_err(usage)?,
        Property::Idempotence => check_idempotence(o, cfg).map_err(usage)?,
    })
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let file = load(&a.model)?;
    let v = file.vocab().clone();
    let mut cfg = CheckConfig { seed: a.seed, premise_samples: a.samples, subset_samples: a.subsets, ..CheckConfig::default() };
    let report = match (&file, a.oracle) {
        (ModelFile::Klm(m), OracleKind::Default) => run_check(&KlmOracle(m), a.property, &cfg)?,
        (ModelFile::Table(t), OracleKind::Default) => run_check(&TableOracle(t), a.property, &cfg)?,
        (ModelFile::Mak(m), kind) => {
            cfg.anchors = m.sat_sets().to_vec();
            if kind == OracleKind::Cn {
                run_check(&CnOracle(m), a.property, &cfg)?
            } else {
                run_check(&MakOracle(m), a.property, &cfg)?
            }
        }
        (_, OracleKind::Cn) => return Err(usage("--oracle cn needs a satisfaction-based model")),
    };
    let doc = check_doc(&report, &v);
    match a.format {
        OutputFormat::Kv => emit(out, &doc.render())?,
        OutputFormat::Text => {
            let mut text = format!("{}: {} ({} trials)\n", report.property, report.verdict.as_str(), report.trials);
            for (k, val) in doc.entries().iter().filter(|(k, _)| k.starts_with("witness.")) {
                text.push_str(&format!("  {k} = {val}\n"));
            }
            emit(out, &text)?
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn classify(a: ModelArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut doc = KvDoc::new();
    match load(&a.model)? {
        ModelFile::Klm(m) => {
            let k = m.classify_with(ClassifyOptions { strict_order: true }).map_err(usage)?;
            doc.push("model", "klm")
                .push("consistent_states", k.consistent_states)
                .push("simplified", k.simplified)
                .push("singular", k.singular)
                .push("strictly_singular", k.strictly_singular)
                .push("smooth", k.smooth)
                .push("irreflexive", k.irreflexive.unwrap_or_default())
                .push("transitive", k.transitive.unwrap_or_default());
        }
        ModelFile::Mak(m) => {
            let k = m.classify().map_err(usage)?;
            doc.push("model", "mak")
                .push("supra_classical", k.supra_classical)
                .push("classical", k.classical)
                .push("unicity_of_states", k.unicity_of_states)
                .push("r_and", k.r_and)
                .push("r_neg", k.r_neg)
                .push("r_or", k.r_or);
            if let Some((s, missing)) = m.first_unclosed_state() {
                doc.push("unclosed_state", &m.names()[s.0]).push("missing", dnf(missing, m.vocab()));
            }
        }
        ModelFile::Table(t) => {
            doc.push("model", "table").push("ct", t.first_ct_violation().is_none()).push("cm", t.first_cm_violation().is_none());
        }
    }
    emit(out, &doc.render())?;
    Ok(0)
}

fn translate(a: TranslateArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let file = load(&a.model)?;
    let (text, validated) = match (file, a.to) {
        (ModelFile::Klm(m), Target::Mak) => {
            let (mm, report) = klm_to_mak_validated(&m).map_err(core_failure)?;
            (write_mak(&mm), report.validated)
        }
        (ModelFile::Mak(m), Target::Klm) => {
            let (k, report) = mak_to_klm_validated(&m).map_err(core_failure)?;
            (write_klm(&k), report.validated)
        }
        (ModelFile::Klm(m), Target::Table) => (write_table(&tabulate(&m).map_err(core_failure)?), true),
        (ModelFile::Mak(m), Target::Table) => (write_table(&tabulate(&m).map_err(core_failure)?), true),
        (ModelFile::Table(t), Target::Klm) => {
            (write_klm(&precirc_to_simplified_klm(&t, ConstructOptions::default()).map_err(core_failure)?), true)
        }
        (ModelFile::Klm(m), Target::Klm) => (write_klm(&m), true),
        (ModelFile::Mak(m), Target::Mak) => (write_mak(&m), true),
        (ModelFile::Table(t), Target::Table) => (write_table(&t), true),
        (ModelFile::Table(_), Target::Mak) => {
            return Err(usage("translate the table to klm first; its satisfaction model is then `--to mak` of that"))
        }
    };
    write_or_print(a.output.as_deref(), &text, out)?;
    if validated {
        Ok(0)
    } else {
        Err(property_failure("translated entailment differs from the source"))
    }
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let table = parse_table(&read(&a.table)?, size_cap()?).map_err(|e| usage(format!("{}: {e}", a.table.display())))?;
    let options = ConstructOptions { allow_non_cumulative: a.allow_non_cumulative };
    let model = precirc_to_simplified_klm(&table, options).map_err(core_failure)?;
    write_or_print(a.output.as_deref(), &write_klm(&model), out)?;
    Ok(0)
}

fn parse_density(text: &str) -> Result<(f64, f64), Failure> {
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| usage(format!("bad density `{text}`")));
    match text.split_once(',') {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => {
            let d = parse(text)?;
            Ok((d, d))
        }
    }
}

fn fuzz(a: FuzzArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let claim: Claim = a.claim.parse().map_err(usage)?;
    let mut gen = GenSpec {
        vocab_size: a.vocab,
        min_states: a.min_states,
        max_states: a.max_states,
        pref_density: parse_density(&a.density)?,
        seed: a.seed,
        ..GenSpec::default()
    };
    if let Some(cap) = size_cap()? {
        gen.size_cap = cap;
    }
    let result = run_campaign(&CampaignSpec::new(claim, a.trials, gen)).map_err(usage)?;
    let doc = result.doc().render();
    if let Some(path) = &a.report {
        fs::write(path, &doc).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    let mut text = format!("{}\n", result.summary());
    if let Some(c) = &result.first {
        text.push_str(&format!("trial {} model:\n{}", c.trial, c.model));
        for (k, v) in c.details.entries() {
            text.push_str(&format!("  {k} = {v}\n"));
        }
    }
    emit(out, &text)?;
    Ok(if result.passed() { 0 } else { 1 })
}
