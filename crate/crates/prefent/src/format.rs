//! Text formats for models and tables.
//!
//! Every format is line oriented, with `#` starting a comment. A file opens
//! with `vocab <symbol>...`.
//!
//! ```text
//! vocab p q
//! state s1 theory "p & q"          # labelled model; `theory L` is inconsistent
//! state s2 theory "q", "~p"        # several formulas are conjoined
//! pref s1 s2                       # s1 is preferred to s2
//! ```
//!
//! ```text
//! vocab p q
//! state s1 sat "p & q", "q"        # satisfaction-based model, classes as listed
//! state s2 sat closure "p"         # every consequence of the listed formulas
//! pref s1 s2
//! ```
//!
//! ```text
//! vocab p q
//! map 1111 -> 1010                 # theory model sets, highest interpretation first
//! ```

use std::fmt::Write as _;

use prefent_core::formula::Formula;
use prefent_core::{
    closure, parse_formula, Error as CoreError, FormulaSet, KlmModel, MakModel, PrecircTable, SemFormula, Theory,
    Vocab,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Model {
        line: usize,
        #[source]
        source: CoreError,
    },
    #[error("{0}")]
    Core(#[from] CoreError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Word(String),
    Quoted(String),
    Comma,
}

fn tokenize(line_no: usize, line: &str) -> Result<Vec<Token>, FormatError> {
    let mut tokens = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(_, c)) = chars.peek() {
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                chars.next();
            }
            ',' => {
                chars.next();
                tokens.push(Token::Comma);
            }
            '"' => {
                chars.next();
                let mut text = String::new();
                loop {
                    match chars.next() {
                        Some((_, '"')) => break,
                        Some((_, c)) => text.push(c),
                        None => return Err(syntax(line_no, "unterminated quoted formula")),
                    }
                }
                tokens.push(Token::Quoted(text));
            }
            _ => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || c == ',' || c == '"' || c == '#' {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                tokens.push(Token::Word(word));
            }
        }
    }
    Ok(tokens)
}

/// Directive lines with their 1-based line numbers, comments and blanks dropped.
fn directives(text: &str) -> Result<Vec<(usize, Vec<Token>)>, FormatError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let tokens = tokenize(i + 1, line)?;
        if !tokens.is_empty() {
            out.push((i + 1, tokens));
        }
    }
    Ok(out)
}

fn word(line: usize, tok: Option<&Token>, what: &str) -> Result<String, FormatError> {
    match tok {
        Some(Token::Word(w)) => Ok(w.clone()),
        _ => Err(syntax(line, format!("expected {what}"))),
    }
}

fn read_vocab(dirs: &[(usize, Vec<Token>)], size_cap: Option<u64>) -> Result<Vocab, FormatError> {
    let Some((line, tokens)) = dirs.first() else {
        return Err(syntax(1, "empty file: expected `vocab`"));
    };
    if tokens.first() != Some(&Token::Word("vocab".into())) {
        return Err(syntax(*line, "the first directive must be `vocab`"));
    }
    let symbols = tokens[1..]
        .iter()
        .map(|t| match t {
            Token::Word(w) => Ok(w.clone()),
            _ => Err(syntax(*line, "vocabulary symbols must be bare identifiers")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let vocab = Vocab::new(symbols).map_err(|source| FormatError::Model { line: *line, source })?;
    Ok(match size_cap {
        Some(cap) => vocab.with_size_cap(cap),
        None => vocab,
    })
}

/// A comma-separated formula list; each item quoted or a single bare word.
fn formula_list(line: usize, tokens: &[Token], vocab: &Vocab) -> Result<Vec<SemFormula>, FormatError> {
    let mut out = Vec::new();
    let mut expect_item = true;
    for tok in tokens {
        match (tok, expect_item) {
            (Token::Quoted(text) | Token::Word(text), true) => {
                let f = parse_formula(text, vocab)
                    .map_err(|e| FormatError::Model { line, source: CoreError::Parse(e) })?;
                out.push(f.sem(vocab));
                expect_item = false;
            }
            (Token::Comma, false) => expect_item = true,
            _ => return Err(syntax(line, "malformed formula list")),
        }
    }
    if expect_item && !out.is_empty() {
        return Err(syntax(line, "trailing comma in formula list"));
    }
    Ok(out)
}

fn pref_pair(line: usize, tokens: &[Token]) -> Result<(String, String), FormatError> {
    if tokens.len() != 3 {
        return Err(syntax(line, "expected `pref <better> <worse>`"));
    }
    Ok((word(line, tokens.get(1), "a state name")?, word(line, tokens.get(2), "a state name")?))
}

fn state_name(line: usize, tokens: &[Token], names: &[String]) -> Result<String, FormatError> {
    let name = word(line, tokens.get(1), "a state name")?;
    if names.contains(&name) {
        return Err(FormatError::Model { line, source: CoreError::DuplicateState(name) });
    }
    Ok(name)
}

fn resolve_pref(
    prefs: &[(usize, String, String)],
    names: &[String],
) -> Result<Vec<(usize, usize)>, FormatError> {
    prefs
        .iter()
        .map(|(line, a, b)| {
            let find = |n: &String| {
                names
                    .iter()
                    .position(|x| x == n)
                    .ok_or_else(|| FormatError::Model { line: *line, source: CoreError::UnknownState(n.clone()) })
            };
            Ok((find(a)?, find(b)?))
        })
        .collect()
}

pub fn parse_klm(text: &str, size_cap: Option<u64>) -> Result<KlmModel, FormatError> {
    let dirs = directives(text)?;
    let vocab = read_vocab(&dirs, size_cap)?;
    let mut states: Vec<(String, Theory)> = Vec::new();
    let mut prefs = Vec::new();
    for (line, tokens) in &dirs[1..] {
        let line = *line;
        match word(line, tokens.first(), "a directive")?.as_str() {
            "state" => {
                let names: Vec<String> = states.iter().map(|(n, _)| n.clone()).collect();
                let name = state_name(line, tokens, &names)?;
                if word(line, tokens.get(2), "`theory`")? != "theory" {
                    return Err(syntax(line, "expected `state <name> theory ...`"));
                }
                let label = if tokens[3..] == [Token::Word("L".into())] {
                    Theory::inconsistent()
                } else {
                    let fs = formula_list(line, &tokens[3..], &vocab)?;
                    if fs.is_empty() {
                        return Err(syntax(line, "a label needs at least one formula, or `L`"));
                    }
                    closure(&FormulaSet::from_classes(&vocab, fs))
                };
                states.push((name, label));
            }
            "pref" => {
                let (a, b) = pref_pair(line, tokens)?;
                prefs.push((line, a, b));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}` in a labelled model"))),
        }
    }
    let names: Vec<String> = states.iter().map(|(n, _)| n.clone()).collect();
    let pairs = resolve_pref(&prefs, &names)?;
    Ok(KlmModel::new(vocab, states, pairs)?)
}

pub fn parse_mak(text: &str, size_cap: Option<u64>) -> Result<MakModel, FormatError> {
    let dirs = directives(text)?;
    let vocab = read_vocab(&dirs, size_cap)?;
    vocab.guard_classes("formula classes")?;
    let mut states: Vec<(String, FormulaSet)> = Vec::new();
    let mut prefs = Vec::new();
    for (line, tokens) in &dirs[1..] {
        let line = *line;
        match word(line, tokens.first(), "a directive")?.as_str() {
            "state" => {
                let names: Vec<String> = states.iter().map(|(n, _)| n.clone()).collect();
                let name = state_name(line, tokens, &names)?;
                if word(line, tokens.get(2), "`sat`")? != "sat" {
                    return Err(syntax(line, "expected `state <name> sat ...`"));
                }
                let set = if tokens.get(3) == Some(&Token::Word("closure".into())) {
                    let fs = formula_list(line, &tokens[4..], &vocab)?;
                    FormulaSet::entailed_by(&vocab, closure(&FormulaSet::from_classes(&vocab, fs)))
                } else {
                    FormulaSet::from_classes(&vocab, formula_list(line, &tokens[3..], &vocab)?)
                };
                states.push((name, set));
            }
            "pref" => {
                let (a, b) = pref_pair(line, tokens)?;
                prefs.push((line, a, b));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}` in a satisfaction model"))),
        }
    }
    let names: Vec<String> = states.iter().map(|(n, _)| n.clone()).collect();
    let pairs = resolve_pref(&prefs, &names)?;
    Ok(MakModel::new(vocab, states, pairs)?)
}

pub fn parse_table(text: &str, size_cap: Option<u64>) -> Result<PrecircTable, FormatError> {
    let dirs = directives(text)?;
    let vocab = read_vocab(&dirs, size_cap)?;
    let count = vocab.class_count();
    vocab.guard("theories", count)?;
    let mut map: Vec<Option<Theory>> = vec![None; count as usize];
    for (line, tokens) in &dirs[1..] {
        let line = *line;
        let bits = |tok: Option<&Token>| -> Result<Theory, FormatError> {
            let w = word(line, tok, "a theory bitstring")?;
            vocab
                .parse_bitstring(&w)
                .map(Theory)
                .ok_or_else(|| syntax(line, format!("`{w}` is not a {}-bit theory bitstring", vocab.interpretation_count())))
        };
        match (tokens.first(), tokens.get(2), tokens.len()) {
            (Some(Token::Word(d)), Some(Token::Word(arrow)), 4) if d == "map" && arrow == "->" => {
                let (t, out) = (bits(tokens.get(1))?, bits(tokens.get(3))?);
                if map[t.index()].replace(out).is_some() {
                    return Err(syntax(line, format!("theory {} mapped twice", vocab.bitstring(t.models()))));
                }
            }
            _ => return Err(syntax(line, "expected `map <bits> -> <bits>`")),
        }
    }
    let rows = map
        .iter()
        .enumerate()
        .map(|(i, o)| o.ok_or_else(|| syntax(0, format!("no row for theory {}", vocab.bitstring(i as u64)))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PrecircTable::new(vocab, rows)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelFile {
    Klm(KlmModel),
    Mak(MakModel),
    Table(PrecircTable),
}

impl ModelFile {
    pub fn vocab(&self) -> &Vocab {
        match self {
            ModelFile::Klm(m) => m.vocab(),
            ModelFile::Mak(m) => m.vocab(),
            ModelFile::Table(t) => t.vocab(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            ModelFile::Klm(m) => write_klm(m),
            ModelFile::Mak(m) => write_mak(m),
            ModelFile::Table(t) => write_table(t),
        }
    }
}

/// Parses any of the three formats, told apart by their directives.
pub fn parse_model(text: &str, size_cap: Option<u64>) -> Result<ModelFile, FormatError> {
    let dirs = directives(text)?;
    let has = |w: &str| dirs.iter().any(|(_, t)| t.iter().any(|tok| *tok == Token::Word(w.into())));
    if dirs.iter().any(|(_, t)| t.first() == Some(&Token::Word("map".into()))) {
        Ok(ModelFile::Table(parse_table(text, size_cap)?))
    } else if has("sat") {
        Ok(ModelFile::Mak(parse_mak(text, size_cap)?))
    } else {
        Ok(ModelFile::Klm(parse_klm(text, size_cap)?))
    }
}

fn quote(f: SemFormula, vocab: &Vocab) -> String {
    format!("\"{}\"", Formula::dnf(f, vocab).to_text(vocab))
}

fn header(vocab: &Vocab) -> String {
    format!("vocab {}\n", vocab.symbols().join(" "))
}

fn write_pref(out: &mut String, names: &[String], pref: &prefent_core::Preference) {
    for (a, b) in pref.pairs() {
        writeln!(out, "pref {} {}", names[a], names[b]).unwrap();
    }
}

pub fn write_klm(m: &KlmModel) -> String {
    let v = m.vocab();
    let mut out = header(v);
    for (name, label) in m.names().iter().zip(m.labels()) {
        if label.is_consistent() {
            writeln!(out, "state {name} theory {}", quote(label.axiom(), v)).unwrap();
        } else {
            writeln!(out, "state {name} theory L").unwrap();
        }
    }
    write_pref(&mut out, m.names(), m.pref());
    out
}

/// Closed sets are written as the closure of their axiom, other sets class by
/// class in canonical order.
pub fn write_mak(m: &MakModel) -> String {
    let v = m.vocab();
    let mut out = header(v);
    for (name, set) in m.names().iter().zip(m.sat_sets()) {
        write!(out, "state {name} sat").unwrap();
        if set.is_closed() {
            write!(out, " closure {}", quote(closure(set).axiom(), v)).unwrap();
        } else {
            let items: Vec<String> = set.iter().map(|f| quote(f, v)).collect();
            if !items.is_empty() {
                write!(out, " {}", items.join(", ")).unwrap();
            }
        }
        out.push('\n');
    }
    write_pref(&mut out, m.names(), m.pref());
    out
}

pub fn write_table(t: &PrecircTable) -> String {
    let v = t.vocab();
    let mut out = header(v);
    for (premise, conclusion) in t.rows() {
        writeln!(out, "map {} -> {}", v.bitstring(premise.models()), v.bitstring(conclusion.models())).unwrap();
    }
    out
}

/// A premise set as `;`-separated formulas, in the form the CLI reads back.
pub fn premises_text(x: &FormulaSet, vocab: &Vocab) -> String {
    x.iter().map(|f| Formula::dnf(f, vocab).to_text(vocab)).collect::<Vec<_>>().join("; ")
}

/// Splits on `;`, skipping blank items.
pub fn parse_premises(text: &str, vocab: &Vocab) -> Result<FormulaSet, CoreError> {
    let mut set = FormulaSet::empty(vocab);
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        set.insert(parse_formula(item, vocab)?.sem(vocab));
    }
    Ok(set)
}
