//! Key-value report documents.
//!
//! One `key=value` pair per line, in insertion order. Values escape `\` and
//! newlines, so a document is always exactly one line per key and the bytes
//! depend only on the values pushed.

use std::fmt::Display;

use prefent_core::check::{CheckReport, Violation};
use prefent_core::formula::Formula;
use prefent_core::{FormulaSet, SemFormula, Theory, Vocab};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KvDoc {
    entries: Vec<(String, String)>,
}

fn escape(value: &str) -> String {
    value.replace('\\', "\\\\").replace('\n', "\\n")
}

fn unescape(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    let mut chars = value.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some('n') => out.push('\n'),
                Some(other) => out.push(other),
                None => out.push('\\'),
            }
        } else {
            out.push(c);
        }
    }
    out
}

impl KvDoc {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: &KvDoc) {
        for (k, v) in &other.entries {
            self.entries.push((format!("{prefix}{k}"), v.clone()));
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push('=');
            out.push_str(&escape(v));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Self {
        let entries = text
            .lines()
            .filter_map(|line| line.split_once('='))
            .map(|(k, v)| (k.to_string(), unescape(v)))
            .collect();
        KvDoc { entries }
    }
}

pub fn class_bits(f: SemFormula, v: &Vocab) -> String {
    v.bitstring(f.models())
}

pub fn theory_bits(t: Theory, v: &Vocab) -> String {
    v.bitstring(t.models())
}

/// `{b1,b2,...}` with class bitstrings in canonical order.
pub fn set_bits(x: &FormulaSet, v: &Vocab) -> String {
    let items: Vec<String> = x.iter().map(|f| class_bits(f, v)).collect();
    format!("{{{}}}", items.join(","))
}

/// Reads [`set_bits`] back.
pub fn parse_set_bits(text: &str, v: &Vocab) -> Option<FormulaSet> {
    let inner = text.strip_prefix('{')?.strip_suffix('}')?;
    let mut set = FormulaSet::empty(v);
    for item in inner.split(',').filter(|s| !s.is_empty()) {
        let bits = v.parse_bitstring(item)?;
        set.insert(SemFormula(bits));
    }
    Some(set)
}

pub fn dnf(f: SemFormula, v: &Vocab) -> String {
    Formula::dnf(f, v).to_text(v)
}

pub fn violation_doc(w: &Violation, v: &Vocab) -> KvDoc {
    let mut d = KvDoc::new();
    d.push("kind", w.kind());
    let sets: Vec<(&str, &FormulaSet)> = match w {
        Violation::Extensivity { x, out } | Violation::ExtensivityUpToClosure { x, out } => vec![("x", x), ("out", out)],
        Violation::Idempotence { x, once, twice } => vec![("x", x), ("once", once), ("twice", twice)],
        Violation::Monotony { x, y, out_x, out_y } => vec![("x", x), ("y", y), ("out_x", out_x), ("out_y", out_y)],
        Violation::Cut { x, extra, out_x, out_union } | Violation::CumulativeMonotony { x, extra, out_x, out_union } => {
            vec![("x", x), ("extra", extra), ("out_x", out_x), ("out_union", out_union)]
        }
        Violation::LeftSide { x1, x2, out1, out2 } => vec![("x1", x1), ("x2", x2), ("out1", out1), ("out2", out2)],
        Violation::RightSide { x, out, .. } | Violation::SupraClassical { x, out, .. } => vec![("x", x), ("out", out)],
        Violation::Unequal { x, out1, out2 } | Violation::NotIncluded { x, out1, out2 } => {
            vec![("x", x), ("out1", out1), ("out2", out2)]
        }
    };
    for (k, x) in sets {
        d.push(k, set_bits(x, v));
    }
    if let Violation::RightSide { missing, .. } | Violation::SupraClassical { missing, .. } = w {
        d.push("missing", class_bits(*missing, v));
        d.push("missing_formula", dnf(*missing, v));
    }
    d
}

pub fn check_doc(r: &CheckReport, v: &Vocab) -> KvDoc {
    let mut d = KvDoc::new();
    d.push("property", r.property).push("verdict", r.verdict.as_str()).push("trials", r.trials).push("seed", r.seed);
    if let Some(w) = &r.witness {
        d.extend_prefixed("witness.", &violation_doc(w, v));
    }
    d
}
