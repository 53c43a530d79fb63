use alloc::string::String;

use thiserror::Error;

use crate::logic::{SemFormula, Theory};
use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid vocabulary: {0}")]
    InvalidVocab(String),
    #[error("size guard: {what} needs {required} elements, cap is {cap}")]
    SizeGuard { what: &'static str, required: u128, cap: u64 },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("vocabulary mismatch between {0}")]
    VocabMismatch(&'static str),
    #[error("state `{state}` is not deductively closed: it misses class {missing:?}")]
    NotSupraClassical { state: String, missing: SemFormula },
    #[error("table violates {rule}: premise {premise:?} and {other:?} (conclusions {premise_out:?} / {other_out:?})")]
    NotCumulative {
        rule: &'static str,
        premise: Theory,
        other: Theory,
        premise_out: Theory,
        other_out: Theory,
    },
    #[error("table is not extensive at {premise:?} (maps to {out:?})")]
    NotExtensive { premise: Theory, out: Theory },
    #[error("constructed model disagrees with the table at {premise:?}: expected {expected:?}, got {got:?}")]
    ConstructionMismatch { premise: Theory, expected: Theory, got: Theory },
    #[error("generator target unreachable after {attempts} attempts")]
    TargetUnreachable { attempts: u32 },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
