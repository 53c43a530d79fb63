//! Preferential entailment over a finite propositional vocabulary.
//!
//! Two families of preferential models are implemented side by side:
//!
//! * [`KlmModel`]: states labelled by theories, ordered by an arbitrary
//!   relation. A premise theory concludes whatever every minimal state
//!   satisfying it entails.
//! * [`MakModel`]: states carrying an arbitrary set of satisfied formula
//!   classes, with no closure requirement at all.
//!
//! Formulas are identified with their classes of logically equivalent formulas
//! and theories with their model sets, so every semantic object is a bit mask
//! and every quantifier ranges over a finite, canonically ordered domain.
//! [`translate`] moves between the two model families and builds a smooth
//! simplified model from any cumulative table; [`check`] verifies or refutes
//! structural properties of entailments with self-certifying witnesses.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod check;
pub mod error;
pub mod formula;
pub mod formula_set;
pub mod gen;
pub mod klm;
pub mod logic;
pub mod mak;
pub mod parse;
pub mod pref;
pub mod translate;

pub use error::{Error, Result};
pub use formula::Formula;
pub use formula_set::FormulaSet;
pub use klm::{KlmKind, KlmModel};
pub use logic::{closure, entails, is_complete, Interpretation, SemFormula, Theory, Vocab};
pub use mak::{MakKind, MakModel};
pub use parse::{parse_formula, ParseError};
pub use pref::{Preference, StateId};
pub use translate::PrecircTable;
