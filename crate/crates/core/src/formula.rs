//! Formula syntax trees. These only exist at the parsing boundary; everything
//! downstream works on [`SemFormula`] classes.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::logic::{Interpretation, SemFormula, Vocab};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    /// Index into the vocabulary.
    Var(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(i: usize) -> Self {
        Formula::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, mu: Interpretation) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Var(i) => mu.holds(*i),
            Formula::Not(a) => !a.eval(mu),
            Formula::And(a, b) => a.eval(mu) && b.eval(mu),
            Formula::Or(a, b) => a.eval(mu) || b.eval(mu),
            Formula::Implies(a, b) => !a.eval(mu) || b.eval(mu),
            Formula::Iff(a, b) => a.eval(mu) == b.eval(mu),
        }
    }

    /// Model set, computed bitwise over all interpretations at once.
    pub fn sem(&self, vocab: &Vocab) -> SemFormula {
        let all = vocab.all_models();
        let mask = self.models(vocab, all);
        SemFormula(mask & all)
    }

    fn models(&self, vocab: &Vocab, all: u64) -> u64 {
        match self {
            Formula::True => all,
            Formula::False => 0,
            Formula::Var(i) => {
                vocab.interpretations().filter(|mu| mu.holds(*i)).fold(0, |m, mu| m | 1 << mu.0)
            }
            Formula::Not(a) => !a.models(vocab, all) & all,
            Formula::And(a, b) => a.models(vocab, all) & b.models(vocab, all),
            Formula::Or(a, b) => a.models(vocab, all) | b.models(vocab, all),
            Formula::Implies(a, b) => (!a.models(vocab, all) | b.models(vocab, all)) & all,
            Formula::Iff(a, b) => !(a.models(vocab, all) ^ b.models(vocab, all)) & all,
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Formula::True | Formula::False => None,
            Formula::Var(i) => Some(*i),
            Formula::Not(a) => a.max_var(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.max_var().max(b.max_var())
            }
        }
    }

    /// Disjunctive normal form of a class: one full conjunction per model.
    pub fn dnf(f: SemFormula, vocab: &Vocab) -> Formula {
        if f == SemFormula::top(vocab) {
            return Formula::True;
        }
        let terms: Vec<Formula> = vocab
            .interpretations()
            .filter(|mu| f.satisfied_by(*mu))
            .map(|mu| {
                (0..vocab.len())
                    .map(|i| if mu.holds(i) { Formula::Var(i) } else { Formula::not(Formula::Var(i)) })
                    .reduce(Formula::and)
                    .expect("non-empty vocabulary")
            })
            .collect();
        terms.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    pub fn display<'a>(&'a self, vocab: &'a Vocab) -> Display<'a> {
        Display { formula: self, vocab }
    }

    pub fn to_text(&self, vocab: &Vocab) -> String {
        alloc::format!("{}", self.display(vocab))
    }
}

/// Binding strength, loosest first.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(_) => 5,
        Formula::True | Formula::False | Formula::Var(_) => 6,
    }
}

pub struct Display<'a> {
    formula: &'a Formula,
    vocab: &'a Vocab,
}

impl Display<'_> {
    fn child(&self, f: &Formula, parens: bool, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = Display { formula: f, vocab: self.vocab };
        if parens {
            write!(out, "({inner})")
        } else {
            write!(out, "{inner}")
        }
    }
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = self.formula;
        let prec = precedence(f);
        let (op, a, b) = match f {
            Formula::True => return out.write_str("true"),
            Formula::False => return out.write_str("false"),
            Formula::Var(i) => return out.write_str(&self.vocab.symbols()[*i]),
            Formula::Not(a) => {
                out.write_str("~")?;
                return self.child(a, precedence(a) < prec, out);
            }
            Formula::And(a, b) => (" & ", a, b),
            Formula::Or(a, b) => (" | ", a, b),
            Formula::Implies(a, b) => (" -> ", a, b),
            Formula::Iff(a, b) => (" <-> ", a, b),
        };
        // `->` groups to the right, the other binary operators to the left
        let right_assoc = matches!(f, Formula::Implies(..));
        self.child(a, precedence(a) < prec || (right_assoc && precedence(a) == prec), out)?;
        out.write_str(op)?;
        self.child(b, precedence(b) < prec || (!right_assoc && precedence(b) == prec), out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq() -> Vocab {
        Vocab::new(["p", "q"]).unwrap()
    }

    fn p() -> Formula {
        Formula::var(0)
    }

    fn q() -> Formula {
        Formula::var(1)
    }

    #[test]
    fn eval_examples() {
        let pq_true = Interpretation(0b11);
        let p_only = Interpretation(0b01);
        assert!(Formula::and(p(), q()).eval(pq_true));
        assert!(!Formula::and(p(), q()).eval(p_only));
        assert!(Formula::implies(p(), q()).eval(Interpretation(0)));
    }

    #[test]
    fn sem_examples() {
        let v = pq();
        assert_eq!(p().sem(&v), SemFormula(0b1010));
        assert_eq!(Formula::or(p(), Formula::not(p())).sem(&v), SemFormula(0b1111));
        assert_eq!(Formula::and(p(), Formula::not(p())).sem(&v), SemFormula(0));
    }

    #[test]
    fn dnf_round_trips_semantically() {
        let v = pq();
        for bits in 0..16 {
            let f = SemFormula(bits);
            assert_eq!(Formula::dnf(f, &v).sem(&v), f);
        }
        assert_eq!(Formula::dnf(SemFormula(0b1000), &v).to_text(&v), "p & q");
        assert_eq!(Formula::dnf(SemFormula(0b1100), &v).to_text(&v), "~p & q | p & q");
        assert_eq!(Formula::dnf(SemFormula(0), &v).to_text(&v), "false");
    }

    #[test]
    fn printer_parenthesizes_by_precedence() {
        let v = pq();
        let f = Formula::not(Formula::implies(p(), q()));
        assert_eq!(f.to_text(&v), "~(p -> q)");
        let f = Formula::implies(Formula::implies(p(), q()), p());
        assert_eq!(f.to_text(&v), "(p -> q) -> p");
        let f = Formula::implies(p(), Formula::implies(q(), p()));
        assert_eq!(f.to_text(&v), "p -> q -> p");
        let f = Formula::and(p(), Formula::and(q(), p()));
        assert_eq!(f.to_text(&v), "p & (q & p)");
    }
}
