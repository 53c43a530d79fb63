//! Precedence-climbing parser for the ASCII formula language.
//!
//! Binding, tightest first: `~`, `&`, `|`, `->`, `<->`. `->` associates to the
//! right, `&`, `|` and `<->` to the left.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::formula::Formula;
use crate::logic::Vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown symbol `{name}` at {position}")]
    UnknownSymbol { name: String, position: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::UnknownSymbol { position, .. } => *position,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token<'a> {
    Ident(&'a str),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl Token<'_> {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => alloc::format!("`{s}`"),
            Token::True => "`true`".into(),
            Token::False => "`false`".into(),
            Token::Not => "`~`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Implies => "`->`".into(),
            Token::Iff => "`<->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
        }
    }

    /// Binding power and right-associativity of a binary operator.
    fn binary(&self) -> Option<(u8, bool)> {
        match self {
            Token::Iff => Some((1, false)),
            Token::Implies => Some((2, true)),
            Token::Or => Some((3, false)),
            Token::And => Some((4, false)),
            _ => None,
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { position, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Token<'_>, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Token::Iff
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Token::True,
                    "false" => Token::False,
                    name => Token::Ident(name),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, alloc::format!("unexpected character `{ch}`")));
            }
        };
        tokens.push((tok, start));
        i += 1;
    }
    Ok(tokens)
}

struct Parser<'a, 'v> {
    tokens: Vec<(Token<'a>, usize)>,
    pos: usize,
    end: usize,
    vocab: &'v Vocab,
}

impl<'a> Parser<'a, '_> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn expression(&mut self, min_prec: u8) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while let Some((prec, right_assoc)) = self.peek().and_then(Token::binary) {
            if prec < min_prec {
                break;
            }
            let op = self.tokens[self.pos].0.clone();
            self.pos += 1;
            let rhs = self.expression(if right_assoc { prec } else { prec + 1 })?;
            lhs = match op {
                Token::And => Formula::and(lhs, rhs),
                Token::Or => Formula::or(lhs, rhs),
                Token::Implies => Formula::implies(lhs, rhs),
                Token::Iff => Formula::iff(lhs, rhs),
                _ => unreachable!("binary() only accepts binary operators"),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        let Some((tok, _)) = self.tokens.get(self.pos).cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Token::Not => Ok(Formula::not(self.unary()?)),
            Token::True => Ok(Formula::True),
            Token::False => Ok(Formula::False),
            Token::Ident(name) => match self.vocab.index_of(name) {
                Some(i) => Ok(Formula::Var(i)),
                None => Err(ParseError::UnknownSymbol { name: name.to_string(), position: at }),
            },
            Token::LParen => {
                let inner = self.expression(0)?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(other) => Err(syntax(self.offset(), alloc::format!("expected `)`, found {}", other.describe()))),
                    None => Err(syntax(self.offset(), "expected `)`, found end of input")),
                }
            }
            other => Err(syntax(at, alloc::format!("expected a formula, found {}", other.describe()))),
        }
    }
}

/// Parses `text` over `vocab`. Positions in errors are byte offsets.
pub fn parse_formula(text: &str, vocab: &Vocab) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len(), vocab };
    let f = parser.expression(0)?;
    if let Some(tok) = parser.peek() {
        return Err(syntax(parser.offset(), alloc::format!("unexpected {}", tok.describe())));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::SemFormula;
    use proptest::prelude::*;

    fn pq() -> Vocab {
        Vocab::new(["p", "q"]).unwrap()
    }

    #[test]
    fn grammar_cases() {
        let v = pq();
        assert_eq!(parse_formula("p & q", &v).unwrap(), Formula::and(Formula::var(0), Formula::var(1)));
        assert_eq!(
            parse_formula("~(p -> q)", &v).unwrap(),
            Formula::not(Formula::implies(Formula::var(0), Formula::var(1)))
        );
    }

    #[test]
    fn unknown_symbol_is_named() {
        let err = parse_formula("p | r", &pq()).unwrap_err();
        assert_eq!(err, ParseError::UnknownSymbol { name: "r".into(), position: 4 });
    }

    #[test]
    fn precedence_and_associativity() {
        let v = pq();
        let (p, q) = (Formula::var(0), Formula::var(1));
        assert_eq!(
            parse_formula("~p & q | p", &v).unwrap(),
            Formula::or(Formula::and(Formula::not(p.clone()), q.clone()), p.clone())
        );
        assert_eq!(
            parse_formula("p -> q -> p", &v).unwrap(),
            Formula::implies(p.clone(), Formula::implies(q.clone(), p.clone()))
        );
        assert_eq!(
            parse_formula("p <-> q -> p", &v).unwrap(),
            Formula::iff(p.clone(), Formula::implies(q.clone(), p.clone()))
        );
        assert_eq!(
            parse_formula("p & q & p", &v).unwrap(),
            Formula::and(Formula::and(p.clone(), q.clone()), p.clone())
        );
        assert_eq!(parse_formula(" ( true ) ", &v).unwrap(), Formula::True);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let v = pq();
        assert_eq!(parse_formula("p &", &v).unwrap_err().position(), 3);
        assert_eq!(parse_formula("(p", &v).unwrap_err().position(), 2);
        assert_eq!(parse_formula("p q", &v).unwrap_err().position(), 2);
        assert_eq!(parse_formula("p # q", &v).unwrap_err().position(), 2);
        assert_eq!(parse_formula("p - q", &v).unwrap_err().position(), 2);
        assert_eq!(parse_formula("", &v).unwrap_err().position(), 0);
        assert_eq!(parse_formula(")", &v).unwrap_err().position(), 0);
    }

    fn arb_formula(nvars: usize) -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![Just(Formula::True), Just(Formula::False), (0..nvars).prop_map(Formula::Var)];
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn printer_round_trips(f in arb_formula(3)) {
            let v = Vocab::new(["a", "b", "c"]).unwrap();
            let text = f.to_text(&v);
            prop_assert_eq!(parse_formula(&text, &v).unwrap(), f);
        }

        #[test]
        fn eval_agrees_with_sem(f in arb_formula(3)) {
            let v = Vocab::new(["a", "b", "c"]).unwrap();
            let s: SemFormula = f.sem(&v);
            for mu in v.interpretations() {
                prop_assert_eq!(f.eval(mu), s.satisfied_by(mu));
            }
        }
    }
}
