//! Group words with rational exponents.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! QWord    := Factor+
//! Factor   := Atom ['^' Rational]
//! Atom     := letter | '1' | '(' QWord ')'
//! Rational := ['-'] digits ['/' digits]   -- optionally in parentheses
//! ```
//!
//! Lowercase letters are generators, uppercase their inverses.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::qgroup::Elem;
use crate::word::{Alphabet, Word};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QWord {
    Letter {
        name: char,
        inv: bool,
    },
    /// Empty only for the identity.
    Product(Vec<QWord>),
    Power(Box<QWord>, Rational),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.chars.len() && self.chars[self.i].1.is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|c| c.1)
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.i)
            .map(|c| c.0)
            .unwrap_or(self.src.len())
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn word(&mut self) -> Result<QWord> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if c == ')' {
                break;
            }
            factors.push(self.factor()?);
        }
        if factors.is_empty() {
            return self.err("expected a letter, '1' or '('");
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            QWord::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<QWord> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            let q = self.rational()?;
            return Ok(QWord::Power(Box::new(atom), q));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<QWord> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let w = self.word()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(w)
            }
            Some('1') => {
                self.i += 1;
                Ok(QWord::Product(Vec::new()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.i += 1;
                Ok(QWord::Letter {
                    name: c.to_ascii_lowercase(),
                    inv: c.is_ascii_uppercase(),
                })
            }
            _ => self.err("expected a letter, '1' or '('"),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.chars.len() && self.chars[self.i].1.is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected digits");
        }
        let s: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
        s.parse::<i64>().map_err(|_| Error::Overflow)
    }

    fn rational(&mut self) -> Result<Rational> {
        let paren = self.peek() == Some('(');
        if paren {
            self.i += 1;
        }
        let neg = self.peek() == Some('-');
        if neg {
            self.i += 1;
        }
        let n = self.integer()?;
        let d = if self.peek() == Some('/') {
            self.i += 1;
            let at = self.pos();
            let d = self.integer()?;
            if d == 0 {
                let _ = at;
                return Err(Error::ZeroDenominator);
            }
            d
        } else {
            1
        };
        if paren {
            if self.peek() != Some(')') {
                return self.err("expected ')'");
            }
            self.i += 1;
        }
        Ok(Rational::new(if neg { -n } else { n }, d))
    }
}

/// Parses a Q-word; `1` is the identity.
pub fn parse_qword(text: &str) -> Result<QWord> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        i: 0,
        src: text,
    };
    let w = p.word()?;
    if p.peek().is_some() {
        return p.err("unexpected ')'");
    }
    Ok(w)
}

impl QWord {
    pub fn identity() -> QWord {
        QWord::Product(Vec::new())
    }

    pub fn letter(name: char, inv: bool) -> QWord {
        QWord::Letter { name, inv }
    }

    pub fn product(parts: Vec<QWord>) -> QWord {
        QWord::Product(parts)
    }

    pub fn power(base: QWord, q: Rational) -> QWord {
        QWord::Power(Box::new(base), q)
    }

    /// Nesting count of non-integer exponents: letters have depth 1,
    /// products take the maximum, `W^α` adds one for `α ∉ Z`.
    pub fn depth(&self) -> u32 {
        match self {
            QWord::Letter { .. } => 1,
            QWord::Product(v) => v.iter().map(QWord::depth).max().unwrap_or(1),
            QWord::Power(b, q) => b.depth() + u32::from(!q.is_integer()),
        }
    }

    /// Generator names used, lowercase.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut s = BTreeSet::new();
        self.collect(&mut s);
        s
    }

    fn collect(&self, s: &mut BTreeSet<char>) {
        match self {
            QWord::Letter { name, .. } => {
                s.insert(*name);
            }
            QWord::Product(v) => v.iter().for_each(|w| w.collect(s)),
            QWord::Power(b, _) => b.collect(s),
        }
    }

    pub fn inverse(&self) -> QWord {
        match self {
            QWord::Letter { name, inv } => QWord::Letter {
                name: *name,
                inv: !inv,
            },
            QWord::Product(v) => QWord::Product(v.iter().rev().map(QWord::inverse).collect()),
            QWord::Power(b, q) => QWord::Power(b.clone(), -q),
        }
    }

    /// Evaluates to a canonical form in `F^Q`.
    pub fn eval(&self, a: &Alphabet) -> Result<Elem> {
        Ok(match self {
            QWord::Letter { name, inv } => {
                let g = a.index_of(*name).ok_or(Error::UnknownGenerator(*name))?;
                let w = Word::letter(crate::word::Letter::new(g, *inv));
                Elem::Free(w)
            }
            QWord::Product(v) => {
                let mut acc = Elem::one();
                for w in v {
                    acc = acc.mul(&w.eval(a)?);
                }
                acc
            }
            QWord::Power(b, q) => b.eval(a)?.pow_rational(*q),
        })
    }
}

impl fmt::Display for QWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QWord::Letter { name, inv } => {
                let c = if *inv {
                    name.to_ascii_uppercase()
                } else {
                    *name
                };
                write!(f, "{c}")
            }
            QWord::Product(v) if v.is_empty() => write!(f, "1"),
            QWord::Product(v) => v.iter().try_for_each(|w| write!(f, "{w}")),
            QWord::Power(b, q) => {
                match **b {
                    QWord::Letter { .. } => write!(f, "{b}")?,
                    _ => write!(f, "({b})")?,
                }
                write!(f, "^({}/{})", q.numer(), q.denom())
            }
        }
    }
}
