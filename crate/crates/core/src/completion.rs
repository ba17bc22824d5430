//! Word and conjugacy problems in `F^Q` for Q-words.
//!
//! Decisions are exact in `F^Q`. Tower levels are reported when they lie
//! within the table cap and omitted otherwise.

use crate::error::{Error, Result};
use crate::qgroup::{conjugator, Elem};
use crate::qword::{parse_qword, QWord};
use crate::tower::{Tower, TowerConjugacy};
use crate::vtable::VTables;
use crate::word::Alphabet;

/// A normalized Q-word.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub elem: Elem,
    /// Canonical form in Q-word syntax.
    pub text: String,
    /// Top-level syllables, heads and fractional powers alternating.
    pub syllables: Vec<String>,
    pub depth: u32,
    /// Least `n` with the element in `T_n`, when the tables reach it.
    pub level: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QConjugacy {
    /// `c` with `c⁻¹ w₁ c = w₂`.
    Conjugate(Elem),
    ProvenDistinct,
    AbsentWithinBound,
}

/// Default base alphabet for a set of Q-words: `a` through the largest
/// letter used, and at least `ab`.
pub fn default_base(words: &[&QWord]) -> Alphabet {
    let max = words
        .iter()
        .flat_map(|w| w.letters())
        .max()
        .unwrap_or('b')
        .max('b');
    let names: String = ('a'..=max).collect();
    Alphabet::new(&names).expect("lowercase range")
}

pub struct Completion {
    tables: VTables,
}

impl Completion {
    pub fn new(tables: VTables) -> Completion {
        Completion { tables }
    }

    pub fn base(&self) -> &Alphabet {
        self.tables.base()
    }

    pub fn tables(&mut self) -> &mut VTables {
        &mut self.tables
    }

    fn level(&mut self, e: &Elem) -> Result<Option<usize>> {
        match self.tables.locate(e) {
            Ok(n) if n <= self.tables.max_level() => Ok(Some(n)),
            Ok(_) | Err(Error::ResourceCap(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn normalize(&mut self, w: &QWord) -> Result<Normalized> {
        let elem = w.eval(self.tables.base())?;
        let level = self.level(&elem)?;
        let t = Tower::new(self.tables.base().clone());
        Ok(Normalized {
            text: t.display(&elem),
            syllables: t.syllables(&elem),
            depth: w.depth(),
            level,
            elem,
        })
    }

    pub fn normalize_text(&mut self, text: &str) -> Result<Normalized> {
        self.normalize(&parse_qword(text)?)
    }

    /// Equality of canonical forms, with the common tower level.
    pub fn q_equal(&mut self, a: &QWord, b: &QWord) -> Result<(bool, Option<usize>)> {
        let x = self.normalize(a)?;
        let y = self.normalize(b)?;
        let level = x.level.zip(y.level).map(|(m, n)| m.max(n));
        Ok((x.elem == y.elem, level))
    }

    /// Conjugacy with a verified certificate. Within the table cap the
    /// certificate is searched in `T_n` with bound `k_bound`.
    pub fn q_conjugate(
        &mut self,
        a: &QWord,
        b: &QWord,
        k_bound: Option<i64>,
    ) -> Result<(QConjugacy, Option<usize>)> {
        let x = self.normalize(a)?.elem;
        let y = self.normalize(b)?.elem;
        let level = match (self.level(&x)?, self.level(&y)?) {
            (Some(m), Some(n)) => Some(m.max(n)),
            _ => None,
        };
        let verdict = match level {
            Some(n) => {
                let t = self.tables.tower(n)?;
                let k = k_bound.unwrap_or_else(|| Tower::default_k_bound(&x, &y));
                match t.conjugate_in_tower(&x, &y, k)? {
                    TowerConjugacy::Conjugate(c) => QConjugacy::Conjugate(c),
                    TowerConjugacy::ProvenDistinct => QConjugacy::ProvenDistinct,
                    TowerConjugacy::AbsentWithinBound => QConjugacy::AbsentWithinBound,
                }
            }
            None => match conjugator(&x, &y) {
                Some(c) => QConjugacy::Conjugate(c),
                None => QConjugacy::ProvenDistinct,
            },
        };
        if let QConjugacy::Conjugate(c) = &verdict {
            debug_assert_eq!(x.conj(c), y);
        }
        Ok((verdict, level))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Completion {
        Completion::new(VTables::new(Alphabet::new("ab").unwrap(), 3))
    }

    fn w(s: &str) -> QWord {
        parse_qword(s).unwrap()
    }

    #[test]
    fn normal_forms() {
        let mut c = q();
        let n = c.normalize_text("a^(1/2)a^(1/2)").unwrap();
        assert_eq!((n.text.as_str(), n.level), ("a", Some(0)));
        let n = c.normalize_text("(bab^(-1))^(1/2)").unwrap();
        assert_eq!(n.syllables, ["b", "a^(1/2)", "B"]);
        assert_eq!(n.level, Some(2));
        let n = c.normalize_text("(ab)^(3/2)").unwrap();
        assert_eq!(n.text, "(ab)^(1/2)ab");
        assert_eq!(c.normalize_text("a^(1/7)").unwrap().level, None);
    }

    #[test]
    fn equality() {
        let mut c = q();
        assert!(c.q_equal(&w("a^(2/2)"), &w("a")).unwrap().0);
        assert!(c.q_equal(&w("(a^(1/2))^(1/3)"), &w("a^(1/6)")).unwrap().0);
        assert!(!c.q_equal(&w("a^(1/2)"), &w("b^(1/2)")).unwrap().0);
    }

    #[test]
    fn conjugacy() {
        let mut c = q();
        let b = Alphabet::new("ab").unwrap();
        let (v, _) = c
            .q_conjugate(&w("b a^(1/2) b^(-1)"), &w("a^(1/2)"), None)
            .unwrap();
        assert_eq!(v, QConjugacy::Conjugate(w("b").eval(&b).unwrap()));
        let (v, _) = c.q_conjugate(&w("a"), &w("b"), None).unwrap();
        assert_eq!(v, QConjugacy::ProvenDistinct);
        let (v, _) = c
            .q_conjugate(&w("(ba)^(1/2)"), &w("(ab)^(1/2)"), None)
            .unwrap();
        assert_eq!(v, QConjugacy::Conjugate(w("A").eval(&b).unwrap()));
    }
}
