//! Finite presentations and a brute-force area search.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{free_reduce, Alphabet, Word};

/// `⟨alphabet | relators⟩` with nonempty cyclically reduced relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relators: Vec<Word>,
}

/// JSON shape: `{"generators": ["a","b"], "relators": ["aaa"]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
}

/// Builds an alphabet from a list of one-character names.
pub fn alphabet_from_names(names: &[String]) -> Result<Alphabet> {
    let mut chars = Vec::new();
    for n in names {
        let mut it = n.chars();
        match (it.next(), it.next()) {
            (Some(c), None) => chars.push(c),
            _ => {
                return Err(Error::InvalidAlphabet(format!(
                    "generator name {n:?} is not a single symbol"
                )))
            }
        }
    }
    Alphabet::from_chars(chars)
}

impl Presentation {
    /// Relators are cyclically reduced on entry; trivial relators are rejected.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        let mut rs = Vec::new();
        for r in relators {
            let core = r.cyclic_reduce().core;
            if core.is_empty() {
                return Err(Error::Schema("relator equal to the identity".into()));
            }
            rs.push(core);
        }
        Ok(Presentation {
            alphabet,
            relators: rs,
        })
    }

    pub fn free(alphabet: Alphabet) -> Self {
        Presentation {
            alphabet,
            relators: Vec::new(),
        }
    }

    pub fn from_file(f: &PresentationFile) -> Result<Self> {
        let alphabet = alphabet_from_names(&f.generators)?;
        let rels = f
            .relators
            .iter()
            .map(|r| alphabet.parse(r))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(alphabet, rels)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: PresentationFile =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_file(&f)
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    fn max_relator_len(&self) -> usize {
        self.relators.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Every cyclic rotation of every relator and its inverse, deduplicated.
    fn relator_variants(&self) -> Vec<Word> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for r in &self.relators {
            for base in [r.clone(), r.inverse()] {
                for i in 0..base.len() {
                    let v = base.rotate(i);
                    if seen.insert(v.clone()) {
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// Length cap on intermediate words used by [`Presentation::dehn_area`].
    pub fn area_length_cap(&self, w: &Word, bound: usize) -> usize {
        w.len() + bound * self.max_relator_len()
    }

    /// Least `n ≤ bound` such that `w` is a product of `n` conjugates of
    /// relators, found by breadth-first search.
    ///
    /// A step inserts a relator rotation (or its inverse) at some position
    /// of the current word and freely reduces; the conjugator is therefore
    /// a prefix of the current word. Intermediate words longer than
    /// [`Presentation::area_length_cap`] are discarded, so a `None` means
    /// "not found within these limits".
    pub fn dehn_area(&self, w: &Word, bound: usize) -> Option<usize> {
        if w.is_empty() {
            return Some(0);
        }
        let cap = self.area_length_cap(w, bound);
        let variants = self.relator_variants();
        let mut visited: HashSet<Word> = HashSet::new();
        visited.insert(w.clone());
        let mut frontier = vec![w.clone()];
        for depth in 1..=bound {
            let mut next = Vec::new();
            for s in &frontier {
                let ls = s.letters();
                for r in &variants {
                    for i in 0..=ls.len() {
                        let t =
                            free_reduce(ls[..i].iter().chain(r.letters()).chain(&ls[i..]).copied());
                        if t.is_empty() {
                            return Some(depth);
                        }
                        if t.len() <= cap && visited.insert(t.clone()) {
                            next.push(t);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_examples() {
        let p = Presentation::from_json(r#"{"generators":["a"],"relators":["aaa"]}"#).unwrap();
        let a = &p.alphabet;
        assert_eq!(p.dehn_area(&a.parse("aaa").unwrap(), 4), Some(1));
        assert_eq!(p.dehn_area(&a.parse("aaaaaa").unwrap(), 4), Some(2));
        let f = Presentation::free(Alphabet::new("ab").unwrap());
        assert_eq!(f.dehn_area(&f.alphabet.parse("abAB").unwrap(), 4), None);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Presentation::from_json(r#"{"generators":["a"],"relators":["aA"]}"#).is_err());
        assert!(Presentation::from_json(r#"{"generators":["ab"]}"#).is_err());
        assert!(Presentation::from_json(r#"{"generators":["a"],"extra":1}"#).is_err());
    }
}
