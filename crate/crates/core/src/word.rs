//! Free-group words over a finite alphabet.
//!
//! Letters are ordered by generator index and then by sign, with the
//! positive letter first. Words are compared in shortlex order, which
//! is the tie-break used everywhere a "minimal word" is needed.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::Rational;

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: u32, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

/// Named generators. Names are distinct lowercase ASCII letters so the
/// uppercase twin can denote the inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<char>,
}

impl Alphabet {
    pub fn new(names: &str) -> Result<Self> {
        Self::from_chars(names.chars().collect())
    }

    pub fn from_chars(names: Vec<char>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("no generators".into()));
        }
        for (i, c) in names.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::InvalidAlphabet(format!(
                    "generator '{c}' is not a lowercase ASCII letter"
                )));
            }
            if names[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate generator '{c}'")));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn name(&self, gen: u32) -> char {
        self.names[gen as usize]
    }

    pub fn index_of(&self, c: char) -> Option<u32> {
        self.names.iter().position(|&n| n == c).map(|i| i as u32)
    }

    /// Reads one letter; uppercase means inverse.
    pub fn letter(&self, c: char) -> Result<Letter> {
        let lower = c.to_ascii_lowercase();
        match self.index_of(lower) {
            Some(g) if c.is_ascii_alphabetic() => Ok(Letter::new(g, c.is_ascii_uppercase())),
            _ => Err(Error::UnknownGenerator(c)),
        }
    }

    /// Parses text syntax and freely reduces. `1` and the empty string
    /// denote the identity; whitespace is ignored.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let t = text.trim();
        if t == "1" {
            return Ok(Word::identity());
        }
        let mut raw = Vec::with_capacity(t.len());
        for c in t.chars() {
            if c.is_whitespace() {
                continue;
            }
            raw.push(self.letter(c)?);
        }
        Ok(free_reduce(raw))
    }

    pub fn letter_char(&self, l: Letter) -> char {
        let c = self.name(l.gen);
        if l.inv {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    /// Text form; the identity prints as `1`.
    pub fn format(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        w.letters().iter().map(|&l| self.letter_char(l)).collect()
    }

    /// All letters in the global letter order.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.size() as u32)
            .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
            .collect()
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

/// Freely reduces an arbitrary letter sequence.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in raw {
        match out.last() {
            Some(&last) if last.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn generator(gen: u32) -> Self {
        Word(vec![Letter::new(gen, false)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let a = &self.0;
        let b = &other.0;
        let mut k = 0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k].cancels(b[k]) {
            k += 1;
        }
        let mut v = Vec::with_capacity(a.len() + b.len() - 2 * k);
        v.extend_from_slice(&a[..a.len() - k]);
        v.extend_from_slice(&b[k..]);
        Word(v)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.inverse().mul(self).mul(c)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) => self.0.len() == 1 || !f.cancels(l),
            _ => true,
        }
    }

    /// Splits `self = c · core · c⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> CyclicWord {
        let v = &self.0;
        let mut k = 0;
        while 2 * k + 1 < v.len() && v[k].cancels(v[v.len() - 1 - k]) {
            k += 1;
        }
        CyclicWord {
            core: Word(v[k..v.len() - k].to_vec()),
            conjugator: Word(v[..k].to_vec()),
        }
    }

    /// Rotation starting at position `i`: `self[i..] · self[..i]`.
    pub fn rotate(&self, i: usize) -> Word {
        let mut v = self.0[i..].to_vec();
        v.extend_from_slice(&self.0[..i]);
        Word(v)
    }

    /// Primitive root and exponent of a cyclically reduced nonempty word.
    pub fn extract_root(&self) -> Result<(Word, u32)> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let n = self.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (d..n).all(|i| self.0[i] == self.0[i - d]) {
                return Ok((self.prefix(d), (n / d) as u32));
            }
        }
        unreachable!("d = n always matches")
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.extract_root()?.1 == 1)
    }

    /// Shortlex-least rotation of the cyclic reduction of `self` or of
    /// its inverse. Equal for two words iff their cyclic subgroups are
    /// conjugate up to inversion.
    pub fn class_representative(&self) -> Word {
        let core = self.cyclic_reduce().core;
        let inv = core.inverse();
        (0..core.len().max(1))
            .flat_map(|i| {
                if core.is_empty() {
                    vec![Word::identity()]
                } else {
                    vec![core.rotate(i), inv.rotate(i)]
                }
            })
            .min()
            .unwrap_or_default()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Uses the default names `a, b, c, …` by generator index.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            let c = (b'a' + (l.gen % 26) as u8) as char;
            write!(f, "{}", if l.inv { c.to_ascii_uppercase() } else { c })?;
        }
        Ok(())
    }
}

/// Cyclically reduced core with a conjugator: `conjugator · core · conjugator⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicWord {
    pub core: Word,
    pub conjugator: Word,
}

impl CyclicWord {
    pub fn expand(&self) -> Word {
        self.conjugator
            .mul(&self.core)
            .mul(&self.conjugator.inverse())
    }
}

/// True iff the cyclic reductions are rotations of one another.
pub fn is_conjugate(w1: &Word, w2: &Word) -> bool {
    let a = w1.cyclic_reduce().core;
    let b = w2.cyclic_reduce().core;
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|i| a.rotate(i) == b)
}

/// A conjugator `c` with `c⁻¹ · w1 · c = w2`, if one exists.
pub fn conjugator(w1: &Word, w2: &Word) -> Option<Word> {
    let a = w1.cyclic_reduce();
    let b = w2.cyclic_reduce();
    if a.core.len() != b.core.len() {
        return None;
    }
    let i = if a.core.is_empty() {
        0
    } else {
        (0..a.core.len()).find(|&i| a.core.rotate(i) == b.core)?
    };
    // core_b = p⁻¹ core_a p with p = core_a[..i]
    let p = a.core.prefix(i);
    Some(a.conjugator.mul(&p).mul(&b.conjugator.inverse()))
}

/// `½(|o⁻¹x| + |o⁻¹y| − |x⁻¹y|)`.
pub fn gromov_product(x: &Word, y: &Word, o: &Word) -> Rational {
    let oi = o.inverse();
    let a = oi.mul(x).len() as i64;
    let b = oi.mul(y).len() as i64;
    let c = x.inverse().mul(y).len() as i64;
    Rational::new(a + b - c, 2)
}
