//! Towers of centralizer extensions `E(H, v, m) = H ∗_{v = w^m} ⟨w⟩`
//! over a free base group.
//!
//! Every such tower embeds in `F^Q` with `w ↦ v^{1/m}`, so elements are
//! kept as [`Elem`] canonical forms. Membership in the tower is decided
//! by tracking, for each pivot `P`, the largest `d(P)` with
//! `P^{1/d(P)}` in the tower: an element belongs to the tower exactly
//! when every fractional syllable `P^s` of its form has `den(s) | d(P)`
//! and all its heads belong to the tower.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::Signed;

use crate::construction::{ConstructionFile, TowerStepFile};
use crate::error::{Error, Result};
use crate::presentation::alphabet_from_names;
use crate::qgroup::{decompose, Elem, Pivot};
use crate::word::{Alphabet, Letter, Word};
use crate::Rational;

/// One adjoined root `root = v^{1/m}`. With `m = 1` the step is a
/// renaming and adds no generator.
#[derive(Clone, Debug)]
pub struct Step {
    pub v: Elem,
    pub v_text: String,
    pub m: u32,
    pub root: String,
    pub root_elem: Elem,
}

#[derive(Clone, Debug)]
pub struct Tower {
    base: Alphabet,
    steps: Vec<Step>,
    denoms: HashMap<Pivot, i64>,
}

/// Result of a conjugacy search inside a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerConjugacy {
    /// `c` with `c⁻¹ f₁ c = f₂`, `c` in the tower.
    Conjugate(Elem),
    ProvenDistinct,
    AbsentWithinBound,
}

impl Tower {
    pub fn new(base: Alphabet) -> Tower {
        Tower {
            base,
            steps: Vec::new(),
            denoms: HashMap::new(),
        }
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Base letters plus one root per step with `m ≥ 2`.
    pub fn generator_count(&self) -> usize {
        self.base.size() + self.steps.iter().filter(|s| s.m >= 2).count()
    }

    /// Appends `w = v^{1/m}`. `v` must lie in the tower and be primitive
    /// there.
    pub fn extend_centralizer(&self, v: &Elem, m: u32, root: &str, v_text: &str) -> Result<Tower> {
        if m == 0 {
            return Err(Error::Schema("root order m must be at least 1".into()));
        }
        self.check_root_name(root)?;
        if !self.contains(v) {
            return Err(Error::NotInTower(self.display(v)));
        }
        let d = decompose(v).ok_or_else(|| Error::NotPrimitive("1".into()))?;
        let den = self.denom(&d.pivot);
        if (d.exp * Rational::from_integer(den)).abs() != Rational::from_integer(1) {
            return Err(Error::NotPrimitive(self.display(v)));
        }
        let mut t = self.clone();
        if m >= 2 {
            let next = den.checked_mul(i64::from(m)).ok_or(Error::Overflow)?;
            t.denoms.insert(d.pivot.clone(), next);
        }
        t.steps.push(Step {
            v: v.clone(),
            v_text: v_text.to_string(),
            m,
            root: root.to_string(),
            root_elem: v.pow_rational(Rational::new(1, i64::from(m))),
        });
        Ok(t)
    }

    fn check_root_name(&self, root: &str) -> Result<()> {
        let ok = !root.is_empty()
            && root.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && root.starts_with(|c: char| c.is_ascii_alphabetic());
        if !ok {
            return Err(Error::Schema(format!("invalid root name {root:?}")));
        }
        let mut cs = root.chars();
        if let (Some(c), None) = (cs.next(), cs.next()) {
            if self.base.index_of(c.to_ascii_lowercase()).is_some() {
                return Err(Error::Schema(format!(
                    "root name {root:?} clashes with a generator"
                )));
            }
        }
        if self.step_by_name(root).is_some() {
            return Err(Error::Schema(format!("duplicate root name {root:?}")));
        }
        Ok(())
    }

    fn step_by_name(&self, name: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.root == name)
    }

    pub(crate) fn denom(&self, p: &Pivot) -> i64 {
        self.denoms.get(p).copied().unwrap_or(1)
    }

    /// Whether `e` lies in the tower.
    pub fn contains(&self, e: &Elem) -> bool {
        match e {
            Elem::Free(w) => w
                .letters()
                .iter()
                .all(|l| (l.gen as usize) < self.base.size()),
            Elem::Ext(f) => {
                f.powers()
                    .iter()
                    .all(|p| self.denom(&p.pivot) % *p.exp.denom() == 0)
                    && f.heads().iter().all(|h| self.contains(h))
            }
        }
    }

    /// Parses a word over base letters and root symbols and reduces it.
    /// The result is the canonical form, which is in particular
    /// semicanonical.
    pub fn reduce_to_semicanonical(&self, text: &str) -> Result<Elem> {
        parse_tower_word(self, text)
    }

    /// Canonical forms are produced by every operation; this only
    /// rebuilds `e` from its syllables.
    pub fn canonical_form(&self, e: &Elem) -> Elem {
        match e {
            Elem::Free(_) => e.clone(),
            Elem::Ext(f) => {
                let mut acc = Elem::one();
                for (i, h) in f.heads().iter().enumerate() {
                    acc = acc.mul(&self.canonical_form(h));
                    if let Some(p) = f.powers().get(i) {
                        acc = acc.mul(&p.pivot.pow(p.exp));
                    }
                }
                acc
            }
        }
    }

    pub fn equal(&self, a: &Elem, b: &Elem) -> bool {
        a == b
    }

    /// `k` with `h = v^k`, if any.
    pub fn is_in_cyclic(&self, h: &Elem, v: &Elem) -> Option<i64> {
        if h.is_one() {
            return Some(0);
        }
        let dv = decompose(v)?;
        let dh = decompose(h)?;
        if dv.pivot != dh.pivot {
            return None;
        }
        let k = dh.exp / dv.exp;
        if !k.is_integer() {
            return None;
        }
        let k = k.to_integer();
        (v.pow(k) == *h).then_some(k)
    }

    /// `(rep, k)` with `h = rep · v^k` and `rep` least in `h⟨v⟩` among
    /// `h v^{-j}`, `|j| ≤ len(h) + 1`.
    pub fn coset_rep(&self, h: &Elem, v: &Elem) -> (Elem, i64) {
        if let Some(k) = self.is_in_cyclic(h, v) {
            return (Elem::one(), k);
        }
        let bound = h.len() as i64 + 1;
        let mut best = (h.clone(), 0);
        for j in (-bound..=bound).filter(|&j| j != 0) {
            let c = h.mul(&v.pow(-j));
            if c < best.0 {
                best = (c, j);
            }
        }
        best
    }

    /// Default search bound: total length plus four.
    pub fn default_k_bound(f1: &Elem, f2: &Elem) -> i64 {
        (f1.len() + f2.len() + 4) as i64
    }

    /// Searches for `c` in the tower with `c⁻¹ f₁ c = f₂`. All conjugators
    /// in `F^Q` have the form `x P^q y⁻¹`; candidates with
    /// `q = j / d(P)`, `|j| ≤ k_bound`, are tried and the least one kept.
    pub fn conjugate_in_tower(&self, f1: &Elem, f2: &Elem, k_bound: i64) -> Result<TowerConjugacy> {
        for f in [f1, f2] {
            if !self.contains(f) {
                return Err(Error::NotInTower(self.display(f)));
            }
        }
        let (da, db) = match (decompose(f1), decompose(f2)) {
            (None, None) => return Ok(TowerConjugacy::Conjugate(Elem::one())),
            (Some(a), Some(b)) if a.pivot == b.pivot && a.exp == b.exp => (a, b),
            _ => return Ok(TowerConjugacy::ProvenDistinct),
        };
        let den = self.denom(&da.pivot);
        let y_inv = db.conj.inv();
        let mut best: Option<Elem> = None;
        for j in -k_bound..=k_bound {
            let c = da
                .conj
                .mul(&da.pivot.pow(Rational::new(j, den)))
                .mul(&y_inv);
            if best.as_ref().is_some_and(|b| *b <= c) || !self.contains(&c) {
                continue;
            }
            if f1.conj(&c) == *f2 {
                best = Some(c);
            }
        }
        Ok(best.map_or(TowerConjugacy::AbsentWithinBound, TowerConjugacy::Conjugate))
    }

    /// Q-word text of a form.
    pub fn display(&self, e: &Elem) -> String {
        e.display(&self.base)
    }

    /// Top-level syllables of a form: heads and fractional powers,
    /// alternating, starting and ending with a head.
    pub fn syllables(&self, e: &Elem) -> Vec<String> {
        match e {
            Elem::Free(_) => vec![self.display(e)],
            Elem::Ext(f) => {
                let mut out = Vec::new();
                for (i, h) in f.heads().iter().enumerate() {
                    out.push(self.display(h));
                    if let Some(p) = f.powers().get(i) {
                        let mut s = String::new();
                        p.write(&self.base, &mut s);
                        out.push(s);
                    }
                }
                out
            }
        }
    }

    /// `⟨a,b,w | ab = w^2⟩`; renamings are listed as `w := v`.
    pub fn presentation_text(&self) -> String {
        let mut gens: Vec<String> = self.base.names().iter().map(|c| c.to_string()).collect();
        let mut rels = Vec::new();
        for s in &self.steps {
            if s.m >= 2 {
                gens.push(s.root.clone());
                rels.push(format!("{} = {}^{}", s.v_text, s.root, s.m));
            } else {
                rels.push(format!("{} := {}", s.root, s.v_text));
            }
        }
        let mut out = String::new();
        let _ = write!(out, "<{}", gens.join(","));
        if !rels.is_empty() {
            let _ = write!(out, " | {}", rels.join(", "));
        }
        out.push('>');
        out
    }

    pub fn from_file(file: &ConstructionFile) -> Result<Tower> {
        match file {
            ConstructionFile::Tower { generators, steps } => {
                let mut t = Tower::new(alphabet_from_names(generators)?);
                for s in steps {
                    let v = t.reduce_to_semicanonical(&s.v)?;
                    t = t.extend_centralizer(&v, s.m, &s.root, &s.v)?;
                }
                Ok(t)
            }
            _ => Err(Error::Schema("expected kind \"tower\"".into())),
        }
    }

    pub fn to_file(&self) -> ConstructionFile {
        ConstructionFile::Tower {
            generators: self.base.names().iter().map(|c| c.to_string()).collect(),
            steps: self
                .steps
                .iter()
                .map(|s| TowerStepFile {
                    v: s.v_text.clone(),
                    m: s.m,
                    root: s.root.clone(),
                })
                .collect(),
        }
    }
}

/// Tower words: base letters (uppercase for inverses), root symbols as
/// `[name]` or, for one-character names, bare (uppercase inverts),
/// parentheses, integer exponents `^k`, `1` for the identity.
/// Whitespace, `.`, `*` and `·` are separators.
pub fn parse_tower_word(t: &Tower, text: &str) -> Result<Elem> {
    let mut p = TParser {
        t,
        chars: text.char_indices().collect(),
        i: 0,
        len: text.len(),
    };
    let e = p.word()?;
    if p.peek().is_some() {
        return p.err("unexpected ')'");
    }
    Ok(e)
}

struct TParser<'a> {
    t: &'a Tower,
    chars: Vec<(usize, char)>,
    i: usize,
    len: usize,
}

impl TParser<'_> {
    fn peek(&mut self) -> Option<char> {
        while let Some(&(_, c)) = self.chars.get(self.i) {
            if c.is_whitespace() || matches!(c, '.' | '*' | '·') {
                self.i += 1;
            } else {
                return Some(c);
            }
        }
        None
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.len, |c| c.0)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn word(&mut self) -> Result<Elem> {
        let mut acc = Elem::one();
        while let Some(c) = self.peek() {
            if c == ')' {
                break;
            }
            let a = self.atom()?;
            let a = if self.peek() == Some('^') {
                self.i += 1;
                a.pow(self.exponent()?)
            } else {
                a
            };
            acc = acc.mul(&a);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some('(');
        if paren {
            self.i += 1;
        }
        let neg = self.peek() == Some('-');
        if neg {
            self.i += 1;
        }
        self.peek();
        let start = self.i;
        while self.chars.get(self.i).is_some_and(|c| c.1.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected an integer exponent");
        }
        let s: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
        let k: i64 = s.parse().map_err(|_| Error::Overflow)?;
        if paren {
            if self.peek() != Some(')') {
                return self.err("expected ')'");
            }
            self.i += 1;
        }
        Ok(if neg { -k } else { k })
    }

    fn atom(&mut self) -> Result<Elem> {
        let c = self.peek().expect("caller checked");
        match c {
            '(' => {
                self.i += 1;
                let e = self.word()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(e)
            }
            '1' => {
                self.i += 1;
                Ok(Elem::one())
            }
            '[' => {
                self.i += 1;
                let start = self.i;
                while self.chars.get(self.i).is_some_and(|c| c.1 != ']') {
                    self.i += 1;
                }
                if self.i >= self.chars.len() {
                    return self.err("expected ']'");
                }
                let name: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
                self.i += 1;
                let name = name.trim();
                match self.t.step_by_name(name) {
                    Some(s) => Ok(s.root_elem.clone()),
                    None => Err(Error::UnknownSymbol(name.to_string())),
                }
            }
            c if c.is_ascii_alphabetic() => {
                self.i += 1;
                let lower = c.to_ascii_lowercase();
                let inv = c.is_ascii_uppercase();
                if let Some(g) = self.t.base.index_of(lower) {
                    return Ok(Elem::Free(Word::letter(Letter::new(g, inv))));
                }
                match self.t.step_by_name(&lower.to_string()) {
                    Some(s) if inv => Ok(s.root_elem.inv()),
                    Some(s) => Ok(s.root_elem.clone()),
                    None => Err(Error::UnknownSymbol(c.to_string())),
                }
            }
            _ => self.err("unexpected character"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e_ab2() -> Tower {
        let t = Tower::new(Alphabet::new("ab").unwrap());
        let v = t.reduce_to_semicanonical("ab").unwrap();
        t.extend_centralizer(&v, 2, "w", "ab").unwrap()
    }

    #[test]
    fn relation_and_forms() {
        let t = e_ab2();
        assert_eq!(t.presentation_text(), "<a,b,w | ab = w^2>");
        assert_eq!(t.generator_count(), 3);
        let ww = t.reduce_to_semicanonical("w·w").unwrap();
        assert_eq!(t.display(&ww), "ab");
        let waw = t.reduce_to_semicanonical("w a w").unwrap();
        assert_eq!(
            t.syllables(&waw),
            vec!["1", "(ab)^(1/2)", "a", "(ab)^(1/2)", "1"]
        );
        let c = t.reduce_to_semicanonical("w (ab) w^-1").unwrap();
        assert_eq!(t.display(&c), "ab");
        let w = t.reduce_to_semicanonical("w").unwrap();
        assert!(!t.equal(&w, &w.inv()));
    }

    #[test]
    fn extension_errors() {
        let t = Tower::new(Alphabet::new("ab").unwrap());
        let v = t.reduce_to_semicanonical("abab").unwrap();
        assert!(matches!(
            t.extend_centralizer(&v, 2, "w", "abab"),
            Err(Error::NotPrimitive(_))
        ));
        let a = t.reduce_to_semicanonical("a").unwrap();
        let r = t.extend_centralizer(&a, 1, "w", "a").unwrap();
        assert_eq!(r.generator_count(), 2);
        assert_eq!(r.reduce_to_semicanonical("w").unwrap(), a);
        let t = e_ab2();
        let v = t.reduce_to_semicanonical("ab").unwrap();
        assert!(matches!(
            t.extend_centralizer(&v, 2, "u", "ab"),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn cyclic_and_cosets() {
        let t = e_ab2();
        let p = |s| t.reduce_to_semicanonical(s).unwrap();
        assert_eq!(t.is_in_cyclic(&p("aa"), &p("a")), Some(2));
        assert_eq!(t.is_in_cyclic(&p("ab"), &p("a")), None);
        assert_eq!(t.is_in_cyclic(&p("(ab)^-3"), &p("ab")), Some(-3));
        assert_eq!(t.coset_rep(&p("a(ab)^2"), &p("ab")), (p("a"), 2));
        assert_eq!(t.coset_rep(&p("a"), &p("ab")), (p("a"), 0));
        assert_eq!(t.coset_rep(&p("(ab)^5"), &p("ab")), (p("1"), 5));
    }

    #[test]
    fn conjugacy() {
        let t = e_ab2();
        let p = |s| t.reduce_to_semicanonical(s).unwrap();
        let f1 = p("A w a");
        let f2 = p("w");
        let k = Tower::default_k_bound(&f1, &f2);
        assert_eq!(
            t.conjugate_in_tower(&f1, &f2, k).unwrap(),
            TowerConjugacy::Conjugate(p("A"))
        );
        assert_eq!(
            t.conjugate_in_tower(&p("a"), &p("b"), 4).unwrap(),
            TowerConjugacy::ProvenDistinct
        );
        assert_eq!(
            t.conjugate_in_tower(&p("w"), &p("W"), 4).unwrap(),
            TowerConjugacy::ProvenDistinct
        );
    }
}
