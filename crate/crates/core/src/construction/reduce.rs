//! Reducers for HNN-extensions and amalgams over cyclic associated
//! subgroups of free groups. Used to machine-check witness relations.

use crate::word::Word;

/// Exponent `k` with `g = u^k`, if any.
pub fn power_of(g: &Word, u: &Word) -> Option<i64> {
    if g.is_empty() {
        return Some(0);
    }
    let cu = u.cyclic_reduce();
    if cu.core.is_empty() {
        return None;
    }
    let h = g.conjugate_by(&cu.conjugator.inverse());
    if !h.len().is_multiple_of(cu.core.len()) {
        return None;
    }
    let k = (h.len() / cu.core.len()) as i64;
    [k, -k].into_iter().find(|&e| cu.core.pow(e) == h)
}

/// A syllable of an HNN word: a base word or a power of the stable letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HnnSyl {
    Base(Word),
    T(i8),
}

/// `⟨G, t | t⁻¹ u t = v⟩` with `G` free.
#[derive(Clone, Debug)]
pub struct CyclicHnn {
    pub u: Word,
    pub v: Word,
}

impl CyclicHnn {
    /// Britton reduction. The result alternates base words and single
    /// stable letters, starting and ending with a (possibly empty) base word.
    pub fn reduce(&self, syls: &[HnnSyl]) -> Vec<HnnSyl> {
        let mut st: Vec<HnnSyl> = vec![HnnSyl::Base(Word::identity())];
        for s in syls {
            match s {
                HnnSyl::Base(w) => {
                    if let Some(HnnSyl::Base(top)) = st.last_mut() {
                        *top = top.mul(w);
                    }
                }
                HnnSyl::T(e) => {
                    let steps = e.unsigned_abs();
                    let unit = e.signum();
                    for _ in 0..steps {
                        self.push_t(&mut st, unit);
                    }
                }
            }
        }
        st
    }

    fn push_t(&self, st: &mut Vec<HnnSyl>, e: i8) {
        let g = match st.pop() {
            Some(HnnSyl::Base(g)) => g,
            _ => unreachable!("stack ends with a base word"),
        };
        if let Some(HnnSyl::T(x)) = st.last() {
            let pinched = if *x == -1 && e == 1 {
                power_of(&g, &self.u).map(|k| self.v.pow(k))
            } else if *x == 1 && e == -1 {
                power_of(&g, &self.v).map(|k| self.u.pow(k))
            } else {
                None
            };
            if let Some(h) = pinched {
                st.pop();
                if let Some(HnnSyl::Base(prev)) = st.last_mut() {
                    *prev = prev.mul(&h);
                }
                return;
            }
        }
        st.push(HnnSyl::Base(g));
        st.push(HnnSyl::T(e));
        st.push(HnnSyl::Base(Word::identity()));
    }

    pub fn is_identity(&self, syls: &[HnnSyl]) -> bool {
        matches!(self.reduce(syls).as_slice(), [HnnSyl::Base(w)] if w.is_empty())
    }

    pub fn t_length(&self, syls: &[HnnSyl]) -> usize {
        self.reduce(syls)
            .iter()
            .filter(|s| matches!(s, HnnSyl::T(_)))
            .count()
    }

    /// Infinite order with no conjugate in the base: the square has
    /// exactly twice the stable-letter length, which is positive.
    pub fn is_hyperbolic(&self, x: &[HnnSyl]) -> bool {
        let n = self.t_length(x);
        let xx: Vec<HnnSyl> = x.iter().chain(x.iter()).cloned().collect();
        n > 0 && self.t_length(&xx) == 2 * n
    }

    /// `[a, b] = a⁻¹b⁻¹ab` is trivial.
    pub fn commute(&self, a: &[HnnSyl], b: &[HnnSyl]) -> bool {
        let mut w = inverse_hnn(a);
        w.extend(inverse_hnn(b));
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        self.is_identity(&w)
    }
}

pub fn inverse_hnn(s: &[HnnSyl]) -> Vec<HnnSyl> {
    s.iter()
        .rev()
        .map(|x| match x {
            HnnSyl::Base(w) => HnnSyl::Base(w.inverse()),
            HnnSyl::T(e) => HnnSyl::T(-e),
        })
        .collect()
}

/// `G₁ ∗_{u = v} G₂` with both factors free.
#[derive(Clone, Debug)]
pub struct CyclicAmalgam {
    pub u: Word,
    pub v: Word,
}

/// Syllable `(side, word)` with side `0` for the left factor.
pub type AmSyl = (u8, Word);

impl CyclicAmalgam {
    fn edge_power(&self, s: &AmSyl) -> Option<i64> {
        if s.0 == 0 {
            power_of(&s.1, &self.u)
        } else {
            power_of(&s.1, &self.v)
        }
    }

    fn edge_elem(&self, side: u8, k: i64) -> Word {
        if side == 0 {
            self.u.pow(k)
        } else {
            self.v.pow(k)
        }
    }

    /// Reduced syllable sequence; a lone edge-group element is kept on the left.
    pub fn reduce(&self, syls: &[AmSyl]) -> Vec<AmSyl> {
        let mut v: Vec<AmSyl> = syls.iter().filter(|s| !s.1.is_empty()).cloned().collect();
        loop {
            let mut changed = false;
            let mut merged: Vec<AmSyl> = Vec::new();
            for s in v.drain(..) {
                match merged.last_mut() {
                    Some(top) if top.0 == s.0 => {
                        top.1 = top.1.mul(&s.1);
                        if top.1.is_empty() {
                            merged.pop();
                        }
                        changed = true;
                    }
                    _ => merged.push(s),
                }
            }
            v = merged;
            if v.len() >= 2 {
                if let Some(i) = (0..v.len()).find(|&i| self.edge_power(&v[i]).is_some()) {
                    let k = self.edge_power(&v[i]).unwrap_or(0);
                    let j = if i > 0 { i - 1 } else { i + 1 };
                    let side = v[j].0;
                    v[i] = (side, self.edge_elem(side, k));
                    changed = true;
                }
            } else if let [s] = v.as_slice() {
                if s.0 == 1 {
                    if let Some(k) = self.edge_power(s) {
                        v = vec![(0, self.u.pow(k))];
                    }
                }
            }
            if !changed {
                return v;
            }
        }
    }

    pub fn is_identity(&self, syls: &[AmSyl]) -> bool {
        self.reduce(syls).is_empty()
    }

    pub fn syllable_length(&self, syls: &[AmSyl]) -> usize {
        self.reduce(syls).len()
    }

    /// The square has twice as many syllables, at least four.
    pub fn is_hyperbolic(&self, x: &[AmSyl]) -> bool {
        let n = self.syllable_length(x);
        let xx: Vec<AmSyl> = x.iter().chain(x.iter()).cloned().collect();
        n >= 2 && self.syllable_length(&xx) == 2 * n
    }

    pub fn commute(&self, a: &[AmSyl], b: &[AmSyl]) -> bool {
        let mut w = inverse_am(a);
        w.extend(inverse_am(b));
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        self.is_identity(&w)
    }
}

pub fn inverse_am(s: &[AmSyl]) -> Vec<AmSyl> {
    s.iter()
        .rev()
        .map(|(side, w)| (*side, w.inverse()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    #[test]
    fn britton_pinches() {
        let a = Alphabet::new("ab").unwrap();
        let h = CyclicHnn {
            u: a.parse("aa").unwrap(),
            v: a.parse("bb").unwrap(),
        };
        // t⁻¹ a⁴ t = b⁴
        let w = vec![
            HnnSyl::T(-1),
            HnnSyl::Base(a.parse("aaaa").unwrap()),
            HnnSyl::T(1),
            HnnSyl::Base(a.parse("BBBB").unwrap()),
        ];
        assert!(h.is_identity(&w));
        let w = vec![
            HnnSyl::T(-1),
            HnnSyl::Base(a.parse("a").unwrap()),
            HnnSyl::T(1),
        ];
        assert_eq!(h.t_length(&w), 2);
        assert!(!h.is_hyperbolic(&w));
    }

    #[test]
    fn amalgam_pinches() {
        let x = Alphabet::new("x").unwrap();
        let am = CyclicAmalgam {
            u: x.parse("xx").unwrap(),
            v: x.parse("xxx").unwrap(),
        };
        let w = vec![(0, x.parse("xx").unwrap()), (1, x.parse("XXX").unwrap())];
        assert!(am.is_identity(&w));
        let w = vec![(0, x.parse("x").unwrap()), (1, x.parse("x").unwrap())];
        assert!(am.is_hyperbolic(&w));
    }
}
