//! Canonical forms for elements of the rational completion `F^Q` of a
//! free group `F`.
//!
//! `F^Q` is the union of layers `F = L₀ < L₁ < …` where `L_{k+1}` is
//! the tree product of `L_k` with one copy of `Q` per conjugacy class of
//! maximal cyclic subgroups `⟨p⟩` of `L_k`, amalgamated along
//! `p = 1 ∈ Q`. Such a `p` is a [`Pivot`]; it is stored as a canonical
//! representative of its class.
//!
//! An element of layer `L ≥ 1` is stored as an alternating sequence
//! `h₀ p₁^{s₁} h₁ ⋯ p_r^{s_r} h_r` with `hᵢ ∈ L_{L−1}`, every `pᵢ` a
//! pivot of layer `L`, `0 < sᵢ < 1`, and `hᵢ` the fixed representative
//! of the right coset `hᵢ⟨p_{i+1}⟩` for `i < r`. Representatives have
//! minimal length with structural order as tie-break, so the form is
//! unique and equality is structural.

mod arith;
mod cyclic;

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::word::{Alphabet, Word};
use crate::Rational;

pub use arith::{coset_min, is_in_cyclic};
pub use cyclic::{conjugator, decompose, is_conjugate, Decomposition};

/// An element of `F^Q` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Free(Word),
    Ext(Arc<ExtForm>),
}

/// Alternating form of an element of layer `layer ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtForm {
    layer: u32,
    heads: Vec<Elem>,
    powers: Vec<RootPower>,
    len: usize,
}

/// `pivot^exp` with `0 < exp < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootPower {
    pub pivot: Pivot,
    pub exp: Rational,
}

/// Canonical generator of a maximal cyclic subgroup of some layer.
#[derive(Clone, Debug)]
pub struct Pivot(Arc<PivotData>);

#[derive(Debug)]
struct PivotData {
    layer: u32,
    elem: Elem,
    rate: usize,
}

impl Pivot {
    /// Wraps a canonical class representative. Callers guarantee the
    /// element is cyclically reduced, primitive and canonical.
    pub(crate) fn new(elem: Elem) -> Pivot {
        let rate = match &elem {
            Elem::Free(w) => w.len(),
            Elem::Ext(f) => f.powers.len(),
        };
        Pivot(Arc::new(PivotData {
            layer: elem.layer() + 1,
            elem,
            rate,
        }))
    }

    /// Layer in which fractional powers of this pivot first appear.
    pub fn layer(&self) -> u32 {
        self.0.layer
    }

    pub fn elem(&self) -> &Elem {
        &self.0.elem
    }

    /// Growth of `len(p^k)` per unit of `k`.
    pub(crate) fn rate(&self) -> usize {
        self.0.rate.max(1)
    }

    /// `p^q` for rational `q`.
    pub fn pow(&self, q: Rational) -> Elem {
        if q.is_integer() {
            return self.elem().pow(q.to_integer());
        }
        let mut st = arith::Stack::new(self.layer());
        st.push_pow(self, q);
        st.finish()
    }
}

impl PartialEq for Pivot {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.elem == other.0.elem
    }
}

impl Eq for Pivot {}

impl Hash for Pivot {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.elem.hash(state)
    }
}

impl Ord for Pivot {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.elem.cmp(&other.0.elem)
    }
}

impl PartialOrd for Pivot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ExtForm {
    pub fn layer(&self) -> u32 {
        self.layer
    }

    pub fn heads(&self) -> &[Elem] {
        &self.heads
    }

    pub fn powers(&self) -> &[RootPower] {
        &self.powers
    }
}

impl Elem {
    pub fn one() -> Elem {
        Elem::Free(Word::identity())
    }

    pub fn from_word(w: Word) -> Elem {
        Elem::Free(w)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Elem::Free(w) if w.is_empty())
    }

    pub fn layer(&self) -> u32 {
        match self {
            Elem::Free(_) => 0,
            Elem::Ext(f) => f.layer,
        }
    }

    /// Letters of free parts plus the number of fractional syllables.
    pub fn len(&self) -> usize {
        match self {
            Elem::Free(w) => w.len(),
            Elem::Ext(f) => f.len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.is_one()
    }

    pub fn as_free(&self) -> Option<&Word> {
        match self {
            Elem::Free(w) => Some(w),
            Elem::Ext(_) => None,
        }
    }

    pub fn as_ext(&self) -> Option<&ExtForm> {
        match self {
            Elem::Free(_) => None,
            Elem::Ext(f) => Some(f),
        }
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        arith::mul(self, other)
    }

    pub fn inv(&self) -> Elem {
        arith::inverse(self)
    }

    pub fn pow(&self, n: i64) -> Elem {
        arith::pow(self, n)
    }

    /// `c⁻¹ · self · c`.
    pub fn conj(&self, c: &Elem) -> Elem {
        c.inv().mul(self).mul(c)
    }

    /// `self^q`, the unique `q`-th power in `F^Q`.
    pub fn pow_rational(&self, q: Rational) -> Elem {
        if q.is_integer() {
            return self.pow(q.to_integer());
        }
        if self.is_one() {
            return Elem::one();
        }
        let d = decompose(self).expect("nontrivial element");
        d.conj.mul(&d.pivot.pow(d.exp * q)).mul(&d.conj.inv())
    }

    /// Text in Q-word syntax.
    pub fn display(&self, a: &Alphabet) -> String {
        let mut s = String::new();
        self.write(a, &mut s);
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    fn write(&self, a: &Alphabet, s: &mut String) {
        match self {
            Elem::Free(w) => {
                if !w.is_empty() {
                    s.push_str(&a.format(w));
                }
            }
            Elem::Ext(f) => {
                for (i, h) in f.heads.iter().enumerate() {
                    h.write(a, s);
                    if let Some(p) = f.powers.get(i) {
                        p.write(a, s);
                    }
                }
            }
        }
    }

    /// Every fractional syllable, including those nested in heads.
    pub fn all_powers(&self) -> Vec<RootPower> {
        let mut out = Vec::new();
        self.collect_powers(&mut out);
        out
    }

    fn collect_powers(&self, out: &mut Vec<RootPower>) {
        if let Elem::Ext(f) = self {
            for h in &f.heads {
                h.collect_powers(out);
            }
            for p in &f.powers {
                out.push(p.clone());
            }
        }
    }
}

impl RootPower {
    pub fn write(&self, a: &Alphabet, s: &mut String) {
        let base = self.pivot.elem().display(a);
        let exp = format!("({}/{})", self.exp.numer(), self.exp.denom());
        if base.chars().count() == 1 {
            let _ = write!(s, "{base}^{exp}");
        } else {
            let _ = write!(s, "({base})^{exp}");
        }
    }
}

fn struct_cmp(a: &Elem, b: &Elem) -> Ordering {
    match (a, b) {
        (Elem::Free(x), Elem::Free(y)) => x.letters().cmp(y.letters()),
        (Elem::Free(_), Elem::Ext(_)) => Ordering::Less,
        (Elem::Ext(_), Elem::Free(_)) => Ordering::Greater,
        (Elem::Ext(x), Elem::Ext(y)) => {
            if Arc::ptr_eq(x, y) {
                return Ordering::Equal;
            }
            x.layer.cmp(&y.layer).then_with(|| {
                let n = x.heads.len().min(y.heads.len());
                for i in 0..n {
                    let c = x.heads[i].cmp(&y.heads[i]);
                    if c != Ordering::Equal {
                        return c;
                    }
                    if let (Some(p), Some(q)) = (x.powers.get(i), y.powers.get(i)) {
                        let c = p.pivot.cmp(&q.pivot).then(p.exp.cmp(&q.exp));
                        if c != Ordering::Equal {
                            return c;
                        }
                    }
                }
                x.heads.len().cmp(&y.heads.len())
            })
        }
    }
}

impl Ord for Elem {
    /// Length first, then structure.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| struct_cmp(self, other))
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn frac_parts(q: Rational) -> (i64, Rational) {
    let fl = q.floor();
    (fl.to_integer(), q - fl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qword::parse_qword;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn ev(s: &str) -> Elem {
        parse_qword(s).unwrap().eval(&ab()).unwrap()
    }

    fn show(s: &str) -> String {
        ev(s).display(&ab())
    }

    #[test]
    fn root_products() {
        assert_eq!(show("a^(1/2)a^(1/2)"), "a");
        assert_eq!(show("a^(1/3)a^(1/3)"), "a^(2/3)");
        assert_eq!(show("a^(1/2)b a^(-1/2)"), "a^(1/2)ba^(1/2)A");
        assert_eq!(show("(bab^(-1))^(1/2)"), "ba^(1/2)B");
        assert_eq!(show("((ab)^(1/2))^2"), "ab");
        assert_eq!(show("(ab)^(3/2)"), "(ab)^(1/2)ab");
        assert_eq!(ev("(ab)^(3/2)"), ev("ab (ab)^(1/2)"));
    }

    #[test]
    fn conjugacy() {
        let x = ev("(ba)^(1/2)");
        let y = ev("(ab)^(1/2)");
        let c = conjugator(&x, &y).unwrap();
        assert_eq!(x.conj(&c), y);
        assert!(!is_conjugate(&ev("a^(1/2)"), &ev("a^(1/3)")));
        assert!(is_conjugate(&ev("a^(1/2)"), &ev("ba^(1/2)B")));
    }

    #[test]
    fn second_layer() {
        let u = ev("a^(1/2)b");
        let r = u.pow_rational(Rational::new(1, 3));
        assert_eq!(r.layer(), 2);
        assert_eq!(r.pow(3), u);
        let v = ev("(b a^(1/2) b)^(1/2)");
        assert_eq!(v.mul(&v), ev("b a^(1/2) b"));
    }
}
