use std::sync::Arc;

use super::{frac_parts, Elem, ExtForm, Pivot, RootPower};
use crate::Rational;

/// Work area for building a form of a fixed layer. `clean[i]` records
/// that `heads[i]` is already the coset representative for the pivot
/// that follows it.
pub(crate) struct Stack {
    layer: u32,
    heads: Vec<Elem>,
    powers: Vec<RootPower>,
    clean: Vec<bool>,
}

impl Stack {
    pub(crate) fn new(layer: u32) -> Stack {
        Stack {
            layer,
            heads: vec![Elem::one()],
            powers: Vec::new(),
            clean: vec![true],
        }
    }

    fn from_elem(e: &Elem, layer: u32) -> Stack {
        match e {
            Elem::Ext(f) if f.layer == layer => {
                let mut clean = vec![true; f.heads.len()];
                *clean.last_mut().unwrap() = false;
                Stack {
                    layer,
                    heads: f.heads.clone(),
                    powers: f.powers.clone(),
                    clean,
                }
            }
            _ => Stack {
                layer,
                heads: vec![e.clone()],
                powers: Vec::new(),
                clean: vec![false],
            },
        }
    }

    fn top_mul(&mut self, h: &Elem) {
        if h.is_one() {
            return;
        }
        let top = self.heads.last_mut().unwrap();
        *top = top.mul(h);
        *self.clean.last_mut().unwrap() = false;
    }

    /// Replaces an untouched identity top by a known representative.
    fn top_set_clean(&mut self, h: &Elem) {
        if self.heads.last().unwrap().is_one() && *self.clean.last().unwrap() {
            *self.heads.last_mut().unwrap() = h.clone();
        } else {
            self.top_mul(h);
        }
    }

    pub(crate) fn push_pow(&mut self, p: &Pivot, q: Rational) {
        let (fl, fr) = frac_parts(q);
        if fl != 0 {
            self.top_mul(&p.elem().pow(fl));
        }
        if fr == Rational::from_integer(0) {
            return;
        }
        let merge = match self.powers.last() {
            Some(last) if last.pivot == *p => {
                is_in_cyclic(self.heads.last().unwrap(), p).map(|k| (last.exp, k))
            }
            _ => None,
        };
        if let Some((s, k)) = merge {
            self.powers.pop();
            self.heads.pop();
            self.clean.pop();
            *self.clean.last_mut().unwrap() = false;
            self.push_pow(p, s + Rational::from_integer(k) + fr);
            return;
        }
        self.powers.push(RootPower {
            pivot: p.clone(),
            exp: fr,
        });
        self.heads.push(Elem::one());
        self.clean.push(true);
    }

    fn push_elem(&mut self, e: &Elem) {
        match e {
            Elem::Ext(f) if f.layer == self.layer => {
                self.top_mul(&f.heads[0]);
                let r = f.powers.len();
                for i in 0..r {
                    self.push_pow(&f.powers[i].pivot, f.powers[i].exp);
                    if i + 1 < r {
                        self.top_set_clean(&f.heads[i + 1]);
                    } else {
                        self.top_mul(&f.heads[i + 1]);
                    }
                }
            }
            _ => self.top_mul(e),
        }
    }

    pub(crate) fn finish(mut self) -> Elem {
        let r = self.powers.len();
        if r == 0 {
            return self.heads.pop().unwrap();
        }
        for i in 0..r {
            if self.clean[i] {
                continue;
            }
            let p = &self.powers[i].pivot;
            let (rep, k) = coset_min(&self.heads[i], p);
            self.heads[i] = rep;
            if k != 0 {
                self.heads[i + 1] = p.elem().pow(k).mul(&self.heads[i + 1]);
                self.clean[i + 1] = false;
            }
        }
        let len = self.heads.iter().map(Elem::len).sum::<usize>() + r;
        Elem::Ext(Arc::new(ExtForm {
            layer: self.layer,
            heads: self.heads,
            powers: self.powers,
            len,
        }))
    }
}

pub(crate) fn mul(x: &Elem, y: &Elem) -> Elem {
    if let (Elem::Free(a), Elem::Free(b)) = (x, y) {
        return Elem::Free(a.mul(b));
    }
    if y.is_one() {
        return x.clone();
    }
    if x.is_one() {
        return y.clone();
    }
    let layer = x.layer().max(y.layer());
    let mut st = Stack::from_elem(x, layer);
    st.push_elem(y);
    st.finish()
}

pub(crate) fn inverse(x: &Elem) -> Elem {
    match x {
        Elem::Free(w) => Elem::Free(w.inverse()),
        Elem::Ext(f) => {
            let mut st = Stack::new(f.layer);
            let r = f.powers.len();
            for i in (0..=r).rev() {
                st.top_mul(&f.heads[i].inv());
                if i > 0 {
                    st.push_pow(&f.powers[i - 1].pivot, -f.powers[i - 1].exp);
                }
            }
            st.finish()
        }
    }
}

pub(crate) fn pow(x: &Elem, n: i64) -> Elem {
    if let Elem::Free(w) = x {
        return Elem::Free(w.pow(n));
    }
    let mut base = if n < 0 { x.inv() } else { x.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = Elem::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

/// Exponent `k` with `h = p^k` for a pivot `p`, if any. `h` must lie
/// in the layer below the pivot's.
pub fn is_in_cyclic(h: &Elem, p: &Pivot) -> Option<i64> {
    if h.is_one() {
        return Some(0);
    }
    match (p.elem(), h) {
        (Elem::Free(u), Elem::Free(w)) => {
            if w.len() % u.len() != 0 {
                return None;
            }
            let k = (w.len() / u.len()) as i64;
            [k, -k].into_iter().find(|&e| u.pow(e) == *w)
        }
        (Elem::Ext(pf), Elem::Ext(hf)) if pf.layer == hf.layer => {
            let r = pf.powers.len();
            let s = hf.powers.len();
            if s % r != 0 {
                return None;
            }
            let k = (s / r) as i64;
            [k, -k].into_iter().find(|&e| p.elem().pow(e) == *h)
        }
        _ => None,
    }
}

/// Right coset representative: `h = rep · p^k` with `rep` minimal in
/// `h⟨p⟩` (length, then structure).
pub fn coset_min(h: &Elem, p: &Pivot) -> (Elem, i64) {
    if let Some(k) = is_in_cyclic(h, p) {
        return (Elem::one(), k);
    }
    let w = p.rate();
    let j_max = ((3 * h.len() + 2 * p.elem().len()) / w + 2) as i64;
    let step = p.elem().inv();
    let mut cand = h.mul(&p.elem().pow(j_max));
    let mut best = (h.clone(), 0i64);
    // cand = h · p^{-j} for j = -j_max..=j_max
    for j in -j_max..=j_max {
        if j != 0 && cand < best.0 {
            best = (cand.clone(), j);
        }
        cand = cand.mul(&step);
    }
    best
}
