use super::arith::{coset_min, is_in_cyclic};
use super::{Elem, ExtForm, Pivot};
use crate::word::Word;
use crate::Rational;

/// `e = conj · pivot^exp · conj⁻¹`. The pair `(pivot, exp)` is a
/// complete conjugacy invariant of a nontrivial element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub conj: Elem,
    pub pivot: Pivot,
    pub exp: Rational,
}

fn decompose_free(w: &Word) -> Decomposition {
    let cw = w.cyclic_reduce();
    let (root, n) = cw.core.extract_root().expect("nonempty");
    let inv = root.inverse();
    let mut best: Option<(Word, Word, i64)> = None;
    for (o, sign) in [(&root, 1i64), (&inv, -1)] {
        for i in 0..o.len() {
            let rot = o.rotate(i);
            if best.as_ref().is_none_or(|b| rot < b.0) {
                best = Some((rot, o.prefix(i), sign));
            }
        }
    }
    let (rep, t, sign) = best.expect("nonempty root");
    Decomposition {
        conj: Elem::Free(cw.conjugator.mul(&t)),
        pivot: Pivot::new(Elem::Free(rep)),
        exp: Rational::from_integer(sign * n as i64),
    }
}

fn ext(e: &Elem) -> &ExtForm {
    e.as_ext().expect("form of positive layer")
}

/// Product `p₁^{s₁} h₁ ⋯ p_m^{s_m} h_m` of the first `m` syllables of
/// a form whose first head is trivial.
fn prefix(f: &ExtForm, m: usize) -> Elem {
    let mut acc = Elem::one();
    for i in 0..m {
        acc = acc
            .mul(&f.powers[i].pivot.pow(f.powers[i].exp))
            .mul(&f.heads[i + 1]);
    }
    acc
}

/// Cyclic root of a cyclically reduced form with trivial first head:
/// `f = u^n` with `u` primitive in its layer.
fn hyperbolic_root(f: &Elem) -> (Elem, i64) {
    let fx = ext(f);
    let r = fx.powers.len();
    let mut divisors: Vec<usize> = (2..=r).filter(|n| r.is_multiple_of(*n)).collect();
    divisors.reverse();
    for n in divisors {
        let m = r / n;
        if (m..r).any(|i| fx.powers[i] != fx.powers[i - m]) {
            continue;
        }
        let s = prefix(fx, m);
        let p1 = &fx.powers[0].pivot;
        let bound = f.len() as i64 + 1;
        for a in 0..=bound {
            for j in if a == 0 { vec![0] } else { vec![a, -a] } {
                let u = s.mul(&p1.elem().pow(j));
                if u.pow(n as i64) == *f {
                    return (u, n as i64);
                }
            }
        }
    }
    (f.clone(), 1)
}

/// Conjugates a cyclically reduced form so its first head is trivial:
/// `x = c · f · c⁻¹`.
fn normalize_start(x: &Elem) -> (Elem, Elem) {
    let h0 = ext(x).heads[0].clone();
    (h0.clone(), x.conj(&h0))
}

/// Canonical pivot for the cyclic subgroup of a primitive cyclically
/// reduced form `u` with trivial first head: `u = z · P^{sign} · z⁻¹`.
fn canonical_hyperbolic(u: &Elem) -> (Elem, Pivot, i64) {
    let mut best: Option<(Elem, Elem, i64)> = None;
    let (ci, ui) = normalize_start(&u.inv());
    for (c_o, f, sign) in [(Elem::one(), u.clone(), 1i64), (ci, ui, -1)] {
        let fx = ext(&f).clone();
        let r = fx.powers.len();
        let mut t = Elem::one();
        for i in 0..r {
            if i > 0 {
                t = t
                    .mul(&fx.powers[i - 1].pivot.pow(fx.powers[i - 1].exp))
                    .mul(&fx.heads[i]);
            }
            let rho = f.conj(&t);
            let (a, rho2) = edge_adjust(&rho);
            let z = c_o.mul(&t).mul(&a);
            if best.as_ref().is_none_or(|b| rho2 < b.0) {
                best = Some((rho2, z, sign));
            }
        }
    }
    let (rep, z, sign) = best.expect("at least one syllable");
    (z, Pivot::new(rep), sign)
}

/// Among `p^{-a} ρ p^{a}` for the first pivot `p` of `ρ`, picks the one
/// whose first interior head is least. Returns `(p^a, p^{-a} ρ p^a)`.
fn edge_adjust(rho: &Elem) -> (Elem, Elem) {
    let fx = ext(rho);
    let r = fx.powers.len();
    let p = &fx.powers[0].pivot;
    let g = &fx.heads[1];
    let pe = p.elem();
    let mut best: Option<(Elem, i64)> = None;
    if r >= 2 {
        let q = &fx.powers[1].pivot;
        let bound = ((3 * g.len() + 2 * (pe.len() + q.elem().len())) / p.rate() + 2) as i64;
        for a in -bound..=bound {
            let (rep, _) = coset_min(&pe.pow(-a).mul(g), q);
            if best.as_ref().is_none_or(|b| rep < b.0) {
                best = Some((rep, a));
            }
        }
    } else {
        let bound = ((2 * g.len() + 2 * pe.len()) / p.rate() + 2) as i64;
        for a in -bound..=bound {
            let k = g.conj(&pe.pow(a));
            if best.as_ref().is_none_or(|b| k < b.0) {
                best = Some((k, a));
            }
        }
    }
    let a = best.expect("nonempty window").1;
    let pa = pe.pow(a);
    (pa.clone(), rho.conj(&pa))
}

/// Writes a nontrivial element as `conj · P^exp · conj⁻¹` with `P` a
/// canonical pivot. Returns `None` for the identity.
pub fn decompose(e: &Elem) -> Option<Decomposition> {
    if e.is_one() {
        return None;
    }
    let mut conj = Elem::one();
    let mut cur = e.clone();
    loop {
        let f = match &cur {
            Elem::Free(w) => {
                let d = decompose_free(w);
                return Some(Decomposition {
                    conj: conj.mul(&d.conj),
                    ..d
                });
            }
            Elem::Ext(form) => {
                let h0 = form.heads[0].clone();
                conj = conj.mul(&h0);
                cur.conj(&h0)
            }
        };
        let fx = match &f {
            Elem::Ext(fx) => fx.clone(),
            _ => {
                cur = f;
                continue;
            }
        };
        let r = fx.powers.len();
        let p1 = fx.powers[0].pivot.clone();
        let g = &fx.heads[r];
        if r == 1 {
            if let Some(k) = is_in_cyclic(g, &p1) {
                return Some(Decomposition {
                    conj,
                    pivot: p1,
                    exp: fx.powers[0].exp + Rational::from_integer(k),
                });
            }
        } else if fx.powers[r - 1].pivot == p1 && is_in_cyclic(g, &p1).is_some() {
            let last = &fx.powers[r - 1];
            let b = last.pivot.pow(last.exp).mul(g);
            cur = b.mul(&f).mul(&b.inv());
            conj = conj.mul(&b.inv());
            continue;
        }
        let (u, n) = hyperbolic_root(&f);
        let (z, pivot, sign) = canonical_hyperbolic(&u);
        return Some(Decomposition {
            conj: conj.mul(&z),
            pivot,
            exp: Rational::from_integer(sign * n),
        });
    }
}

pub fn is_conjugate(a: &Elem, b: &Elem) -> bool {
    conjugator(a, b).is_some()
}

/// `c` with `c⁻¹ · a · c = b`, if `a` and `b` are conjugate.
pub fn conjugator(a: &Elem, b: &Elem) -> Option<Elem> {
    match (decompose(a), decompose(b)) {
        (None, None) => Some(Elem::one()),
        (Some(da), Some(db)) if da.pivot == db.pivot && da.exp == db.exp => {
            Some(da.conj.mul(&db.conj.inv()))
        }
        _ => None,
    }
}
