//! Hyperbolicity verdicts for HNN-extensions and amalgamated products
//! of free groups.
//!
//! Sufficient conditions: an HNN-extension is hyperbolic when it is
//! separated (one associated subgroup malnormal, every conjugate
//! intersection `U ∩ gVg⁻¹` trivial); an amalgam is hyperbolic when
//! one amalgamated subgroup is malnormal in its factor; trivial
//! associated subgroups always give hyperbolic groups. For cyclic
//! associated subgroups these conditions are also necessary, and a
//! failure produces a machine-checked witness subgroup that is free
//! abelian of rank two (or a Baumslag–Solitar relation).

pub mod reduce;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{conjugate_intersections_finite, is_conjugate_separated, CoreGraph};
use crate::presentation::{alphabet_from_names, PresentationFile};
use crate::word::{Alphabet, Word};
use reduce::{power_of, AmSyl, CyclicAmalgam, CyclicHnn, HnnSyl};

/// `⟨F, t | t⁻¹ u t = ψ(u)⟩` with `F` free on `alphabet`.
#[derive(Clone, Debug)]
pub struct HnnData {
    pub alphabet: Alphabet,
    pub u: Vec<Word>,
    pub v: Vec<Word>,
    /// Basis of `U` paired with its images in `V`.
    pub iso: Vec<(Word, Word)>,
}

/// `F₁ ∗_{U = V} F₂` with both factors free.
#[derive(Clone, Debug)]
pub struct AmalgamData {
    pub left: Alphabet,
    pub right: Alphabet,
    pub u: Vec<Word>,
    pub v: Vec<Word>,
    pub iso: Vec<(Word, Word)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "hyperbolic")]
    Hyperbolic,
    #[serde(rename = "not-hyperbolic")]
    NotHyperbolic,
    #[serde(rename = "hypotheses-fail-inconclusive")]
    Inconclusive,
}

/// The result a verdict rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Citation {
    /// Separated HNN-extension with quasiconvex associated subgroups.
    #[serde(rename = "Theorem 1")]
    Theorem1,
    /// Amalgam with one side conjugate separated.
    #[serde(rename = "Theorem 2")]
    Theorem2,
    /// Cyclic associated subgroups: hyperbolic iff separated.
    #[serde(rename = "Corollary 1")]
    Corollary1,
    /// Cyclic amalgamated subgroups: hyperbolic iff one side is conjugate separated.
    #[serde(rename = "Corollary 2")]
    Corollary2,
    /// Finite associated subgroups.
    #[serde(rename = "Corollary 3")]
    Corollary3,
    /// Separated HNN-extensions of a free group.
    #[serde(rename = "Corollary 5")]
    Corollary5,
}

/// Evidence attached to a verdict. Group elements are rendered as text;
/// in HNN witnesses the stable letter uses `stable_letter`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `x ∉ U` and `u, x⁻¹ux ∈ U`.
    NotMalnormal { side: String, x: String, u: String },
    /// `u ∈ U` and `g⁻¹ug ∈ V`.
    InfiniteIntersection { g: String, u: String },
    /// `x` and `c` commute, `x` is hyperbolic and `c ≠ 1` is elliptic,
    /// so they generate a free abelian subgroup of rank two.
    CommutingPair {
        x: String,
        c: String,
        verified: bool,
    },
    /// `y⁻¹ c^p y = c^q` with `|p| ≠ |q|`.
    BaumslagSolitar {
        y: String,
        c: String,
        p: i64,
        q: i64,
        verified: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub citation: Option<Citation>,
    pub u_conjugate_separated: bool,
    pub v_conjugate_separated: bool,
    /// HNN only: every `U ∩ gVg⁻¹` is finite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersections_finite: Option<bool>,
    /// HNN only: the separated condition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separated: Option<bool>,
    pub witnesses: Vec<Witness>,
    pub note: String,
}

/// Checks that `sources ↦ images` extends to an isomorphism `⟨u⟩ → ⟨v⟩`:
/// each side generates the given subgroup and is a free basis of it.
pub fn verify_iso_parts(gens: usize, u: &[Word], v: &[Word], iso: &[(Word, Word)]) -> bool {
    let src: Vec<Word> = iso.iter().map(|p| p.0.clone()).collect();
    let img: Vec<Word> = iso.iter().map(|p| p.1.clone()).collect();
    let gu = CoreGraph::build_with_size(gens, u);
    let gv = CoreGraph::build_with_size(gens, v);
    let gs = CoreGraph::build_with_size(gens, &src);
    let gi = CoreGraph::build_with_size(gens, &img);
    gs == gu && gi == gv && gs.rank() == src.len() && gi.rank() == img.len()
}

impl HnnData {
    pub fn verify_iso(&self) -> bool {
        verify_iso_parts(self.alphabet.size(), &self.u, &self.v, &self.iso)
    }

    /// A letter not used by the base alphabet, preferring `t`.
    pub fn stable_letter(&self) -> char {
        "tsrqpzyxwvu"
            .chars()
            .chain('a'..='z')
            .find(|c| self.alphabet.index_of(*c).is_none())
            .unwrap_or('t')
    }

    fn render(&self, syls: &[HnnSyl]) -> String {
        let t = self.stable_letter();
        let mut s = String::new();
        for x in syls {
            match x {
                HnnSyl::Base(w) if !w.is_empty() => s.push_str(&self.alphabet.format(w)),
                HnnSyl::Base(_) => {}
                HnnSyl::T(e) => {
                    let c = if *e > 0 { t } else { t.to_ascii_uppercase() };
                    for _ in 0..e.unsigned_abs() {
                        s.push(c);
                    }
                }
            }
        }
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }
}

impl AmalgamData {
    pub fn verify_iso(&self) -> bool {
        let src: Vec<Word> = self.iso.iter().map(|p| p.0.clone()).collect();
        let img: Vec<Word> = self.iso.iter().map(|p| p.1.clone()).collect();
        let gu = CoreGraph::build(&self.left, &self.u);
        let gv = CoreGraph::build(&self.right, &self.v);
        let gs = CoreGraph::build(&self.left, &src);
        let gi = CoreGraph::build(&self.right, &img);
        gs == gu && gi == gv && gs.rank() == src.len() && gi.rank() == img.len()
    }

    /// Exchanges the two factors.
    pub fn swapped(&self) -> AmalgamData {
        AmalgamData {
            left: self.right.clone(),
            right: self.left.clone(),
            u: self.v.clone(),
            v: self.u.clone(),
            iso: self
                .iso
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    fn render(&self, syls: &[AmSyl]) -> String {
        let disjoint = self
            .left
            .names()
            .iter()
            .all(|c| self.right.index_of(*c).is_none());
        let parts: Vec<String> = syls
            .iter()
            .map(|(side, w)| {
                let a = if *side == 0 { &self.left } else { &self.right };
                a.format(w)
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else if disjoint {
            parts.concat()
        } else {
            parts.join(".")
        }
    }
}

/// `g₁` with `g₁ ∉ ⟨u⟩` commuting with `u`, when `u` is a proper power:
/// the conjugated primitive root.
fn proper_root(u: &Word) -> Option<Word> {
    let cw = u.cyclic_reduce();
    let (root, n) = cw.core.extract_root().ok()?;
    (n >= 2).then(|| cw.conjugator.mul(&root).mul(&cw.conjugator.inverse()))
}

/// Checks an HNN-extension of a free group.
pub fn check_separated_hnn(d: &HnnData) -> Result<Verdict> {
    if !d.verify_iso() {
        return Err(Error::NotIsomorphism(
            "associated subgroup bases do not match".into(),
        ));
    }
    let gu = CoreGraph::build(&d.alphabet, &d.u);
    let gv = CoreGraph::build(&d.alphabet, &d.v);
    let (mal_u, wu) = is_conjugate_separated(&gu);
    let (mal_v, wv) = is_conjugate_separated(&gv);
    let (fin, wi) = conjugate_intersections_finite(&gu, &gv);
    let separated = (mal_u || mal_v) && fin;
    let mut witnesses = Vec::new();
    let fmt = |w: &Word| d.alphabet.format(w);
    if let Some(w) = &wu {
        witnesses.push(Witness::NotMalnormal {
            side: "u".into(),
            x: fmt(&w.x),
            u: fmt(&w.u),
        });
    }
    if let Some(w) = &wv {
        witnesses.push(Witness::NotMalnormal {
            side: "v".into(),
            x: fmt(&w.x),
            u: fmt(&w.u),
        });
    }
    if let Some(w) = &wi {
        witnesses.push(Witness::InfiniteIntersection {
            g: fmt(&w.g),
            u: fmt(&w.u),
        });
    }
    let mut v = Verdict {
        outcome: Outcome::Inconclusive,
        citation: None,
        u_conjugate_separated: mal_u,
        v_conjugate_separated: mal_v,
        intersections_finite: Some(fin),
        separated: Some(separated),
        witnesses,
        note: String::new(),
    };
    if gu.rank() == 0 {
        v.outcome = Outcome::Hyperbolic;
        v.citation = Some(Citation::Corollary3);
        v.note = "trivial associated subgroups".into();
    } else if separated {
        v.outcome = Outcome::Hyperbolic;
        v.citation = Some(Citation::Corollary5);
        v.note =
            "separated; finitely generated subgroups of free groups are quasiconvex (Theorem 1)"
                .into();
    } else if gu.rank() == 1 {
        let (src, img) = d.iso[0].clone();
        let hnn = CyclicHnn {
            u: src.clone(),
            v: img.clone(),
        };
        v.outcome = Outcome::NotHyperbolic;
        v.citation = Some(Citation::Corollary1);
        v.note = "cyclic associated subgroups, not separated".into();
        let w = if let (Some(g1), Some(g2)) = (proper_root(&src), proper_root(&img)) {
            // t g₂ t⁻¹ commutes with t ψ(u) t⁻¹ = u, and g₁ commutes with u
            let x = vec![
                HnnSyl::T(1),
                HnnSyl::Base(g2),
                HnnSyl::T(-1),
                HnnSyl::Base(g1),
            ];
            let c = vec![HnnSyl::Base(src.clone())];
            let ok = hnn.commute(&x, &c) && hnn.is_hyperbolic(&x);
            Witness::CommutingPair {
                x: d.render(&x),
                c: d.render(&c),
                verified: ok,
            }
        } else {
            intersection_relation(d, &hnn, wi.as_ref().map(|w| (&w.g, &w.u)))
        };
        v.witnesses.push(w);
    } else {
        v.note = "hypotheses fail for non-cyclic associated subgroups".into();
    }
    Ok(v)
}

/// From `g⁻¹ u^p g = v^q` and `t⁻¹ u t = v`, the element `y = g t⁻¹`
/// satisfies `y⁻¹ u^p y = u^q`.
fn intersection_relation(d: &HnnData, hnn: &CyclicHnn, w: Option<(&Word, &Word)>) -> Witness {
    let (g, common) = match w {
        Some(x) => x,
        None => {
            return Witness::CommutingPair {
                x: "1".into(),
                c: "1".into(),
                verified: false,
            };
        }
    };
    let p = power_of(common, &hnn.u).unwrap_or(0);
    let q = power_of(&common.conjugate_by(g), &hnn.v).unwrap_or(0);
    let y = vec![HnnSyl::Base(g.clone()), HnnSyl::T(-1)];
    let up = vec![HnnSyl::Base(hnn.u.pow(p))];
    if p == q || p == -q {
        let x = if p == q {
            y.clone()
        } else {
            [y.clone(), y.clone()].concat()
        };
        let ok = p != 0 && hnn.commute(&x, &up) && hnn.is_hyperbolic(&x);
        Witness::CommutingPair {
            x: d.render(&x),
            c: d.render(&up),
            verified: ok,
        }
    } else {
        let mut rel = reduce::inverse_hnn(&y);
        rel.extend(up.clone());
        rel.extend(y.clone());
        rel.push(HnnSyl::Base(hnn.u.pow(-q)));
        let ok = hnn.is_identity(&rel) && hnn.is_hyperbolic(&y);
        Witness::BaumslagSolitar {
            y: d.render(&y),
            c: d.alphabet.format(&hnn.u),
            p,
            q,
            verified: ok,
        }
    }
}

/// Checks an amalgamated product of two free groups.
pub fn check_amalgam(d: &AmalgamData) -> Result<Verdict> {
    if !d.verify_iso() {
        return Err(Error::NotIsomorphism(
            "amalgamated subgroup bases do not match".into(),
        ));
    }
    let gu = CoreGraph::build(&d.left, &d.u);
    let gv = CoreGraph::build(&d.right, &d.v);
    let (mal_u, wu) = is_conjugate_separated(&gu);
    let (mal_v, wv) = is_conjugate_separated(&gv);
    let mut witnesses = Vec::new();
    if let Some(w) = &wu {
        witnesses.push(Witness::NotMalnormal {
            side: "left".into(),
            x: d.left.format(&w.x),
            u: d.left.format(&w.u),
        });
    }
    if let Some(w) = &wv {
        witnesses.push(Witness::NotMalnormal {
            side: "right".into(),
            x: d.right.format(&w.x),
            u: d.right.format(&w.u),
        });
    }
    let mut v = Verdict {
        outcome: Outcome::Inconclusive,
        citation: None,
        u_conjugate_separated: mal_u,
        v_conjugate_separated: mal_v,
        intersections_finite: None,
        separated: None,
        witnesses,
        note: String::new(),
    };
    if gu.rank() == 0 {
        v.outcome = Outcome::Hyperbolic;
        v.citation = Some(Citation::Corollary3);
        v.note = "trivial amalgamated subgroup".into();
    } else if mal_u || mal_v {
        v.outcome = Outcome::Hyperbolic;
        v.citation = Some(Citation::Theorem2);
        v.note = if mal_u {
            "left subgroup conjugate separated".into()
        } else {
            "right subgroup conjugate separated".into()
        };
    } else if gu.rank() == 1 {
        let (src, img) = d.iso[0].clone();
        let am = CyclicAmalgam {
            u: src.clone(),
            v: img.clone(),
        };
        v.outcome = Outcome::NotHyperbolic;
        v.citation = Some(Citation::Corollary2);
        v.note = "cyclic amalgamated subgroups, neither side conjugate separated".into();
        if let (Some(g1), Some(g2)) = (proper_root(&src), proper_root(&img)) {
            let x: Vec<AmSyl> = vec![(0, g1.clone()), (1, g2.clone()), (0, g1), (1, g2)];
            let z: Vec<AmSyl> = vec![(0, src)];
            let ok = am.commute(&x, &z) && am.is_hyperbolic(&x);
            v.witnesses.push(Witness::CommutingPair {
                x: d.render(&x),
                c: d.render(&z),
                verified: ok,
            });
        }
    } else {
        v.note = "hypotheses fail for non-cyclic amalgamated subgroups".into();
    }
    Ok(v)
}

/// JSON construction files, tagged by `kind`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ConstructionFile {
    Hnn {
        generators: Vec<String>,
        #[serde(default)]
        relators: Vec<String>,
        u: Vec<String>,
        v: Vec<String>,
        #[serde(default)]
        iso: Option<Vec<(String, String)>>,
    },
    Amalgam {
        left: PresentationFile,
        right: PresentationFile,
        u: Vec<String>,
        v: Vec<String>,
        #[serde(default)]
        iso: Option<Vec<(String, String)>>,
    },
    Tower {
        generators: Vec<String>,
        #[serde(default)]
        steps: Vec<TowerStepFile>,
    },
}

/// One tower step: `v` in tower-word syntax, its root order `m`, and
/// the name of the new root symbol.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerStepFile {
    pub v: String,
    pub m: u32,
    pub root: String,
}

fn parse_all(a: &Alphabet, ws: &[String]) -> Result<Vec<Word>> {
    ws.iter().map(|w| a.parse(w)).collect()
}

fn parse_iso(
    a: &Alphabet,
    b: &Alphabet,
    u: &[Word],
    v: &[Word],
    iso: &Option<Vec<(String, String)>>,
) -> Result<Vec<(Word, Word)>> {
    match iso {
        Some(pairs) => pairs
            .iter()
            .map(|(x, y)| Ok((a.parse(x)?, b.parse(y)?)))
            .collect(),
        None => {
            if u.len() != v.len() {
                return Err(Error::Schema(
                    "without \"iso\", u and v must have equal length".into(),
                ));
            }
            Ok(u.iter().cloned().zip(v.iter().cloned()).collect())
        }
    }
}

impl ConstructionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_hnn(&self) -> Result<HnnData> {
        match self {
            ConstructionFile::Hnn {
                generators,
                relators,
                u,
                v,
                iso,
            } => {
                if !relators.is_empty() {
                    return Err(Error::Schema("base group must be free".into()));
                }
                let alphabet = alphabet_from_names(generators)?;
                let u = parse_all(&alphabet, u)?;
                let v = parse_all(&alphabet, v)?;
                let iso = parse_iso(&alphabet, &alphabet, &u, &v, iso)?;
                Ok(HnnData {
                    alphabet,
                    u,
                    v,
                    iso,
                })
            }
            _ => Err(Error::Schema("expected kind \"hnn\"".into())),
        }
    }

    pub fn to_amalgam(&self) -> Result<AmalgamData> {
        match self {
            ConstructionFile::Amalgam {
                left,
                right,
                u,
                v,
                iso,
            } => {
                if !left.relators.is_empty() || !right.relators.is_empty() {
                    return Err(Error::Schema("factors must be free".into()));
                }
                let l = alphabet_from_names(&left.generators)?;
                let r = alphabet_from_names(&right.generators)?;
                let u = parse_all(&l, u)?;
                let v = parse_all(&r, v)?;
                let iso = parse_iso(&l, &r, &u, &v, iso)?;
                Ok(AmalgamData {
                    left: l,
                    right: r,
                    u,
                    v,
                    iso,
                })
            }
            _ => Err(Error::Schema("expected kind \"amalgam\"".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hnn(json: &str) -> Verdict {
        check_separated_hnn(&ConstructionFile::from_json(json).unwrap().to_hnn().unwrap()).unwrap()
    }

    fn amalgam(json: &str) -> Verdict {
        check_amalgam(
            &ConstructionFile::from_json(json)
                .unwrap()
                .to_amalgam()
                .unwrap(),
        )
        .unwrap()
    }

    fn verified(v: &Verdict) -> bool {
        v.witnesses.iter().any(|w| {
            matches!(
                w,
                Witness::CommutingPair { verified: true, .. }
                    | Witness::BaumslagSolitar { verified: true, .. }
            )
        })
    }

    #[test]
    fn counterexample_k() {
        let v = hnn(r#"{"kind":"hnn","generators":["a","b"],"u":["aa"],"v":["bb"]}"#);
        assert_eq!(v.outcome, Outcome::NotHyperbolic);
        assert_eq!(v.citation, Some(Citation::Corollary1));
        assert!(verified(&v));
    }

    #[test]
    fn baumslag_solitar() {
        let v = hnn(r#"{"kind":"hnn","generators":["x"],"u":["xx"],"v":["xxx"]}"#);
        assert_eq!(v.outcome, Outcome::NotHyperbolic);
        assert!(verified(&v));
        let v = hnn(r#"{"kind":"hnn","generators":["x"],"u":["x"],"v":["xx"]}"#);
        assert_eq!(v.outcome, Outcome::NotHyperbolic);
        assert!(verified(&v));
        let v = hnn(r#"{"kind":"hnn","generators":["a","b"],"u":["a"],"v":["a"]}"#);
        assert_eq!(v.outcome, Outcome::NotHyperbolic);
        assert!(verified(&v));
    }

    #[test]
    fn separated_free() {
        let v = hnn(r#"{"kind":"hnn","generators":["a","b"],"u":["a"],"v":["b"]}"#);
        assert_eq!(v.outcome, Outcome::Hyperbolic);
        assert_eq!(v.separated, Some(true));
    }

    #[test]
    fn amalgam_examples() {
        let v = amalgam(
            r#"{"kind":"amalgam","left":{"generators":["x"]},"right":{"generators":["y"]},"u":["xx"],"v":["yyy"]}"#,
        );
        assert_eq!(v.outcome, Outcome::NotHyperbolic);
        assert_eq!(v.citation, Some(Citation::Corollary2));
        assert!(verified(&v));
        let v = amalgam(
            r#"{"kind":"amalgam","left":{"generators":["a","b"]},"right":{"generators":["w"]},"u":["ab"],"v":["www"]}"#,
        );
        assert_eq!(v.outcome, Outcome::Hyperbolic);
        assert_eq!(v.citation, Some(Citation::Theorem2));
        let v = amalgam(
            r#"{"kind":"amalgam","left":{"generators":["a"]},"right":{"generators":["b"]},"u":[],"v":[]}"#,
        );
        assert_eq!(v.citation, Some(Citation::Corollary3));
    }

    #[test]
    fn iso_checks() {
        let a = Alphabet::new("abx").unwrap();
        let p = |s| a.parse(s).unwrap();
        assert!(verify_iso_parts(
            3,
            &[p("aa")],
            &[p("bb")],
            &[(p("aa"), p("bb"))]
        ));
        assert!(verify_iso_parts(
            3,
            &[p("a")],
            &[p("bb")],
            &[(p("a"), p("bb"))]
        ));
        assert!(!verify_iso_parts(
            3,
            &[p("a"), p("b")],
            &[p("x")],
            &[(p("a"), p("x")), (p("b"), p("x"))]
        ));
    }
}
