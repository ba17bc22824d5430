//! Effective sets `V_n` and the towers `T_n`.
//!
//! `V_n` lists, in shortlex order over the generators of `T_{n-1}`
//! (base letters, then roots in the order they were adjoined), every
//! word of length at most `n` that is primitive in `T_{n-1}` and whose
//! conjugacy class of centralizers has not been seen earlier in the
//! list. `T_n` adjoins an `n`-th root of each entry; for `n = 1` the
//! roots are renamings.
//!
//! Tables may be cached as JSON in the directory named by
//! [`CACHE_ENV`].

use std::collections::{HashMap, HashSet};
use std::path::PathBuf;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qgroup::{decompose, Elem, Pivot};
use crate::tower::Tower;
use crate::word::Alphabet;
use crate::Rational;

/// Environment variable naming the table cache directory.
pub const CACHE_ENV: &str = "QHYP_CACHE_DIR";

/// Default highest tower level.
pub const DEFAULT_MAX_LEVEL: usize = 3;

#[derive(Clone, Debug)]
pub struct VEntry {
    /// Tower-word text over the generators of `T_{n-1}`.
    pub text: String,
    pub elem: Elem,
    pub pivot: Pivot,
}

/// Name of the `k`-th root adjoined at level `n` (both 1-based).
pub fn root_name(n: usize, k: usize) -> String {
    format!("w{n}_{k}")
}

/// Generators of a tower: text and value.
fn generators(t: &Tower) -> Vec<(String, Elem)> {
    let mut gens: Vec<(String, Elem)> = t
        .base()
        .names()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let w = crate::word::Word::generator(i as u32);
            (c.to_string(), Elem::Free(w))
        })
        .collect();
    for s in t.steps().iter().filter(|s| s.m >= 2) {
        gens.push((format!("[{}]", s.root), s.root_elem.clone()));
    }
    gens
}

fn render(gens: &[(String, Elem)], word: &[(usize, bool)]) -> String {
    let mut s = String::new();
    for &(g, inv) in word {
        let name = &gens[g].0;
        match (inv, name.len()) {
            (false, _) => s.push_str(name),
            (true, 1) => s.push_str(&name.to_ascii_uppercase()),
            (true, _) => {
                s.push_str(name);
                s.push_str("^-1");
            }
        }
    }
    s
}

/// `V_n` computed over `prev = T_{n-1}`.
pub fn enumerate_vn(prev: &Tower, n: usize) -> Vec<VEntry> {
    let gens = generators(prev);
    let letters: Vec<(usize, bool)> = (0..gens.len())
        .flat_map(|g| [(g, false), (g, true)])
        .collect();
    let values: Vec<Elem> = letters
        .iter()
        .map(|&(g, inv)| {
            if inv {
                gens[g].1.inv()
            } else {
                gens[g].1.clone()
            }
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for len in 1..=n {
        let mut word: Vec<usize> = Vec::with_capacity(len);
        walk(
            &letters,
            &values,
            len,
            &mut word,
            &Elem::one(),
            &mut |w, e| {
                let Some(d) = decompose(e) else { return };
                let den = prev.denom(&d.pivot);
                if (d.exp * Rational::from_integer(den)).abs() != Rational::from_integer(1) {
                    return;
                }
                if seen.insert(d.pivot.clone()) {
                    let ls: Vec<(usize, bool)> = w.iter().map(|&i| letters[i]).collect();
                    out.push(VEntry {
                        text: render(&gens, &ls),
                        elem: e.clone(),
                        pivot: d.pivot,
                    });
                }
            },
        );
    }
    out
}

/// Depth-first walk over freely reduced words of length `len` in
/// lexicographic order.
fn walk(
    letters: &[(usize, bool)],
    values: &[Elem],
    len: usize,
    word: &mut Vec<usize>,
    acc: &Elem,
    visit: &mut dyn FnMut(&[usize], &Elem),
) {
    if word.len() == len {
        visit(word, acc);
        return;
    }
    for i in 0..letters.len() {
        if let Some(&last) = word.last() {
            if letters[last].0 == letters[i].0 && letters[last].1 != letters[i].1 {
                continue;
            }
        }
        word.push(i);
        walk(letters, values, len, word, &acc.mul(&values[i]), visit);
        word.pop();
    }
}

/// `T_n` from `T_{n-1}` and `V_n`.
pub fn extend_tower(prev: &Tower, n: usize, entries: &[VEntry]) -> Result<Tower> {
    let m = u32::try_from(n).map_err(|_| Error::Overflow)?;
    let mut t = prev.clone();
    for (k, e) in entries.iter().enumerate() {
        t = t.extend_centralizer(&e.elem, m, &root_name(n, k + 1), &e.text)?;
    }
    Ok(t)
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    base: String,
    levels: Vec<Vec<String>>,
}

/// Lazily computed `V_1, V_2, …` and `T_0, T_1, …` over one base
/// alphabet, bounded by a level cap.
pub struct VTables {
    base: Alphabet,
    max_level: usize,
    levels: Vec<Vec<VEntry>>,
    towers: Vec<Tower>,
    first_level: HashMap<Pivot, usize>,
    cache: Option<PathBuf>,
}

impl VTables {
    pub fn new(base: Alphabet, max_level: usize) -> VTables {
        VTables {
            towers: vec![Tower::new(base.clone())],
            base,
            max_level,
            levels: vec![Vec::new()],
            first_level: HashMap::new(),
            cache: None,
        }
    }

    /// Like [`VTables::new`], reading and extending the cache named by
    /// [`CACHE_ENV`] if set. An unreadable or inconsistent cache is
    /// ignored.
    pub fn with_env_cache(base: Alphabet, max_level: usize) -> VTables {
        let mut t = VTables::new(base, max_level);
        if let Some(dir) = std::env::var_os(CACHE_ENV) {
            let names: String = t.base.names().iter().collect();
            t.cache = Some(PathBuf::from(dir).join(format!("vtables-{names}.json")));
            let _ = t.load();
        }
        t
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    fn load(&mut self) -> Result<()> {
        let path = self.cache.clone().expect("cache path");
        let text = std::fs::read_to_string(path).map_err(|e| Error::Schema(e.to_string()))?;
        let file: CacheFile =
            serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
        let names: String = self.base.names().iter().collect();
        if file.base != names {
            return Err(Error::Schema("cache base mismatch".into()));
        }
        let mut fresh = VTables::new(self.base.clone(), self.max_level);
        for (i, texts) in file.levels.iter().enumerate().take(self.max_level) {
            let n = i + 1;
            let prev = &fresh.towers[n - 1];
            let mut entries = Vec::new();
            for s in texts {
                let elem = prev.reduce_to_semicanonical(s)?;
                let pivot = decompose(&elem).ok_or(Error::EmptyWord)?.pivot;
                entries.push(VEntry {
                    text: s.clone(),
                    elem,
                    pivot,
                });
            }
            let t = extend_tower(prev, n, &entries)?;
            fresh.push_level(entries, t);
        }
        self.levels = fresh.levels;
        self.towers = fresh.towers;
        self.first_level = fresh.first_level;
        Ok(())
    }

    fn save(&self) {
        let Some(path) = &self.cache else { return };
        let file = CacheFile {
            base: self.base.names().iter().collect(),
            levels: self.levels[1..]
                .iter()
                .map(|l| l.iter().map(|e| e.text.clone()).collect())
                .collect(),
        };
        let Ok(text) = serde_json::to_string_pretty(&file) else {
            return;
        };
        if let Some(dir) = path.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(&tmp, path);
        }
    }

    fn push_level(&mut self, entries: Vec<VEntry>, tower: Tower) {
        let n = self.levels.len();
        for e in &entries {
            self.first_level.entry(e.pivot.clone()).or_insert(n);
        }
        self.levels.push(entries);
        self.towers.push(tower);
    }

    fn ensure(&mut self, n: usize) -> Result<()> {
        if n > self.max_level {
            return Err(Error::ResourceCap(format!(
                "tower level {n} exceeds the cap {}",
                self.max_level
            )));
        }
        let mut grew = false;
        while self.levels.len() <= n {
            let k = self.levels.len();
            let entries = enumerate_vn(&self.towers[k - 1], k);
            let t = extend_tower(&self.towers[k - 1], k, &entries)?;
            self.push_level(entries, t);
            grew = true;
        }
        if grew {
            self.save();
        }
        Ok(())
    }

    /// `V_n`, `n ≥ 1`.
    pub fn level(&mut self, n: usize) -> Result<&[VEntry]> {
        if n == 0 {
            return Err(Error::Schema("V_n is defined for n >= 1".into()));
        }
        self.ensure(n)?;
        Ok(&self.levels[n])
    }

    /// `T_n`.
    pub fn tower(&mut self, n: usize) -> Result<&Tower> {
        self.ensure(n)?;
        Ok(&self.towers[n])
    }

    /// First level whose table contains the class of `p`. Base pivots
    /// outside the computed tables first appear at level `|p|`.
    fn first_level_of(&mut self, p: &Pivot) -> Result<usize> {
        if let Some(&n) = self.first_level.get(p) {
            return Ok(n);
        }
        let computed = self.levels.len() - 1;
        if let Elem::Free(w) = p.elem() {
            if w.len() > computed {
                if w.len() <= self.max_level {
                    self.ensure(w.len())?;
                    return self.first_level_of(p);
                }
                return Ok(w.len());
            }
        }
        if computed < self.max_level {
            self.ensure(computed + 1)?;
            return self.first_level_of(p);
        }
        Err(Error::ResourceCap(format!(
            "the class of {} is not in V_1..V_{}",
            p.elem().display(&self.base),
            self.max_level
        )))
    }

    /// Least `n` with `e` in `T_n`. A pivot first listed in `V_{n₀}`
    /// has roots of order `∏_{k=max(n₀,2)}^{n} k` in `T_n`.
    pub fn locate(&mut self, e: &Elem) -> Result<usize> {
        let mut n = 0;
        for p in e.all_powers() {
            let n0 = self.first_level_of(&p.pivot)?;
            let den = *p.exp.denom();
            let mut level = n0;
            let mut order: i64 = 1;
            for k in n0.max(2)..=n0 {
                order *= k as i64;
            }
            while order % den != 0 {
                level += 1;
                order = order.checked_mul(level as i64).ok_or(Error::Overflow)?;
            }
            n = n.max(level);
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(v: &[VEntry]) -> Vec<&str> {
        v.iter().map(|e| e.text.as_str()).collect()
    }

    #[test]
    fn small_tables() {
        let mut t = VTables::new(Alphabet::new("ab").unwrap(), 3);
        assert_eq!(texts(t.level(1).unwrap()), ["a", "b"]);
        assert_eq!(texts(t.level(2).unwrap()), ["a", "b", "ab", "aB"]);
        assert_eq!(t.tower(1).unwrap().generator_count(), 2);
        assert_eq!(t.tower(2).unwrap().generator_count(), 6);
        assert!(matches!(t.tower(4), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn locate_rule() {
        let mut t = VTables::new(Alphabet::new("ab").unwrap(), 3);
        let a = t.tower(0).unwrap().reduce_to_semicanonical("ab").unwrap();
        assert_eq!(t.locate(&a).unwrap(), 0);
        let h = a.pow_rational(Rational::new(1, 2));
        assert_eq!(t.locate(&h).unwrap(), 2);
        let x = t.tower(0).unwrap().reduce_to_semicanonical("a").unwrap();
        assert_eq!(t.locate(&x.pow_rational(Rational::new(1, 6))).unwrap(), 3);
        assert_eq!(t.locate(&x.pow_rational(Rational::new(1, 5))).unwrap(), 5);
    }
}
