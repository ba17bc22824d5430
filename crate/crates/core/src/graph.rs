//! Stallings core graphs of finitely generated subgroups of a free group.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::word::{Alphabet, Letter, Word};

/// Folded, trimmed, basepointed graph labelled by generators. Vertices
/// are numbered in breadth-first order from the basepoint `0`, visiting
/// letters in the global letter order, so two graphs of the same
/// subgroup are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoreGraph {
    gens: usize,
    out: Vec<Vec<Option<u32>>>,
    inn: Vec<Vec<Option<u32>>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller root so the basepoint 0 survives
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

impl CoreGraph {
    /// Folds the bouquet of petals spelled by `generators`.
    pub fn build(alphabet: &Alphabet, generators: &[Word]) -> CoreGraph {
        Self::build_with_size(alphabet.size(), generators)
    }

    pub fn build_with_size(gens: usize, generators: &[Word]) -> CoreGraph {
        let mut edges: Vec<(usize, u32, usize)> = Vec::new();
        let mut nv = 1usize;
        for w in generators {
            let ls = w.letters();
            if ls.is_empty() {
                continue;
            }
            let mut cur = 0usize;
            for (i, &l) in ls.iter().enumerate() {
                let next = if i + 1 == ls.len() {
                    0
                } else {
                    nv += 1;
                    nv - 1
                };
                if l.inv {
                    edges.push((next, l.gen, cur));
                } else {
                    edges.push((cur, l.gen, next));
                }
                cur = next;
            }
        }
        let mut uf = UnionFind::new(nv);
        loop {
            let mut out: HashMap<(usize, u32), usize> = HashMap::new();
            let mut inn: HashMap<(usize, u32), usize> = HashMap::new();
            let mut merged = false;
            for &(s, g, t) in &edges {
                let (s, t) = (uf.find(s), uf.find(t));
                if let Some(&t2) = out.get(&(s, g)) {
                    merged |= uf.union(t, t2);
                } else {
                    out.insert((s, g), t);
                }
                let t = uf.find(t);
                let s = uf.find(s);
                if let Some(&s2) = inn.get(&(t, g)) {
                    merged |= uf.union(s, s2);
                } else {
                    inn.insert((t, g), s);
                }
            }
            if !merged {
                break;
            }
        }
        let mut set: BTreeSet<(usize, u32, usize)> = BTreeSet::new();
        for &(s, g, t) in &edges {
            set.insert((uf.find(s), g, uf.find(t)));
        }
        let mut edges: Vec<(usize, u32, usize)> = set.into_iter().collect();
        // trim hanging trees away from the basepoint
        loop {
            let mut deg: HashMap<usize, usize> = HashMap::new();
            for &(s, _, t) in &edges {
                *deg.entry(s).or_default() += 1;
                *deg.entry(t).or_default() += 1;
            }
            let before = edges.len();
            edges.retain(|&(s, _, t)| !((s != 0 && deg[&s] == 1) || (t != 0 && deg[&t] == 1)));
            if edges.len() == before {
                break;
            }
        }
        Self::relabel(gens, &edges)
    }

    fn relabel(gens: usize, edges: &[(usize, u32, usize)]) -> CoreGraph {
        let mut out: HashMap<(usize, u32), usize> = HashMap::new();
        let mut inn: HashMap<(usize, u32), usize> = HashMap::new();
        for &(s, g, t) in edges {
            out.insert((s, g), t);
            inn.insert((t, g), s);
        }
        let mut order: HashMap<usize, u32> = HashMap::new();
        order.insert(0, 0);
        let mut queue = VecDeque::from([0usize]);
        let mut seq = vec![0usize];
        while let Some(v) = queue.pop_front() {
            for g in 0..gens as u32 {
                for next in [out.get(&(v, g)), inn.get(&(v, g))].into_iter().flatten() {
                    if !order.contains_key(next) {
                        order.insert(*next, seq.len() as u32);
                        seq.push(*next);
                        queue.push_back(*next);
                    }
                }
            }
        }
        let n = seq.len();
        let mut g = CoreGraph {
            gens,
            out: vec![vec![None; gens]; n],
            inn: vec![vec![None; gens]; n],
        };
        for &(s, gen, t) in edges {
            let (s, t) = (order[&s], order[&t]);
            g.out[s as usize][gen as usize] = Some(t);
            g.inn[t as usize][gen as usize] = Some(s);
        }
        g
    }

    pub fn num_generators(&self) -> usize {
        self.gens
    }

    pub fn num_vertices(&self) -> usize {
        self.out.len()
    }

    pub fn num_edges(&self) -> usize {
        self.out.iter().flatten().filter(|e| e.is_some()).count()
    }

    /// Edges as `(source, generator, target)` in vertex order.
    pub fn edges(&self) -> Vec<(u32, u32, u32)> {
        let mut v = Vec::new();
        for (s, row) in self.out.iter().enumerate() {
            for (g, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    v.push((s as u32, g as u32, *t));
                }
            }
        }
        v
    }

    /// Rank of the subgroup (first Betti number of the graph).
    pub fn rank(&self) -> usize {
        self.num_edges() + 1 - self.num_vertices()
    }

    /// Follows a letter from a vertex.
    pub fn step(&self, v: u32, l: Letter) -> Option<u32> {
        let tbl = if l.inv { &self.inn } else { &self.out };
        tbl[v as usize][l.gen as usize]
    }

    /// Endpoint of the path reading `w` from `start`, if it exists.
    pub fn read(&self, start: u32, w: &Word) -> Option<u32> {
        w.letters().iter().try_fold(start, |v, &l| self.step(v, l))
    }

    /// Membership: `w` labels a closed path at the basepoint.
    pub fn contains(&self, w: &Word) -> bool {
        self.read(0, w) == Some(0)
    }

    /// Shortlex-least geodesic label from the basepoint to each vertex.
    pub fn tree_paths(&self) -> Vec<Word> {
        let n = self.num_vertices();
        let mut paths: Vec<Option<Word>> = vec![None; n];
        paths[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0u32]);
        while let Some(v) = queue.pop_front() {
            let pv = paths[v as usize].clone().unwrap_or_default();
            for g in 0..self.gens as u32 {
                for l in [Letter::new(g, false), Letter::new(g, true)] {
                    if let Some(t) = self.step(v, l) {
                        if paths[t as usize].is_none() {
                            paths[t as usize] = Some(pv.mul(&Word::letter(l)));
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
        paths.into_iter().map(Option::unwrap_or_default).collect()
    }

    /// Free basis read off the edges outside the geodesic spanning tree.
    pub fn basis(&self) -> Vec<Word> {
        let paths = self.tree_paths();
        let mut basis = Vec::new();
        for (s, g, t) in self.edges() {
            let w = paths[s as usize]
                .mul(&Word::generator(g))
                .mul(&paths[t as usize].inverse());
            if !w.is_empty() {
                basis.push(w);
            }
        }
        basis.sort();
        basis
    }

    /// Maximum graph distance from the basepoint: every prefix of a
    /// reduced basepoint loop is within this distance of a subgroup element.
    pub fn quasiconvexity_constant(&self) -> usize {
        self.tree_paths().iter().map(Word::len).max().unwrap_or(0)
    }

    /// Documented debugging format: header lines then one
    /// `source generator target` line per edge.
    pub fn to_adjacency_text(&self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "basepoint 0");
        let _ = writeln!(s, "vertices {}", self.num_vertices());
        for (a, g, b) in self.edges() {
            let _ = writeln!(s, "{a} {} {b}", alphabet.name(g));
        }
        s
    }
}

/// Vertex of a fiber product: one vertex from each factor.
pub type Pair = (u32, u32);

/// Connected component of the pullback of two core graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberComponent {
    pub vertices: Vec<Pair>,
    pub edges: Vec<(Pair, u32, Pair)>,
    pub contains_basepoint: bool,
    pub betti: usize,
}

impl FiberComponent {
    pub fn is_tree(&self) -> bool {
        self.betti == 0
    }

    /// A nontrivial loop label at `root`, if the component is not a tree.
    fn loop_at(&self, root: (u32, u32)) -> Option<Word> {
        let mut adj: HashMap<Pair, Vec<(Letter, Pair)>> = HashMap::new();
        for &(s, g, t) in &self.edges {
            adj.entry(s).or_default().push((Letter::new(g, false), t));
            adj.entry(t).or_default().push((Letter::new(g, true), s));
        }
        for v in adj.values_mut() {
            v.sort();
        }
        let mut paths: HashMap<(u32, u32), Word> = HashMap::new();
        paths.insert(root, Word::identity());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let pv = paths[&v].clone();
            for &(l, t) in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if let std::collections::hash_map::Entry::Vacant(e) = paths.entry(t) {
                    e.insert(pv.mul(&Word::letter(l)));
                    queue.push_back(t);
                }
            }
        }
        self.edges
            .iter()
            .map(|&(s, g, t)| paths[&s].mul(&Word::generator(g)).mul(&paths[&t].inverse()))
            .filter(|w| !w.is_empty())
            .min()
    }
}

/// All components of the labelled product graph.
pub fn fiber_product(g1: &CoreGraph, g2: &CoreGraph) -> Vec<FiberComponent> {
    let (n1, n2) = (g1.num_vertices(), g2.num_vertices());
    let id = |p: u32, q: u32| p as usize * n2 + q as usize;
    let mut uf = UnionFind::new(n1 * n2);
    let mut edges = Vec::new();
    let gens = g1.gens.min(g2.gens);
    for p in 0..n1 as u32 {
        for q in 0..n2 as u32 {
            for g in 0..gens {
                if let (Some(p2), Some(q2)) = (g1.out[p as usize][g], g2.out[q as usize][g]) {
                    edges.push(((p, q), g as u32, (p2, q2)));
                    uf.union(id(p, q), id(p2, q2));
                }
            }
        }
    }
    let mut comps: Vec<FiberComponent> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    for p in 0..n1 as u32 {
        for q in 0..n2 as u32 {
            let r = uf.find(id(p, q));
            let k = *index.entry(r).or_insert_with(|| {
                comps.push(FiberComponent {
                    vertices: Vec::new(),
                    edges: Vec::new(),
                    contains_basepoint: false,
                    betti: 0,
                });
                comps.len() - 1
            });
            comps[k].vertices.push((p, q));
            if p == 0 && q == 0 {
                comps[k].contains_basepoint = true;
            }
        }
    }
    for e in edges {
        let r = uf.find(id(e.0 .0, e.0 .1));
        comps[index[&r]].edges.push(e);
    }
    for c in &mut comps {
        c.betti = c.edges.len() + 1 - c.vertices.len();
    }
    comps
}

/// Witness that `U ∩ x⁻¹Ux` is infinite: `u ∈ U`, `x⁻¹ux ∈ U`, `x ∉ U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalnormalWitness {
    pub x: Word,
    pub u: Word,
}

/// Witness that some conjugate intersection is infinite: `u ∈ U` and
/// `g⁻¹ug ∈ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionWitness {
    pub g: Word,
    pub u: Word,
}

fn best_witness<'a, I>(g1: &CoreGraph, g2: &CoreGraph, comps: I) -> Option<(Word, Word)>
where
    I: Iterator<Item = &'a FiberComponent>,
{
    let p1 = g1.tree_paths();
    let p2 = g2.tree_paths();
    let mut best: Option<(Word, Word)> = None;
    for c in comps {
        for &(p, q) in &c.vertices {
            let alpha = &p1[p as usize];
            let beta = &p2[q as usize];
            let x = alpha.mul(&beta.inverse());
            if best.as_ref().is_some_and(|(bx, _)| *bx <= x) {
                continue;
            }
            if let Some(gamma) = c.loop_at((p, q)) {
                let u = alpha.mul(&gamma).mul(&alpha.inverse());
                best = Some((x, u));
            }
        }
    }
    best
}

/// Malnormality test. The component of `(0,0)` is the diagonal and is
/// exempt; every other component must be a tree.
pub fn is_conjugate_separated(g: &CoreGraph) -> (bool, Option<MalnormalWitness>) {
    let comps = fiber_product(g, g);
    let bad = comps
        .iter()
        .filter(|c| !c.contains_basepoint && !c.is_tree());
    match best_witness(g, g, bad) {
        None => (true, None),
        Some((x, u)) => (false, Some(MalnormalWitness { x, u })),
    }
}

/// True iff `U ∩ gVg⁻¹` is trivial for every `g`; otherwise a witness.
pub fn conjugate_intersections_finite(
    gu: &CoreGraph,
    gv: &CoreGraph,
) -> (bool, Option<IntersectionWitness>) {
    let comps = fiber_product(gu, gv);
    let bad = comps.iter().filter(|c| !c.is_tree());
    match best_witness(gu, gv, bad) {
        None => (true, None),
        Some((g, u)) => (false, Some(IntersectionWitness { g, u })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(gens: &[&str]) -> (Alphabet, CoreGraph) {
        let a = Alphabet::new("ab").unwrap();
        let ws: Vec<Word> = gens.iter().map(|g| a.parse(g).unwrap()).collect();
        let g = CoreGraph::build(&a, &ws);
        (a, g)
    }

    #[test]
    fn shapes() {
        let (_, g) = setup(&["aa"]);
        assert_eq!((g.num_vertices(), g.num_edges()), (2, 2));
        let (_, g) = setup(&["a", "b"]);
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 2));
        let (_, g) = setup(&["abA"]);
        assert_eq!((g.num_vertices(), g.num_edges()), (2, 2));
        let (_, g) = setup(&[]);
        assert_eq!((g.num_vertices(), g.rank()), (1, 0));
    }

    #[test]
    fn qc_constants() {
        assert_eq!(setup(&["a"]).1.quasiconvexity_constant(), 0);
        assert_eq!(setup(&["ab"]).1.quasiconvexity_constant(), 1);
        assert_eq!(setup(&["a", "b"]).1.quasiconvexity_constant(), 0);
    }

    #[test]
    fn malnormal_examples() {
        let (a, g) = setup(&["aa"]);
        let (ok, w) = is_conjugate_separated(&g);
        assert!(!ok);
        assert_eq!(a.format(&w.unwrap().x), "a");
        assert!(is_conjugate_separated(&setup(&["ab"]).1).0);
        assert!(is_conjugate_separated(&setup(&["a"]).1).0);
    }

    #[test]
    fn intersection_examples() {
        let (a, u) = setup(&["ab"]);
        let (_, v) = setup(&["ba"]);
        let (ok, w) = conjugate_intersections_finite(&u, &v);
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!(a.format(&w.g), "a");
        assert!(v.contains(&w.u.conjugate_by(&w.g)));
        let (_, u) = setup(&["aa"]);
        let (_, v) = setup(&["a"]);
        let (ok, w) = conjugate_intersections_finite(&u, &v);
        assert!(!ok);
        assert!(w.unwrap().g.is_empty());
        assert!(conjugate_intersections_finite(&setup(&["a"]).1, &setup(&["b"]).1).0);
    }
}
