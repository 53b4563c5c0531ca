//! Signed, colored graphs, standard dual equivalence graphs, restrictions,
//! components, isomorphisms, packages and vertex types.
//!
//! A graph of type `(n, N)` carries a signature of length `N - 1` on each
//! vertex and edge sets `E_i` for `2 ≤ i < n`. Edges are stored as adjacency
//! lists per color so that graphs violating axiom 1 stay representable.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::poly::Poly;
use crate::shapes::{
    descent_signature, enumerate_standard_bounded, runs_composition, Cell, Partition, Signature, SkewShape,
    StandardTupleTableau, TupleShape,
};
use crate::symfunc::QSym;

/// Per-vertex data: signature plus optional payloads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexData {
    pub sigma: Signature,
    pub word: Option<Vec<usize>>,
    pub stat: Option<i64>,
    pub name: Option<String>,
}

impl VertexData {
    pub fn new(sigma: Signature) -> Self {
        VertexData { sigma, word: None, stat: None, name: None }
    }

    pub fn named(name: &str, sigma: &str) -> Result<Self> {
        Ok(VertexData { name: Some(name.to_string()), ..VertexData::new(Signature::parse(sigma)?) })
    }
}

/// A signed, colored graph of type `(n, N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedColoredGraph {
    n: usize,
    big_n: usize,
    vertices: Vec<VertexData>,
    adj: Vec<Vec<Vec<usize>>>,
    tilde: BTreeSet<(usize, usize, usize)>,
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl SignedColoredGraph {
    /// An edgeless graph; every signature must have length `N - 1`.
    pub fn new(n: usize, big_n: usize, vertices: Vec<VertexData>) -> Result<Self> {
        if n > big_n {
            return domain(format!("type ({n},{big_n}) needs n ≤ N"));
        }
        if let Some(v) = vertices.iter().find(|v| v.sigma.len() != big_n.saturating_sub(1)) {
            return domain(format!("signature {} has the wrong length for N = {big_n}", v.sigma));
        }
        let adj = vec![vec![Vec::new(); vertices.len()]; n.max(2)];
        Ok(SignedColoredGraph { n, big_n, vertices, adj, tilde: BTreeSet::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, v: usize) -> &VertexData {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    /// Colors `2..n`.
    pub fn colors(&self) -> std::ops::Range<usize> {
        2..self.n.max(2)
    }

    pub fn has_color(&self, c: usize) -> bool {
        c >= 2 && c < self.n
    }

    pub fn sigma(&self, v: usize) -> &Signature {
        &self.vertices[v].sigma
    }

    /// `σ(v)_i`, zero when undefined.
    pub fn s(&self, v: usize, i: usize) -> i8 {
        self.vertices[v].sigma.get(i)
    }

    /// True iff `σ_{i-1} = -σ_i` at `v` and `E_i` is a color of the graph.
    pub fn admits(&self, v: usize, i: usize) -> bool {
        self.has_color(i) && {
            let (a, b) = (self.s(v, i - 1), self.s(v, i));
            a != 0 && a == -b
        }
    }

    pub fn add_edge(&mut self, c: usize, a: usize, b: usize, tilde: bool) -> Result<()> {
        if !self.has_color(c) {
            return domain(format!("color {c} outside 2..{}", self.n));
        }
        if a == b || a >= self.len() || b >= self.len() {
            return domain(format!("bad edge ({a},{b})"));
        }
        if self.adj[c][a].contains(&b) {
            return domain(format!("duplicate {c}-edge ({a},{b})"));
        }
        self.adj[c][a].push(b);
        self.adj[c][b].push(a);
        if tilde {
            let (x, y) = ordered(a, b);
            self.tilde.insert((c, x, y));
        }
        Ok(())
    }

    pub fn neighbors(&self, c: usize, v: usize) -> &[usize] {
        if self.has_color(c) {
            &self.adj[c][v]
        } else {
            &[]
        }
    }

    /// The unique `c`-neighbor of `v`, if exactly one exists.
    pub fn mate(&self, c: usize, v: usize) -> Option<usize> {
        match self.neighbors(c, v) {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// `E_c(v)`, taken to be `v` when no `c`-edge exists.
    pub fn e(&self, c: usize, v: usize) -> usize {
        self.mate(c, v).unwrap_or(v)
    }

    /// Edges of color `c` as sorted pairs.
    pub fn edges(&self, c: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|a| self.neighbors(c, a).iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self, c: usize) -> usize {
        self.edges(c).len()
    }

    pub fn is_tilde(&self, c: usize, a: usize, b: usize) -> bool {
        let (x, y) = ordered(a, b);
        self.tilde.contains(&(c, x, y))
    }

    /// Replaces `E_c` by the given pairs; tilde marks survive on kept edges.
    pub fn set_edges(&mut self, c: usize, pairs: &[(usize, usize)]) -> Result<()> {
        if !self.has_color(c) {
            return domain(format!("color {c} outside 2..{}", self.n));
        }
        let kept: BTreeSet<(usize, usize)> = pairs.iter().map(|&(a, b)| ordered(a, b)).collect();
        self.tilde.retain(|&(col, a, b)| col != c || kept.contains(&(a, b)));
        for list in self.adj[c].iter_mut() {
            list.clear();
        }
        for &(a, b) in &kept {
            if a == b {
                return domain(format!("loop at {a}"));
            }
            self.adj[c][a].push(b);
            self.adj[c][b].push(a);
        }
        Ok(())
    }

    /// The `(m, M)`-restriction: signatures cut to length `M - 1`, colors below `m`.
    pub fn restrict(&self, m: usize, big_m: usize) -> Result<Self> {
        if m > self.n || big_m > self.big_n || m > big_m {
            return domain(format!("cannot restrict type ({},{}) to ({m},{big_m})", self.n, self.big_n));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| VertexData { sigma: v.sigma.truncate(big_m.saturating_sub(1)), ..v.clone() })
            .collect();
        let mut g = SignedColoredGraph::new(m, big_m, vertices)?;
        for c in 2..m {
            g.adj[c] = self.adj[c].clone();
        }
        g.tilde = self.tilde.iter().filter(|t| t.0 < m).copied().collect();
        Ok(g)
    }

    /// Components under the union of `colors`, each sorted, ordered by least vertex.
    pub fn components(&self, colors: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if !seen[start] {
                let comp = self.bfs(start, colors, &mut seen);
                out.push(comp);
            }
        }
        out
    }

    /// The component of `v` under `colors`, sorted.
    pub fn component_of(&self, v: usize, colors: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        self.bfs(v, colors, &mut seen)
    }

    fn bfs(&self, start: usize, colors: &[usize], seen: &mut [bool]) -> Vec<usize> {
        let mut comp = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &c in colors {
                for &u in self.neighbors(c, v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
        }
        comp.sort_unstable();
        comp
    }

    /// Induced subgraph on `vs` (in the given order) keeping every color.
    pub fn induced(&self, vs: &[usize]) -> Self {
        let index: HashMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let vertices = vs.iter().map(|&v| self.vertices[v].clone()).collect();
        let mut g = SignedColoredGraph::new(self.n, self.big_n, vertices).expect("same type");
        for c in self.colors() {
            for (i, &v) in vs.iter().enumerate() {
                g.adj[c][i] = self.adj[c][v].iter().filter_map(|u| index.get(u).copied()).collect();
            }
        }
        g.tilde = self
            .tilde
            .iter()
            .filter_map(|&(c, a, b)| Some((c, *index.get(&a)?, *index.get(&b)?)))
            .map(|(c, a, b)| {
                let (x, y) = ordered(a, b);
                (c, x, y)
            })
            .collect();
        g
    }

    /// Vertex index keyed by word payload.
    pub fn word_index(&self) -> HashMap<Vec<usize>, usize> {
        self.vertices.iter().enumerate().filter_map(|(i, v)| v.word.clone().map(|w| (w, i))).collect()
    }

    /// Vertex index keyed by name.
    pub fn name_index(&self) -> HashMap<String, usize> {
        self.vertices.iter().enumerate().filter_map(|(i, v)| v.name.clone().map(|w| (w, i))).collect()
    }

    /// Sorted multiset of `(color, {σ(a), σ(b)})` over all edges, a cheap
    /// isomorphism invariant.
    pub fn edge_profile(&self) -> Vec<(usize, Signature, Signature)> {
        let mut out = Vec::new();
        for c in self.colors() {
            for (a, b) in self.edges(c) {
                let (x, y) = (self.sigma(a).clone(), self.sigma(b).clone());
                out.push(if x <= y { (c, x, y) } else { (c, y, x) });
            }
        }
        out.sort();
        out
    }

    pub fn all_colors(&self) -> Vec<usize> {
        self.colors().collect()
    }
}

/// `Σ_{v ∈ vs} q^{stat(v)} Q_{σ(v)}`; with `use_stat = false` every exponent is 0.
pub fn generating_function(g: &SignedColoredGraph, vs: &[usize], use_stat: bool) -> Result<QSym> {
    let mut out = QSym::new(g.big_n());
    for &v in vs {
        let e = if use_stat {
            g.vertex(v).stat.ok_or_else(|| Error::Domain(format!("vertex {v} carries no statistic")))?
        } else {
            0
        };
        out.add_term(g.sigma(v).clone(), &Poly::q_pow(e as i32));
    }
    Ok(out)
}

/// Dual equivalence on `i-1, i, i+1`: fixed when `i` is the middle letter,
/// otherwise `i` trades places with the farther of `i ± 1`.
pub fn elementary_dual_equivalence(w: &[usize], i: usize) -> Vec<usize> {
    let mut out = w.to_vec();
    let (Some(pa), Some(pb), Some(pc)) = (pos(w, i - 1), pos(w, i), pos(w, i + 1)) else {
        return out;
    };
    let mut trio = [(pa, i - 1), (pb, i), (pc, i + 1)];
    trio.sort_unstable();
    if trio[1].1 == i {
        return out;
    }
    let (far, near) = if trio[0].1 == i { (trio[2], trio[0]) } else { (trio[0], trio[2]) };
    out.swap(far.0, near.0);
    out
}

pub(crate) fn pos(w: &[usize], letter: usize) -> Option<usize> {
    w.iter().position(|&x| x == letter)
}

/// A standard filling of `ρ / λ` by `n + 1..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentingTableau {
    pub outer: Partition,
    pub entries: BTreeMap<Cell, usize>,
}

/// `G_λ`, or the augmented `G_{λ, A}` when `aug` is given.
pub fn build_standard_deg(lambda: &Partition, aug: Option<&AugmentingTableau>) -> Result<SignedColoredGraph> {
    let n = lambda.size();
    let (outer, extra) = match aug {
        None => (lambda.clone(), BTreeMap::new()),
        Some(a) => {
            if !a.outer.contains(lambda) {
                return domain("augmenting shape must contain λ");
            }
            let skew = SkewShape::new(&a.outer, lambda, (0, 0))?;
            let cells: BTreeSet<Cell> = skew.cells().copied().collect();
            let keys: BTreeSet<Cell> = a.entries.keys().copied().collect();
            let vals: BTreeSet<usize> = a.entries.values().copied().collect();
            let big_n = a.outer.size();
            if cells != keys || vals != (n + 1..=big_n).collect() {
                return domain("augmenting tableau must fill ρ/λ with n+1..N");
            }
            (a.outer.clone(), a.entries.clone())
        }
    };
    let big_n = outer.size();
    let base = enumerate_standard_bounded(&TupleShape::single(SkewShape::straight(lambda)), usize::MAX)?;
    let mut words = Vec::with_capacity(base.len());
    for t in &base {
        let mut entries = t.entries()[0].clone();
        entries.extend(extra.iter().map(|(&c, &v)| (c, v)));
        let full = StandardTupleTableau::new(TupleShape::single(SkewShape::straight(&outer)), vec![entries])
            .map_err(|_| Error::Domain("augmented filling is not standard".into()))?;
        words.push(full.content_reading_word());
    }
    let vertices =
        words.iter().map(|w| VertexData { word: Some(w.clone()), ..VertexData::new(descent_signature(w)) }).collect();
    let mut g = SignedColoredGraph::new(n, big_n, vertices)?;
    let index: HashMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    for (a, w) in words.iter().enumerate() {
        for i in 2..n {
            let x = elementary_dual_equivalence(w, i);
            let b = index[&x];
            if a < b {
                g.add_edge(i, a, b, false)?;
            }
        }
    }
    Ok(g)
}

/// Propagates a map anchored at `a ↦ b` across `colors`. Returns `None` if
/// neighbor counts or the signature test disagree anywhere, or if a vertex
/// has several neighbors of one color.
pub fn propagate_map(
    g: &SignedColoredGraph,
    h: &SignedColoredGraph,
    a: usize,
    b: usize,
    colors: &[usize],
    same: &dyn Fn(&Signature, &Signature) -> bool,
) -> Option<HashMap<usize, usize>> {
    let mut fwd = HashMap::new();
    let mut back = HashMap::new();
    let mut queue = VecDeque::new();
    fwd.insert(a, b);
    back.insert(b, a);
    queue.push_back(a);
    while let Some(v) = queue.pop_front() {
        let fv = fwd[&v];
        if !same(g.sigma(v), h.sigma(fv)) {
            return None;
        }
        for &c in colors {
            let (nv, nf) = (g.neighbors(c, v), h.neighbors(c, fv));
            match (nv, nf) {
                ([], []) => {}
                ([x], [y]) => match (fwd.get(x), back.get(y)) {
                    (None, None) => {
                        fwd.insert(*x, *y);
                        back.insert(*y, *x);
                        queue.push_back(*x);
                    }
                    (Some(fx), Some(by)) if fx == y && by == x => {}
                    _ => return None,
                },
                _ => return None,
            }
        }
    }
    Some(fwd)
}

/// A signature- and color-preserving bijection from `g` to `h`, as a vector
/// indexed by vertices of `g`.
pub fn find_isomorphism(g: &SignedColoredGraph, h: &SignedColoredGraph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.big_n() != h.big_n() || g.len() != h.len() {
        return None;
    }
    let colors = g.all_colors();
    if colors.iter().any(|&c| g.edge_count(c) != h.edge_count(c)) {
        return None;
    }
    let gc = g.components(&colors);
    let hc = h.components(&colors);
    let mut used = vec![false; hc.len()];
    let mut map = vec![usize::MAX; g.len()];
    let eq = |x: &Signature, y: &Signature| x == y;
    for comp in &gc {
        let mut counts: HashMap<&Signature, usize> = HashMap::new();
        for &v in comp {
            *counts.entry(g.sigma(v)).or_default() += 1;
        }
        let anchor = *comp.iter().min_by_key(|&&v| (counts[g.sigma(v)], v)).expect("nonempty");
        let mut matched = false;
        'target: for (j, other) in hc.iter().enumerate() {
            if used[j] || other.len() != comp.len() {
                continue;
            }
            for &b in other.iter().filter(|&&b| h.sigma(b) == g.sigma(anchor)) {
                if let Some(m) = propagate_map(g, h, anchor, b, &colors, &eq) {
                    if m.len() == comp.len() {
                        for (&x, &y) in &m {
                            map[x] = y;
                        }
                        used[j] = true;
                        matched = true;
                        break 'target;
                    }
                }
            }
        }
        if !matched {
            return None;
        }
    }
    Some(map)
}

/// Shape of a connected component: the dominance-maximal partition among
/// runs compositions, provided it is unique and the component is isomorphic
/// to `G_λ`.
pub fn component_shape(g: &SignedColoredGraph, comp: &[usize]) -> Option<Partition> {
    let sub = g.induced(comp).restrict(g.n(), g.n()).ok()?;
    let shapes: BTreeSet<Partition> =
        (0..sub.len()).filter_map(|v| runs_composition(sub.sigma(v)).to_partition()).collect();
    let maximal: Vec<&Partition> = shapes
        .iter()
        .filter(|l| !shapes.iter().any(|m| m != *l && crate::shapes::dominance_leq(l, m).unwrap_or(false)))
        .collect();
    let [lambda] = maximal.as_slice() else { return None };
    if lambda.size() != g.n() {
        return None;
    }
    let target = build_standard_deg(lambda, None).ok()?;
    find_isomorphism(&sub, &target).map(|_| (*lambda).clone())
}

/// Colors retained by the `i`-package: `2..=i-3` and `i+3..n`.
pub fn package_colors(g: &SignedColoredGraph, i: usize) -> Vec<usize> {
    g.colors().filter(|&c| c + 3 <= i || c >= i + 3).collect()
}

/// Signature coordinates retained by the `i`-package.
pub fn package_coords(g: &SignedColoredGraph, i: usize) -> Vec<usize> {
    (1..g.big_n()).filter(|&h| h + 3 <= i || h >= i + 2).collect()
}

/// The `i`-package of `v`: its component under the package colors.
pub fn i_package(g: &SignedColoredGraph, v: usize, i: usize) -> Vec<usize> {
    g.component_of(v, &package_colors(g, i))
}

/// The four vertex types relative to a color `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IType {
    W,
    A,
    B,
    C,
}

/// `i`-type of `v`; needs `i ≤ n` and `i < N`.
pub fn i_type(g: &SignedColoredGraph, v: usize, i: usize) -> Result<IType> {
    if i < 2 || i > g.n() || i >= g.big_n() {
        return domain(format!("i-type needs 2 ≤ i ≤ n and i < N, got i = {i}"));
    }
    let up = g.e(i - 1, v);
    if g.s(v, i) == -g.s(up, i) {
        return Ok(IType::W);
    }
    if i < 4 || !g.admits(v, i - 2) {
        return Ok(IType::A);
    }
    let down = g.e(i - 2, v);
    let b =
        if g.admits(v, i - 1) { g.s(v, i - 1) == -g.s(down, i - 1) } else { g.s(v, i) == -g.s(g.e(i - 1, down), i) };
    Ok(if b { IType::B } else { IType::C })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn ede_examples() {
        assert_eq!(elementary_dual_equivalence(&[1, 2, 3], 2), vec![1, 2, 3]);
        assert_eq!(elementary_dual_equivalence(&[2, 1, 3], 2), vec![3, 1, 2]);
        assert_eq!(elementary_dual_equivalence(&[2, 3, 1], 2), vec![1, 3, 2]);
    }

    #[test]
    fn g32_shape() {
        let g = build_standard_deg(&p(&[3, 2]), None).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.edge_count(2), 2);
        assert_eq!(g.edge_count(3), 2);
        assert_eq!(g.edge_count(4), 2);
        let comp: Vec<usize> = (0..5).collect();
        assert_eq!(component_shape(&g, &comp), Some(p(&[3, 2])));
    }

    #[test]
    fn restriction_drops_colors() {
        let g = build_standard_deg(&p(&[3, 2]), None).unwrap();
        let r = g.restrict(2, 5).unwrap();
        assert!(r.all_colors().is_empty());
        assert_eq!(r.len(), 5);
        assert_eq!(g.restrict(5, 5).unwrap(), g);
    }
}
