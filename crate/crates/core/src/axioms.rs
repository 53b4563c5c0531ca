//! Verdicts for the dual equivalence axioms 1–6, axiom 4′ (a, b, c) and
//! local Schur positivity.
//!
//! Every check is per color so that the transform can re-verify only the
//! colors it touched.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::graph::{find_isomorphism, i_type, IType, SignedColoredGraph};
use crate::poly::Poly;
use crate::symfunc::{extract_schur, QSym};

/// The conditions tracked by [`check_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    Ax1,
    Ax2,
    Ax3,
    Ax4,
    Ax5,
    Ax6,
    Ax4a,
    Ax4b,
    Ax4c,
    Lsp,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::Ax1,
        Axiom::Ax2,
        Axiom::Ax3,
        Axiom::Ax4,
        Axiom::Ax5,
        Axiom::Ax6,
        Axiom::Ax4a,
        Axiom::Ax4b,
        Axiom::Ax4c,
        Axiom::Lsp,
    ];
    /// Axioms 1–6.
    pub const DEG: [Axiom; 6] = [Axiom::Ax1, Axiom::Ax2, Axiom::Ax3, Axiom::Ax4, Axiom::Ax5, Axiom::Ax6];
    /// Axioms 1, 2, 3, 5, 4′ and local Schur positivity.
    pub const D_GRAPH: [Axiom; 8] =
        [Axiom::Ax1, Axiom::Ax2, Axiom::Ax3, Axiom::Ax5, Axiom::Ax4a, Axiom::Ax4b, Axiom::Ax4c, Axiom::Lsp];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Ax1 => "1",
            Axiom::Ax2 => "2",
            Axiom::Ax3 => "3",
            Axiom::Ax4 => "4",
            Axiom::Ax5 => "5",
            Axiom::Ax6 => "6",
            Axiom::Ax4a => "4'a",
            Axiom::Ax4b => "4'b",
            Axiom::Ax4c => "4'c",
            Axiom::Lsp => "LSP",
        };
        f.write_str(s)
    }
}

/// Outcome of one check; a failure names violating vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails { witness: Vec<usize>, detail: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    fn fail(witness: Vec<usize>, detail: impl Into<String>) -> Self {
        Verdict::Fails { witness, detail: detail.into() }
    }
}

/// Verdicts per axiom plus notes on skipped clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub verdicts: BTreeMap<Axiom, Verdict>,
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn holds(&self, ax: Axiom) -> bool {
        self.verdicts.get(&ax).is_some_and(Verdict::holds)
    }

    pub fn all_hold(&self, axs: &[Axiom]) -> bool {
        axs.iter().all(|&a| self.holds(a))
    }

    pub fn failing(&self) -> Vec<Axiom> {
        self.verdicts.iter().filter(|(_, v)| !v.holds()).map(|(&a, _)| a).collect()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, v) in &self.verdicts {
            match v {
                Verdict::Holds => writeln!(f, "axiom {a}: holds")?,
                Verdict::Fails { witness, detail } => writeln!(f, "axiom {a}: fails ({detail}; witness {witness:?})")?,
            }
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Runs every check.
pub fn check_axioms(g: &SignedColoredGraph) -> AxiomReport {
    check_selected(g, &Axiom::ALL)
}

/// Runs the listed checks over all colors.
pub fn check_selected(g: &SignedColoredGraph, axs: &[Axiom]) -> AxiomReport {
    let mut report = AxiomReport::default();
    for &ax in axs {
        let colors: Vec<usize> = g.colors().collect();
        let v = first_failure(colors.iter().map(|&i| check_at(g, ax, i, &mut report.notes)));
        report.verdicts.insert(ax, v);
    }
    report
}

fn first_failure(it: impl Iterator<Item = Verdict>) -> Verdict {
    for v in it {
        if !v.holds() {
            return v;
        }
    }
    Verdict::Holds
}

/// Checks `ax` at color `i` only.
pub fn check_at(g: &SignedColoredGraph, ax: Axiom, i: usize, notes: &mut Vec<String>) -> Verdict {
    match ax {
        Axiom::Ax1 => ax1_at(g, i),
        Axiom::Ax2 => ax2_at(g, i),
        Axiom::Ax3 => ax3_at(g, i),
        Axiom::Ax4 => ax4_at(g, i),
        Axiom::Ax5 => ax5_at(g, i),
        Axiom::Ax6 => ax6_at(g, i),
        Axiom::Ax4a => ax4a_at(g, i),
        Axiom::Ax4b => ax4b_at(g, i),
        Axiom::Ax4c => ax4c_at(g, i, notes),
        Axiom::Lsp => lsp_at(g, i),
    }
}

/// `v` has an `i`-edge iff `σ_{i-1} = -σ_i`, and then exactly one.
pub fn ax1_at(g: &SignedColoredGraph, i: usize) -> Verdict {
    for v in 0..g.len() {
        let deg = g.neighbors(i, v).len();
        if deg > 1 || (deg == 1) != g.admits(v, i) {
            return Verdict::fail(vec![v], format!("color {i}: {deg} neighbors"));
        }
    }
    Verdict::Holds
}

/// An `i`-edge flips `σ_{i-1}, σ_i` and fixes `σ_h` for `h < i-2`, `h > i+1`.
pub fn ax2_at(g: &SignedColoredGraph, i: usize) -> Verdict {
    for (w, x) in g.edges(i) {
        for h in 1..g.big_n() {
            let flips = g.s(w, h) == -g.s(x, h);
            let ok = if h == i - 1 || h == i {
                flips
            } else if h + 2 < i || h > i + 1 {
                !flips
            } else {
                true
            };
            if !ok {
                return Verdict::fail(vec![w, x], format!("color {i}, coordinate {h}"));
            }
        }
    }
    Verdict::Holds
}

/// If an `i`-edge flips `σ_{i-2}` then `σ_{i-2} = -σ_{i-1}` at each end, and
/// likewise for `σ_{i+1}` against `σ_i`.
pub fn ax3_at(g: &SignedColoredGraph, i: usize) -> Verdict {
    for (w, x) in g.edges(i) {
        for (y, z) in [(w, x), (x, w)] {
            if i >= 3 && g.s(y, i - 2) == -g.s(z, i - 2) && g.s(y, i - 2) != -g.s(y, i - 1) {
                return Verdict::fail(vec![y, z], format!("color {i}, low side"));
            }
            if i + 1 < g.big_n() && g.s(y, i + 1) == -g.s(z, i + 1) && g.s(y, i + 1) != -g.s(y, i) {
                return Verdict::fail(vec![y, z], format!("color {i}, high side"));
            }
        }
    }
    Verdict::Holds
}

/// A small colored graph with colors relative to a window.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Template {
    size: usize,
    edges: Vec<(usize, usize, usize)>,
}

impl Template {
    fn new(size: usize, edges: &[(usize, usize, usize)]) -> Self {
        Template { size, edges: normalize(edges.iter().copied()) }
    }
}

fn normalize(edges: impl Iterator<Item = (usize, usize, usize)>) -> Vec<(usize, usize, usize)> {
    let mut v: Vec<_> = edges.map(|(a, b, c)| if a < b { (a, b, c) } else { (b, a, c) }).collect();
    v.sort_unstable();
    v
}

/// Two-color components: a point, a path with one edge of each color, a double edge.
fn templates_two() -> Vec<Template> {
    vec![Template::new(1, &[]), Template::new(3, &[(0, 1, 0), (1, 2, 1)]), Template::new(2, &[(0, 1, 0), (0, 1, 1)])]
}

/// Three-color components: the shapes of the five standard graphs on five
/// letters up to conjugation.
fn templates_three() -> Vec<Template> {
    vec![
        Template::new(1, &[]),
        Template::new(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 2)]),
        Template::new(5, &[(0, 1, 0), (0, 1, 1), (1, 2, 2), (2, 3, 0), (3, 4, 1), (3, 4, 2)]),
        Template::new(6, &[(0, 1, 1), (1, 2, 0), (1, 3, 2), (2, 4, 2), (3, 4, 0), (4, 5, 1)]),
    ]
}

fn local_template(g: &SignedColoredGraph, comp: &[usize], window: &[usize]) -> Template {
    let index: HashMap<usize, usize> = comp.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut edges = Vec::new();
    for (rel, &c) in window.iter().enumerate() {
        for &v in comp {
            for &u in g.neighbors(c, v) {
                if v < u {
                    if let Some(&k) = index.get(&u) {
                        edges.push((index[&v], k, rel));
                    }
                }
            }
        }
    }
    Template { size: comp.len(), edges: normalize(edges.into_iter()) }
}

fn matches_template(t: &Template, target: &Template) -> bool {
    if t.size != target.size || t.edges.len() != target.edges.len() {
        return false;
    }
    let color_counts = |x: &Template| x.edges.iter().map(|e| e.2).counts();
    if color_counts(t) != color_counts(target) {
        return false;
    }
    (0..t.size)
        .permutations(t.size)
        .any(|perm| normalize(t.edges.iter().map(|&(a, b, c)| (perm[a], perm[b], c))) == target.edges)
}

/// Components of `E_{i-1} ∪ E_i` (and of `E_{i-2} ∪ E_{i-1} ∪ E_i` for
/// `i ≥ 4`) are isomorphic to the standard small graphs, ignoring signs.
pub fn ax4_at(g: &SignedColoredGraph, i: usize) -> Verdict {
    if i >= 3 {
        let window = [i - 1, i];
        let ts = templates_two();
        for comp in g.components(&window) {
            let t = local_template(g, &comp, &window);
            if !ts.iter().any(|x| matches_template(&t, x)) {
                return Verdict::fail(comp, format!("colors {}-{i} component", i - 1));
            }
        }
    }
    if i >= 4 {
        let window = [i - 2, i - 1, i];
        let ts = templates_three();
        for comp in g.components(&window) {
            let t = local_template(g, &comp, &window);
            if !ts.iter().any(|x| matches_template(&t, x)) {
                return Verdict::fail(comp, format!("colors {}-{i} component", i - 2));
            }
        }
    }
    Verdict::Holds
}

/// `{w,x} ∈ E_i`, `{x,y} ∈ E_j`, `|i - j| ≥ 3` give `v` with `{w,v} ∈ E_j`, `{v,y} ∈ E_i`.
pub fn ax5_at(g: &SignedColoredGraph, i: usize) -> Verdict {
    for w in 0..g.len() {
        for &x in g.neighbors(i, w) {
            for j in g.colors().filter(|&j| j.abs_diff(i) >= 3) {
                for &y in g.neighbors(j, x) {
                    let ok = g.neighbors(j, w).iter().any(|&v| g.neighbors(i, v).contains(&y));
                    if !ok {
                        return Verdict::fail(vec![w, x, y], format!("colors {i} and {j}"));
                    }
                }
            }
        }
    }
    Verdict::Holds
}

/// Within each component of `E_2 ∪ … ∪ E_i`, any two vertices are joined by a
/// path crossing at most one `i`-edge, and the `(i, i)`-restrictions of the
/// `E_2 ∪ … ∪ E_{i-1}` components are pairwise non-isomorphic.
pub fn ax6_at(g: &SignedColoredGraph, i: usize) -> Verdict {
    if i < 3 {
        return Verdict::Holds;
    }
    let lower: Vec<usize> = (2..i).collect();
    let upper: Vec<usize> = (2..=i).collect();
    let sub = g.components(&lower);
    let mut label = vec![0usize; g.len()];
    for (k, comp) in sub.iter().enumerate() {
        for &v in comp {
            label[v] = k;
        }
    }
    for comp in g.components(&upper) {
        let parts: Vec<usize> = comp.iter().map(|&v| label[v]).unique().sorted().collect();
        if parts.len() < 2 {
            continue;
        }
        let mut adjacent = std::collections::BTreeSet::new();
        for &v in &comp {
            for &u in g.neighbors(i, v) {
                adjacent.insert((label[v].min(label[u]), label[v].max(label[u])));
            }
        }
        for (a, b) in parts.iter().tuple_combinations() {
            if !adjacent.contains(&(*a, *b)) {
                return Verdict::fail(comp.clone(), format!("color {i}: pieces {a} and {b} not adjacent"));
            }
        }
        let restricted: Vec<SignedColoredGraph> =
            parts.iter().map(|&k| g.induced(&sub[k]).restrict(i, i).expect("valid restriction")).collect();
        for (x, y) in (0..restricted.len()).tuple_combinations() {
            if find_isomorphism(&restricted[x], &restricted[y]).is_some() {
                return Verdict::fail(comp.clone(), format!("color {i}: isomorphic pieces"));
            }
        }
    }
    Verdict::Holds
}

/// Nontrivial components of `E_{i-1} ∪ E_i` have two or four edges.
pub fn ax4a_at(g: &SignedColoredGraph, i: usize) -> Verdict {
    if i < 3 {
        return Verdict::Holds;
    }
    let window = [i - 1, i];
    for comp in g.components(&window) {
        let t = local_template(g, &comp, &window);
        if comp.len() > 1 && t.edges.len() != 2 && t.edges.len() != 4 {
            return Verdict::fail(comp, format!("colors {}-{i}: {} edges", i - 1, t.edges.len()));
        }
    }
    Verdict::Holds
}

/// If `σ(w)_{i-1} = -σ(E_{i-2} w)_{i-1}` and `σ(w)_{i-2} = -σ(E_i w)_{i-2}`,
/// then `E_{i-1} w` is `E_{i-2} w` or `E_i w`.
pub fn ax4b_at(g: &SignedColoredGraph, i: usize) -> Verdict {
    if i < 4 {
        return Verdict::Holds;
    }
    for w in 0..g.len() {
        let (lo, hi) = (g.e(i - 2, w), g.e(i, w));
        if g.s(w, i - 1) == -g.s(lo, i - 1) && g.s(w, i - 2) == -g.s(hi, i - 2) {
            let mid = g.e(i - 1, w);
            if mid != lo && mid != hi {
                return Verdict::fail(vec![w], format!("color {i}"));
            }
        }
    }
    Verdict::Holds
}

/// A vertex of `i`-type C and `(i+1)`-type W has `E_{i-2}` image of the same
/// two types. Vacuous, and noted, when `σ_{i+1}` is undefined.
pub fn ax4c_at(g: &SignedColoredGraph, i: usize, notes: &mut Vec<String>) -> Verdict {
    if i < 4 {
        return Verdict::Holds;
    }
    if i + 1 >= g.big_n() {
        notes.push(format!("4'c at color {i}: sigma_{} undefined, clause vacuous", i + 1));
        return Verdict::Holds;
    }
    let typed = |v: usize| i_type(g, v, i).ok() == Some(IType::C) && i_type(g, v, i + 1).ok() == Some(IType::W);
    for w in 0..g.len() {
        if typed(w) && !typed(g.e(i - 2, w)) {
            return Verdict::fail(vec![w, g.e(i - 2, w)], format!("color {i}"));
        }
    }
    Verdict::Holds
}

/// Windowed generating function of `comp` on coordinates `lo..=hi`.
pub fn window_aggregate(g: &SignedColoredGraph, comp: &[usize], lo: usize, hi: usize) -> QSym {
    let mut f = QSym::new(hi - lo + 2);
    for &v in comp {
        f.add_term(g.sigma(v).window(lo, hi), &Poly::one());
    }
    f
}

fn schur_positive(f: &QSym, cache: &mut HashMap<Vec<(String, i64)>, bool>) -> bool {
    let key: Vec<(String, i64)> = f.terms().iter().map(|(s, c)| (s.to_string(), c.at_one())).collect();
    *cache.entry(key).or_insert_with(|| extract_schur(f).is_ok())
}

/// Degree 4 and 5 windowed generating functions are Schur positive.
pub fn lsp_at(g: &SignedColoredGraph, i: usize) -> Verdict {
    let mut cache = HashMap::new();
    if i >= 3 {
        for comp in g.components(&[i - 1, i]) {
            if !schur_positive(&window_aggregate(g, &comp, i - 2, i), &mut cache) {
                return Verdict::fail(comp, format!("degree 4 at color {i}"));
            }
        }
    }
    if i >= 4 {
        for comp in g.components(&[i - 2, i - 1, i]) {
            if !schur_positive(&window_aggregate(g, &comp, i - 3, i), &mut cache) {
                return Verdict::fail(comp, format!("degree 5 at color {i}"));
            }
        }
    }
    Verdict::Holds
}
