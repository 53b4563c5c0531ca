//! k-ribbon words, the involutions `d_i`, `d̃_i`, `D_i^(k)`, LLT graphs and
//! LLT polynomials, with the domino and ribbon special cases.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::{check_selected, Axiom, AxiomReport};
use crate::error::{domain, Error, Result};
use crate::graph::{component_shape, generating_function, pos, SignedColoredGraph, VertexData};
use crate::poly::Poly;
use crate::shapes::{
    descent_signature, enumerate_standard_bounded, Cell, SkewShape, StandardTupleTableau, TupleShape,
    DEFAULT_SIZE_BOUND,
};
use crate::symfunc::{extract_schur, ribbon_maj, ribbon_schur_qsym, QSym, Ribbon, SchurPoly};
use crate::transform::{transform_to_deg, Event};

/// A word with a nondecreasing content vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RibbonWord {
    pub w: Vec<usize>,
    pub c: Vec<i32>,
}

impl RibbonWord {
    pub fn new(w: Vec<usize>, c: Vec<i32>) -> Result<Self> {
        if w.len() != c.len() {
            return domain("word and contents differ in length");
        }
        if c.windows(2).any(|p| p[0] > p[1]) {
            return domain("contents must be nondecreasing");
        }
        Ok(RibbonWord { w, c })
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }
}

/// Position pairs `(i, j)`, 1-based.
pub type KDescentSet = BTreeSet<(usize, usize)>;

fn pairs_where(rw: &RibbonWord, keep: impl Fn(i32) -> bool) -> BTreeSet<(usize, usize)> {
    let n = rw.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| rw.w[i] > rw.w[j] && keep(rw.c[j] - rw.c[i]))
        .map(|(i, j)| (i + 1, j + 1))
        .collect()
}

/// Pairs with `w_i > w_j` and `c_j - c_i = k`.
pub fn k_descents(rw: &RibbonWord, k: usize) -> KDescentSet {
    pairs_where(rw, |d| d == k as i32)
}

/// Pairs with `w_i > w_j` and `0 < c_j - c_i < k`.
pub fn k_inversions(rw: &RibbonWord, k: usize) -> BTreeSet<(usize, usize)> {
    pairs_where(rw, |d| d > 0 && d < k as i32)
}

pub fn inv_k(rw: &RibbonWord, k: usize) -> usize {
    let n = rw.len();
    let k = k as i32;
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            let d = rw.c[j] - rw.c[i];
            if rw.w[i] > rw.w[j] && d > 0 && d < k {
                count += 1;
            }
        }
    }
    count
}

/// Whether every equal-content adjacent pair `i, i+1` has letters `h` at
/// content `c_i - k` and `j` at `c_i + k` with `w_i < w_h ≤ w_{i+1}` and
/// `w_i ≤ w_j < w_{i+1}`.
pub fn is_k_ribbon_word(rw: &RibbonWord, k: usize) -> bool {
    let k = k as i32;
    let n = rw.len();
    (0..n.saturating_sub(1)).filter(|&i| rw.c[i] == rw.c[i + 1]).all(|i| {
        let (a, b) = (rw.w[i], rw.w[i + 1]);
        let below = (0..n).any(|h| rw.c[h] == rw.c[i] - k && a < rw.w[h] && rw.w[h] <= b);
        let above = (0..n).any(|j| rw.c[j] == rw.c[i] + k && a <= rw.w[j] && rw.w[j] < b);
        below && above
    })
}

/// Content reading word of a tuple together with its shifted contents.
pub fn tuple_to_word(t: &StandardTupleTableau) -> RibbonWord {
    RibbonWord { w: t.content_reading_word(), c: t.shape().reading_contents() }
}

/// Rebuilds a tuple from a ribbon word by stacking each diagonal and
/// aligning the diagonal of `j - k` north or west of that of `j`.
///
/// Components have zero offset and are translated along the diagonal so
/// that some cell lies in row 1 or column 1. Runs of contents separated by
/// a gap are placed strictly south-east of each other with minimal spacing.
pub fn word_to_tuple(rw: &RibbonWord, k: usize, d: &KDescentSet) -> Result<StandardTupleTableau> {
    if k == 0 {
        return domain("k must be positive");
    }
    if !is_k_ribbon_word(rw, k) {
        return domain("not a k-ribbon word");
    }
    if &k_descents(rw, k) != d {
        return domain("k-descent set does not match");
    }
    let ki = k as i32;
    let mut diagonals: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (p, &c) in rw.c.iter().enumerate() {
        diagonals.entry(c).or_default().push(p);
    }
    let mut by_component: BTreeMap<usize, Vec<i32>> = BTreeMap::new();
    for &c in diagonals.keys() {
        by_component.entry(c.rem_euclid(ki) as usize).or_default().push(c);
    }
    let mut components = Vec::new();
    let mut entries = Vec::new();
    for idx in 0..k {
        let Some(shifted) = by_component.get(&idx) else {
            return domain(format!("component {idx} is empty"));
        };
        // South-west corner (col, row) of each placed diagonal.
        let mut corner: BTreeMap<i32, (i32, i32)> = BTreeMap::new();
        let mut cells: BTreeMap<(i32, i32), usize> = BTreeMap::new();
        let mut prev: Option<i32> = None;
        for &s in shifted {
            let content = s.div_euclid(ki);
            let len = diagonals[&s].len() as i32;
            let smallest = |d: i32| diagonals[&d].iter().map(|&x| rw.w[x]).min().expect("nonempty");
            let here = match prev {
                Some(p) if p == s - ki => {
                    let (pc, pr) = corner[&p];
                    if smallest(p) > smallest(s) {
                        (pc, pr - 1)
                    } else {
                        (pc + 1, pr)
                    }
                }
                Some(_) => {
                    let min_row = cells.keys().map(|x| x.1).min().expect("placed");
                    let max_col = cells.keys().map(|x| x.0).max().expect("placed");
                    let row = min_row - len;
                    if content + row <= max_col {
                        return domain("content gap too small to separate pieces");
                    }
                    (content + row, row)
                }
                None => (content, 0),
            };
            corner.insert(s, here);
            let mut letters: Vec<usize> = diagonals[&s].iter().map(|&x| rw.w[x]).collect();
            letters.sort_unstable();
            for (step, &v) in letters.iter().enumerate() {
                cells.insert((here.0 + step as i32, here.1 + step as i32), v);
            }
            prev = Some(s);
        }
        let shift = 1 - cells.keys().map(|&(c, r)| c.min(r)).min().expect("nonempty");
        let placed: BTreeMap<Cell, usize> =
            cells.into_iter().map(|((c, r), v)| (Cell::new(c + shift, r + shift), v)).collect();
        components.push(SkewShape::from_cells(placed.keys().copied(), (0, 0))?);
        entries.push(placed);
    }
    StandardTupleTableau::new(TupleShape::new(components)?, entries)
}

/// Which involution produced an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Plain,
    Tilde,
}

/// Positions of `i - 1, i, i + 1`, or `None` when `i` is between the others.
fn trio(w: &[usize], i: usize) -> Option<[(usize, usize); 3]> {
    let mut t = [(pos(w, i - 1)?, i - 1), (pos(w, i)?, i), (pos(w, i + 1)?, i + 1)];
    t.sort_unstable();
    (t[1].1 != i).then_some(t)
}

/// `d_i`: `i` trades places with the farther of `i ± 1`.
pub fn d(w: &[usize], i: usize) -> Vec<usize> {
    let mut out = w.to_vec();
    if let Some(t) = trio(w, i) {
        out.swap(t[0].0, t[2].0);
    }
    out
}

/// `d̃_i`: `(i, a, b) ↦ (a, b, i)` and `(a, b, i) ↦ (i, a, b)` on the three positions.
pub fn d_tilde(w: &[usize], i: usize) -> Vec<usize> {
    let mut out = w.to_vec();
    if let Some(t) = trio(w, i) {
        let letters = if t[0].1 == i { [t[1].1, t[2].1, i] } else { [i, t[0].1, t[1].1] };
        for (slot, &l) in t.iter().zip(letters.iter()) {
            out[slot.0] = l;
        }
    }
    out
}

/// `D_i^(k)`: `d_i` when the three letters span contents more than `k`
/// apart, `d̃_i` otherwise. Fixed when `i` lies between `i ± 1`.
pub fn involution_d(rw: &RibbonWord, k: usize, i: usize) -> (Vec<usize>, EdgeKind) {
    let Some(t) = trio(&rw.w, i) else { return (rw.w.clone(), EdgeKind::Plain) };
    let cs = t.map(|(p, _)| rw.c[p]);
    let spread = cs.iter().max().expect("three") - cs.iter().min().expect("three");
    if spread > k as i32 {
        (d(&rw.w, i), EdgeKind::Plain)
    } else {
        (d_tilde(&rw.w, i), EdgeKind::Tilde)
    }
}

/// The LLT graph on standard fillings of `shape` with `inv_k` payloads.
pub fn build_llt_graph(shape: &TupleShape, k: usize) -> Result<SignedColoredGraph> {
    build_llt_graph_bounded(shape, k, DEFAULT_SIZE_BOUND)
}

/// As [`build_llt_graph`] with an explicit size bound.
pub fn build_llt_graph_bounded(shape: &TupleShape, k: usize, bound: usize) -> Result<SignedColoredGraph> {
    if k == 0 {
        return domain("k must be positive");
    }
    let n = shape.size();
    let tabs = enumerate_standard_bounded(shape, bound)?;
    let c = shape.reading_contents();
    let words: Vec<RibbonWord> =
        tabs.iter().map(|t| RibbonWord { w: t.content_reading_word(), c: c.clone() }).collect();
    let vertices = words
        .iter()
        .map(|rw| VertexData {
            word: Some(rw.w.clone()),
            stat: Some(inv_k(rw, k) as i64),
            ..VertexData::new(descent_signature(&rw.w))
        })
        .collect();
    let mut g = SignedColoredGraph::new(n, n, vertices)?;
    let index: HashMap<&[usize], usize> = words.iter().enumerate().map(|(i, rw)| (rw.w.as_slice(), i)).collect();
    for (a, rw) in words.iter().enumerate() {
        for i in 2..n {
            if !g.admits(a, i) {
                continue;
            }
            let (x, kind) = involution_d(rw, k, i);
            let b = *index
                .get(x.as_slice())
                .ok_or_else(|| Error::Domain(format!("D_{i} leaves the vertex set at {:?}", rw.w)))?;
            if a < b {
                g.add_edge(i, a, b, kind == EdgeKind::Tilde)?;
            }
        }
    }
    Ok(g)
}

/// `Σ q^{inv_k(T)} Q_{σ(T)}` over standard fillings.
pub fn llt_polynomial(shape: &TupleShape, k: usize) -> Result<QSym> {
    llt_polynomial_bounded(shape, k, DEFAULT_SIZE_BOUND)
}

/// As [`llt_polynomial`] with an explicit size bound.
pub fn llt_polynomial_bounded(shape: &TupleShape, k: usize, bound: usize) -> Result<QSym> {
    let n = shape.size();
    let c = shape.reading_contents();
    let mut out = QSym::new(n);
    for t in enumerate_standard_bounded(shape, bound)? {
        let rw = RibbonWord { w: t.content_reading_word(), c: c.clone() };
        out.add_term(descent_signature(&rw.w), &Poly::q_pow(inv_k(&rw, k) as i32));
    }
    Ok(out)
}

/// How a Schur expansion is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Oracle,
    Transform,
}

/// A Schur expansion with the number of components that fell back to the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LltExpansion {
    pub schur: SchurPoly,
    pub fallbacks: usize,
    pub log: Vec<Event>,
}

/// Schur expansion of a component's generating function by transformation.
pub fn component_schur_by_transform(g: &SignedColoredGraph) -> Result<(SchurPoly, Vec<Event>)> {
    let out = transform_to_deg(g)?;
    let mut schur = SchurPoly::new(g.big_n());
    for comp in out.graph.components(&out.graph.all_colors()) {
        let lambda = component_shape(&out.graph, &comp).ok_or_else(|| Error::TransformFailed {
            reason: "a transformed component is not a standard graph".into(),
            log: out.log.clone(),
        })?;
        let stat = out.graph.vertex(comp[0]).stat.unwrap_or(0);
        schur.add_term(lambda, &Poly::q_pow(stat as i32));
    }
    Ok((schur, out.log))
}

/// `K̃^(k)` expansion by the oracle or by transforming each component.
pub fn llt_schur(shape: &TupleShape, k: usize, method: Method) -> Result<LltExpansion> {
    llt_schur_bounded(shape, k, method, DEFAULT_SIZE_BOUND)
}

/// As [`llt_schur`] with an explicit size bound.
pub fn llt_schur_bounded(shape: &TupleShape, k: usize, method: Method, bound: usize) -> Result<LltExpansion> {
    match method {
        Method::Oracle => Ok(LltExpansion {
            schur: extract_schur(&llt_polynomial_bounded(shape, k, bound)?)?,
            fallbacks: 0,
            log: vec![],
        }),
        Method::Transform => {
            let g = build_llt_graph_bounded(shape, k, bound)?;
            let comps = g.components(&g.all_colors());
            let parts: Vec<Result<(SchurPoly, usize, Vec<Event>)>> = comps
                .par_iter()
                .map(|comp| {
                    let sub = g.induced(comp);
                    match component_schur_by_transform(&sub) {
                        Ok((s, log)) => Ok((s, 0, log)),
                        Err(Error::TransformFailed { log, .. }) => {
                            let f = generating_function(&sub, &(0..sub.len()).collect_vec(), true)?;
                            Ok((extract_schur(&f)?, 1, log))
                        }
                        Err(e) => Err(e),
                    }
                })
                .collect();
            let mut out = LltExpansion { schur: SchurPoly::new(shape.size()), fallbacks: 0, log: vec![] };
            for p in parts {
                let (s, f, log) = p?;
                out.schur.add_schur(&s);
                out.fallbacks += f;
                out.log.extend(log);
            }
            Ok(out)
        }
    }
}

/// Axiom report of a domino graph plus constancy of `inv_2` on components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominoReport {
    pub axioms: AxiomReport,
    pub constant_statistic: bool,
}

impl DominoReport {
    pub fn passes(&self) -> bool {
        self.constant_statistic && self.axioms.all_hold(&Axiom::DEG)
    }
}

/// Checks that the `k = 2` LLT graph is a dual equivalence graph with
/// constant statistic on each component.
pub fn check_domino_theorem(shape: &TupleShape) -> Result<DominoReport> {
    let g = build_llt_graph(shape, 2)?;
    Ok(DominoReport { axioms: check_selected(&g, &Axiom::DEG), constant_statistic: statistic_constant(&g) })
}

/// Whether the statistic payload is constant on every component.
pub fn statistic_constant(g: &SignedColoredGraph) -> bool {
    g.components(&g.all_colors()).iter().all(|comp| comp.iter().map(|&v| g.vertex(v).stat).all_equal())
}

/// Ribbons of size `n` with major index `inv` whose last descent condition
/// matches `last_inversion`.
pub fn ribbons_for(n: usize, inv: usize, last_inversion: bool) -> Vec<Ribbon> {
    Ribbon::all(n)
        .into_iter()
        .filter(|nu| ribbon_maj(nu) == inv && nu.descents().contains(&(n - 1)) == last_inversion)
        .collect()
}

/// Compares a component whose edges all come from `d̃` with the predicted
/// sum of ribbon Schur functions.
pub fn check_ribbon_theorem(g: &SignedColoredGraph, comp: &[usize]) -> Result<bool> {
    let n = g.n();
    for c in g.colors() {
        for &v in comp {
            for &u in g.neighbors(c, v) {
                if !g.is_tilde(c, v, u) {
                    return domain(format!("edge ({v},{u}) of color {c} does not come from d̃"));
                }
            }
        }
    }
    let stat = g.vertex(comp[0]).stat.ok_or_else(|| Error::Domain("missing statistic".into()))?;
    let word = g.vertex(comp[0]).word.clone().ok_or_else(|| Error::Domain("missing word".into()))?;
    let last_inversion = n >= 2 && word[0] > word[n - 1];
    let lhs = generating_function(g, comp, false)?;
    let mut rhs = QSym::new(n);
    for nu in ribbons_for(n, stat as usize, last_inversion) {
        rhs.add_qsym(&ribbon_schur_qsym(&nu), &Poly::one());
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{parse_tuple_shape, Partition};

    #[test]
    fn involutions_on_small_words() {
        assert_eq!(d(&[2, 1, 3], 2), vec![3, 1, 2]);
        assert_eq!(d_tilde(&[2, 1, 3], 2), vec![1, 3, 2]);
        assert_eq!(d_tilde(&[1, 3, 2], 2), vec![2, 1, 3]);
        assert_eq!(d_tilde(&[1, 2, 3], 2), vec![1, 2, 3]);
    }

    #[test]
    fn ribbon_word_examples() {
        let rw = RibbonWord::new(vec![1, 2], vec![0, 0]).unwrap();
        assert!(!is_k_ribbon_word(&rw, 1));
        let rw = RibbonWord::new(vec![3, 1, 2], vec![0, 1, 2]).unwrap();
        assert!(is_k_ribbon_word(&rw, 1));
        assert_eq!(inv_k(&rw, 1), 0);
    }

    #[test]
    fn domino_example_graph() {
        let shape = parse_tuple_shape("2;1,1").unwrap();
        let g = build_llt_graph(&shape, 2).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g.edge_count(2) + g.edge_count(3), 4);
        let tilde = g.edges(2).iter().filter(|&&(a, b)| g.is_tilde(2, a, b)).count();
        assert_eq!(tilde, 2);
        let s = llt_schur(&shape, 2, Method::Oracle).unwrap().schur;
        assert_eq!(s.to_string(), "q*s[3,1] + q^2*s[2,1,1]");
    }

    #[test]
    fn single_shape_is_standard() {
        let lambda = Partition::new(vec![3, 1]).unwrap();
        let s = llt_schur(&TupleShape::single(SkewShape::straight(&lambda)), 1, Method::Oracle).unwrap();
        assert_eq!(s.schur.to_string(), "s[3,1]");
    }

    #[test]
    fn round_trip_words() {
        let shape = parse_tuple_shape("2;1,1").unwrap();
        for t in enumerate_standard_bounded(&shape, 10).unwrap() {
            let rw = tuple_to_word(&t);
            assert!(is_k_ribbon_word(&rw, 2));
            let back = word_to_tuple(&rw, 2, &k_descents(&rw, 2)).unwrap();
            assert_eq!(back, t);
        }
    }
}
