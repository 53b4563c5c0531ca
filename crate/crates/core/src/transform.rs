//! Rewiring a D graph into a dual equivalence graph with the involutions
//! `φ_i`, `ψ_i` and `θ_i`.
//!
//! Each map swaps `i`-edges between isomorphic packages. The driver runs
//! stages `i = 2..n-1`: it drains `W_i` with `φ_i`, drains `X_i` with `ψ_i`,
//! then applies `θ_i` until axiom 6 holds at color `i`. Every tentative move
//! is verified before it is accepted; a move that would break axioms 1, 2,
//! 3, 5 or local Schur positivity is retried after a repair move chosen from
//! a fixed, ordered list of nearby witnesses.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::axioms::{ax1_at, ax2_at, ax3_at, ax4_at, ax5_at, ax6_at, check_selected, lsp_at, Axiom};
use crate::error::{Error, Result};
use crate::graph::{
    component_shape, i_package, i_type, package_colors, package_coords, propagate_map, IType, SignedColoredGraph,
};
use crate::shapes::{dominance_leq, runs_composition, Partition, Signature};

/// The three rewiring maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Phi,
    Psi,
    Theta,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Phi => "phi",
            MapKind::Psi => "psi",
            MapKind::Theta => "theta",
        })
    }
}

/// One applied map. For `θ` the anchor is a vertex of the chosen piece `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Event {
    pub step: usize,
    pub map: MapKind,
    pub i: usize,
    pub anchor: usize,
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{} {}_{} at {}", self.step, self.map, self.i, self.anchor)
    }
}

/// A map with its color and anchor, not yet applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub map: MapKind,
    pub i: usize,
    pub anchor: usize,
}

impl Move {
    fn phi(i: usize, anchor: usize) -> Self {
        Move { map: MapKind::Phi, i, anchor }
    }

    fn psi(i: usize, anchor: usize) -> Self {
        Move { map: MapKind::Psi, i, anchor }
    }

    fn theta(i: usize, anchor: usize) -> Self {
        Move { map: MapKind::Theta, i, anchor }
    }
}

/// Result of [`transform_to_deg`].
#[derive(Clone, Debug)]
pub struct Transformed {
    pub graph: SignedColoredGraph,
    pub log: Vec<Event>,
    /// Moves that needed the two-step repair search.
    pub searched: usize,
}

fn obstruction<T>(color: usize, reason: impl Into<String>) -> Result<T> {
    Err(Error::Obstruction { color, reason: reason.into() })
}

/// `w` has `i`-type W but `E_{i-1}(w) ≠ E_i(w)`.
pub fn is_w_witness(g: &SignedColoredGraph, i: usize, w: usize) -> bool {
    i >= 3 && g.has_color(i) && i < g.big_n() && i_type(g, w, i).ok() == Some(IType::W) && g.e(i - 1, w) != g.e(i, w)
}

/// `x` has `i`-type C, no `(i-1)`-neighbor, and `E_{i-2}E_i(x) ≠ E_iE_{i-2}(x)`.
pub fn is_x_witness(g: &SignedColoredGraph, i: usize, x: usize) -> bool {
    i >= 4
        && g.has_color(i)
        && i < g.big_n()
        && i_type(g, x, i).ok() == Some(IType::C)
        && !g.admits(x, i - 1)
        && g.e(i - 2, g.e(i, x)) != g.e(i, g.e(i - 2, x))
}

/// `W_i(G)`.
pub fn witnesses_w(g: &SignedColoredGraph, i: usize) -> Vec<usize> {
    (0..g.len()).filter(|&w| is_w_witness(g, i, w)).collect()
}

/// `X_i(G)`.
pub fn witnesses_x(g: &SignedColoredGraph, i: usize) -> Vec<usize> {
    (0..g.len()).filter(|&x| is_x_witness(g, i, x)).collect()
}

/// The isomorphism from the `i`-package of `a` to that of `b` sending `a`
/// to `b`, preserving package edges and package signature coordinates.
/// The map is returned on both packages, so it is its own inverse.
pub fn package_isomorphism(g: &SignedColoredGraph, a: usize, b: usize, i: usize) -> Result<HashMap<usize, usize>> {
    let coords = package_coords(g, i);
    let same = |x: &Signature, y: &Signature| coords.iter().all(|&h| x.get(h) == y.get(h));
    let pa = i_package(g, a, i);
    let pb = i_package(g, b, i);
    let Some(fwd) = propagate_map(g, g, a, b, &package_colors(g, i), &same) else {
        return obstruction(i, format!("no package isomorphism from {a} to {b}"));
    };
    let image: BTreeSet<usize> = fwd.values().copied().collect();
    if fwd.len() != pa.len() || image != pb.iter().copied().collect() {
        return obstruction(i, format!("packages of {a} and {b} differ"));
    }
    let mut both = HashMap::new();
    for (&x, &y) in &fwd {
        for (s, t) in [(x, y), (y, x)] {
            if let Some(&old) = both.get(&s) {
                if old != t {
                    return obstruction(i, format!("package map is not an involution at {s}"));
                }
            }
            both.insert(s, t);
        }
    }
    Ok(both)
}

/// New `i`-partners given by `f` where defined and by `E_i` elsewhere;
/// fails unless the result is a fixed-point-free involution on the
/// vertices admitting an `i`-neighbor.
fn rewire(g: &SignedColoredGraph, i: usize, f: &HashMap<usize, usize>) -> Result<SignedColoredGraph> {
    let partner = |v: usize| f.get(&v).copied().or_else(|| g.mate(i, v));
    let mut pairs = Vec::new();
    for v in 0..g.len() {
        match partner(v) {
            Some(p) => {
                if p == v || partner(p) != Some(v) || !g.admits(p, i) || !g.admits(v, i) {
                    return obstruction(i, format!("rewiring is not an involution at {v}"));
                }
                if v < p {
                    pairs.push((v, p));
                }
            }
            None if g.admits(v, i) => return obstruction(i, format!("vertex {v} lost its {i}-edge")),
            None => {}
        }
    }
    let mut h = g.clone();
    h.set_edges(i, &pairs)?;
    Ok(h)
}

/// Swap of `i`-edges on the packages of `a` and `b`: `v ↦ ϕ(v)` on the
/// packages, `v ↦ E_i ϕ E_i(v)` on their `E_i` images, `E_i` elsewhere.
fn package_swap(g: &SignedColoredGraph, i: usize, a: usize, b: usize) -> Result<SignedColoredGraph> {
    let iso = package_isomorphism(g, a, b, i)?;
    let mut f = HashMap::new();
    for (&v, &t) in &iso {
        if !g.admits(v, i) {
            return obstruction(i, format!("package vertex {v} admits no {i}-neighbor"));
        }
        f.insert(v, t);
    }
    for &v in iso.keys() {
        let y = g.e(i, v);
        if !iso.contains_key(&y) {
            f.insert(y, g.e(i, iso[&v]));
        }
    }
    rewire(g, i, &f)
}

/// `φ_i^w(G)`.
pub fn apply_phi(g: &SignedColoredGraph, i: usize, w: usize) -> Result<SignedColoredGraph> {
    if !is_w_witness(g, i, w) {
        return obstruction(i, format!("{w} is not in W_{i}"));
    }
    if i >= 4 {
        for v in i_package(g, w, i - 1) {
            if g.s(v, i - 3) != g.s(g.e(i - 1, v), i - 3) {
                return obstruction(i, format!("E_{} flips sigma_{} at {v}", i - 1, i - 3));
            }
        }
    }
    package_swap(g, i, w, g.e(i - 1, w))
}

/// `ψ_i^x(G)`.
pub fn apply_psi(g: &SignedColoredGraph, i: usize, x: usize) -> Result<SignedColoredGraph> {
    if !is_x_witness(g, i, x) {
        return obstruction(i, format!("{x} is not in X_{i}"));
    }
    let y = g.e(i, x);
    if i >= 5 {
        for v in [x, y] {
            if g.s(v, i - 4) != g.s(g.e(i - 2, v), i - 4) {
                return obstruction(i, format!("E_{} flips sigma_{} at {v}", i - 2, i - 4));
            }
        }
    }
    let u = if g.admits(g.e(i - 2, y), i) { y } else { g.e(i - 1, g.e(i - 2, y)) };
    let (a, b) = (g.e(i - 2, x), g.e(i - 2, u));
    if !g.admits(a, i) || !g.admits(b, i) {
        return obstruction(i, format!("psi anchors {a}, {b} admit no {i}-neighbor"));
    }
    package_swap(g, i, a, b)
}

/// Dominance-maximal partition among the runs compositions of `σ_1..σ_{len}`.
fn top_shape(g: &SignedColoredGraph, vs: &[usize], len: usize) -> Option<Partition> {
    let shapes: BTreeSet<Partition> =
        vs.iter().filter_map(|&v| runs_composition(&g.sigma(v).truncate(len)).to_partition()).collect();
    let maximal: Vec<&Partition> =
        shapes.iter().filter(|l| !shapes.iter().any(|m| m != *l && dominance_leq(l, m).unwrap_or(false))).collect();
    match maximal.as_slice() {
        [l] => Some((*l).clone()),
        _ => None,
    }
}

/// Dominance-maximal partition of `|λ| - 1` inside `λ`.
fn top_sub_shape(lambda: &Partition) -> Option<Partition> {
    let parts = lambda.parts();
    let mut p = parts.to_vec();
    *p.last_mut()? -= 1;
    Partition::new(p).ok()
}

struct Pieces {
    comps: Vec<Vec<usize>>,
    label: HashMap<usize, usize>,
}

fn pieces_of(g: &SignedColoredGraph, h: &[usize], i: usize) -> Pieces {
    let lower: Vec<usize> = (2..i).collect();
    let mut seen = HashSet::new();
    let mut comps = Vec::new();
    let mut label = HashMap::new();
    for &v in h {
        if seen.insert(v) {
            let comp = g.component_of(v, &lower);
            for &x in &comp {
                seen.insert(x);
                label.insert(x, comps.len());
            }
            comps.push(comp);
        }
    }
    Pieces { comps, label }
}

/// Chooses the piece `C` for `θ_i` on the component `h` of `E_2 ∪ … ∪ E_i`
/// and returns its least vertex under `key`.
fn choose_theta_piece(
    g: &SignedColoredGraph,
    h: &[usize],
    i: usize,
    key: &dyn Fn(usize) -> VertexKey,
) -> Result<usize> {
    let pieces = pieces_of(g, h, i);
    let r = g.restrict(i, i)?;
    let lambda = top_shape(g, h, i)
        .ok_or_else(|| Error::Obstruction { color: i, reason: "component has no unique top shape".into() })?;
    let shaped: Vec<(usize, Partition, i8)> = pieces
        .comps
        .iter()
        .enumerate()
        .map(|(k, comp)| {
            let mu = component_shape(&r, comp)
                .ok_or_else(|| Error::Obstruction { color: i, reason: format!("piece {k} is not a standard graph") })?;
            Ok((k, mu, g.s(comp[0], i + 1)))
        })
        .collect::<Result<_>>()?;
    let negative: Vec<&(usize, Partition, i8)> = shaped.iter().filter(|p| p.2 == -1).collect();
    let target = if negative.is_empty() {
        top_sub_shape(&lambda)
    } else {
        negative
            .iter()
            .map(|p| &p.1)
            .find(|m| negative.iter().all(|q| dominance_leq(&q.1, m).unwrap_or(false)))
            .cloned()
    };
    let Some(mu) = target else {
        return obstruction(i, "no maximal piece shape");
    };
    shaped
        .iter()
        .filter(|p| p.1 == mu && (negative.is_empty() || p.2 == -1))
        .flat_map(|p| pieces.comps[p.0].iter().copied())
        .min_by_key(|&v| key(v))
        .ok_or_else(|| Error::Obstruction { color: i, reason: format!("no piece of shape {mu}") })
}

/// `θ_i^C` on the component of `E_2 ∪ … ∪ E_i` containing `c0`, as a map
/// of new partners, before transport along high colors.
fn theta_local(g: &SignedColoredGraph, i: usize, c0: usize) -> Result<HashMap<usize, usize>> {
    let upper: Vec<usize> = (2..=i).collect();
    let lower: Vec<usize> = (2..i).collect();
    let h = g.component_of(c0, &upper);
    let pieces = pieces_of(g, &h, i);
    let c = pieces.label[&c0];
    let adjacent: BTreeSet<usize> =
        pieces.comps[c].iter().filter_map(|&v| g.mate(i, v)).map(|u| pieces.label[&u]).filter(|&k| k != c).collect();
    let same = |x: &Signature, y: &Signature| (1..g.big_n()).all(|t| t == i + 1 || x.get(t) == y.get(t));
    let mut iso: HashMap<usize, HashMap<usize, usize>> = HashMap::new();
    for (k, comp) in pieces.comps.iter().enumerate() {
        if k == c || adjacent.contains(&k) {
            continue;
        }
        let a = comp[0];
        'found: for &b in &adjacent {
            let target = &pieces.comps[b];
            if target.len() != comp.len() {
                continue;
            }
            for &t in target {
                if let Some(m) = propagate_map(g, g, a, t, &lower, &same) {
                    if m.len() == comp.len() {
                        iso.insert(k, m);
                        break 'found;
                    }
                }
            }
        }
    }
    let mut f = HashMap::new();
    for &v in &h {
        let Some(y) = g.mate(i, v) else { continue };
        let (lv, ly) = (pieces.label[&v], pieces.label[&y]);
        if adjacent.contains(&lv) {
            if let Some(m) = iso.get(&ly) {
                f.insert(v, m[&y]);
            }
        } else if adjacent.contains(&ly) {
            if let Some(m) = iso.get(&lv) {
                f.insert(v, g.e(i, m[&v]));
            }
        }
    }
    if f.is_empty() {
        return obstruction(i, "theta changes nothing");
    }
    Ok(f)
}

/// `θ_i^C(G)`, applied on the component of `c0` and transported to every
/// component reached through colors `≥ i + 3` so that axiom 5 survives.
pub fn apply_theta(g: &SignedColoredGraph, i: usize, c0: usize) -> Result<SignedColoredGraph> {
    let upper: Vec<usize> = (2..=i).collect();
    let high: Vec<usize> = g.colors().filter(|&j| j >= i + 3).collect();
    let local = theta_local(g, i, c0)?;
    let h0 = g.component_of(c0, &upper);
    let mut f: HashMap<usize, usize> = HashMap::new();
    let mut assigned: HashSet<usize> = h0.iter().copied().collect();
    for &v in &h0 {
        f.insert(v, local.get(&v).copied().or_else(|| g.mate(i, v)).unwrap_or(v));
    }
    let mut queue: VecDeque<Vec<usize>> = VecDeque::from([h0]);
    while let Some(comp) = queue.pop_front() {
        for &j in &high {
            let moved: Vec<usize> = comp.iter().filter_map(|&v| g.mate(j, v)).collect();
            if moved.is_empty() {
                continue;
            }
            if moved.len() != comp.len() {
                return obstruction(i, format!("color {j} does not carry a whole component"));
            }
            for &v in &comp {
                let y = g.e(j, v);
                let image = g.e(j, f[&v]);
                match f.get(&y) {
                    Some(&old) if assigned.contains(&y) => {
                        if old != image {
                            return obstruction(i, format!("transport along color {j} disagrees at {y}"));
                        }
                    }
                    _ => {
                        f.insert(y, image);
                    }
                }
            }
            let fresh: Vec<usize> = moved.iter().copied().filter(|y| !assigned.contains(y)).collect();
            if !fresh.is_empty() {
                let next = g.component_of(fresh[0], &upper);
                let image: BTreeSet<usize> = moved.iter().copied().collect();
                if next.len() != image.len() || next.iter().any(|v| !image.contains(v)) {
                    return obstruction(i, format!("color {j} does not map a component onto a component"));
                }
                assigned.extend(fresh.iter().copied());
                queue.push_back(next);
            }
        }
    }
    f.retain(|&v, &mut p| p != v);
    rewire(g, i, &f)
}

/// Applies one move.
pub fn apply_move(g: &SignedColoredGraph, m: Move) -> Result<SignedColoredGraph> {
    match m.map {
        MapKind::Phi => apply_phi(g, m.i, m.anchor),
        MapKind::Psi => apply_psi(g, m.i, m.anchor),
        MapKind::Theta => apply_theta(g, m.i, m.anchor),
    }
}

/// Replays a log on `g`.
pub fn replay(g: &SignedColoredGraph, log: &[Event]) -> Result<SignedColoredGraph> {
    let mut h = g.clone();
    for e in log {
        h = apply_move(&h, Move { map: e.map, i: e.i, anchor: e.anchor })?;
    }
    Ok(h)
}

type VertexKey = (Option<Vec<usize>>, Option<String>, usize);

/// Axioms 1, 2, 3 at the touched colors, axiom 5 everywhere, and local
/// Schur positivity of every window containing a touched color.
fn guard(g: &SignedColoredGraph, touched: &BTreeSet<usize>) -> bool {
    touched.iter().all(|&c| ax1_at(g, c).holds() && ax2_at(g, c).holds() && ax3_at(g, c).holds())
        && g.colors().all(|c| ax5_at(g, c).holds())
        && touched.iter().flat_map(|&c| c..=c + 2).unique().filter(|&c| g.has_color(c)).all(|c| lsp_at(g, c).holds())
}

/// Mutable state of the driver.
struct TransformState {
    graph: SignedColoredGraph,
    stage: usize,
    log: Vec<Event>,
    searched: usize,
    keys: Vec<VertexKey>,
}

/// What a tentative step must achieve besides the guard.
#[derive(Clone, Copy)]
enum Goal {
    ShrinkW(usize),
    ShrinkX(usize),
    Split(usize),
}

const SEARCH_LIMIT: usize = 4000;
const NEIGHBORHOOD_RADIUS: usize = 3;

impl TransformState {
    fn key(&self, v: usize) -> VertexKey {
        self.keys[v].clone()
    }

    fn sorted(&self, mut vs: Vec<usize>) -> Vec<usize> {
        vs.sort_by_key(|&v| self.key(v));
        vs
    }

    fn fail(&self, reason: impl Into<String>) -> Error {
        Error::TransformFailed { reason: reason.into(), log: self.log.clone() }
    }

    fn accept(&mut self, g: SignedColoredGraph, moves: &[Move]) {
        for m in moves {
            self.log.push(Event { step: self.log.len(), map: m.map, i: m.i, anchor: m.anchor });
        }
        self.graph = g;
    }

    fn achieved(&self, h: &SignedColoredGraph, goal: Goal) -> bool {
        let i = self.stage;
        match goal {
            Goal::ShrinkW(before) => witnesses_w(h, i).len() < before,
            Goal::ShrinkX(before) => witnesses_x(h, i).len() < before && witnesses_w(h, i).is_empty(),
            Goal::Split(before) => {
                witnesses_w(h, i).is_empty()
                    && witnesses_x(h, i).is_empty()
                    && h.components(&(2..=i).collect_vec()).len() > before
                    && h.restrict(i + 1, h.big_n()).is_ok_and(|r| (3..=i).all(|c| ax4_at(&r, c).holds()))
            }
        }
    }

    fn attempt(&self, moves: &[Move], goal: Goal) -> Option<SignedColoredGraph> {
        let mut h = self.graph.clone();
        for &m in moves {
            h = apply_move(&h, m).ok()?;
        }
        let touched: BTreeSet<usize> = moves.iter().map(|m| m.i).collect();
        (guard(&h, &touched) && self.achieved(&h, goal)).then_some(h)
    }

    /// Vertices within a few steps of `seeds` along colors `i-3..=i+2`,
    /// nearest first.
    fn neighborhood(&self, seeds: &[usize], radius: usize) -> Vec<usize> {
        let g = &self.graph;
        let i = self.stage;
        let colors: Vec<usize> = (i.saturating_sub(3)..=i + 2).filter(|&c| g.has_color(c)).collect();
        let mut dist: HashMap<usize, usize> = seeds.iter().map(|&s| (s, 0)).collect();
        let mut queue: VecDeque<usize> = seeds.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            if d == radius {
                continue;
            }
            for &c in &colors {
                for &y in g.neighbors(c, v) {
                    if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                        e.insert(d + 1);
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut out: Vec<usize> = dist.keys().copied().collect();
        out.sort_by_key(|&v| (dist[&v], self.key(v)));
        out
    }

    /// Repair moves near `seeds`, in the order given by `kinds`.
    fn repairs(&self, seeds: &[usize], kinds: &[(MapKind, usize)], radius: usize) -> Vec<Move> {
        let g = &self.graph;
        let near = self.neighborhood(seeds, radius);
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for &(kind, j) in kinds {
            if !g.has_color(j) {
                continue;
            }
            for &z in &near {
                let ok = match kind {
                    MapKind::Phi => is_w_witness(g, j, z),
                    MapKind::Psi => is_x_witness(g, j, z),
                    MapKind::Theta => false,
                };
                // φ^w and φ^{E_{j-1} w} coincide.
                let canon = match kind {
                    MapKind::Phi => z.min(g.e(j - 1, z)),
                    _ => z,
                };
                if ok && seen.insert((kind, j, canon)) {
                    out.push(Move { map: kind, i: j, anchor: z });
                }
            }
        }
        out
    }

    /// Tries `main` alone, after each single repair, and finally after pairs
    /// of repairs; returns whether a step was accepted.
    fn step(&mut self, main: Move, seeds: &[usize], kinds: &[(MapKind, usize)], goal: Goal, deep: bool) -> bool {
        if let Some(h) = self.attempt(&[main], goal) {
            self.accept(h, &[main]);
            return true;
        }
        let radius = if deep { NEIGHBORHOOD_RADIUS + 1 } else { NEIGHBORHOOD_RADIUS };
        let reps = self.repairs(seeds, kinds, radius);
        if !deep {
            for &r in &reps {
                for seq in [vec![r, main], vec![r]] {
                    if seq.len() == 1 && r.map != main.map {
                        continue;
                    }
                    if let Some(h) = self.attempt(&seq, goal) {
                        self.accept(h, &seq);
                        return true;
                    }
                }
            }
            return false;
        }
        let mut tries = 0;
        for (&r1, &r2) in reps.iter().tuple_combinations() {
            for seq in [vec![r1, r2, main], vec![r2, r1, main]] {
                tries += 1;
                if tries > SEARCH_LIMIT {
                    return false;
                }
                if let Some(h) = self.attempt(&seq, goal) {
                    self.accept(h, &seq);
                    self.searched += 1;
                    return true;
                }
            }
        }
        false
    }

    fn drain_w(&mut self) -> Result<()> {
        let i = self.stage;
        loop {
            let ws = self.sorted(witnesses_w(&self.graph, i));
            if ws.is_empty() {
                return Ok(());
            }
            let goal = Goal::ShrinkW(ws.len());
            let kinds = [
                (MapKind::Phi, i),
                (MapKind::Phi, i + 1),
                (MapKind::Psi, i + 1),
                (MapKind::Psi, i),
                (MapKind::Psi, i + 2),
            ];
            let mut done = false;
            for deep in [false, true] {
                let mut tried = HashSet::new();
                for &w in &ws {
                    let g = &self.graph;
                    let u = g.e(i - 1, w);
                    if !tried.insert(w.min(u)) {
                        continue;
                    }
                    let mut seeds = vec![w, u, g.e(i, w), g.e(i, u)];
                    if i >= 4 {
                        seeds.extend([g.e(i - 3, w), g.e(i - 3, u)]);
                    }
                    if self.step(Move::phi(i, w), &seeds, &kinds, goal, deep) {
                        done = true;
                        break;
                    }
                }
                if done {
                    break;
                }
            }
            if !done {
                return Err(self.fail(format!("no admissible phi_{i} among {} witnesses", ws.len())));
            }
        }
    }

    fn drain_x(&mut self) -> Result<()> {
        let i = self.stage;
        loop {
            let xs = self.sorted(witnesses_x(&self.graph, i));
            if xs.is_empty() {
                return Ok(());
            }
            let goal = Goal::ShrinkX(xs.len());
            let kinds = [(MapKind::Phi, i + 1), (MapKind::Psi, i + 1), (MapKind::Psi, i + 2), (MapKind::Psi, i)];
            let mut done = false;
            for deep in [false, true] {
                for &x in &xs {
                    let g = &self.graph;
                    let seeds = vec![x, g.e(i, x), g.e(i - 2, x), g.e(i - 2, g.e(i, x))];
                    if self.step(Move::psi(i, x), &seeds, &kinds, goal, deep) {
                        done = true;
                        break;
                    }
                }
                if done {
                    break;
                }
            }
            if !done {
                return Err(self.fail(format!("no admissible psi_{i} among {} witnesses", xs.len())));
            }
        }
    }

    /// Components of `E_2 ∪ … ∪ E_i` violating axiom 6, least key first.
    fn theta_targets(&self) -> Result<Vec<Vec<usize>>> {
        let i = self.stage;
        let g = &self.graph;
        let r = g.restrict(i + 1, g.big_n())?;
        let mut out = Vec::new();
        for comp in g.components(&(2..=i).collect_vec()) {
            if comp.len() > 1 && !ax6_at(&r.induced(&comp), i).holds() {
                out.push(comp);
            }
        }
        out.sort_by_key(|c| c.iter().map(|&v| self.key(v)).min());
        Ok(out)
    }

    fn drain_theta(&mut self) -> Result<()> {
        let i = self.stage;
        let cap = 4 * self.graph.len() + 8;
        for _ in 0..cap {
            let targets = self.theta_targets()?;
            if targets.is_empty() {
                return Ok(());
            }
            let goal = Goal::Split(self.graph.components(&(2..=i).collect_vec()).len());
            let kinds = [(MapKind::Phi, i + 1), (MapKind::Psi, i + 1), (MapKind::Psi, i + 2)];
            let mut done = false;
            'outer: for deep in [false, true] {
                for h in &targets {
                    let keyf = |v: usize| self.key(v);
                    let c0 = match choose_theta_piece(&self.graph, h, i, &keyf) {
                        Ok(c) => c,
                        Err(_) => continue,
                    };
                    let seeds: Vec<usize> = h.iter().copied().take(64).collect();
                    if self.step(Move::theta(i, c0), &seeds, &kinds, goal, deep) {
                        done = true;
                        break 'outer;
                    }
                }
            }
            if !done {
                return Err(self.fail(format!("no admissible theta_{i}")));
            }
        }
        Err(self.fail(format!("theta_{i} did not reach axiom 6 within {cap} steps")))
    }

    fn verify_stage(&self) -> Result<()> {
        let i = self.stage;
        let r = self.graph.restrict(i + 1, self.graph.big_n())?;
        let report = check_selected(&r, &Axiom::DEG);
        if !report.all_hold(&Axiom::DEG) {
            return Err(self.fail(format!("stage {i} ends without a dual equivalence graph:\n{report}")));
        }
        Ok(())
    }
}

/// Rewires the `i`-edges of a D graph, `i = 2..n-1`, until every axiom 1–6
/// holds. Vertices, signatures and payloads are unchanged.
pub fn transform_to_deg(g: &SignedColoredGraph) -> Result<Transformed> {
    let fail = |reason: String| Error::TransformFailed { reason, log: vec![] };
    if check_selected(g, &Axiom::DEG).all_hold(&Axiom::DEG) {
        return Ok(Transformed { graph: g.clone(), log: vec![], searched: 0 });
    }
    let pre = check_selected(g, &[Axiom::Ax1, Axiom::Ax2, Axiom::Ax3, Axiom::Ax5, Axiom::Lsp]);
    if !pre.failing().is_empty() {
        return Err(fail(format!("input is not a D graph:\n{pre}")));
    }
    let keys = g.vertices().iter().enumerate().map(|(k, v)| (v.word.clone(), v.name.clone(), k)).collect();
    let mut state = TransformState { graph: g.clone(), stage: 2, log: vec![], searched: 0, keys };
    for i in 2..g.n() {
        state.stage = i;
        if i < g.big_n() {
            state.drain_w()?;
            state.drain_x()?;
        }
        state.drain_theta()?;
        state.verify_stage()?;
    }
    let report = check_selected(&state.graph, &Axiom::DEG);
    if !report.all_hold(&Axiom::DEG) {
        return Err(state.fail(format!("result is not a dual equivalence graph:\n{report}")));
    }
    if state.graph.vertices() != g.vertices() {
        return Err(state.fail("vertex data changed"));
    }
    Ok(Transformed { graph: state.graph, log: state.log, searched: state.searched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{build_standard_deg, find_isomorphism};

    fn shapes_of(g: &SignedColoredGraph) -> Vec<String> {
        g.components(&g.all_colors())
            .iter()
            .map(|c| component_shape(g, c).map_or("none".into(), |l| l.to_string()))
            .sorted()
            .collect()
    }

    #[test]
    fn standard_graphs_are_fixed() {
        for l in Partition::all(5) {
            let g = build_standard_deg(&l, None).unwrap();
            let out = transform_to_deg(&g).unwrap();
            assert!(out.log.is_empty());
            assert_eq!(out.graph, g);
        }
    }

    #[test]
    fn box_opens() {
        let g = fixtures::BOX.build().unwrap();
        let out = transform_to_deg(&g).unwrap();
        let maps: Vec<String> = out.log.iter().map(|e| format!("{}{}", e.map, e.i)).collect();
        assert!(maps.contains(&"phi3".to_string()) && maps.contains(&"phi4".to_string()), "{maps:?}");
        assert_eq!(shapes_of(&out.graph), ["(2,2,1)", "(3,1,1)", "(3,2)"]);
        let open = fixtures::OPEN_BOX.build().unwrap();
        assert!(find_isomorphism(&out.graph, &open).is_some());
        assert_eq!(out.graph.edge_profile(), open.edge_profile());
        assert_eq!(replay(&g, &out.log).unwrap(), out.graph);
    }

    #[test]
    fn frog_dissects() {
        let g = fixtures::FROG.build().unwrap();
        let out = transform_to_deg(&g).unwrap();
        let maps: BTreeSet<String> = out.log.iter().map(|e| format!("{}{}", e.map, e.i)).collect();
        for m in ["phi3", "phi4", "psi4"] {
            assert!(maps.contains(m), "{maps:?}");
        }
        assert_eq!(shapes_of(&out.graph), ["(3,1,1)", "(3,2)", "(4,1)"]);
        let dissect = fixtures::DISSECT.build().unwrap();
        assert_eq!(out.graph.edge_profile(), dissect.edge_profile());
        assert_eq!(replay(&g, &out.log).unwrap(), out.graph);
    }

    #[test]
    fn cover_splits() {
        let g = fixtures::GREGG.build().unwrap();
        let out = transform_to_deg(&g).unwrap();
        assert_eq!(shapes_of(&out.graph), ["(3,2,1)", "(3,2,1)"]);
        assert!(out.log.iter().any(|e| e.map == MapKind::Theta));
    }

    #[test]
    fn event_json() {
        let e = Event { step: 0, map: MapKind::Psi, i: 4, anchor: 7 };
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(text, r#"{"step":0,"map":"psi","i":4,"anchor":7}"#);
        assert_eq!(serde_json::from_str::<Event>(&text).unwrap(), e);
    }
}
