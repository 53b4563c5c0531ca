//! Partitions, skew diagrams with absolute coordinates, tuples of shapes,
//! standard tableau enumeration, reading words and descent signatures.
//!
//! Coordinates are French: `Cell { col, row }` with row 1 at the bottom and
//! `content = col - row` (plus the shape's offset).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Default cap on the number of cells handed to an enumeration.
pub const DEFAULT_SIZE_BOUND: usize = 10;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("{parts:?} is not a partition"));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `j` counted from 1; zero past the end.
    pub fn part(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.0.get(j - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        Partition((1..=width).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (1..=other.len()).all(|j| other.part(j) <= self.part(j))
    }

    /// Cells of the diagram, bottom row first.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for (j, &p) in self.0.iter().enumerate() {
            for i in 1..=p {
                out.push(Cell::new(i as i32, (j + 1) as i32));
            }
        }
        out
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Dominance `self ≤ other`.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        dominance_leq(self, other)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// True iff `mu ≤ lambda` in dominance order.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.size() != lambda.size() {
        return domain(format!("dominance needs equal sizes, got {mu} and {lambda}"));
    }
    let (mut a, mut b) = (0usize, 0usize);
    for j in 1..=mu.len().max(lambda.len()) {
        a += mu.part(j);
        b += lambda.part(j);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finite sequence of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn is_partition(&self) -> bool {
        self.0.iter().all(|&p| p > 0) && self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn to_partition(&self) -> Option<Partition> {
        self.is_partition().then(|| Partition(self.0.clone()))
    }
}

/// A cell at column `col` and row `row`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub col: i32,
    pub row: i32,
}

impl Cell {
    pub const fn new(col: i32, row: i32) -> Self {
        Cell { col, row }
    }
}

/// A skew diagram at an absolute position. Translates are distinct shapes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewShape {
    cells: BTreeSet<Cell>,
    offset: (i32, i32),
}

impl SkewShape {
    /// The diagram `outer / inner` shifted by `offset = (dc, dr)` for contents.
    pub fn new(outer: &Partition, inner: &Partition, offset: (i32, i32)) -> Result<Self> {
        if !outer.contains(inner) {
            return domain(format!("{inner} is not contained in {outer}"));
        }
        let cells = (1..=outer.len())
            .flat_map(|j| (inner.part(j) + 1..=outer.part(j)).map(move |i| Cell::new(i as i32, j as i32)))
            .collect();
        Ok(SkewShape { cells, offset })
    }

    pub fn straight(lambda: &Partition) -> Self {
        SkewShape::new(lambda, &Partition::empty(), (0, 0)).expect("straight shape")
    }

    /// Builds a shape from its cells, checking they form a skew diagram.
    pub fn from_cells(cells: impl IntoIterator<Item = Cell>, offset: (i32, i32)) -> Result<Self> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if cells.iter().any(|c| c.col < 1 || c.row < 1) {
            return domain("cells must have positive coordinates");
        }
        let shape = SkewShape { cells, offset };
        let (outer, inner) = shape.bounding_partitions()?;
        let rebuilt = SkewShape::new(&outer, &inner, offset)?;
        if rebuilt.cells != shape.cells {
            return domain("cells do not form a skew diagram");
        }
        Ok(shape)
    }

    /// Minimal `(outer, inner)` with `outer / inner` equal to the cell set.
    pub fn bounding_partitions(&self) -> Result<(Partition, Partition)> {
        let top = self.cells.iter().map(|c| c.row).max().unwrap_or(0) as usize;
        let mut outer = vec![0usize; top];
        let mut inner = vec![0usize; top];
        let mut reach = 0usize;
        for j in (1..=top).rev() {
            let row: Vec<i32> = self.cells.iter().filter(|c| c.row == j as i32).map(|c| c.col).collect();
            if let Some(&m) = row.iter().max() {
                reach = reach.max(m as usize);
            }
            outer[j - 1] = reach;
            inner[j - 1] = reach - row.len();
        }
        Ok((Partition::new(outer)?, Partition::new(inner)?))
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    pub fn offset(&self) -> (i32, i32) {
        self.offset
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.cells.contains(cell)
    }

    /// Content of a cell including the offset.
    pub fn content(&self, cell: &Cell) -> Result<i32> {
        if !self.contains(cell) {
            return domain(format!("cell ({},{}) not in shape", cell.col, cell.row));
        }
        Ok(self.content_unchecked(cell))
    }

    fn content_unchecked(&self, cell: &Cell) -> i32 {
        (cell.col + self.offset.0) - (cell.row + self.offset.1)
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (outer, inner) = self.bounding_partitions().map_err(|_| fmt::Error)?;
        write!(f, "{}", outer.parts().iter().join(","))?;
        if !inner.is_empty() {
            write!(f, "/{}", inner.parts().iter().join(","))?;
        }
        if self.offset != (0, 0) {
            write!(f, "@{},{}", self.offset.0, self.offset.1)?;
        }
        Ok(())
    }
}

/// Content of `cell` in `shape`.
pub fn content(cell: &Cell, shape: &SkewShape) -> Result<i32> {
    shape.content(cell)
}

/// `k · content + component_index`.
pub fn shifted_content(content: i32, component_index: usize, k: usize) -> Result<i32> {
    if component_index >= k {
        return domain(format!("component index {component_index} out of range for k = {k}"));
    }
    Ok(k as i32 * content + component_index as i32)
}

/// An ordered tuple of skew shapes; the index enters the shifted content.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TupleShape {
    components: Vec<SkewShape>,
}

impl TupleShape {
    pub fn new(components: Vec<SkewShape>) -> Result<Self> {
        if components.is_empty() {
            return domain("a tuple needs at least one component");
        }
        Ok(TupleShape { components })
    }

    pub fn single(shape: SkewShape) -> Self {
        TupleShape { components: vec![shape] }
    }

    pub fn components(&self) -> &[SkewShape] {
        &self.components
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(SkewShape::size).sum()
    }

    /// Every cell tagged with its component, in reading order.
    pub fn reading_cells(&self) -> Vec<(usize, Cell)> {
        let k = self.k() as i32;
        let mut all: Vec<(usize, Cell)> =
            self.components.iter().enumerate().flat_map(|(idx, s)| s.cells().map(move |&c| (idx, c))).collect();
        all.sort_by_key(|&(idx, c)| (k * self.components[idx].content_unchecked(&c) + idx as i32, c.row));
        all
    }

    /// Shifted contents of the cells in reading order.
    pub fn reading_contents(&self) -> Vec<i32> {
        let k = self.k() as i32;
        self.reading_cells()
            .iter()
            .map(|&(idx, c)| k * self.components[idx].content_unchecked(&c) + idx as i32)
            .collect()
    }
}

impl fmt::Display for TupleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.components.iter().join(";"))
    }
}

/// A standard filling of a tuple shape by `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardTupleTableau {
    shape: TupleShape,
    entries: Vec<BTreeMap<Cell, usize>>,
}

impl StandardTupleTableau {
    /// Validates rows increasing eastward, columns increasing northward and
    /// a bijection onto `1..=n`.
    pub fn new(shape: TupleShape, entries: Vec<BTreeMap<Cell, usize>>) -> Result<Self> {
        if entries.len() != shape.k() {
            return domain("one entry map per component is required");
        }
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for (s, e) in shape.components().iter().zip(&entries) {
            if e.len() != s.size() || s.cells().any(|c| !e.contains_key(c)) {
                return domain("entries must cover exactly the cells");
            }
            for (c, &v) in e {
                if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                    return domain("entries must be a bijection onto 1..n");
                }
                let west = Cell::new(c.col - 1, c.row);
                let south = Cell::new(c.col, c.row - 1);
                if e.get(&west).is_some_and(|&x| x > v) || e.get(&south).is_some_and(|&x| x > v) {
                    return domain("tableau is not standard");
                }
            }
        }
        Ok(StandardTupleTableau { shape, entries })
    }

    pub fn shape(&self) -> &TupleShape {
        &self.shape
    }

    pub fn entries(&self) -> &[BTreeMap<Cell, usize>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// Entries in increasing shifted content, southwest to northeast on ties.
    pub fn content_reading_word(&self) -> Vec<usize> {
        self.shape.reading_cells().iter().map(|(idx, c)| self.entries[*idx][c]).collect()
    }
}

/// Entries read by increasing shifted content.
pub fn content_reading_word(t: &StandardTupleTableau) -> Vec<usize> {
    t.content_reading_word()
}

/// A vector of ±1 signs, `sigma[i-1]` being `σ_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature(pub Vec<i8>);

impl Signature {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ_i` for `1 ≤ i ≤ len`; zero outside that range.
    pub fn get(&self, i: usize) -> i8 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Coordinates `lo..=hi`, one-based.
    pub fn window(&self, lo: usize, hi: usize) -> Signature {
        Signature((lo..=hi).map(|i| self.get(i)).collect())
    }

    pub fn truncate(&self, len: usize) -> Signature {
        Signature(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|ch| match ch {
                '+' => Ok(1),
                '-' | '−' => Ok(-1),
                _ => Err(Error::Parse(format!("bad signature character {ch:?}"))),
            })
            .collect::<Result<Vec<i8>>>()
            .map(Signature)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// `σ_i = +1` iff `i` precedes `i + 1` in the permutation `w`.
pub fn descent_signature(w: &[usize]) -> Signature {
    let n = w.len();
    let mut pos = vec![0usize; n + 1];
    for (p, &v) in w.iter().enumerate() {
        pos[v] = p;
    }
    Signature((1..n).map(|i| if pos[i] < pos[i + 1] { 1 } else { -1 }).collect())
}

/// Lengths of the runs of `+1`, closed by each `-1` and a final virtual `-1`.
pub fn runs_composition(sigma: &Signature) -> Composition {
    let big_n = sigma.len() + 1;
    let mut parts = Vec::new();
    let mut last = 0usize;
    for i in 1..big_n {
        if sigma.get(i) < 0 {
            parts.push(i - last);
            last = i;
        }
    }
    parts.push(big_n - last);
    Composition(parts)
}

/// All standard fillings of `shape`, ordered by content reading word.
pub fn enumerate_standard(shape: &TupleShape) -> Result<Vec<StandardTupleTableau>> {
    enumerate_standard_bounded(shape, DEFAULT_SIZE_BOUND)
}

/// As [`enumerate_standard`] with an explicit size bound.
pub fn enumerate_standard_bounded(shape: &TupleShape, bound: usize) -> Result<Vec<StandardTupleTableau>> {
    let n = shape.size();
    if n > bound {
        return Err(Error::SizeBound { size: n, bound });
    }
    let comps = shape.components();
    let mut entries: Vec<BTreeMap<Cell, usize>> = vec![BTreeMap::new(); comps.len()];
    let mut out = Vec::new();
    fill(comps, &mut entries, 1, n, &mut out);
    let mut tabs: Vec<StandardTupleTableau> =
        out.into_iter().map(|entries| StandardTupleTableau { shape: shape.clone(), entries }).collect();
    tabs.sort_by_cached_key(|t| t.content_reading_word());
    Ok(tabs)
}

fn fill(
    comps: &[SkewShape],
    entries: &mut Vec<BTreeMap<Cell, usize>>,
    next: usize,
    n: usize,
    out: &mut Vec<Vec<BTreeMap<Cell, usize>>>,
) {
    if next > n {
        out.push(entries.clone());
        return;
    }
    for (idx, s) in comps.iter().enumerate() {
        let addable: Vec<Cell> = s
            .cells()
            .filter(|c| !entries[idx].contains_key(c))
            .filter(|c| {
                let west = Cell::new(c.col - 1, c.row);
                let south = Cell::new(c.col, c.row - 1);
                (!s.contains(&west) || entries[idx].contains_key(&west))
                    && (!s.contains(&south) || entries[idx].contains_key(&south))
            })
            .copied()
            .collect();
        for c in addable {
            entries[idx].insert(c, next);
            fill(comps, entries, next + 1, n, out);
            entries[idx].remove(&c);
        }
    }
}

/// Parses `outer/inner@dc,dr` items separated by `;`.
pub fn parse_tuple_shape(spec: &str) -> Result<TupleShape> {
    let comps = spec.split(';').map(|item| parse_skew_shape(item.trim())).collect::<Result<Vec<_>>>()?;
    TupleShape::new(comps)
}

/// Parses a single `outer/inner@dc,dr` item.
pub fn parse_skew_shape(item: &str) -> Result<SkewShape> {
    let (body, offset) = match item.split_once('@') {
        Some((b, o)) => {
            let (dc, dr) = o.split_once(',').ok_or_else(|| Error::Parse(format!("offset {o:?} needs two integers")))?;
            (b, (parse_int(dc)?, parse_int(dr)?))
        }
        None => (item, (0, 0)),
    };
    let (outer, inner) = match body.split_once('/') {
        Some((o, i)) => (parse_partition(o)?, parse_partition(i)?),
        None => (parse_partition(body)?, Partition::empty()),
    };
    SkewShape::new(&outer, &inner, offset)
}

/// Parses a comma-separated partition; `0` or the empty string is empty.
pub fn parse_partition(s: &str) -> Result<Partition> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_int(s: &str) -> Result<i32> {
    s.trim().parse::<i32>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn contents_of_listed_cells() {
        let s = SkewShape::straight(&p(&[5, 4, 4, 1]));
        assert_eq!(s.content(&Cell::new(1, 1)).unwrap(), 0);
        assert_eq!(s.content(&Cell::new(5, 1)).unwrap(), 4);
        assert_eq!(s.content(&Cell::new(1, 4)).unwrap(), -3);
        assert!(s.content(&Cell::new(2, 4)).is_err());
        assert_eq!(shifted_content(0, 0, 4).unwrap(), 0);
        assert_eq!(shifted_content(1, 3, 4).unwrap(), 7);
        assert!(shifted_content(0, 4, 4).is_err());
    }

    #[test]
    fn offsets_distinguish_translates() {
        let a = SkewShape::new(&p(&[2, 1]), &p(&[]), (0, 0)).unwrap();
        let b = SkewShape::new(&p(&[2, 1]), &p(&[]), (1, 1)).unwrap();
        assert_ne!(a, b);
        assert_eq!(b.content(&Cell::new(1, 1)).unwrap(), 0);
        let c = SkewShape::new(&p(&[2, 1]), &p(&[]), (1, 0)).unwrap();
        assert_eq!(c.content(&Cell::new(1, 1)).unwrap(), 1);
    }

    #[test]
    fn signatures_and_runs() {
        assert_eq!(descent_signature(&[3, 1, 4, 2, 5]).to_string(), "+-++");
        assert_eq!(descent_signature(&[1, 2, 3, 4]).to_string(), "+++");
        assert_eq!(descent_signature(&[4, 3, 2, 1]).to_string(), "---");
        assert_eq!(runs_composition(&Signature::parse("++++").unwrap()).0, vec![5]);
        assert_eq!(runs_composition(&Signature::parse("+-+-").unwrap()).0, vec![2, 2, 1]);
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[2, 2, 1]), &p(&[3, 2])).unwrap());
        assert!(!dominance_leq(&p(&[3, 3]), &p(&[4, 1, 1])).unwrap());
        assert!(!dominance_leq(&p(&[4, 1, 1]), &p(&[3, 3])).unwrap());
        assert!(dominance_leq(&p(&[1]), &p(&[2])).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let count = |v: &[usize]| enumerate_standard(&TupleShape::single(SkewShape::straight(&p(v)))).unwrap().len();
        assert_eq!(count(&[3, 2]), 5);
        assert_eq!(count(&[4]), 1);
        assert_eq!(count(&[3, 2, 1]), 16);
    }

    #[test]
    fn skew_from_cells_round_trip() {
        let s = SkewShape::new(&p(&[3, 3, 3, 2]), &p(&[3, 3, 1]), (0, 0)).unwrap();
        let back = SkewShape::from_cells(s.cells().copied(), (0, 0)).unwrap();
        assert_eq!(s, back);
        assert_eq!(back.to_string(), "3,3,3,2/3,3,1");
        assert!(SkewShape::from_cells([Cell::new(1, 1), Cell::new(2, 2)], (0, 0)).is_err());
        assert!(
            SkewShape::from_cells([Cell::new(2, 1), Cell::new(1, 2), Cell::new(2, 2), Cell::new(1, 1)], (0, 0)).is_ok()
        );
        assert!(SkewShape::from_cells([Cell::new(1, 2)], (0, 0)).is_ok());
        assert!(SkewShape::from_cells([Cell::new(1, 1), Cell::new(3, 1)], (0, 0)).is_err());
    }

    #[test]
    fn parse_grammar() {
        let t = parse_tuple_shape("3,2/0@0,0;2,1/1@0,0").unwrap();
        assert_eq!(t.k(), 2);
        assert_eq!(t.size(), 7);
        assert_eq!(t.to_string(), "3,2;2,1/1");
        let u = parse_tuple_shape("2;1,1@1,-1").unwrap();
        assert_eq!(u.components()[1].offset(), (1, -1));
        assert!(parse_tuple_shape("2,3").is_err());
    }
}
