//! Fillings of partition diagrams, Haglund's statistics, the transformed
//! Macdonald polynomial and its decomposition into LLT polynomials.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::llt::llt_polynomial;
use crate::poly::Poly;
use crate::shapes::{descent_signature, Cell, Partition, SkewShape, TupleShape};
use crate::symfunc::{extract_schur, QSym, SchurPoly};

/// Default cap on `|μ|` for full filling enumeration.
pub const MACDONALD_SIZE_BOUND: usize = 7;

/// A bijective filling of the diagram of `shape` by `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filling {
    shape: Partition,
    entries: BTreeMap<Cell, usize>,
}

impl Filling {
    pub fn new(shape: Partition, entries: BTreeMap<Cell, usize>) -> Result<Self> {
        let cells: BTreeSet<Cell> = shape.cells().into_iter().collect();
        let keys: BTreeSet<Cell> = entries.keys().copied().collect();
        let vals: BTreeSet<usize> = entries.values().copied().collect();
        if cells != keys || vals != (1..=shape.size()).collect() {
            return domain("a filling must biject the cells of μ onto 1..n");
        }
        Ok(Filling { shape, entries })
    }

    /// Builds a filling from rows listed bottom to top.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().enumerate().map(move |(i, &v)| (Cell::new(i as i32 + 1, j as i32 + 1), v)))
            .collect();
        Filling::new(shape, entries)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn get(&self, c: &Cell) -> Option<usize> {
        self.entries.get(c).copied()
    }

    /// Rows from top to bottom, each read west to east.
    pub fn row_reading_word(&self) -> Vec<usize> {
        let mut cells: Vec<&Cell> = self.entries.keys().collect();
        cells.sort_by_key(|c| (-c.row, c.col));
        cells.iter().map(|c| self.entries[c]).collect()
    }
}

fn check_cell(cell: &Cell, mu: &Partition) -> Result<()> {
    if cell.row < 1 || cell.col < 1 || cell.col as usize > mu.part(cell.row as usize) {
        return domain(format!("cell ({},{}) not in {mu}", cell.col, cell.row));
    }
    Ok(())
}

/// Cells strictly east of `cell` in `μ`.
pub fn arm(cell: &Cell, mu: &Partition) -> Result<usize> {
    check_cell(cell, mu)?;
    Ok(mu.part(cell.row as usize) - cell.col as usize)
}

/// Cells strictly north of `cell` in `μ`.
pub fn leg(cell: &Cell, mu: &Partition) -> Result<usize> {
    check_cell(cell, mu)?;
    Ok(mu.conjugate().part(cell.col as usize) - cell.row as usize)
}

/// Cells above row 1 whose entry exceeds the entry just south.
pub fn descents(s: &Filling) -> BTreeSet<Cell> {
    s.entries
        .iter()
        .filter(|(c, &v)| c.row > 1 && v > s.entries[&Cell::new(c.col, c.row - 1)])
        .map(|(c, _)| *c)
        .collect()
}

/// `|D| + Σ_{c ∈ D} l(c)`.
pub fn maj_of_descents(mu: &Partition, d: &BTreeSet<Cell>) -> Result<usize> {
    d.iter().map(|c| leg(c, mu).map(|l| l + 1)).sum()
}

/// `Σ_{c ∈ D} a(c)`.
pub fn arm_of_descents(mu: &Partition, d: &BTreeSet<Cell>) -> Result<usize> {
    d.iter().map(|c| arm(c, mu)).sum()
}

pub fn maj(s: &Filling) -> usize {
    maj_of_descents(&s.shape, &descents(s)).expect("descents lie in the shape")
}

/// Attacking pairs `(c, d)` with `S(c) > S(d)`: same row with `c` west of
/// `d`, or `c` one row north of `d` and strictly east of it.
pub fn inversion_pairs(s: &Filling) -> Vec<(Cell, Cell)> {
    let mut out = Vec::new();
    for (c, &x) in &s.entries {
        for (d, &y) in &s.entries {
            let attacking = (c.row == d.row && c.col < d.col) || (c.row == d.row + 1 && c.col > d.col);
            if attacking && x > y {
                out.push((*c, *d));
            }
        }
    }
    out
}

/// `|Inv(S)| - Σ_{c ∈ Des(S)} a(c)`.
pub fn inv(s: &Filling) -> i64 {
    let a = arm_of_descents(&s.shape, &descents(s)).expect("descents lie in the shape");
    inversion_pairs(s).len() as i64 - a as i64
}

fn check_bound(mu: &Partition, bound: usize) -> Result<()> {
    if mu.size() > bound {
        return Err(Error::SizeBound { size: mu.size(), bound });
    }
    Ok(())
}

/// Every standard filling of `μ`.
pub fn all_fillings(mu: &Partition) -> Vec<Filling> {
    let cells = mu.cells();
    let n = cells.len();
    (1..=n)
        .permutations(n)
        .map(|p| Filling { shape: mu.clone(), entries: cells.iter().copied().zip(p).collect() })
        .collect()
}

/// `Σ_S q^{inv(S)} t^{maj(S)} Q_{σ(S)}` over standard fillings.
pub fn macdonald_qsym(mu: &Partition) -> Result<QSym> {
    macdonald_qsym_bounded(mu, MACDONALD_SIZE_BOUND)
}

/// As [`macdonald_qsym`] with an explicit size bound.
pub fn macdonald_qsym_bounded(mu: &Partition, bound: usize) -> Result<QSym> {
    check_bound(mu, bound)?;
    let n = mu.size();
    let fillings = all_fillings(mu);
    Ok(fillings
        .par_chunks(512)
        .map(|chunk| {
            let mut f = QSym::new(n);
            for s in chunk {
                f.add_term(descent_signature(&s.row_reading_word()), &Poly::monomial(1, inv(s) as i32, maj(s) as i32));
            }
            f
        })
        .reduce(
            || QSym::new(n),
            |mut a, b| {
                a.add_qsym(&b, &Poly::one());
                a
            },
        ))
}

/// Possible descent sets: subsets of the cells above row 1.
pub fn descent_sets(mu: &Partition) -> Vec<BTreeSet<Cell>> {
    let upper: Vec<Cell> = mu.cells().into_iter().filter(|c| c.row > 1).collect();
    upper.into_iter().powerset().map(|d| d.into_iter().collect()).collect()
}

/// The ribbon tuple of a descent set with `a(D)` and `maj(D)`.
///
/// Column `i` becomes a ribbon read from its top cell down; each next cell
/// goes south when the cell above it is in `D` and east otherwise. The
/// south-east cell gets content 0, hence shifted content `i - 1`, and the
/// ribbon is placed so that some cell lies in row 1 or column 1.
pub fn ribbons_of_descent_set(mu: &Partition, d: &BTreeSet<Cell>) -> Result<(TupleShape, usize, usize)> {
    for c in d {
        check_cell(c, mu)?;
        if c.row < 2 {
            return domain("descents lie above row 1");
        }
    }
    let heights = mu.conjugate();
    let mut ribbons = Vec::new();
    for col in 1..=mu.part(1) {
        let h = heights.part(col) as i32;
        // (col, row) offsets from the top cell, stepping down the column.
        let mut cells = vec![(0i32, 0i32)];
        for j in (1..h).rev() {
            let (c, r) = *cells.last().expect("nonempty");
            let above = Cell::new(col as i32, j + 1);
            cells.push(if d.contains(&above) { (c, r - 1) } else { (c + 1, r) });
        }
        let (ec, er) = *cells.last().expect("nonempty");
        // Shift so the south-east cell sits on the content-0 diagonal.
        let placed: Vec<(i32, i32)> = cells.iter().map(|&(c, r)| (c - ec, r - er)).collect();
        let t = 1 - placed.iter().map(|&(c, r)| c.min(r)).min().expect("nonempty");
        ribbons.push(SkewShape::from_cells(placed.iter().map(|&(c, r)| Cell::new(c + t, r + t)), (0, 0))?);
    }
    Ok((TupleShape::new(ribbons)?, arm_of_descents(mu, d)?, maj_of_descents(mu, d)?))
}

/// `Σ_D q^{-a(D)} t^{maj(D)} G̃^{(μ_1)}_{μ_D}` over all descent sets.
pub fn macdonald_via_llt(mu: &Partition) -> Result<QSym> {
    check_bound(mu, MACDONALD_SIZE_BOUND)?;
    let n = mu.size();
    let k = mu.part(1);
    let parts: Vec<Result<QSym>> = descent_sets(mu)
        .par_iter()
        .map(|d| {
            let (tuple, a, m) = ribbons_of_descent_set(mu, d)?;
            let mut out = QSym::new(n);
            out.add_qsym(&llt_polynomial(&tuple, k)?, &Poly::monomial(1, -(a as i32), m as i32));
            Ok(out)
        })
        .collect();
    let mut total = QSym::new(n);
    for p in parts {
        total.add_qsym(&p?, &Poly::one());
    }
    if let Some((s, c)) = total.terms().iter().find(|(_, c)| !c.is_polynomial()) {
        return Err(Error::Domain(format!("negative q-power survives at {s}: {c}")));
    }
    Ok(total)
}

/// `K̃_{λ,μ}(q,t)` for every `λ`.
pub fn kostka_macdonald(mu: &Partition) -> Result<SchurPoly> {
    kostka_macdonald_bounded(mu, MACDONALD_SIZE_BOUND)
}

/// As [`kostka_macdonald`] with an explicit size bound.
pub fn kostka_macdonald_bounded(mu: &Partition, bound: usize) -> Result<SchurPoly> {
    extract_schur(&macdonald_qsym_bounded(mu, bound)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_filling() -> Filling {
        Filling::from_rows(&[vec![8, 1, 13, 7, 12], vec![6, 3, 4, 10], vec![11, 14, 9, 2], vec![5]]).unwrap()
    }

    #[test]
    fn statistics_of_the_example() {
        let s = example_filling();
        assert_eq!(maj(&s), 8);
        assert_eq!(inversion_pairs(&s).len(), 17);
        assert_eq!(inv(&s), 9);
        assert_eq!(s.row_reading_word(), vec![5, 11, 14, 9, 2, 6, 3, 4, 10, 8, 1, 13, 7, 12]);
        let x = Cell::new(2, 2);
        assert_eq!((arm(&x, s.shape()).unwrap(), leg(&x, s.shape()).unwrap()), (2, 1));
    }

    #[test]
    fn ribbons_of_the_example() {
        let s = example_filling();
        let (tuple, a, m) = ribbons_of_descent_set(s.shape(), &descents(&s)).unwrap();
        let shown: Vec<String> = tuple.components().iter().map(|r| r.to_string()).collect();
        assert_eq!(shown, ["3,3,3,2/3,3,1", "1,1,1", "2,2,1/2", "2,2,2/2,1", "1"]);
        assert_eq!((a, m), (8, 8));
    }

    #[test]
    fn two_cells() {
        let mu = Partition::new(vec![2]).unwrap();
        assert_eq!(kostka_macdonald(&mu).unwrap().to_string(), "s[2] + q*s[1,1]");
    }
}
