//! Quasisymmetric aggregates, Schur expansions, ribbons and the greedy
//! Schur extraction oracle.
//!
//! A [`QSym`] of degree `N` is a finite sum `Σ c_σ Q_σ` over signatures of
//! length `N - 1` with coefficients in `Z[q^±, t^±]`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::poly::Poly;
use crate::shapes::{
    descent_signature, dominance_leq, enumerate_standard_bounded, runs_composition, Cell, Partition, Signature,
    SkewShape, TupleShape,
};

/// `Σ c_σ Q_σ` with all signatures of length `degree - 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSym {
    degree: usize,
    terms: BTreeMap<Signature, Poly>,
}

impl QSym {
    pub fn new(degree: usize) -> Self {
        QSym { degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Signature, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, sigma: &Signature) -> Poly {
        self.terms.get(sigma).cloned().unwrap_or_default()
    }

    /// Adds `c · Q_σ`.
    pub fn add_term(&mut self, sigma: Signature, c: &Poly) {
        debug_assert_eq!(sigma.len(), self.degree.saturating_sub(1));
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(sigma).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, p| !p.is_zero());
        }
    }

    pub fn add_qsym(&mut self, other: &QSym, scale: &Poly) {
        for (s, c) in &other.terms {
            self.add_term(s.clone(), &(c * scale));
        }
    }

    /// Specializes `q = 1`.
    pub fn at_q_one(&self) -> QSym {
        let mut out = QSym::new(self.degree);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), &c.at_q_one());
        }
        out
    }

    /// Removes the term at `sigma`.
    pub fn without(&self, sigma: &Signature) -> QSym {
        let mut out = self.clone();
        out.terms.remove(sigma);
        out
    }
}

impl fmt::Display for QSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let body = self.terms.iter().map(|(s, c)| format!("{}Q[{s}]", coeff_prefix(c))).join(" + ");
        f.write_str(&body)
    }
}

/// `Σ c_λ s_λ` over partitions of `degree`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurPoly {
    degree: usize,
    terms: BTreeMap<Partition, Poly>,
}

impl SchurPoly {
    pub fn new(degree: usize) -> Self {
        SchurPoly { degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Poly> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Poly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, lambda: Partition, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(lambda).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, p| !p.is_zero());
        }
    }

    pub fn add_schur(&mut self, other: &SchurPoly) {
        for (l, c) in &other.terms {
            self.add_term(l.clone(), c);
        }
    }

    /// True iff every coefficient lies in `N[q, t]`.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_nonnegative() && c.is_polynomial())
    }

    /// Expands back into fundamental quasisymmetric functions.
    pub fn to_qsym(&self) -> QSym {
        let mut out = QSym::new(self.degree);
        for (l, c) in &self.terms {
            out.add_qsym(&schur_qsym(l), c);
        }
        out
    }

    /// Partitions in reverse lexicographic order, a linear extension of
    /// dominance from the top.
    pub fn sorted_terms(&self) -> Vec<(&Partition, &Poly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp(a.0));
        v
    }
}

fn coeff_prefix(c: &Poly) -> String {
    if *c == Poly::one() {
        String::new()
    } else if c.terms().count() == 1 {
        format!("{c}*")
    } else {
        format!("({c})*")
    }
}

impl fmt::Display for SchurPoly {
    /// Renders `q*s[3,1] + q^2*s[2,1,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let body = self
            .sorted_terms()
            .into_iter()
            .map(|(l, c)| format!("{}s[{}]", coeff_prefix(c), l.parts().iter().join(",")))
            .join(" + ");
        f.write_str(&body)
    }
}

fn schur_cache() -> &'static Mutex<HashMap<Partition, Arc<Vec<Signature>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, Arc<Vec<Signature>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Descent signatures of all standard tableaux of shape `lambda`.
pub fn schur_signatures(lambda: &Partition) -> Arc<Vec<Signature>> {
    if let Some(hit) = schur_cache().lock().expect("cache lock").get(lambda) {
        return hit.clone();
    }
    let shape = TupleShape::single(SkewShape::straight(lambda));
    let sigs: Vec<Signature> = enumerate_standard_bounded(&shape, usize::MAX)
        .expect("unbounded enumeration")
        .iter()
        .map(|t| descent_signature(&t.content_reading_word()))
        .collect();
    let sigs = Arc::new(sigs);
    schur_cache().lock().expect("cache lock").insert(lambda.clone(), sigs.clone());
    sigs
}

/// `s_λ = Σ_{T ∈ SYT(λ)} Q_{σ(T)}`.
pub fn schur_qsym(lambda: &Partition) -> QSym {
    let mut out = QSym::new(lambda.size());
    for s in schur_signatures(lambda).iter() {
        out.add_term(s.clone(), &Poly::one());
    }
    out
}

/// Greedy Schur extraction.
///
/// Repeatedly takes a dominance-maximal partition among the signatures whose
/// runs composition is a partition (reverse lexicographic among incomparable
/// maxima), and subtracts its coefficient times `s_λ`.
pub fn extract_schur(f: &QSym) -> Result<SchurPoly> {
    let degree = f.degree();
    let mut out = SchurPoly::new(degree);
    if degree == 0 {
        for c in f.terms().values() {
            out.add_term(Partition::empty(), c);
        }
        return Ok(out);
    }
    let mut rem = f.clone();
    while !rem.is_zero() {
        if let Some((s, _)) = rem.terms().iter().find(|(_, c)| !c.is_nonnegative()) {
            return Err(Error::NotSchurPositive { signature: s.to_string() });
        }
        let candidates: Vec<(Partition, Signature)> =
            rem.terms().keys().filter_map(|s| runs_composition(s).to_partition().map(|p| (p, s.clone()))).collect();
        let Some((lambda, sigma)) = candidates
            .iter()
            .filter(|(l, _)| !candidates.iter().any(|(m, _)| m != l && dominance_leq(l, m).unwrap_or(false)))
            .max_by(|a, b| a.0.cmp(&b.0))
            .cloned()
        else {
            let first = rem.terms().keys().next().expect("nonzero remainder");
            return Err(Error::NotSchurPositive { signature: first.to_string() });
        };
        let c = rem.coeff(&sigma);
        rem.add_qsym(&schur_qsym(&lambda), &-&c);
        out.add_term(lambda, &c);
    }
    Ok(out)
}

/// A ribbon of size `n` determined by its descent set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ribbon {
    n: usize,
    descents: BTreeSet<usize>,
}

impl Ribbon {
    pub fn new(n: usize, descents: impl IntoIterator<Item = usize>) -> Result<Self> {
        let descents: BTreeSet<usize> = descents.into_iter().collect();
        if n == 0 {
            return domain("a ribbon has at least one cell");
        }
        if descents.iter().any(|&d| d == 0 || d >= n) {
            return domain(format!("descents of a size-{n} ribbon lie in 1..{n}"));
        }
        Ok(Ribbon { n, descents })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn descents(&self) -> &BTreeSet<usize> {
        &self.descents
    }

    /// All ribbons of size `n`.
    pub fn all(n: usize) -> Vec<Ribbon> {
        if n == 0 {
            return vec![];
        }
        (1..n).powerset().map(|d| Ribbon { n, descents: d.into_iter().collect() }).collect()
    }

    /// Cells labelled `1..=n` by content; label `i + 1` lies south of
    /// label `i` iff `i` is a descent, east otherwise.
    pub fn to_skew_shape(&self) -> SkewShape {
        let mut cells = vec![(0i32, 0i32)];
        for i in 1..self.n {
            let (c, r) = *cells.last().expect("nonempty");
            cells.push(if self.descents.contains(&i) { (c, r - 1) } else { (c + 1, r) });
        }
        let min_c = cells.iter().map(|x| x.0).min().unwrap_or(0);
        let min_r = cells.iter().map(|x| x.1).min().unwrap_or(0);
        SkewShape::from_cells(cells.iter().map(|&(c, r)| Cell::new(c - min_c + 1, r - min_r + 1)), (0, 0))
            .expect("ribbons are skew shapes")
    }
}

/// Sum of descent positions.
pub fn ribbon_maj(nu: &Ribbon) -> usize {
    nu.descents.iter().sum()
}

/// `s_ν = Σ_{Des(w) = Des(ν)} Q_{σ(w)}` over permutations `w` of `[n]`.
pub fn ribbon_schur_qsym(nu: &Ribbon) -> QSym {
    let n = nu.n;
    let mut out = QSym::new(n);
    for w in (1..=n).permutations(n) {
        let des: BTreeSet<usize> = (1..n).filter(|&i| w[i - 1] > w[i]).collect();
        if des == nu.descents {
            out.add_term(descent_signature(&w), &Poly::one());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn schur_32_expansion() {
        let f = schur_qsym(&p(&[3, 2]));
        let expected: BTreeSet<String> =
            ["+-++", "-+-+", "-++-", "+-+-", "++-+"].iter().map(|s| s.to_string()).collect();
        let got: BTreeSet<String> = f.terms().keys().map(|s| s.to_string()).collect();
        assert_eq!(got, expected);
        assert!(f.terms().values().all(|c| *c == Poly::one()));
    }

    #[test]
    fn round_trip_small() {
        for n in 1..=6 {
            for l in Partition::all(n) {
                let s = extract_schur(&schur_qsym(&l)).unwrap();
                assert_eq!(s.terms().len(), 1);
                assert_eq!(s.coeff(&l), Poly::one());
            }
        }
    }

    #[test]
    fn rendering() {
        let mut s = SchurPoly::new(4);
        s.add_term(p(&[2, 1, 1]), &Poly::q_pow(2));
        s.add_term(p(&[3, 1]), &Poly::q_pow(1));
        assert_eq!(s.to_string(), "q*s[3,1] + q^2*s[2,1,1]");
        let mut r = SchurPoly::new(3);
        r.add_term(p(&[3]), &Poly::one());
        r.add_term(p(&[2, 1]), &(&Poly::one() + &Poly::monomial(2, 1, 1)));
        assert_eq!(r.to_string(), "s[3] + (1 + 2*q*t)*s[2,1]");
    }

    #[test]
    fn ribbon_basics() {
        let nu = Ribbon::new(4, [1, 3]).unwrap();
        assert_eq!(ribbon_maj(&nu), 4);
        assert_eq!(ribbon_maj(&Ribbon::new(5, []).unwrap()), 0);
        assert_eq!(ribbon_maj(&Ribbon::new(5, 1..5).unwrap()), 10);
        assert!(Ribbon::new(3, [3]).is_err());
        assert!(Ribbon::new(0, []).is_err() && Ribbon::all(0).is_empty());
        assert_eq!(ribbon_schur_qsym(&Ribbon::new(4, []).unwrap()), schur_qsym(&p(&[4])));
        assert_eq!(ribbon_schur_qsym(&Ribbon::new(4, 1..4).unwrap()), schur_qsym(&p(&[1, 1, 1, 1])));
    }
}
