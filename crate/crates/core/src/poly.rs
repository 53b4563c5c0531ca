//! Sparse Laurent polynomials in `q` and `t` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// `Σ c · q^a t^b`, keyed by `(a, b)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Poly {
    terms: BTreeMap<(i32, i32), i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(1, 0, 0)
    }

    pub fn constant(c: i64) -> Self {
        Poly::monomial(c, 0, 0)
    }

    /// `c · q^a t^b`.
    pub fn monomial(c: i64, a: i32, b: i32) -> Self {
        let mut p = Poly::zero();
        p.add_term(c, a, b);
        p
    }

    /// `q^a`.
    pub fn q_pow(a: i32) -> Self {
        Poly::monomial(1, a, 0)
    }

    pub fn add_term(&mut self, c: i64, a: i32, b: i32) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// True iff every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a >= 0 && b >= 0)
    }

    pub fn uses_t(&self) -> bool {
        self.terms.keys().any(|&(_, b)| b != 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn coeff(&self, a: i32, b: i32) -> i64 {
        self.terms.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Value at `q = t = 1`.
    pub fn at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Sets `q = 1`, keeping `t`.
    pub fn at_q_one(&self) -> Poly {
        let mut out = Poly::zero();
        for (&(_, b), &c) in &self.terms {
            out.add_term(c, 0, b);
        }
        out
    }

    /// Multiplies by `q^a t^b`.
    pub fn shift(&self, a: i32, b: i32) -> Poly {
        Poly { terms: self.terms.iter().map(|(&(x, y), &c)| ((x + a, y + b), c)).collect() }
    }

    pub fn scale(&self, c: i64) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(&k, &v)| (k, v * c)).collect() }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (&(a, b), &c) in &rhs.terms {
            self.add_term(c, a, b);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (&(a, b), &c) in &rhs.terms {
            self.add_term(-c, a, b);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(a, b), &c) in &self.terms {
            for (&(x, y), &d) in &rhs.terms {
                out.add_term(c * d, a + x, b + y);
            }
        }
        out
    }
}

fn monomial_text(a: i32, b: i32) -> String {
    let var = |name: &str, e: i32| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    [var("q", a), var("t", b)].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("*")
}

impl fmt::Display for Poly {
    /// Terms in increasing total degree, e.g. `1 + 2*q + q*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| (a + b, a, b));
        for (idx, (a, b)) in keys.into_iter().enumerate() {
            let c = self.terms[&(a, b)];
            let mono = monomial_text(a, b);
            let mag = c.unsigned_abs();
            let body = match (mono.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => mono,
                (false, _) => format!("{mag}*{mono}"),
            };
            match (idx, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
