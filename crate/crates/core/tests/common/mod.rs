//! Shape enumeration shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use llt_deg::shapes::{Partition, SkewShape, TupleShape};

/// Skew shapes `λ/μ` of size `m` in which every row and every column of
/// `λ` meets `λ/μ`; each translation class of diagrams appears once.
pub fn basic_skew_shapes(m: usize) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for outer_size in m..=2 * m {
        for outer in Partition::all(outer_size) {
            for inner in Partition::all(outer_size - m) {
                if !outer.contains(&inner) {
                    continue;
                }
                let rows = (1..=outer.len()).all(|j| outer.part(j) > inner.part(j));
                let (oc, ic) = (outer.conjugate(), inner.conjugate());
                let cols = (1..=oc.len()).all(|c| oc.part(c) > ic.part(c));
                if rows && cols {
                    out.push(SkewShape::new(&outer, &inner, (0, 0)).expect("nested partitions"));
                }
            }
        }
    }
    out
}

/// Ordered `k`-tuples of nonempty basic skew shapes of total size `n`.
pub fn tuple_shapes(n: usize, k: usize) -> Vec<TupleShape> {
    let by_size: Vec<Vec<SkewShape>> = (0..=n).map(basic_skew_shapes).collect();
    let mut out = Vec::new();
    for sizes in (0..k).map(|_| 1..=n).multi_cartesian_product() {
        if sizes.iter().sum::<usize>() != n {
            continue;
        }
        for pick in sizes.iter().map(|&s| by_size[s].iter().cloned()).multi_cartesian_product() {
            out.push(TupleShape::new(pick).expect("nonempty tuple"));
        }
    }
    out
}

/// Ordered `k`-tuples of nonempty partitions of total size `n`.
pub fn straight_tuples(n: usize, k: usize) -> Vec<TupleShape> {
    let mut out = Vec::new();
    for sizes in (0..k).map(|_| 1..=n).multi_cartesian_product() {
        if sizes.iter().sum::<usize>() != n {
            continue;
        }
        for pick in sizes.iter().map(|&s| Partition::all(s)).multi_cartesian_product() {
            out.push(TupleShape::new(pick.iter().map(SkewShape::straight).collect()).expect("nonempty tuple"));
        }
    }
    out
}
