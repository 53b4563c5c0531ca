//! Signatures of the hand-encoded negative fixtures are forced by their
//! edges: the linear parts of axioms 1 and 2 leave exactly one global sign.

use llt_deg::fixtures::{Fixture, FAILS_4B, FAILS_4C, GREGG};
use llt_deg::graph::SignedColoredGraph;

/// Union-find over `(vertex, coordinate)` with parity to the root.
struct Parity {
    parent: Vec<usize>,
    odd: Vec<bool>,
}

impl Parity {
    fn new(n: usize) -> Self {
        Parity { parent: (0..n).collect(), odd: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (r, p) = self.find(self.parent[x]);
        self.parent[x] = r;
        self.odd[x] ^= p;
        (r, self.odd[x])
    }

    /// Records `x = y` (`differ == false`) or `x = -y`; false on a contradiction.
    fn relate(&mut self, x: usize, y: usize, differ: bool) -> bool {
        let ((rx, px), (ry, py)) = (self.find(x), self.find(y));
        if rx == ry {
            return px ^ py == differ;
        }
        self.parent[rx] = ry;
        self.odd[rx] = px ^ py ^ differ;
        true
    }

    fn classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x).0 == x).count()
    }
}

/// Number of sign classes left by axioms 1 and 2, or `None` if they conflict.
fn sign_classes(g: &SignedColoredGraph) -> Option<usize> {
    let m = g.n() - 1;
    let var = |v: usize, h: usize| v * m + h - 1;
    let mut p = Parity::new(g.len() * m);
    for v in 0..g.len() {
        for i in g.colors() {
            let ok = p.relate(var(v, i - 1), var(v, i), g.mate(i, v).is_some());
            if !ok {
                return None;
            }
            if let Some(x) = g.mate(i, v) {
                for h in 1..=m {
                    let ok = if h == i - 1 || h == i {
                        p.relate(var(v, h), var(x, h), true)
                    } else if h + 3 <= i || h >= i + 2 {
                        p.relate(var(v, h), var(x, h), false)
                    } else {
                        true
                    };
                    if !ok {
                        return None;
                    }
                }
            }
        }
    }
    Some(p.classes())
}

fn check(f: Fixture) {
    let g = f.build().unwrap();
    assert_eq!(sign_classes(&g), Some(1), "{}", f.name);
}

#[test]
fn negative_fixture_signatures_are_forced() {
    check(FAILS_4C);
    check(FAILS_4B);
}

#[test]
fn cover_signatures_are_forced_per_sheet() {
    // Two sheets joined only through color 5 still leave a single class.
    check(GREGG);
}

#[test]
fn singleton_graph_contains_the_transform_examples() {
    use llt_deg::graph::{find_isomorphism, generating_function};
    use llt_deg::llt::build_llt_graph;
    use llt_deg::shapes::parse_tuple_shape;
    use llt_deg::symfunc::extract_schur;

    let g = build_llt_graph(&parse_tuple_shape("1;1;1;1;1").unwrap(), 5).unwrap();
    assert_eq!(g.len(), 120);
    let comps = g.components(&g.all_colors());
    for (f, aggregate) in [
        (llt_deg::fixtures::BOX, "s[3,2] + s[3,1,1] + s[2,2,1]"),
        (llt_deg::fixtures::FROG, "s[4,1] + s[3,2] + s[3,1,1]"),
    ] {
        let fixture = f.build().unwrap();
        let matching: Vec<&Vec<usize>> = comps
            .iter()
            .filter(|c| extract_schur(&generating_function(&g, c, false).unwrap()).unwrap().to_string() == aggregate)
            .collect();
        assert!(!matching.is_empty(), "{}", f.name);
        assert!(matching.iter().any(|c| find_isomorphism(&g.induced(c), &fixture).is_some()), "{}", f.name);
    }
}
