//! Hand-encoded graphs: a domino component, a non-DEG Macdonald component,
//! two transform examples with their results, a two-fold cover failing
//! axiom 6, and two graphs failing axiom 4′.
//!
//! Vertices are `name:signature`; edges are `a-b:color`, with a trailing
//! `~` marking an edge produced by `d̃`.

use crate::error::{domain, Result};
use crate::graph::{SignedColoredGraph, VertexData};

/// A named graph in compact textual form.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub n: usize,
    pub vertices: &'static str,
    pub edges: &'static str,
}

impl Fixture {
    /// Builds the graph of type `(n, n)`; vertices keep their names.
    pub fn build(&self) -> Result<SignedColoredGraph> {
        let vertices = self
            .vertices
            .split_whitespace()
            .map(|item| {
                let (name, sigma) = item.split_once(':').ok_or_else(|| crate::Error::Parse(item.into()))?;
                VertexData::named(name, sigma)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut g = SignedColoredGraph::new(self.n, self.n, vertices)?;
        let index = g.name_index();
        for item in self.edges.split_whitespace() {
            let (pair, color) = item.split_once(':').ok_or_else(|| crate::Error::Parse(item.into()))?;
            let (a, b) = pair.split_once('-').ok_or_else(|| crate::Error::Parse(item.into()))?;
            let tilde = color.ends_with('~');
            let c: usize = color.trim_end_matches('~').parse().map_err(|_| crate::Error::Parse(item.into()))?;
            let (Some(&x), Some(&y)) = (index.get(a), index.get(b)) else {
                return domain(format!("unknown vertex in {item}"));
            };
            g.add_edge(c, x, y, tilde)?;
        }
        Ok(g)
    }
}

/// A component of the domino graph of `((3), (2,1))`, isomorphic to `G_{4,2}`.
pub const DOMINO: Fixture = Fixture {
    name: "domino",
    n: 6,
    vertices: "I:+-+++ G:-+-++ E:-++-+ A:-+++- F:+-+-+ H:++-++ D:+++-+ C:++-+- B:+-++-",
    edges: "A-B:2~ B-C:3 C-D:4 C-D:5 A-E:5~ B-F:5~ E-F:2~ E-G:4 F-H:3 F-H:4 G-I:2 G-I:3",
};

/// A component of the graph for fillings of `(4,1)` with generating
/// function `s_{4,1} + s_{3,2}` that fails axiom 4.
pub const NON_DEG: Fixture = Fixture {
    name: "non-deg",
    n: 5,
    vertices: "b2:++-+ a2:+++- a1:+-++ b1:-+-+ c1:-++- c2:+-+- c3:++-+ b3:+-++ a3:-+++",
    edges: "a1-b1:3 a1-b1:2 c1-b1:4~ c1-c2:2 b2-a2:4~ b2-c2:3~ c2-c3:4~ a3-b3:2 b3-c3:3~",
};

/// A component of the graph for five single cells with generating function
/// `s_{3,2} + s_{3,1,1} + s_{2,2,1}`.
pub const BOX: Fixture = Fixture {
    name: "box",
    n: 5,
    vertices: "t1:+--+ t2:-+-+ t3:+-++ t4:-+-+ t5:--+- m0:++-- m1:+-+- m2:-++- m4:-++- m5:-+-+ \
               m6:--++ b1:-+-- b2:+-+- b3:++-+ b4:+-+- b5:+--+",
    edges: "t1-t2:2 t2-t3:3 t3-t4:2 t4-t5:3 t1-m1:4 t2-m2:4 t4-m4:4 t5-m5:4 m0-m1:3 m5-m6:3 \
            m1-b1:2 m2-b2:2 m4-b4:2 m5-b5:2 b1-b2:3 b2-b3:4 b3-b4:3 b4-b5:4",
};

/// The dual equivalence graph obtained from [`BOX`].
pub const OPEN_BOX: Fixture = Fixture {
    name: "open-box",
    n: 5,
    vertices: BOX.vertices,
    edges: "t1-t2:2 t3-t4:3 t4-t3:2 t2-t5:3 t5-t2:4 t1-m1:4 t4-m4:4 m2-m5:4 m0-b2:3 m5-m6:3 \
            m1-b1:2 b1-m1:3 m2-b2:2 m4-b4:2 m5-b5:2 b5-b2:4 b3-b4:3 b4-b3:4",
};

/// A component of the graph for five single cells with generating function
/// `s_{4,1} + s_{3,2} + s_{3,1,1}`.
pub const FROG: Fixture = Fixture {
    name: "frog",
    n: 5,
    vertices: "A0:+++- A1:++-+ B1:+-++ C1:-+-+ D1:+-+- E1:++-+ F1:+-++ F0:-+++ C2:-++- D2:-++- \
               B3:++-- C3:+-+- D3:-+-+ E3:--++ CD:+--+",
    edges: "A0-A1:4 F1-F0:2 A1-B1:3 B1-C1:2 C1-D1:3 D1-E1:4 E1-F1:3 C2-C1:4 D1-D2:2 C3-C2:2 \
            D2-D3:4 B3-C3:3 C3-CD:4 CD-D3:2 D3-E3:3",
};

/// The dual equivalence graph obtained from [`FROG`].
pub const DISSECT: Fixture = Fixture {
    name: "dissect",
    n: 5,
    vertices: FROG.vertices,
    edges: "A0-E1:4 B1-C1:3 C1-B1:2 E1-F1:3 A1-D1:4 D1-A1:3 F1-F0:2 D1-D2:2 C2-D3:4 D2-C1:4 \
            C3-C2:2 CD-D3:2 B3-C3:3 C3-CD:4 D3-E3:3",
};

/// A two-fold cover of `G_{3,2,1}` satisfying axioms 1–5 but not 6.
pub const GREGG: Fixture = Fixture {
    name: "gregg",
    n: 6,
    vertices: "c2:+-+-+ b2:+--++ a3:-+-++ a4:--+-+ b5:--++- c5:-+-+- d3:+-++- d1:-+--+ d4:+--+- \
               d6:-++-+ e2:-+-+- f2:-++-- g3:+-+-- g4:++-+- f5:++--+ e5:+-+-+ \
               xe5:+-+-+ xf5:++--+ xg4:++-+- xg3:+-+-- xf2:-++-- xe2:-+-+- xd6:-++-+ xd4:+--+- \
               xd1:-+--+ xd3:+-++- xc5:-+-+- xb5:--++- xa4:--+-+ xa3:-+-++ xb2:+--++ xc2:+-+-+",
    edges: "a3-a4:3 a4-a3:4 b2-a3:2 a4-b5:5 c2-b2:4 b5-c5:3 d1-c2:2 c2-d1:3 c2-d3:5 d4-c5:2 \
            c5-d6:4 d6-c5:5 d1-e2:5 e2-d3:2 d3-e2:3 d4-e5:4 e5-d4:5 e5-d6:2 e2-f2:4 f5-e5:3 \
            f2-g3:2 g4-xf5:5 g3-g4:3 g4-g3:4 \
            xa3-xa4:3 xa4-xa3:4 xb2-xa3:2 xa4-xb5:5 xc2-xb2:4 xb5-xc5:3 xd1-xc2:2 xc2-xd1:3 \
            xc2-xd3:5 xd4-xc5:2 xc5-xd6:4 xd6-xc5:5 xd1-xe2:5 xe2-xd3:2 xd3-xe2:3 xd4-xe5:4 \
            xe5-xd4:5 xe5-xd6:2 xe2-xf2:4 xf5-xe5:3 xf2-xg3:2 xg4-f5:5 xg3-xg4:3 xg4-xg3:4",
};

/// A locally Schur positive graph failing only axiom 4′c. Signatures are
/// forced up to a global sign by axioms 1 and 2.
pub const FAILS_4C: Fixture = Fixture {
    name: "fails-4c",
    n: 6,
    vertices: "b1:++-++ c1:+-+-+ d1:+-++- e1:++-+- f1:+++-- h1:---++ a2:+-+++ b2:-+-++ c2:-++-+ \
               d2:-+++- e2:++--+ g2:--++- h2:--+-+ b4:--++- b3:--+-+ c3:-+-++ d3:+--++ e3:+-+-+ \
               f3:-++-+ g3:-+-+- h3:-+--+ b5:-+-+- c5:-++-+ e4:+-++- f4:-+-+- g4:+--+- h4:+---+ \
               b6:+--+- c6:+-+-+ d6:++--+ e6:++-+- f6:+-+-- f5:-++-- g5:+-+-- g6:-+---",
    edges: "a2-b2:2 b5-b6:2 c1-c2:2 c3-d3:2 c5-c6:2 d1-d2:2 e3-f3:2 e4-f4:2 f5-f6:2 g3-g4:2 \
            g5-g6:2 h3-h4:2 a2-b2:3 b1-c1:3 b3-c3:3 b4-b5:3 c6-d6:3 d1-e1:3 e2-e3:3 e4-f4:3 \
            e6-f6:3 g2-g3:3 g5-g6:3 h2-h3:3 b1-c1:4 b2-c2:4 b3-c3:4 b5-c5:4 b6-c6:4 d3-e3:4 \
            e1-f1:4 e6-f6:4 f3-g3:4 f4-f5:4 g4-g5:4 h1-h2:4 b3-b4:5 b5-c5:5 b6-c6:5 c1-d1:5 \
            c2-d2:5 d6-e6:5 e1-e2:5 e3-e4:5 f3-f4:5 g2-h2:5 g3-h3:5 g4-h4:5",
};

/// A locally Schur positive graph failing only axiom 4′b. Signatures are
/// forced up to a global sign by axioms 1 and 2.
pub const FAILS_4B: Fixture = Fixture {
    name: "fails-4b",
    n: 6,
    vertices: "z1:+---- a0:-+--- b0:--+-- c0:---+- g0:+++-+ h0:++-++ i0:+-+++ y1:-++++ e1:+-++- \
               c2:--+-+ d2:-+-+- f2:+-+-+ g2:++-+- e3:-+--+ a4:-+++- b4:-++-+ c4:-+-++ g4:+-+-- \
               h4:+--+- i4:+---+ e5:+-++- a6:+-++- b6:+-+-+ c6:+--++ d6:+-+-+ f6:-+-+- g6:-++-- \
               h6:-+-+- i6:-+--+ e7:-+--+ z8:+++-+ a8:++-+- b8:++-++ h8:--+-- i8:--+-+ y8:---+-",
    edges: "a0-z1:2 a4-a6:2 b4-b6:2 c4-c6:2 d2-e1:2 d6-e7:2 e3-f2:2 e5-f6:2 g4-g6:2 h4-h6:2 \
            i0-y1:2 i4-i6:2 a0-b0:3 a6-a8:3 b6-b8:3 c2-c4:3 d2-e1:3 d6-e7:3 e3-f2:3 e5-f6:3 \
            g2-g4:3 h0-i0:3 h6-h8:3 i6-i8:3 a8-z8:4 b0-c0:4 b4-c4:4 b6-b8:4 c2-d2:4 c6-d6:4 \
            f2-g2:4 f6-g6:4 g0-h0:4 g4-h4:4 h6-h8:4 i8-y8:4 a4-b4:5 a6-b6:5 a8-z8:5 c0-c2:5 \
            d2-e3:5 d6-e5:5 e1-f2:5 e7-f6:5 g0-g2:5 h4-i4:5 h6-i6:5 i8-y8:5",
};

pub const ALL: [Fixture; 9] = [DOMINO, NON_DEG, BOX, OPEN_BOX, FROG, DISSECT, GREGG, FAILS_4C, FAILS_4B];

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<Fixture> {
    ALL.iter().find(|f| f.name == name).copied()
}
