//! JSON and DOT serialization of signed, colored graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::graph::{SignedColoredGraph, VertexData};
use crate::shapes::Signature;

#[derive(Serialize, Deserialize)]
struct JsonVertex {
    id: usize,
    sigma: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    word: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stat: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    #[serde(rename = "N")]
    big_n: usize,
    vertices: Vec<JsonVertex>,
    edges: BTreeMap<usize, Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    tilde: BTreeMap<usize, Vec<[usize; 2]>>,
}

/// Serializes `g`; vertex ids are indices, edges are sorted pairs per color.
pub fn to_json(g: &SignedColoredGraph) -> Result<String> {
    let vertices = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(id, v)| JsonVertex {
            id,
            sigma: v.sigma.to_string(),
            word: v.word.clone(),
            stat: v.stat,
            name: v.name.clone(),
        })
        .collect();
    let mut edges = BTreeMap::new();
    let mut tilde = BTreeMap::new();
    for c in g.colors() {
        let es = g.edges(c);
        let marked: Vec<[usize; 2]> = es.iter().filter(|&&(a, b)| g.is_tilde(c, a, b)).map(|&(a, b)| [a, b]).collect();
        if !marked.is_empty() {
            tilde.insert(c, marked);
        }
        edges.insert(c, es.into_iter().map(|(a, b)| [a, b]).collect());
    }
    let doc = JsonGraph { n: g.n(), big_n: g.big_n(), vertices, edges, tilde };
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Parses the format written by [`to_json`]; ids must be `0..len` in order.
pub fn from_json(text: &str) -> Result<SignedColoredGraph> {
    let doc: JsonGraph = serde_json::from_str(text)?;
    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for (k, v) in doc.vertices.into_iter().enumerate() {
        if v.id != k {
            return domain(format!("vertex ids must be 0..len in order, found {} at {k}", v.id));
        }
        vertices.push(VertexData { sigma: Signature::parse(&v.sigma)?, word: v.word, stat: v.stat, name: v.name });
    }
    let mut g = SignedColoredGraph::new(doc.n, doc.big_n, vertices)?;
    for (c, es) in &doc.edges {
        let marked = doc.tilde.get(c).cloned().unwrap_or_default();
        for &[a, b] in es {
            g.add_edge(*c, a, b, marked.contains(&[a, b]) || marked.contains(&[b, a]))?;
        }
    }
    Ok(g)
}

fn color_label(g: &SignedColoredGraph, c: usize, a: usize, b: usize) -> String {
    if g.is_tilde(c, a, b) {
        format!("{c}\u{303}")
    } else {
        c.to_string()
    }
}

/// DOT rendering. Vertices show their signature, plus the word or name
/// when `with_words`; parallel edges of several colors are drawn once.
pub fn to_dot(g: &SignedColoredGraph, with_words: bool) -> String {
    let mut out = String::from("graph G {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (id, v) in g.vertices().iter().enumerate() {
        let mut label = v.sigma.to_string();
        if with_words {
            if let Some(w) = &v.word {
                label = format!("{}\\n{label}", w.iter().join(" "));
            } else if let Some(name) = &v.name {
                label = format!("{name}\\n{label}");
            }
        }
        if let Some(s) = v.stat {
            label = format!("{label}\\ninv {s}");
        }
        let _ = writeln!(out, "  v{id} [label=\"{label}\"];");
    }
    let mut joined: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for c in g.colors() {
        for (a, b) in g.edges(c) {
            joined.entry((a, b)).or_default().push(color_label(g, c, a, b));
        }
    }
    for ((a, b), labels) in joined {
        let _ = writeln!(out, "  v{a} -- v{b} [label=\"{}\"];", labels.join(","));
    }
    out.push_str("}\n");
    out
}
