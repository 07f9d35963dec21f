//! Sidecar file recording an encoding's variable roles.
//!
//! ```text
//! encoding nonstrict 16
//! vertex 0 v0_c0 v0_c1 v0_c2
//! edge 0 1 0 e0_1_c0 f0_1_c0
//! ```
//!
//! Vertex lines come in order `0..n`; each edge contributes one line per
//! color. Reading a sidecar rebuilds the graph, re-encodes it and checks that
//! every recorded name matches, so a sidecar can only describe an encoding
//! this crate would itself produce.

use std::collections::BTreeMap;
use std::fmt;

use super::encode::{encode_3col, EncodingMeta, ReductionError, Variant};
use super::graph::Graph;
use crate::arith::Modulus;
use crate::scalar::Scalar;
use crate::system::{ConstraintSystem, SymbolTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for MetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "meta: {}", self.message)
        } else {
            write!(f, "meta line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for MetaError {}

pub fn render_meta<S: Scalar>(meta: &EncodingMeta<S>, symbols: &SymbolTable) -> String {
    let mut out = format!("encoding {} {}\n", meta.variant, meta.modulus);
    for (v, ids) in meta.vertex_vars.iter().enumerate() {
        out.push_str(&format!(
            "vertex {v} {} {} {}\n",
            symbols.name(ids[0]),
            symbols.name(ids[1]),
            symbols.name(ids[2])
        ));
    }
    for (&(v, w), pairs) in &meta.edge_vars {
        for (c, (e, f)) in pairs.iter().enumerate() {
            out.push_str(&format!(
                "edge {v} {w} {c} {} {}\n",
                symbols.name(*e),
                symbols.name(*f)
            ));
        }
    }
    out
}

/// Recorded `(e_c, f_c)` names.
type Names = (String, String);

/// Parses a sidecar and returns the encoding it describes.
pub fn parse_meta<S: Scalar>(
    text: &str,
) -> Result<(ConstraintSystem<S>, EncodingMeta<S>), MetaError> {
    let mut header: Option<(Variant, Modulus<S>)> = None;
    let mut vertices: Vec<[String; 3]> = Vec::new();
    let mut edges: BTreeMap<(usize, usize), [Option<Names>; 3]> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| MetaError { line, message };
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let index = |s: &str| -> Result<usize, MetaError> {
            s.parse().map_err(|_| err(format!("invalid index `{s}`")))
        };
        match fields.as_slice() {
            [] => {}
            ["encoding", variant, n] => {
                if header.is_some() {
                    return Err(err("second header line".into()));
                }
                let variant = Variant::parse(variant)
                    .ok_or_else(|| err(format!("unknown variant `{variant}`")))?;
                let n: S = n
                    .parse()
                    .map_err(|_| err(format!("invalid modulus `{n}`")))?;
                let n = Modulus::new(n).map_err(|e| err(e.to_string()))?;
                header = Some((variant, n));
            }
            _ if header.is_none() => {
                return Err(err("expected `encoding <variant> <N>` first".into()))
            }
            ["vertex", v, a, b, c] => {
                if index(v)? != vertices.len() {
                    return Err(err(format!("expected vertex {}", vertices.len())));
                }
                vertices.push([a.to_string(), b.to_string(), c.to_string()]);
            }
            ["edge", v, w, c, e, f] => {
                let (v, w, c) = (index(v)?, index(w)?, index(c)?);
                if c > 2 {
                    return Err(err(format!("color {c} out of range")));
                }
                let slot = &mut edges.entry((v, w)).or_default()[c];
                if slot.is_some() {
                    return Err(err(format!("duplicate entry for edge {v} {w} color {c}")));
                }
                *slot = Some((e.to_string(), f.to_string()));
            }
            _ => return Err(err(format!("unrecognized line `{}`", raw.trim()))),
        }
    }
    let whole = |message: String| MetaError { line: 0, message };
    let (variant, n) = header.ok_or_else(|| whole("missing header line".into()))?;
    let mut g = Graph::new(vertices.len());
    for &(v, w) in edges.keys() {
        g.add_edge(v, w).map_err(|e| whole(e.to_string()))?;
        if v > w {
            return Err(whole(format!("edge {v} {w} is not ordered")));
        }
    }
    let (sys, meta) =
        encode_3col(&g, &n, variant).map_err(|e: ReductionError| whole(e.to_string()))?;
    let names = sys.symbols();
    for (v, ids) in meta.vertex_vars.iter().enumerate() {
        for c in 0..3 {
            if names.name(ids[c]) != vertices[v][c] {
                return Err(whole(format!(
                    "vertex {v} color {c}: expected `{}`, found `{}`",
                    names.name(ids[c]),
                    vertices[v][c]
                )));
            }
        }
    }
    for (&(v, w), pairs) in &meta.edge_vars {
        let recorded = &edges[&(v, w)];
        for (c, (e, f)) in pairs.iter().enumerate() {
            let (re, rf) = recorded[c]
                .as_ref()
                .ok_or_else(|| whole(format!("edge {v} {w} lacks color {c}")))?;
            if names.name(*e) != re || names.name(*f) != rf {
                return Err(whole(format!("edge {v} {w} color {c}: names do not match")));
            }
        }
    }
    Ok((sys, meta))
}
