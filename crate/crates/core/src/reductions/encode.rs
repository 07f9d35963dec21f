//! Graph 3-colorability as modular difference constraints.
//!
//! Each vertex `v` gets three variables `v_0, v_1, v_2` linked in a cycle
//! (`v_0 + 1 <= v_1`, `v_1 + 1 <= v_2`, `v_2 + 1 <= v_0`). Over the integers
//! that cycle is infeasible; mod N it forces some `v_c` to wrap to the top
//! residue, and the least such `c` is the vertex color. Each edge `(v, w)`
//! and color `c` gets two helpers `e_c, f_c` with
//! `v_c <= e_c - 1`, `w_c <= f_c - 1`, `f_c + 1 <= e_c`, which rule out both
//! endpoints sitting at the top for the same `c`.
//!
//! The strict variant uses `<` throughout with slightly wider gaps and
//! needs `N >= 9`; it decodes with the threshold `N - 2`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::graph::{verify_coloring, Coloring, Graph};
use crate::arith::Modulus;
use crate::scalar::Scalar;
use crate::system::{Assignment, Constraint, ConstraintSystem, Relation, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    NonStrict,
    Strict,
}

impl Variant {
    pub fn min_modulus(self) -> i64 {
        match self {
            Variant::NonStrict => 4,
            Variant::Strict => 9,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::NonStrict => "nonstrict",
            Variant::Strict => "strict",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "nonstrict" => Some(Variant::NonStrict),
            "strict" => Some(Variant::Strict),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("modulus too small: {variant} encoding needs N >= {min}, got {got}")]
    ModulusTooSmall {
        variant: Variant,
        min: i64,
        got: String,
    },
    #[error("improper coloring: edge {0}-{1} has both ends colored {2}")]
    ImproperColoring(usize, usize, u8),
    #[error("coloring covers {got} vertices, graph has {want}")]
    IncompleteColoring { got: usize, want: usize },
    #[error("vertex {0} has no variable at the decoding threshold")]
    Decode(usize),
    #[error("assignment leaves variable {0} undefined")]
    Undefined(String),
}

/// Which system variables play which role in an encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingMeta<S> {
    pub variant: Variant,
    pub modulus: Modulus<S>,
    /// `vertex_vars[v] = [v_0, v_1, v_2]`
    pub vertex_vars: Vec<[VarId; 3]>,
    /// `edge_vars[&(v, w)][c] = (e_c, f_c)`
    pub edge_vars: BTreeMap<(usize, usize), [(VarId, VarId); 3]>,
}

impl<S: Scalar> EncodingMeta<S> {
    pub fn graph(&self) -> Graph {
        let edges: Vec<_> = self.edge_vars.keys().copied().collect();
        Graph::from_edges(self.vertex_vars.len(), &edges).expect("meta edges come from a graph")
    }
}

pub fn vertex_var_name(v: usize, c: usize) -> String {
    format!("v{v}_c{c}")
}

pub fn edge_var_names(v: usize, w: usize, c: usize) -> (String, String) {
    (format!("e{v}_{w}_c{c}"), format!("f{v}_{w}_c{c}"))
}

fn check_modulus<S: Scalar>(variant: Variant, n: &Modulus<S>) -> Result<(), ReductionError> {
    let min = variant.min_modulus();
    if *n.get() < S::lit(min) {
        return Err(ReductionError::ModulusTooSmall {
            variant,
            min,
            got: n.to_string(),
        });
    }
    Ok(())
}

/// Dispatches on `variant`.
pub fn encode_3col<S: Scalar>(
    g: &Graph,
    n: &Modulus<S>,
    variant: Variant,
) -> Result<(ConstraintSystem<S>, EncodingMeta<S>), ReductionError> {
    check_modulus(variant, n)?;
    // offsets: vertex cycle lhs, endpoint lhs and rhs, f-to-e lhs and rhs
    let (rel, vk, ek, el, lk, ll) = match variant {
        Variant::NonStrict => (Relation::Le, 1, 0, -1, 1, 0),
        Variant::Strict => (Relation::Lt, 2, 0, -1, 1, 1),
    };
    let lit = S::lit;
    let mut sys = ConstraintSystem::new(n.clone());
    let mut vertex_vars = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let mut ids = [VarId(0); 3];
        for (c, id) in ids.iter_mut().enumerate() {
            *id = sys
                .var(&vertex_var_name(v, c))
                .expect("generated names are valid");
        }
        for c in 0..3 {
            sys.push(Constraint::between(
                ids[c],
                lit(vk),
                rel,
                ids[(c + 1) % 3],
                lit(0),
            ))
            .expect("variables are interned");
        }
        vertex_vars.push(ids);
    }
    let mut edge_vars = BTreeMap::new();
    for (v, w) in g.edges() {
        let mut pairs = [(VarId(0), VarId(0)); 3];
        for (c, pair) in pairs.iter_mut().enumerate() {
            let (e_name, f_name) = edge_var_names(v, w, c);
            let e = sys.var(&e_name).expect("generated names are valid");
            let f = sys.var(&f_name).expect("generated names are valid");
            let (vc, wc) = (vertex_vars[v][c], vertex_vars[w][c]);
            for c in [
                Constraint::between(vc, lit(ek), rel, e, lit(el)),
                Constraint::between(wc, lit(ek), rel, f, lit(el)),
                Constraint::between(f, lit(lk), rel, e, lit(ll)),
            ] {
                sys.push(c).expect("variables are interned");
            }
            *pair = (e, f);
        }
        edge_vars.insert((v, w), pairs);
    }
    let meta = EncodingMeta {
        variant,
        modulus: n.clone(),
        vertex_vars,
        edge_vars,
    };
    Ok((sys, meta))
}

/// `3n + 6|E|` variables and `3n + 9|E|` constraints with `<=`; needs `N >= 4`.
pub fn encode_3col_nonstrict<S: Scalar>(
    g: &Graph,
    n: &Modulus<S>,
) -> Result<(ConstraintSystem<S>, EncodingMeta<S>), ReductionError> {
    encode_3col(g, n, Variant::NonStrict)
}

/// Same shape as the nonstrict encoding with `<` only; needs `N >= 9`.
pub fn encode_3col_strict<S: Scalar>(
    g: &Graph,
    n: &Modulus<S>,
) -> Result<(ConstraintSystem<S>, EncodingMeta<S>), ReductionError> {
    encode_3col(g, n, Variant::Strict)
}

/// Color of each vertex: the least `c` whose `v_c` reaches the threshold
/// (`N-1`, or `N-2` for the strict variant).
pub fn decode_coloring<S: Scalar>(
    meta: &EncodingMeta<S>,
    a: &Assignment<S>,
) -> Result<Coloring, ReductionError> {
    let n = &meta.modulus;
    let threshold = match meta.variant {
        Variant::NonStrict => n.max_residue(),
        Variant::Strict => n.get().clone() - S::lit(2),
    };
    let mut colors = Vec::with_capacity(meta.vertex_vars.len());
    for (v, ids) in meta.vertex_vars.iter().enumerate() {
        let mut color = None;
        for (c, id) in ids.iter().enumerate() {
            let value = a
                .get(*id)
                .ok_or_else(|| ReductionError::Undefined(vertex_var_name(v, c)))?;
            if n.reduce(value) >= threshold {
                color = Some(c as u8);
                break;
            }
        }
        colors.push(color.ok_or(ReductionError::Decode(v))?);
    }
    Ok(Coloring::new(colors).expect("colors are below 3"))
}

/// Builds a model of the encoding of `g` from a proper coloring.
pub fn coloring_to_witness<S: Scalar>(
    g: &Graph,
    col: &Coloring,
    n: &Modulus<S>,
    variant: Variant,
) -> Result<Assignment<S>, ReductionError> {
    if col.len() != g.vertex_count() {
        return Err(ReductionError::IncompleteColoring {
            got: col.len(),
            want: g.vertex_count(),
        });
    }
    if let Some((v, w)) = g.edges().find(|&(v, w)| col.color(v) == col.color(w)) {
        return Err(ReductionError::ImproperColoring(v, w, col.colors()[v]));
    }
    debug_assert!(verify_coloring(g, col));
    let (_, meta) = encode_3col(g, n, variant)?;
    let top = n.max_residue();
    let lit = S::lit;
    // values of (v_c, v_{c+1}, v_{c+2}) and of (e_c, f_c) in the three cases
    let (vertex, case1, case2, case3) = match variant {
        Variant::NonStrict => (
            [top.clone(), lit(0), lit(1)],
            (lit(0), top.clone()),
            (lit(2), lit(0)),
            (lit(3), lit(2)),
        ),
        Variant::Strict => (
            [top.clone() - lit(1), lit(1), lit(4)],
            (lit(0), top.clone()),
            (lit(6), lit(0)),
            (lit(7), lit(6)),
        ),
    };
    let mut a = Assignment::new();
    for (v, ids) in meta.vertex_vars.iter().enumerate() {
        let color = col.colors()[v] as usize;
        for (i, value) in vertex.iter().enumerate() {
            a.set(ids[(color + i) % 3], value.clone());
        }
    }
    for (&(v, w), pairs) in &meta.edge_vars {
        for (c, (e, f)) in pairs.iter().enumerate() {
            let (ev, fv) = if c == col.colors()[v] as usize {
                &case1
            } else if c == col.colors()[w] as usize {
                &case2
            } else {
                &case3
            };
            a.set(*e, ev.clone());
            a.set(*f, fv.clone());
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{Rhs, SystemCheck};
    use crate::text::render_system;

    fn md(n: i64) -> Modulus<i64> {
        Modulus::new(n).unwrap()
    }

    fn value(sys: &ConstraintSystem<i64>, a: &Assignment<i64>, name: &str) -> i64 {
        *a.get(sys.symbols().lookup(name).unwrap()).unwrap()
    }

    #[test]
    fn counts() {
        let k3 = Graph::complete(3);
        for variant in [Variant::NonStrict, Variant::Strict] {
            let (s, meta) = encode_3col(&k3, &md(16), variant).unwrap();
            assert_eq!((s.var_count(), s.constraints().len()), (27, 36));
            assert_eq!(meta.vertex_vars.len(), 3);
            assert_eq!(meta.edge_vars.len(), 3);
            assert_eq!(meta.graph(), k3);
        }
        let (s, _) = encode_3col_nonstrict(&Graph::new(1), &md(4)).unwrap();
        assert_eq!((s.var_count(), s.constraints().len()), (3, 3));
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let (s, _) = encode_3col_strict(&edge, &md(9)).unwrap();
        assert_eq!((s.var_count(), s.constraints().len()), (12, 15));
    }

    #[test]
    fn modulus_minimums() {
        let g = Graph::complete(3);
        assert!(matches!(
            encode_3col_nonstrict(&g, &md(3)),
            Err(ReductionError::ModulusTooSmall { min: 4, .. })
        ));
        assert!(encode_3col_nonstrict(&g, &md(4)).is_ok());
        let err = encode_3col_strict(&g, &md(8)).unwrap_err();
        assert!(err.to_string().contains("modulus too small"));
        assert!(encode_3col_strict(&g, &md(9)).is_ok());
    }

    #[test]
    fn emitted_text_for_single_edge() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let (s, _) = encode_3col_nonstrict(&edge, &md(16)).unwrap();
        let text = render_system(&s);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "mod 16");
        assert_eq!(lines[1], "v0_c0 + 1 <= v0_c1");
        assert_eq!(lines[3], "v0_c2 + 1 <= v0_c0");
        assert_eq!(lines[7], "v0_c0 <= e0_1_c0 - 1");
        assert_eq!(lines[8], "v1_c0 <= f0_1_c0 - 1");
        assert_eq!(lines[9], "f0_1_c0 + 1 <= e0_1_c0");

        let (s, _) = encode_3col_strict(&edge, &md(9)).unwrap();
        let text = render_system(&s);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "v0_c0 + 2 < v0_c1");
        assert_eq!(lines[7], "v0_c0 < e0_1_c0 - 1");
        assert_eq!(lines[9], "f0_1_c0 + 1 < e0_1_c0 + 1");
    }

    #[test]
    fn strict_offsets_stay_small() {
        let (s, _) = encode_3col_strict(&Graph::complete(4), &md(16)).unwrap();
        for c in s.constraints() {
            assert_eq!(c.rel, Relation::Lt);
            assert!((0..=2).contains(&c.lhs.offset));
            match &c.rhs {
                Rhs::Term(t) => assert!((-1..=1).contains(&t.offset)),
                Rhs::Const(_) => panic!("no constant constraints expected"),
            }
        }
    }

    #[test]
    fn decode_examples() {
        let g = Graph::new(1);
        let (_, meta) = encode_3col_nonstrict(&g, &md(16)).unwrap();
        let col = decode_coloring(&meta, &Assignment::from_values(vec![15, 0, 1])).unwrap();
        assert_eq!(col.colors(), &[0]);

        let (_, meta) = encode_3col_strict(&g, &md(16)).unwrap();
        let col = decode_coloring(&meta, &Assignment::from_values(vec![4, 14, 1])).unwrap();
        assert_eq!(col.colors(), &[1]);
        // least index wins when several are at the threshold
        let col = decode_coloring(&meta, &Assignment::from_values(vec![15, 14, 1])).unwrap();
        assert_eq!(col.colors(), &[0]);

        assert_eq!(
            decode_coloring(&meta, &Assignment::from_values(vec![1, 2, 3])),
            Err(ReductionError::Decode(0))
        );
    }

    #[test]
    fn witness_case_values() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let col = Coloring::new(vec![0, 1]).unwrap();

        let a = coloring_to_witness(&edge, &col, &md(16), Variant::NonStrict).unwrap();
        let (s, _) = encode_3col_nonstrict(&edge, &md(16)).unwrap();
        assert_eq!(value(&s, &a, "e0_1_c0"), 0);
        assert_eq!(value(&s, &a, "f0_1_c0"), 15);
        assert_eq!(value(&s, &a, "e0_1_c1"), 2);
        assert_eq!(value(&s, &a, "f0_1_c1"), 0);
        assert_eq!(value(&s, &a, "e0_1_c2"), 3);
        assert_eq!(value(&s, &a, "f0_1_c2"), 2);
        assert_eq!(s.check(&a).unwrap(), SystemCheck::Satisfied);

        let a = coloring_to_witness(&edge, &col, &md(16), Variant::Strict).unwrap();
        let (s, _) = encode_3col_strict(&edge, &md(16)).unwrap();
        assert_eq!(value(&s, &a, "e0_1_c2"), 7);
        assert_eq!(value(&s, &a, "f0_1_c2"), 6);
        assert_eq!(value(&s, &a, "v1_c1"), 14);
        assert_eq!(s.check(&a).unwrap(), SystemCheck::Satisfied);
    }

    #[test]
    fn witness_at_smallest_moduli() {
        let k3 = Graph::complete(3);
        let col = Coloring::new(vec![2, 0, 1]).unwrap();
        for (variant, n) in [(Variant::NonStrict, 4), (Variant::Strict, 9)] {
            let (s, meta) = encode_3col(&k3, &md(n), variant).unwrap();
            let a = coloring_to_witness(&k3, &col, &md(n), variant).unwrap();
            assert!(s.check(&a).unwrap().is_satisfied());
            assert_eq!(decode_coloring(&meta, &a).unwrap(), col);
        }
    }

    #[test]
    fn witness_rejects_bad_colorings() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let same = Coloring::new(vec![1, 1]).unwrap();
        assert_eq!(
            coloring_to_witness(&edge, &same, &md(16), Variant::NonStrict),
            Err(ReductionError::ImproperColoring(0, 1, 1))
        );
        let short = Coloring::new(vec![1]).unwrap();
        assert!(matches!(
            coloring_to_witness(&edge, &short, &md(16), Variant::Strict),
            Err(ReductionError::IncompleteColoring { .. })
        ));
    }

    /// A vertex triple may have more than one variable at the top residue,
    /// so "exactly one per vertex" is not a property of the encoding.
    #[test]
    fn several_variables_can_sit_at_the_top() {
        let (s, meta) = encode_3col_nonstrict(&Graph::new(1), &md(16)).unwrap();
        for values in [vec![15, 15, 3], vec![15, 15, 15]] {
            let a = Assignment::from_values(values);
            assert!(s.check(&a).unwrap().is_satisfied());
            assert_eq!(decode_coloring(&meta, &a).unwrap().colors(), &[0]);
        }
    }
}
