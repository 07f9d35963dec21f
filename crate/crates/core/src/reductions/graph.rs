//! Undirected graphs, 3-colorings, and the DIMACS edge format.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    Duplicate(usize, usize),
    #[error("vertex {0} out of range for {1} vertices")]
    OutOfRange(usize, usize),
}

/// Simple undirected graph on `0..n`; edges are stored as `(v, w)` with `v < w`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(v, w) in edges {
            g.add_edge(v, w)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 0..n {
            for w in v + 1..n {
                g.edges.insert((v, w));
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 0..n {
            let w = (v + 1) % n;
            if v != w {
                g.edges.insert((v.min(w), v.max(w)));
            }
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::new(10);
        for i in 0..5 {
            for (v, w) in [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)] {
                g.edges.insert((v.min(w), v.max(w)));
            }
        }
        g
    }

    pub fn add_edge(&mut self, v: usize, w: usize) -> Result<(), GraphError> {
        for x in [v, w] {
            if x >= self.n {
                return Err(GraphError::OutOfRange(x, self.n));
            }
        }
        if v == w {
            return Err(GraphError::SelfLoop(v));
        }
        let key = (v.min(w), v.max(w));
        if !self.edges.insert(key) {
            return Err(GraphError::Duplicate(key.0, key.1));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }
}

/// A color in `{0, 1, 2}` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring(Vec<u8>);

impl Coloring {
    /// `None` if some color is outside `{0, 1, 2}`.
    pub fn new(colors: Vec<u8>) -> Option<Self> {
        colors.iter().all(|&c| c < 3).then_some(Coloring(colors))
    }

    pub fn color(&self, v: usize) -> Option<u8> {
        self.0.get(v).copied()
    }

    pub fn colors(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Total over the vertices and different on the two ends of every edge.
pub fn verify_coloring(g: &Graph, col: &Coloring) -> bool {
    col.len() == g.vertex_count() && g.edges().all(|(v, w)| col.0[v] != col.0[w])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for DimacsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for DimacsError {}

/// Parses `p edge <n> <m>` followed by `e <u> <v>` lines (1-indexed).
/// Lines starting with `c` are comments.
pub fn parse_dimacs_graph(text: &str) -> Result<Graph, DimacsError> {
    let mut graph: Option<Graph> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| DimacsError { line, message };
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            ["c", ..] => {}
            ["p", kind, n, _m] => {
                if graph.is_some() {
                    return Err(err("second problem line".into()));
                }
                if *kind != "edge" && *kind != "col" {
                    return Err(err(format!("unsupported problem kind `{kind}`")));
                }
                let n: usize = n
                    .parse()
                    .map_err(|_| err(format!("invalid vertex count `{n}`")))?;
                graph = Some(Graph::new(n));
            }
            ["e", u, v] => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| err("edge before problem line".into()))?;
                let parse = |s: &str| -> Result<usize, DimacsError> {
                    match s.parse::<usize>() {
                        Ok(x) if x >= 1 => Ok(x - 1),
                        _ => Err(err(format!("invalid vertex `{s}`"))),
                    }
                };
                let (u, v) = (parse(u)?, parse(v)?);
                g.add_edge(u, v).map_err(|e| {
                    err(match e {
                        GraphError::SelfLoop(x) => format!("self-loop on vertex {}", x + 1),
                        GraphError::Duplicate(a, b) => {
                            format!("duplicate edge {} {}", a + 1, b + 1)
                        }
                        GraphError::OutOfRange(x, n) => {
                            format!("vertex {} out of range 1..={n}", x + 1)
                        }
                    })
                })?;
            }
            _ => return Err(err(format!("unrecognized line `{}`", raw.trim()))),
        }
    }
    graph.ok_or(DimacsError {
        line: 0,
        message: "missing `p edge` line".into(),
    })
}

pub fn render_dimacs_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (v, w) in g.edges() {
        out.push_str(&format!("e {} {}\n", v + 1, w + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let g = parse_dimacs_graph("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn rejects_bad_edges() {
        let e = parse_dimacs_graph("p edge 3 1\ne 1 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("self-loop"));
        let e = parse_dimacs_graph("p edge 3 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(e.message.contains("duplicate"));
        assert!(parse_dimacs_graph("p edge 3 1\ne 1 4\n").is_err());
        assert!(parse_dimacs_graph("p edge 3 1\ne 0 1\n").is_err());
        assert!(parse_dimacs_graph("e 1 2\n").is_err());
        assert!(parse_dimacs_graph("c nothing\n").is_err());
        assert!(parse_dimacs_graph("p edge 3 1\nx 1 2\n").is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let text = "p edge 4 3\ne 1 2\ne 1 4\ne 3 4\n";
        assert_eq!(
            render_dimacs_graph(&parse_dimacs_graph(text).unwrap()),
            text
        );
        let petersen = render_dimacs_graph(&Graph::petersen());
        assert_eq!(parse_dimacs_graph(&petersen).unwrap(), Graph::petersen());
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::complete(4).edge_count(), 6);
        assert_eq!(Graph::cycle(5).edge_count(), 5);
        assert_eq!(Graph::petersen().edge_count(), 15);
        assert_eq!(Graph::cycle(2).edge_count(), 1);
    }

    #[test]
    fn coloring_checks() {
        let k3 = Graph::complete(3);
        assert!(verify_coloring(&k3, &Coloring::new(vec![0, 1, 2]).unwrap()));
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(verify_coloring(
            &path,
            &Coloring::new(vec![0, 1, 0]).unwrap()
        ));
        assert!(!verify_coloring(&path, &Coloring::new(vec![0, 1]).unwrap()));
        assert!(Coloring::new(vec![3]).is_none());

        let k4 = Graph::complete(4);
        for code in 0..81u32 {
            let colors = (0..4).map(|i| ((code / 3u32.pow(i)) % 3) as u8).collect();
            assert!(!verify_coloring(&k4, &Coloring::new(colors).unwrap()));
        }
    }
}
