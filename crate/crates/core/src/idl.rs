//! Integer difference logic: constraints `x - y <= k` over the integers.
//!
//! Every constraint becomes an edge `x -> y` of weight `k`; a sink vertex with
//! a weight-0 edge from every variable makes `W(x, sink)` total. The system is
//! unsatisfiable iff the graph has a negative cycle, and otherwise
//! `S(x) = W(x, sink)` is a model.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::system::{ConstraintSystem, Relation, Rhs, VarId};

/// `x - y <= k`. `origin` is the index of the source constraint, if any.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdlConstraint<S> {
    pub x: VarId,
    pub y: VarId,
    pub k: S,
    pub origin: Option<usize>,
}

impl<S: Scalar> IdlConstraint<S> {
    pub fn new(x: VarId, y: VarId, k: S) -> Self {
        IdlConstraint {
            x,
            y,
            k,
            origin: None,
        }
    }

    pub fn holds(&self, model: &[S]) -> bool {
        model[self.x.0].clone() - model[self.y.0].clone() <= self.k
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdlError {
    #[error("constraint references variable #{var} but the system has {count} variables", var = .0.index(), count = .1)]
    UnknownVariable(VarId, usize),
    #[error("path weights may exceed the range of the scalar type")]
    Overflow,
}

/// A list of IDL constraints over `var_count` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdlSystem<S> {
    var_count: usize,
    constraints: Vec<IdlConstraint<S>>,
    zero: Option<VarId>,
}

impl<S: Scalar> IdlSystem<S> {
    pub fn new(var_count: usize) -> Self {
        IdlSystem {
            var_count,
            constraints: Vec::new(),
            zero: None,
        }
    }

    pub fn push(&mut self, c: IdlConstraint<S>) -> Result<(), IdlError> {
        for v in [c.x, c.y] {
            if v.0 >= self.var_count {
                return Err(IdlError::UnknownVariable(v, self.var_count));
            }
        }
        self.constraints.push(c);
        Ok(())
    }

    /// Shorthand for pushing `x - y <= k` without an origin.
    pub fn add(&mut self, x: VarId, y: VarId, k: S) -> Result<(), IdlError> {
        self.push(IdlConstraint::new(x, y, k))
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn constraints(&self) -> &[IdlConstraint<S>] {
        &self.constraints
    }

    /// The variable standing for the constant 0, when the relaxation needed one.
    pub fn zero(&self) -> Option<VarId> {
        self.zero
    }
}

/// Reads a modular system as plain integer difference constraints.
///
/// No range constraints `0 <= x <= N-1` are added and the modulus is ignored,
/// so the result is neither sound nor complete for the modular semantics.
/// Constant right-hand sides are measured against a fresh zero variable.
pub fn relax_to_idl<S: Scalar>(sys: &ConstraintSystem<S>) -> Result<IdlSystem<S>, IdlError> {
    let p = sys.var_count();
    let needs_zero = sys
        .constraints()
        .iter()
        .any(|c| matches!(c.rhs, Rhs::Const(_)));
    let zero = needs_zero.then_some(VarId(p));
    let mut out = IdlSystem::new(p + usize::from(needs_zero));
    out.zero = zero;

    let sub = |a: &S, b: &S| a.checked_sub(b).ok_or(IdlError::Overflow);
    for (i, c) in sys.constraints().iter().enumerate() {
        let x = c.lhs.var;
        let k = &c.lhs.offset;
        let (y, l) = match &c.rhs {
            Rhs::Term(t) => (t.var, t.offset.clone()),
            Rhs::Const(value) => (zero.expect("zero variable allocated"), value.clone()),
        };
        // x + k REL y + l
        let forward = sub(&l, k)?; // x - y <= l - k
        let backward = sub(k, &l)?; // y - x <= k - l
        let one = S::one();
        let mut emit = |a: VarId, b: VarId, w: S| {
            out.constraints.push(IdlConstraint {
                x: a,
                y: b,
                k: w,
                origin: Some(i),
            });
        };
        match c.rel {
            Relation::Le => emit(x, y, forward),
            Relation::Lt => emit(x, y, sub(&forward, &one)?),
            Relation::Eq => {
                emit(x, y, forward);
                emit(y, x, backward);
            }
            Relation::Ge => emit(y, x, backward),
            Relation::Gt => emit(y, x, sub(&backward, &one)?),
        }
    }
    Ok(out)
}

/// An edge of the constraint graph. `origin` indexes the IDL constraint that
/// produced it; sink edges have none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge<S> {
    pub from: usize,
    pub to: usize,
    pub weight: S,
    pub origin: Option<usize>,
}

/// Weighted digraph over the variables plus a sink vertex (index `var_count`).
#[derive(Debug, Clone)]
pub struct DiffGraph<S> {
    var_count: usize,
    edges: BTreeMap<(usize, usize), (S, Option<usize>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError<S: Scalar> {
    #[error("constraint #{0} reads x - x <= {1} with a negative bound")]
    TrivialUnsat(usize, S),
    #[error(transparent)]
    Idl(#[from] IdlError),
}

impl<S: Scalar> DiffGraph<S> {
    pub fn sink(&self) -> usize {
        self.var_count
    }

    pub fn vertex_count(&self) -> usize {
        self.var_count + 1
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<Edge<S>> {
        self.edges.get(&(from, to)).map(|(w, o)| Edge {
            from,
            to,
            weight: w.clone(),
            origin: *o,
        })
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge<S>> + '_ {
        self.edges.iter().map(|(&(from, to), (w, o))| Edge {
            from,
            to,
            weight: w.clone(),
            origin: *o,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Builds the constraint graph; parallel constraints keep the minimum weight,
/// the earliest one on ties.
pub fn build_graph<S: Scalar>(sys: &IdlSystem<S>) -> Result<DiffGraph<S>, GraphError<S>> {
    let n = sys.var_count();
    let mut edges: BTreeMap<(usize, usize), (S, Option<usize>)> = BTreeMap::new();
    for (i, c) in sys.constraints().iter().enumerate() {
        if c.x == c.y {
            if c.k.is_negative() {
                return Err(GraphError::TrivialUnsat(i, c.k.clone()));
            }
            continue;
        }
        let key = (c.x.0, c.y.0);
        match edges.get(&key) {
            Some((w, _)) if *w <= c.k => {}
            _ => {
                edges.insert(key, (c.k.clone(), Some(i)));
            }
        }
    }
    for x in 0..n {
        edges.insert((x, n), (S::zero(), None));
    }

    // Any simple path has weight at most |E| * max|k| in absolute value, and
    // relaxation adds two such weights.
    let mut max_abs = S::zero();
    for (w, _) in edges.values() {
        max_abs = max_abs.max(w.checked_abs().ok_or(IdlError::Overflow)?);
    }
    S::from_count(edges.len())
        .checked_mul(&max_abs)
        .and_then(|b| b.checked_add(&b))
        .ok_or(IdlError::Overflow)?;

    Ok(DiffGraph {
        var_count: n,
        edges,
    })
}

/// All-pairs minimal path weights; `None` is an unreachable pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistMatrix<S> {
    n: usize,
    dist: Vec<Option<S>>,
}

impl<S: Scalar> DistMatrix<S> {
    pub fn get(&self, from: usize, to: usize) -> Option<&S> {
        self.dist[from * self.n + to].as_ref()
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShortestPaths<S> {
    /// A simple cycle of negative total weight, edges in traversal order.
    NegCycle(Vec<Edge<S>>),
    Dist(DistMatrix<S>),
}

/// Floyd–Warshall with negative-cycle extraction.
///
/// Each improved entry records the intermediate vertex that improved it. The
/// run stops at the first negative diagonal entry; the closed walk is expanded
/// from the recorded intermediates and a simple negative cycle is cut out of
/// it.
pub fn floyd_warshall<S: Scalar>(g: &DiffGraph<S>) -> ShortestPaths<S> {
    let n = g.vertex_count();
    let mut dist: Vec<Option<S>> = vec![None; n * n];
    let mut via: Vec<Option<usize>> = vec![None; n * n];
    for i in 0..n {
        dist[i * n + i] = Some(S::zero());
    }
    for e in g.edges() {
        dist[e.from * n + e.to] = Some(e.weight);
    }

    for k in 0..n {
        for i in 0..n {
            let Some(ik) = dist[i * n + k].clone() else {
                continue;
            };
            for j in 0..n {
                let Some(kj) = dist[k * n + j].as_ref() else {
                    continue;
                };
                let cand = ik.clone() + kj.clone();
                let better = match &dist[i * n + j] {
                    None => true,
                    Some(cur) => cand < *cur,
                };
                if !better {
                    continue;
                }
                if i == j {
                    // cand < 0 = dist[i][i]
                    let mut walk = Vec::new();
                    expand(g, &via, n, i, k, &mut walk);
                    expand(g, &via, n, k, i, &mut walk);
                    return ShortestPaths::NegCycle(negative_simple_cycle(walk));
                }
                dist[i * n + j] = Some(cand);
                via[i * n + j] = Some(k);
            }
        }
    }
    ShortestPaths::Dist(DistMatrix { n, dist })
}

fn expand<S: Scalar>(
    g: &DiffGraph<S>,
    via: &[Option<usize>],
    n: usize,
    from: usize,
    to: usize,
    out: &mut Vec<Edge<S>>,
) {
    // Expansion terminates because no negative cycle existed among the
    // vertices processed before detection; the limit only guards that claim.
    let limit = n * n * n + 16;
    let mut stack = vec![(from, to)];
    let mut steps = 0usize;
    while let Some((a, b)) = stack.pop() {
        steps += 1;
        assert!(steps <= limit, "path expansion did not terminate");
        match via[a * n + b] {
            Some(mid) => {
                stack.push((mid, b));
                stack.push((a, mid));
            }
            None => out.push(g.edge(a, b).expect("direct path entry has an edge")),
        }
    }
}

/// Splits a closed walk of negative weight into simple cycles and returns the
/// first negative one.
fn negative_simple_cycle<S: Scalar>(walk: Vec<Edge<S>>) -> Vec<Edge<S>> {
    let mut path: Vec<Edge<S>> = Vec::new();
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new(); // vertex -> path position
    seen.insert(walk[0].from, 0);
    for e in walk {
        let to = e.to;
        path.push(e);
        if let Some(&pos) = seen.get(&to) {
            let cycle: Vec<Edge<S>> = path.drain(pos..).collect();
            for c in &cycle {
                seen.remove(&c.to);
            }
            let total = cycle
                .iter()
                .fold(S::zero(), |acc, c| acc + c.weight.clone());
            if total.is_negative() {
                return cycle;
            }
            seen.insert(to, path.len());
        } else {
            seen.insert(to, path.len());
        }
    }
    unreachable!("a negative closed walk contains a negative simple cycle")
}

/// Verdict of [`solve_idl`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdlOutcome<S> {
    /// `model[i]` is the value of `VarId(i)`.
    Sat(Vec<S>),
    /// Constraints chaining `x0 - x1, x1 - x2, ..., x(r-1) - x0` whose bounds sum
    /// to a negative number.
    Unsat(Vec<IdlConstraint<S>>),
}

impl<S> IdlOutcome<S> {
    pub fn is_sat(&self) -> bool {
        matches!(self, IdlOutcome::Sat(_))
    }
}

pub fn solve_idl<S: Scalar>(sys: &IdlSystem<S>) -> Result<IdlOutcome<S>, IdlError> {
    let g = match build_graph(sys) {
        Ok(g) => g,
        Err(GraphError::TrivialUnsat(i, _)) => {
            return Ok(IdlOutcome::Unsat(vec![sys.constraints()[i].clone()]))
        }
        Err(GraphError::Idl(e)) => return Err(e),
    };
    Ok(match floyd_warshall(&g) {
        ShortestPaths::NegCycle(edges) => IdlOutcome::Unsat(
            edges
                .into_iter()
                .map(|e| {
                    let i = e.origin.expect("sink edges lie on no cycle");
                    sys.constraints()[i].clone()
                })
                .collect(),
        ),
        ShortestPaths::Dist(w) => {
            let sink = g.sink();
            IdlOutcome::Sat(
                (0..sys.var_count())
                    .map(|x| {
                        w.get(x, sink)
                            .cloned()
                            .expect("every variable reaches the sink")
                    })
                    .collect(),
            )
        }
    })
}

/// Whether `cert` is a closed chain whose bounds sum to a negative number.
pub fn certificate_is_valid<S: Scalar>(cert: &[IdlConstraint<S>]) -> bool {
    let Some(first) = cert.first() else {
        return false;
    };
    let chained = cert.windows(2).all(|w| w[0].y == w[1].x);
    let closed = cert.last().map(|c| c.y) == Some(first.x);
    let total = cert.iter().fold(S::zero(), |acc, c| acc + c.k.clone());
    chained && closed && total.is_negative()
}

pub fn certificate_weight<S: Scalar>(cert: &[IdlConstraint<S>]) -> S {
    cert.iter().fold(S::zero(), |acc, c| acc + c.k.clone())
}

/// Whether `model` satisfies every constraint of `sys` over the integers.
pub fn model_satisfies<S: Scalar>(sys: &IdlSystem<S>, model: &[S]) -> bool {
    model.len() == sys.var_count() && sys.constraints().iter().all(|c| c.holds(model))
}
