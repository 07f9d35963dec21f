//! Bounded backtracking search over the small-model domain.
//!
//! Domains are interval sets of residues. Every constraint compares two
//! residues `(x + k) mod N` and `(y + l) mod N`, so supports can be computed
//! from the extreme values of the partner's shifted domain; propagation keeps
//! every binary constraint arc consistent.
//!
//! A term `v + r` wraps exactly when `v >= N - r`, so cutting each domain at
//! those points leaves pieces on which every term is `v + r` or `v + r - N`.
//! Once a variable's domain is a single piece it is settled, and the
//! constraints among settled variables are ordinary integer difference
//! constraints, checked with Bellman-Ford. Branching picks the unsettled
//! variable with the fewest pieces and tries them in ascending order. When
//! everything is settled that same check yields the model.

use std::collections::VecDeque;

use super::domain::IntervalSet;
use super::{small_model_bound, SearchStats, SolveOutcome};
use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::Modulus;
use crate::scalar::Scalar;
use crate::system::{Assignment, ConstraintSystem, Relation, Rhs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Le,
    Lt,
    Eq,
}

/// `(x + k) cmp (y + l)` with `k`, `l` already reduced.
#[derive(Debug, Clone)]
struct Binary<S> {
    x: usize,
    k: S,
    cmp: Cmp,
    y: usize,
    l: S,
}

/// Values of `var` allowed by `a` cmp `b` where both sides are terms of `var`.
fn same_var_filter<S: Scalar>(k: &S, cmp: Cmp, l: &S, n: &Modulus<S>) -> IntervalSet<S> {
    // (v + r) mod N is linear on [0, N-r) and on [N-r, N); both sides are
    // linear between breakpoints, so the comparison is constant there.
    let mut cuts = vec![S::zero()];
    for r in [k, l] {
        if !r.is_zero() {
            cuts.push(n.get().clone() - r.clone());
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut ranges = Vec::new();
    for (i, start) in cuts.iter().enumerate() {
        let end = cuts
            .get(i + 1)
            .map(|c| c.clone() - S::one())
            .unwrap_or_else(|| n.max_residue());
        let a = n.add(start, k);
        let b = n.add(start, l);
        let ok = match cmp {
            Cmp::Le => a <= b,
            Cmp::Lt => a < b,
            Cmp::Eq => a == b,
        };
        if ok {
            ranges.push((start.clone(), end));
        }
    }
    IntervalSet::from_ranges(ranges)
}

/// Values of `x` with `(x + k) rel c`.
fn constant_filter<S: Scalar>(k: &S, rel: Relation, c: &S, n: &Modulus<S>) -> IntervalSet<S> {
    let c = n.reduce(c);
    let top = n.max_residue();
    let zero = S::zero();
    let one = S::one();
    let (lo, hi) = match rel {
        Relation::Le => (zero, c),
        Relation::Lt if c.is_zero() => return IntervalSet::empty(),
        Relation::Lt => (zero, c - one),
        Relation::Eq => (c.clone(), c),
        Relation::Ge => (c, top),
        Relation::Gt if c == top => return IntervalSet::empty(),
        Relation::Gt => (c + one, top),
    };
    IntervalSet::preimage(&lo, &hi, k, n)
}

struct Problem<S> {
    n: Modulus<S>,
    binaries: Vec<Binary<S>>,
    /// constraint indices per variable
    watches: Vec<Vec<usize>>,
    /// sorted points `N - r` at which a term `v + r` of each variable wraps
    breaks: Vec<Vec<S>>,
}

impl<S: Scalar> Problem<S> {
    /// Narrows the domains of one binary constraint. Returns the variables
    /// whose domain shrank, or `None` on a wipe-out.
    fn revise(&self, c: &Binary<S>, doms: &mut [IntervalSet<S>]) -> Option<Vec<usize>> {
        let n = &self.n;
        let top = n.max_residue();
        let (allowed_x, allowed_y) = match c.cmp {
            Cmp::Eq => (
                doms[c.y].shift(&n.sub(&c.l, &c.k), n),
                doms[c.x].shift(&n.sub(&c.k, &c.l), n),
            ),
            Cmp::Le | Cmp::Lt => {
                let rhs = doms[c.y].shift(&c.l, n);
                let lhs = doms[c.x].shift(&c.k, n);
                let (max_rhs, min_lhs) = (rhs.max()?.clone(), lhs.min()?.clone());
                if c.cmp == Cmp::Le {
                    (
                        IntervalSet::preimage(&S::zero(), &max_rhs, &c.k, n),
                        IntervalSet::preimage(&min_lhs, &top, &c.l, n),
                    )
                } else {
                    let x_allowed = if max_rhs.is_zero() {
                        IntervalSet::empty()
                    } else {
                        IntervalSet::preimage(&S::zero(), &(max_rhs - S::one()), &c.k, n)
                    };
                    let y_allowed = if min_lhs == top {
                        IntervalSet::empty()
                    } else {
                        IntervalSet::preimage(&(min_lhs + S::one()), &top, &c.l, n)
                    };
                    (x_allowed, y_allowed)
                }
            }
        };
        let mut changed = Vec::new();
        for (v, allowed) in [(c.x, allowed_x), (c.y, allowed_y)] {
            let narrowed = doms[v].intersect(&allowed);
            if narrowed.is_empty() {
                return None;
            }
            if narrowed != doms[v] {
                doms[v] = narrowed;
                changed.push(v);
            }
        }
        Some(changed)
    }

    fn propagate(&self, doms: &mut [IntervalSet<S>], seeds: &[usize]) -> bool {
        let mut queued = vec![false; self.binaries.len()];
        let mut queue = VecDeque::new();
        for &v in seeds {
            for &ci in &self.watches[v] {
                if !queued[ci] {
                    queued[ci] = true;
                    queue.push_back(ci);
                }
            }
        }
        while let Some(ci) = queue.pop_front() {
            queued[ci] = false;
            let Some(changed) = self.revise(&self.binaries[ci], doms) else {
                return false;
            };
            for v in changed {
                for &cj in &self.watches[v] {
                    // one revision leaves its own constraint consistent
                    if !queued[cj] && cj != ci {
                        queued[cj] = true;
                        queue.push_back(cj);
                    }
                }
            }
        }
        true
    }

    /// Domain pieces of `v`: its ranges cut at the points where one of its
    /// terms wraps around.
    fn pieces(&self, v: usize, dom: &IntervalSet<S>) -> Vec<IntervalSet<S>> {
        let mut out = Vec::new();
        for (lo, hi) in dom.ranges() {
            let mut start = lo.clone();
            for b in &self.breaks[v] {
                if *b > start && b <= hi {
                    out.push(IntervalSet::from_ranges(vec![(
                        start,
                        b.clone() - S::one(),
                    )]));
                    start = b.clone();
                }
            }
            out.push(IntervalSet::from_ranges(vec![(start, hi.clone())]));
        }
        out
    }

    /// Checks the constraints among settled variables as integer difference
    /// constraints. When every variable is settled and the check passes, the
    /// returned values are a model.
    fn settled_check(&self, doms: &[IntervalSet<S>]) -> Option<Vec<Option<S>>> {
        let n = self.n.get();
        match n.to_i128() {
            Some(w) if w < 1 << 100 => {
                let conv = |s: &S| s.to_i128().expect("bounded by the modulus");
                let back = |w: i128| S::from_i128(w).expect("value is a residue");
                self.settled_check_in(doms, conv, back)
            }
            _ => {
                let conv = |s: &S| s.to_string().parse::<BigInt>().expect("integer");
                let back = |w: BigInt| w.to_string().parse::<S>().ok().expect("value is a residue");
                self.settled_check_in(doms, conv, back)
            }
        }
    }

    fn settled_check_in<W: Signed + Clone + Ord>(
        &self,
        doms: &[IntervalSet<S>],
        conv: impl Fn(&S) -> W,
        back: impl Fn(W) -> S,
    ) -> Option<Vec<Option<S>>> {
        let p = doms.len();
        let zero = p;
        let n = conv(self.n.get());
        // lower end of each settled variable's single piece
        let settled: Vec<Option<&S>> = doms
            .iter()
            .enumerate()
            .map(|(v, d)| (self.pieces(v, d).len() == 1).then(|| d.min().expect("nonempty")))
            .collect();
        // (from, to, w) means dist[to] <= dist[from] + w, i.e. to - from <= w
        let mut edges: Vec<(usize, usize, W)> = Vec::new();
        for (v, d) in doms.iter().enumerate() {
            if settled[v].is_some() {
                edges.push((zero, v, conv(d.max().expect("nonempty"))));
                edges.push((v, zero, -conv(d.min().expect("nonempty"))));
            }
        }
        // (v + r) mod N on a settled piece is v + r or v + r - N
        let offset = |v: usize, r: &S| -> W {
            let lo = settled[v].expect("settled");
            if !r.is_zero() && *lo >= self.n.get().clone() - r.clone() {
                conv(r) - n.clone()
            } else {
                conv(r)
            }
        };
        for c in &self.binaries {
            if settled[c.x].is_none() || settled[c.y].is_none() {
                continue;
            }
            let (a, b) = (offset(c.x, &c.k), offset(c.y, &c.l));
            // x + a cmp y + b
            let w = b.clone() - a.clone();
            match c.cmp {
                Cmp::Le => edges.push((c.y, c.x, w)),
                Cmp::Lt => edges.push((c.y, c.x, w - W::one())),
                Cmp::Eq => {
                    edges.push((c.y, c.x, w));
                    edges.push((c.x, c.y, a - b));
                }
            }
        }
        // Bellman-Ford from a virtual source joined to every node by weight 0
        let mut dist = vec![W::zero(); p + 1];
        for round in 0..=p + 1 {
            let mut changed = false;
            for (from, to, w) in &edges {
                let cand = dist[*from].clone() + w.clone();
                if cand < dist[*to] {
                    dist[*to] = cand;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            if round == p + 1 {
                return None;
            }
        }
        let base = dist[zero].clone();
        Some(
            (0..p)
                .map(|v| settled[v].map(|_| back(dist[v].clone() - base.clone())))
                .collect(),
        )
    }

    fn search(&self, doms: Vec<IntervalSet<S>>, nodes: &mut u64) -> Option<Vec<S>> {
        *nodes += 1;
        let values = self.settled_check(&doms)?;
        let mut pick: Option<(usize, Vec<IntervalSet<S>>)> = None;
        for (v, d) in doms.iter().enumerate() {
            if values[v].is_some() {
                continue;
            }
            let pieces = self.pieces(v, d);
            if pick
                .as_ref()
                .is_none_or(|(_, best)| pieces.len() < best.len())
            {
                pick = Some((v, pieces));
            }
        }
        let Some((v, pieces)) = pick else {
            return Some(
                values
                    .into_iter()
                    .map(|x| x.expect("all settled"))
                    .collect(),
            );
        };
        for piece in pieces {
            let mut next = doms.clone();
            next[v] = piece;
            if self.propagate(&mut next, &[v]) {
                if let Some(found) = self.search(next, nodes) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// Decides satisfiability over `[0, N-1]^p` by searching the small-model
/// candidate domain only.
///
/// The verdict does not depend on heuristics; the running time is exponential
/// in the worst case. Every returned model is re-checked against the system.
pub fn solve<S: Scalar>(sys: &ConstraintSystem<S>) -> SolveOutcome<S> {
    let n = sys.modulus().clone();
    let bound = small_model_bound(sys);
    let p = sys.var_count();
    let stats = |nodes| SearchStats {
        domain_size: bound.candidates.len(),
        bound: bound.bound.clone(),
        nodes,
    };

    let mut doms = vec![bound.candidates.clone(); p];
    let mut binaries = Vec::new();
    for c in sys.constraints() {
        let x = c.lhs.var.index();
        let k = n.reduce(&c.lhs.offset);
        let allowed = match &c.rhs {
            Rhs::Const(value) => constant_filter(&k, c.rel, value, &n),
            Rhs::Term(t) => {
                let y = t.var.index();
                let l = n.reduce(&t.offset);
                // a >= b is b <= a
                let (x, k, y, l, cmp) = match c.rel {
                    Relation::Le => (x, k, y, l, Cmp::Le),
                    Relation::Lt => (x, k, y, l, Cmp::Lt),
                    Relation::Eq => (x, k, y, l, Cmp::Eq),
                    Relation::Ge => (y, l, x, k, Cmp::Le),
                    Relation::Gt => (y, l, x, k, Cmp::Lt),
                };
                if x == y {
                    same_var_filter(&k, cmp, &l, &n)
                } else {
                    binaries.push(Binary { x, k, cmp, y, l });
                    continue;
                }
            }
        };
        doms[x] = doms[x].intersect(&allowed);
        if doms[x].is_empty() {
            return SolveOutcome::Unsat(stats(0));
        }
    }

    let mut watches = vec![Vec::new(); p];
    for (i, b) in binaries.iter().enumerate() {
        watches[b.x].push(i);
        watches[b.y].push(i);
    }
    let mut breaks = vec![Vec::new(); p];
    for b in &binaries {
        for (v, r) in [(b.x, &b.k), (b.y, &b.l)] {
            if !r.is_zero() {
                breaks[v].push(n.get().clone() - r.clone());
            }
        }
    }
    for list in &mut breaks {
        list.sort();
        list.dedup();
    }
    let problem = Problem {
        n,
        binaries,
        watches,
        breaks,
    };
    let all: Vec<usize> = (0..p).collect();
    let mut nodes = 0;
    if !problem.propagate(&mut doms, &all) {
        return SolveOutcome::Unsat(stats(nodes));
    }
    match problem.search(doms, &mut nodes) {
        Some(values) => {
            let model = Assignment::from_values(values);
            assert!(
                sys.check(&model).expect("model is total").is_satisfied(),
                "search produced an assignment that violates the system"
            );
            SolveOutcome::Sat(model, stats(nodes))
        }
        None => SolveOutcome::Unsat(stats(nodes)),
    }
}
