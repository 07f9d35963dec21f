//! Value clusters of a solution and the left-packing normalizer.
//!
//! Two variables are linked when their values differ by at most `2m`; the
//! connected components of that graph are clusters. Two synthetic anchors
//! pinned at `0` and `N-1` mark the ends of the residue range. A cluster
//! touching neither anchor can slide as a block without changing the truth of
//! any constraint, as long as it does not cross its neighbours' domains.

use thiserror::Error;

use crate::scalar::Scalar;
use crate::system::{Assignment, ConstraintSystem, EvalError, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Member {
    /// The anchor fixed at `0`.
    Min,
    Var(VarId),
    /// The anchor fixed at `N - 1`.
    Max,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster<S> {
    /// Members ordered by value; on ties `Min`, then variables, then `Max`.
    pub members: Vec<Member>,
    /// Smallest and largest member value.
    pub left: S,
    pub right: S,
    /// Domain `[lo, hi] = [max(0, left - m), min(N-1, right + m)]`.
    pub lo: S,
    pub hi: S,
}

impl<S> Cluster<S> {
    /// Neither anchor belongs to the cluster.
    pub fn is_inner(&self) -> bool {
        !self
            .members
            .iter()
            .any(|m| matches!(m, Member::Min | Member::Max))
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.members.iter().filter_map(|m| match m {
            Member::Var(v) => Some(*v),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("assignment violates constraint #{0}")]
    NotASolution(usize),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Clusters of `a` (extended with the two anchors), left to right.
///
/// Values are read as residues, so `a` should map every variable into
/// `[0, N-1]`; others are reduced first.
pub fn compute_clusters<S: Scalar>(
    sys: &ConstraintSystem<S>,
    a: &Assignment<S>,
) -> Result<Vec<Cluster<S>>, EvalError> {
    let n = sys.modulus();
    let m = sys.max_abs_constant().clone();
    // None: 2m exceeds the scalar range, so every pair is linked
    let gap = m.checked_add(&m);
    let mut points: Vec<(S, Member)> = Vec::with_capacity(sys.var_count() + 2);
    points.push((S::zero(), Member::Min));
    for i in 0..sys.var_count() {
        let v = VarId(i);
        let value = a.get(v).ok_or(EvalError::UndefinedVariable(v))?;
        points.push((n.reduce(value), Member::Var(v)));
    }
    points.push((n.max_residue(), Member::Max));
    points.sort();

    let top = n.max_residue();
    let finish = |members: Vec<Member>, left: S, right: S| {
        let lo = std::cmp::max(S::zero(), left.clone() - m.clone());
        let hi = right
            .checked_add(&m)
            .map_or_else(|| top.clone(), |h| std::cmp::min(top.clone(), h));
        Cluster {
            members,
            left,
            right,
            lo,
            hi,
        }
    };

    let mut out = Vec::new();
    let mut iter = points.into_iter();
    let (first_value, first_member) = iter.next().expect("anchors are always present");
    let mut members = vec![first_member];
    let mut left = first_value.clone();
    let mut right = first_value;
    for (value, member) in iter {
        let linked = gap
            .as_ref()
            .is_none_or(|g| value.clone() - right.clone() <= *g);
        if linked {
            members.push(member);
            right = value;
        } else {
            out.push(finish(std::mem::take(&mut members), left, right.clone()));
            members.push(member);
            left = value.clone();
            right = value;
        }
    }
    out.push(finish(members, left, right));
    Ok(out)
}

/// Like [`normalize_solution`], also returning the assignment after every
/// single cluster shift.
pub fn normalize_with_trace<S: Scalar>(
    sys: &ConstraintSystem<S>,
    a: &Assignment<S>,
) -> Result<(Assignment<S>, Vec<Assignment<S>>), NormalizeError> {
    if let crate::system::SystemCheck::Violated(i) = sys.check(a)? {
        return Err(NormalizeError::NotASolution(i));
    }
    let n = sys.modulus();
    let mut cur = Assignment::new();
    for i in 0..sys.var_count() {
        let v = VarId(i);
        cur.set(v, n.reduce(a.get(v).expect("checked total")));
    }
    let mut trace = Vec::new();
    loop {
        let clusters = compute_clusters(sys, &cur)?;
        // leftmost inner cluster that is not yet flush with its left neighbour
        let target = (1..clusters.len()).find(|&i| {
            clusters[i].is_inner() && clusters[i].lo > clusters[i - 1].hi.clone() + S::one()
        });
        let Some(i) = target else {
            break;
        };
        let d = clusters[i].lo.clone() - (clusters[i - 1].hi.clone() + S::one());
        for v in clusters[i].vars() {
            let moved = cur.get(v).expect("total").clone() - d.clone();
            cur.set(v, moved);
        }
        debug_assert!(sys.check(&cur).map(|c| c.is_satisfied()).unwrap_or(false));
        trace.push(cur.clone());
    }
    Ok((cur, trace))
}

/// Packs every inner cluster against its left neighbour (so its domain
/// starts one past the neighbour's domain), recomputing clusters after each
/// shift. The result still satisfies `sys` and lies in the small-model domain.
pub fn normalize_solution<S: Scalar>(
    sys: &ConstraintSystem<S>,
    a: &Assignment<S>,
) -> Result<Assignment<S>, NormalizeError> {
    normalize_with_trace(sys, a).map(|(out, _)| out)
}
