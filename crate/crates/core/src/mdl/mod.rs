//! Modular difference logic: complete satisfiability over `[0, N-1]`.
//!
//! If a system with `p` variables and largest constant magnitude `m` is
//! satisfiable, it has a solution whose values all lie within `(2m+1)p` of
//! one end of the residue range. [`solve`] searches only that candidate
//! domain; [`brute_force_sat`] enumerates everything and serves as the oracle;
//! [`normalize_solution`] turns any solution into one inside the bound by
//! packing value clusters to the left.

mod cluster;
pub mod domain;
mod search;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::system::{Assignment, ConstraintSystem};

pub use cluster::{
    compute_clusters, normalize_solution, normalize_with_trace, Cluster, Member, NormalizeError,
};
pub use domain::IntervalSet;
pub use search::solve;

/// Counters reported by both solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStats<S> {
    /// Candidate values per variable.
    pub domain_size: S,
    /// `(2m+1)p`, when the small-model domain was used.
    pub bound: Option<S>,
    /// Search nodes (bounded search) or assignments tried (brute force).
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome<S> {
    Sat(Assignment<S>, SearchStats<S>),
    Unsat(SearchStats<S>),
}

impl<S> SolveOutcome<S> {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Sat(..))
    }

    pub fn model(&self) -> Option<&Assignment<S>> {
        match self {
            SolveOutcome::Sat(a, _) => Some(a),
            SolveOutcome::Unsat(_) => None,
        }
    }

    pub fn stats(&self) -> &SearchStats<S> {
        match self {
            SolveOutcome::Sat(_, s) | SolveOutcome::Unsat(s) => s,
        }
    }
}

/// The small-model bound `B = (2m+1)p` and its candidate set
/// `D = ([0, B] ∪ [N-1-B, N-1]) ∩ [0, N-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainBound<S> {
    /// `None` when `B` does not fit the scalar type; `D` is then everything.
    pub bound: Option<S>,
    pub candidates: IntervalSet<S>,
}

pub fn small_model_bound<S: Scalar>(sys: &ConstraintSystem<S>) -> DomainBound<S> {
    let n = sys.modulus();
    let m = sys.max_abs_constant();
    let bound = m
        .checked_add(m)
        .and_then(|t| t.checked_add(&S::one()))
        .and_then(|t| t.checked_mul(&S::from_count(sys.var_count())));
    let top = n.max_residue();
    let candidates = match &bound {
        Some(b) if *b < top => {
            IntervalSet::from_ranges(vec![(S::zero(), b.clone()), (top.clone() - b.clone(), top)])
        }
        _ => IntervalSet::full(n),
    };
    DomainBound { bound, candidates }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteForceError {
    #[error("exhaustive search needs N^p = {needed} assignments, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Tries all `N^p` assignments in lexicographic order (first variable most
/// significant) and returns the first model.
pub fn brute_force_sat<S: Scalar>(
    sys: &ConstraintSystem<S>,
    budget: u64,
) -> Result<SolveOutcome<S>, BruteForceError> {
    let n = sys.modulus().get().clone();
    let p = sys.var_count();
    let budget_s = S::from_u64(budget);
    let mut total = Some(S::one());
    for _ in 0..p {
        total = total.and_then(|t| t.checked_mul(&n));
    }
    let needed = match (&total, &budget_s) {
        (Some(t), Some(b)) if t <= b => t.to_u64().expect("bounded by budget"),
        _ => {
            return Err(BruteForceError::BudgetExceeded {
                needed: total.map_or_else(|| format!("{n}^{p}"), |t| t.to_string()),
                budget,
            })
        }
    };

    let mut values = vec![S::zero(); p];
    let mut tried = 0u64;
    loop {
        tried += 1;
        let a = Assignment::from_values(values.clone());
        if sys.check(&a).expect("assignment is total").is_satisfied() {
            let stats = SearchStats {
                domain_size: n,
                bound: None,
                nodes: tried,
            };
            return Ok(SolveOutcome::Sat(a, stats));
        }
        // odometer, last variable fastest
        let mut i = p;
        loop {
            if i == 0 {
                debug_assert_eq!(tried, needed);
                return Ok(SolveOutcome::Unsat(SearchStats {
                    domain_size: n,
                    bound: None,
                    nodes: tried,
                }));
            }
            i -= 1;
            values[i] = values[i].clone() + S::one();
            if values[i] < n {
                break;
            }
            values[i] = S::zero();
        }
    }
}
