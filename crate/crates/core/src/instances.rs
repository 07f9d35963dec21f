//! Small named instances and a seeded random generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Modulus;
use crate::idl::{IdlConstraint, IdlSystem};
use crate::scalar::Scalar;
use crate::system::{Constraint, ConstraintSystem, Relation, VarId};
use crate::text::parse_system;

fn from_text<S: Scalar>(body: &str, n: &Modulus<S>) -> ConstraintSystem<S> {
    parse_system(&format!("mod {n}\n{body}")).expect("built-in instance parses")
}

/// `x >= 0` and `x + 1 <= 0`: unsatisfiable over the integers, satisfied
/// mod N by `x = N - 1`.
pub fn intro1<S: Scalar>(n: &Modulus<S>) -> ConstraintSystem<S> {
    from_text("x >= 0\nx + 1 <= 0\n", n)
}

/// `x0 < x1 < ... < xN`: N + 1 distinct residues, so unsatisfiable mod N,
/// while satisfiable over the integers.
///
/// # Panics
///
/// If N does not fit in `usize`.
pub fn chain<S: Scalar>(n: &Modulus<S>) -> ConstraintSystem<S> {
    let len = n.get().to_usize().expect("chain length fits in memory");
    let mut sys = ConstraintSystem::new(n.clone());
    let vars: Vec<VarId> = (0..=len)
        .map(|i| sys.var(&format!("x{i}")).expect("valid name"))
        .collect();
    for pair in vars.windows(2) {
        sys.push(Constraint::between(
            pair[0],
            S::zero(),
            Relation::Lt,
            pair[1],
            S::zero(),
        ))
        .expect("variables are interned");
    }
    sys
}

/// Four constraints whose integer reading has a cycle of weight `-1`.
pub fn idl_example<S: Scalar>(n: &Modulus<S>) -> ConstraintSystem<S> {
    from_text(
        "x1 + 3 <= x2\nx2 <= x3 + 1\nx3 + 2 <= x4\nx4 <= x1 + 3\n",
        n,
    )
}

/// Parameters of [`random_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams<S> {
    pub vars: usize,
    pub constraints: usize,
    /// Offsets and constants are drawn from `[-m, m]`.
    pub m: i64,
    pub modulus: Modulus<S>,
}

/// Each constraint picks one of eight shapes uniformly: `x + k R y + l` with
/// `R` in `<=`, `<`, `=`, or `x R c` with `R` in `<=`, `>=`, `<`, `>`, `=`.
/// Variables are uniform over `x0..x{vars-1}` (both sides may coincide);
/// `k`, `l` and `c` are uniform in `[-m, m]`. Output depends only on the
/// parameters and the seed.
///
/// # Panics
///
/// If `vars` is zero while `constraints` is not, or `m` is negative.
pub fn random_system<S: Scalar>(params: &RandomParams<S>, seed: u64) -> ConstraintSystem<S> {
    assert!(params.m >= 0, "m must be non-negative");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sys = ConstraintSystem::new(params.modulus.clone());
    let vars: Vec<VarId> = (0..params.vars)
        .map(|i| sys.var(&format!("x{i}")).expect("valid name"))
        .collect();
    assert!(
        !vars.is_empty() || params.constraints == 0,
        "constraints need at least one variable"
    );
    let m = params.m;
    for _ in 0..params.constraints {
        let shape = rng.random_range(0..8);
        let x = vars[rng.random_range(0..vars.len())];
        let k = S::lit(rng.random_range(-m..=m));
        let c = match shape {
            0..=2 => {
                let y = vars[rng.random_range(0..vars.len())];
                let l = S::lit(rng.random_range(-m..=m));
                let rel = [Relation::Le, Relation::Lt, Relation::Eq][shape];
                Constraint::between(x, k, rel, y, l)
            }
            _ => {
                let rel = [
                    Relation::Le,
                    Relation::Ge,
                    Relation::Lt,
                    Relation::Gt,
                    Relation::Eq,
                ][shape - 3];
                Constraint::against(x, S::zero(), rel, k)
            }
        };
        sys.push(c).expect("variables are interned");
    }
    sys
}

/// `constraints` integer constraints `x - y <= k` over `vars` variables with
/// `k` uniform in `[-w, w]`; `x` and `y` may coincide.
pub fn random_idl(vars: usize, constraints: usize, w: i64, seed: u64) -> IdlSystem<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sys = IdlSystem::new(vars);
    if vars == 0 {
        return sys;
    }
    for _ in 0..constraints {
        let x = VarId(rng.random_range(0..vars));
        let y = VarId(rng.random_range(0..vars));
        sys.push(IdlConstraint::new(x, y, rng.random_range(-w..=w)))
            .expect("variables are in range");
    }
    sys
}
