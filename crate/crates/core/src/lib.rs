//! Difference constraints over modular (machine) arithmetic.
//!
//! * [`system`] and [`text`]: constraints `x + k <=_N y + l` (and the `<`, `=`,
//!   `>=`, `>` and constant forms), evaluation, and a line-oriented file format.
//! * [`idl`]: integer difference logic decided with Floyd–Warshall, with
//!   negative-cycle certificates, plus the naive integer reading of a modular
//!   system.
//! * [`mdl`]: complete modular satisfiability by bounded search over a
//!   small-model domain, a brute-force oracle, and the cluster-packing
//!   normalizer.
//! * [`reductions`]: graph 3-colorability encoded as modular systems.
//!
//! Everything is generic over the integer [`Scalar`]; the aliases below fix it
//! to `i64` (fast) or [`BigInt`] (unbounded).

pub mod arith;
pub mod idl;
pub mod instances;
pub mod mdl;
pub mod reductions;
pub mod scalar;
pub mod system;
pub mod text;

pub use num_bigint::BigInt;

pub use arith::{cmp_mod, reduce_mod, Modulus, ModulusError};
pub use scalar::Scalar;
pub use system::{
    eval_constraint, eval_system, eval_term, Assignment, Constraint, ConstraintSystem, EvalError,
    Relation, Rhs, SymbolTable, SystemCheck, SystemError, Term, VarId,
};
pub use text::{parse_system, render_system, ParseError, TextError};

pub type System = ConstraintSystem<i64>;
pub type BigSystem = ConstraintSystem<BigInt>;
pub type Model = Assignment<i64>;
pub type BigModel = Assignment<BigInt>;
pub type IdlOutcome = idl::IdlOutcome<i64>;
pub type SolveOutcome = mdl::SolveOutcome<i64>;
