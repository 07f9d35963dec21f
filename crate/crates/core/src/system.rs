//! Constraint systems over residues: variables, terms, constraints, and their
//! evaluation under an assignment.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::arith::Modulus;
use crate::scalar::Scalar;

/// Dense variable index, assigned in first-occurrence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("variable {0:?} is not declared in this system")]
    UnknownVariable(VarId),
    #[error("constant magnitude exceeds the scalar type")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("assignment does not define variable #{}", .0.index())]
    UndefinedVariable(VarId),
}

/// `[A-Za-z_][A-Za-z0-9_]*`
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Bijection between variable names and [`VarId`]s.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    index: HashMap<String, VarId>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `name`, allocating the next index if it is new.
    pub fn intern(&mut self, name: &str) -> Result<VarId, SystemError> {
        if let Some(&id) = self.index.get(name) {
            return Ok(id);
        }
        if !is_valid_name(name) {
            return Err(SystemError::InvalidName(name.to_string()));
        }
        let id = VarId(self.names.len());
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.names[id.0]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, id: VarId) -> bool {
        id.0 < self.names.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &str)> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (VarId(i), n.as_str()))
    }
}

/// `var + offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term<S> {
    pub var: VarId,
    pub offset: S,
}

impl<S: Scalar> Term<S> {
    pub fn new(var: VarId, offset: S) -> Self {
        Term { var, offset }
    }

    pub fn var(var: VarId) -> Self {
        Term {
            var,
            offset: S::zero(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::Le,
        Relation::Lt,
        Relation::Eq,
        Relation::Ge,
        Relation::Gt,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    /// Whether `lhs rel rhs` holds for two residues.
    pub fn holds<S: Ord>(self, lhs: &S, rhs: &S) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Right-hand side of a constraint: a term or a constant, stored as written.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rhs<S> {
    Term(Term<S>),
    Const(S),
}

/// `lhs rel rhs` under the residue order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint<S> {
    pub lhs: Term<S>,
    pub rel: Relation,
    pub rhs: Rhs<S>,
}

impl<S: Scalar> Constraint<S> {
    pub fn new(lhs: Term<S>, rel: Relation, rhs: Rhs<S>) -> Self {
        Constraint { lhs, rel, rhs }
    }

    /// `x + k rel y + l`
    pub fn between(x: VarId, k: S, rel: Relation, y: VarId, l: S) -> Self {
        Constraint::new(Term::new(x, k), rel, Rhs::Term(Term::new(y, l)))
    }

    /// `x + k rel c`
    pub fn against(x: VarId, k: S, rel: Relation, c: S) -> Self {
        Constraint::new(Term::new(x, k), rel, Rhs::Const(c))
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> {
        let rhs = match &self.rhs {
            Rhs::Term(t) => Some(t.var),
            Rhs::Const(_) => None,
        };
        std::iter::once(self.lhs.var).chain(rhs)
    }

    /// Largest absolute value among the constraint's offsets and constant;
    /// `None` if that magnitude does not fit the scalar type.
    pub fn max_abs_constant(&self) -> Option<S> {
        let rhs = match &self.rhs {
            Rhs::Term(t) => &t.offset,
            Rhs::Const(c) => c,
        };
        Some(std::cmp::max(
            self.lhs.offset.checked_abs()?,
            rhs.checked_abs()?,
        ))
    }
}

/// Values for some or all variables of a system.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment<S> {
    values: Vec<Option<S>>,
}

impl<S: Scalar> Assignment<S> {
    pub fn new() -> Self {
        Assignment { values: Vec::new() }
    }

    /// A total assignment; `values[i]` is the value of `VarId(i)`.
    pub fn from_values(values: Vec<S>) -> Self {
        Assignment {
            values: values.into_iter().map(Some).collect(),
        }
    }

    pub fn get(&self, v: VarId) -> Option<&S> {
        self.values.get(v.0).and_then(|x| x.as_ref())
    }

    pub fn set(&mut self, v: VarId, value: S) {
        if self.values.len() <= v.0 {
            self.values.resize(v.0 + 1, None);
        }
        self.values[v.0] = Some(value);
    }

    /// Whether every variable below `count` has a value.
    pub fn is_total(&self, count: usize) -> bool {
        (0..count).all(|i| self.get(VarId(i)).is_some())
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &S)> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.as_ref().map(|v| (VarId(i), v)))
    }
}

/// Result of checking a whole system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemCheck {
    Satisfied,
    /// Index of the first violated constraint.
    Violated(usize),
}

impl SystemCheck {
    pub fn is_satisfied(self) -> bool {
        self == SystemCheck::Satisfied
    }
}

/// A modulus plus an ordered list of constraints over interned variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem<S> {
    modulus: Modulus<S>,
    symbols: SymbolTable,
    constraints: Vec<Constraint<S>>,
    max_abs: S,
}

impl<S: Scalar> ConstraintSystem<S> {
    pub fn new(modulus: Modulus<S>) -> Self {
        ConstraintSystem {
            modulus,
            symbols: SymbolTable::new(),
            constraints: Vec::new(),
            max_abs: S::zero(),
        }
    }

    /// Interns a variable name.
    pub fn var(&mut self, name: &str) -> Result<VarId, SystemError> {
        self.symbols.intern(name)
    }

    pub fn push(&mut self, c: Constraint<S>) -> Result<(), SystemError> {
        if let Some(v) = c.vars().find(|&v| !self.symbols.contains(v)) {
            return Err(SystemError::UnknownVariable(v));
        }
        let m = c.max_abs_constant().ok_or(SystemError::Overflow)?;
        if m > self.max_abs {
            self.max_abs = m;
        }
        self.constraints.push(c);
        Ok(())
    }

    pub fn modulus(&self) -> &Modulus<S> {
        &self.modulus
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn constraints(&self) -> &[Constraint<S>] {
        &self.constraints
    }

    /// Number of variables, `p`.
    pub fn var_count(&self) -> usize {
        self.symbols.len()
    }

    /// Largest absolute value of any offset or constant, `m` (0 if none).
    pub fn max_abs_constant(&self) -> &S {
        &self.max_abs
    }

    /// Renders one constraint in the text syntax.
    pub fn display_constraint(&self, c: &Constraint<S>) -> String {
        let mut out = String::new();
        write_term(&mut out, &self.symbols, &c.lhs);
        out.push(' ');
        out.push_str(c.rel.symbol());
        out.push(' ');
        match &c.rhs {
            Rhs::Term(t) => write_term(&mut out, &self.symbols, t),
            Rhs::Const(k) => out.push_str(&k.to_string()),
        }
        out
    }

    /// Checks every constraint; reports the first violation.
    pub fn check(&self, a: &Assignment<S>) -> Result<SystemCheck, EvalError> {
        eval_system(self, a)
    }
}

fn write_term<S: Scalar>(out: &mut String, symbols: &SymbolTable, t: &Term<S>) {
    out.push_str(symbols.name(t.var));
    if t.offset.is_positive() {
        out.push_str(&format!(" + {}", t.offset));
    } else if t.offset.is_negative() {
        out.push_str(&format!(" - {}", t.offset.abs()));
    }
}

pub fn eval_term<S: Scalar>(
    t: &Term<S>,
    a: &Assignment<S>,
    n: &Modulus<S>,
) -> Result<S, EvalError> {
    let v = a.get(t.var).ok_or(EvalError::UndefinedVariable(t.var))?;
    Ok(n.add(v, &t.offset))
}

pub fn eval_constraint<S: Scalar>(
    c: &Constraint<S>,
    a: &Assignment<S>,
    n: &Modulus<S>,
) -> Result<bool, EvalError> {
    let lhs = eval_term(&c.lhs, a, n)?;
    let rhs = match &c.rhs {
        Rhs::Term(t) => eval_term(t, a, n)?,
        Rhs::Const(k) => n.reduce(k),
    };
    Ok(c.rel.holds(&lhs, &rhs))
}

pub fn eval_system<S: Scalar>(
    sys: &ConstraintSystem<S>,
    a: &Assignment<S>,
) -> Result<SystemCheck, EvalError> {
    for (i, c) in sys.constraints().iter().enumerate() {
        if !eval_constraint(c, a, sys.modulus())? {
            return Ok(SystemCheck::Violated(i));
        }
    }
    Ok(SystemCheck::Satisfied)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(n: i64) -> Modulus<i64> {
        Modulus::new(n).unwrap()
    }

    fn one(x: i64) -> Assignment<i64> {
        Assignment::from_values(vec![x])
    }

    #[test]
    fn term_examples() {
        let x = VarId(0);
        assert_eq!(eval_term(&Term::new(x, 1), &one(9), &m(10)), Ok(0));
        assert_eq!(eval_term(&Term::new(x, 0), &one(5), &m(10)), Ok(5));
        assert_eq!(eval_term(&Term::new(x, -1), &one(0), &m(10)), Ok(9));
        assert_eq!(
            eval_term(&Term::new(VarId(3), 0), &one(0), &m(10)),
            Err(EvalError::UndefinedVariable(VarId(3)))
        );
    }

    #[test]
    fn constraint_examples() {
        let (x, y) = (VarId(0), VarId(1));
        let a = Assignment::from_values(vec![9, 5]);
        let c = Constraint::between(x, 0, Relation::Le, y, 5);
        assert_eq!(eval_constraint(&c, &a, &m(10)), Ok(false));

        let a = Assignment::from_values(vec![5, 0]);
        let c = Constraint::between(x, 0, Relation::Le, y, -1);
        assert_eq!(eval_constraint(&c, &a, &m(10)), Ok(true));

        for n in [2, 7, 10] {
            for v in 0..n {
                let c = Constraint::between(x, 0, Relation::Eq, x, 0);
                assert_eq!(eval_constraint(&c, &one(v), &m(n)), Ok(true));
            }
        }
    }

    #[test]
    fn ge_and_gt_swap_sides() {
        let (x, y) = (VarId(0), VarId(1));
        let a = Assignment::from_values(vec![3, 7]);
        let n = m(10);
        assert_eq!(
            eval_constraint(&Constraint::between(y, 0, Relation::Ge, x, 0), &a, &n),
            Ok(true)
        );
        assert_eq!(
            eval_constraint(&Constraint::between(y, 0, Relation::Gt, x, 4), &a, &n),
            Ok(false)
        );
        assert_eq!(
            eval_constraint(&Constraint::between(y, 0, Relation::Ge, x, 4), &a, &n),
            Ok(true)
        );
        assert_eq!(
            eval_constraint(&Constraint::against(x, 0, Relation::Gt, -8), &a, &n),
            Ok(true)
        );
    }

    fn intro(n: i64) -> ConstraintSystem<i64> {
        let mut sys = ConstraintSystem::new(m(n));
        let x = sys.var("x").unwrap();
        sys.push(Constraint::against(x, 0, Relation::Ge, 0))
            .unwrap();
        sys.push(Constraint::against(x, 1, Relation::Le, 0))
            .unwrap();
        sys
    }

    #[test]
    fn system_examples() {
        let empty = ConstraintSystem::new(m(5));
        assert_eq!(
            eval_system(&empty, &Assignment::new()),
            Ok(SystemCheck::Satisfied)
        );
        assert_eq!(
            eval_system(&intro(16), &one(15)),
            Ok(SystemCheck::Satisfied)
        );
        assert_eq!(
            eval_system(&intro(16), &one(3)),
            Ok(SystemCheck::Violated(1))
        );
    }

    #[test]
    fn cached_stats() {
        let mut sys = ConstraintSystem::new(m(10));
        let x = sys.var("x").unwrap();
        let y = sys.var("y").unwrap();
        assert_eq!(*sys.max_abs_constant(), 0);
        sys.push(Constraint::between(x, 2, Relation::Lt, y, -7))
            .unwrap();
        sys.push(Constraint::against(y, 0, Relation::Le, 3))
            .unwrap();
        assert_eq!(*sys.max_abs_constant(), 7);
        assert_eq!(sys.var_count(), 2);
        assert_eq!(sys.var("x").unwrap(), x);
    }

    #[test]
    fn rejects_foreign_variables_and_bad_names() {
        let mut sys = ConstraintSystem::<i64>::new(m(10));
        let x = sys.var("x").unwrap();
        let bad = Constraint::between(x, 0, Relation::Le, VarId(4), 0);
        assert_eq!(sys.push(bad), Err(SystemError::UnknownVariable(VarId(4))));
        assert!(sys.var("1x").is_err());
        assert!(sys.var("").is_err());
        assert!(sys.var("a-b").is_err());
        assert!(sys.var("_ok9").is_ok());
    }

    #[test]
    fn display_constraint_forms() {
        let mut sys = ConstraintSystem::new(m(10));
        let x = sys.var("x").unwrap();
        let y = sys.var("y").unwrap();
        let c = Constraint::between(x, 2, Relation::Lt, y, -1);
        assert_eq!(sys.display_constraint(&c), "x + 2 < y - 1");
        let c = Constraint::against(y, 0, Relation::Ge, -3);
        assert_eq!(sys.display_constraint(&c), "y >= -3");
    }

    proptest! {
        #[test]
        fn invariant_under_multiples_of_modulus(
            n in 2i64..20,
            x in 0i64..20, y in 0i64..20,
            k in -30i64..30, l in -30i64..30,
            sk in -3i64..3, sl in -3i64..3,
            rel in 0usize..5,
        ) {
            let md = m(n);
            let rel = Relation::ALL[rel];
            let a = Assignment::from_values(vec![x % n, y % n]);
            let base = Constraint::between(VarId(0), k, rel, VarId(1), l);
            let shifted = Constraint::between(VarId(0), k + sk * n, rel, VarId(1), l + sl * n);
            prop_assert_eq!(eval_constraint(&base, &a, &md), eval_constraint(&shifted, &a, &md));
            let base = Constraint::against(VarId(0), k, rel, l);
            let shifted = Constraint::against(VarId(0), k + sk * n, rel, l + sl * n);
            prop_assert_eq!(eval_constraint(&base, &a, &md), eval_constraint(&shifted, &a, &md));
        }
    }
}
