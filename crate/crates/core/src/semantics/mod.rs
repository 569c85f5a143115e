//! Three-valued evaluation, residuals, total satisfaction and the
//! truth-table oracles.

mod truth;

pub use truth::TruthValue3;

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula};
use crate::limits::Limits;
use crate::sweep::{row_assignment, Execution, Kernel, Want};

/// Evaluates `f` under `mu`; unbound atoms are unknown.
pub fn eval3(f: &Formula, mu: &Assignment) -> TruthValue3 {
    match f {
        Formula::Const(b) => TruthValue3::from_bool(*b),
        Formula::Atom(a) => mu.get(a).map_or(TruthValue3::Unknown, TruthValue3::from_bool),
        Formula::Not(g) => !eval3(g, mu),
        Formula::And(l, r) => eval3(l, mu).and(eval3(r, mu)),
        Formula::Or(l, r) => eval3(l, mu).or(eval3(r, mu)),
        Formula::Implies(l, r) => eval3(l, mu).implies(eval3(r, mu)),
        Formula::Iff(l, r) => eval3(l, mu).iff(eval3(r, mu)),
    }
}

fn negate(f: Formula) -> Formula {
    match f {
        Formula::Const(b) => Formula::Const(!b),
        other => Formula::not(other),
    }
}

/// The residual of `f` under `mu`: bound atoms are replaced by constants and
/// constants are propagated bottom-up through the connectives. Nothing else
/// is simplified, so `A | A` stays as it is.
pub fn residual(f: &Formula, mu: &Assignment) -> Formula {
    use Formula::*;
    match f {
        Const(_) => f.clone(),
        Atom(a) => mu.get(a).map_or_else(|| f.clone(), Const),
        Not(g) => negate(residual(g, mu)),
        And(l, r) => match (residual(l, mu), residual(r, mu)) {
            (Const(false), _) | (_, Const(false)) => Formula::FALSE,
            (Const(true), x) | (x, Const(true)) => x,
            (l, r) => Formula::and(l, r),
        },
        Or(l, r) => match (residual(l, mu), residual(r, mu)) {
            (Const(true), _) | (_, Const(true)) => Formula::TRUE,
            (Const(false), x) | (x, Const(false)) => x,
            (l, r) => Formula::or(l, r),
        },
        Implies(l, r) => match (residual(l, mu), residual(r, mu)) {
            (Const(true), x) => x,
            (Const(false), _) => Formula::TRUE,
            (_, Const(true)) => Formula::TRUE,
            (x, Const(false)) => negate(x),
            (l, r) => Formula::implies(l, r),
        },
        Iff(l, r) => match (residual(l, mu), residual(r, mu)) {
            (Const(true), x) | (x, Const(true)) => x,
            (Const(false), x) | (x, Const(false)) => negate(x),
            (l, r) => Formula::iff(l, r),
        },
    }
}

/// Classical satisfaction by a total assignment.
pub fn sat_total(f: &Formula, eta: &Assignment) -> Result<bool> {
    Ok(match f {
        Formula::Const(b) => *b,
        Formula::Atom(a) => eta.get(a).ok_or_else(|| Error::NotTotal(a.clone()))?,
        Formula::Not(g) => !sat_total(g, eta)?,
        Formula::And(l, r) => sat_total(l, eta)? & sat_total(r, eta)?,
        Formula::Or(l, r) => sat_total(l, eta)? | sat_total(r, eta)?,
        Formula::Implies(l, r) => !sat_total(l, eta)? | sat_total(r, eta)?,
        Formula::Iff(l, r) => sat_total(l, eta)? == sat_total(r, eta)?,
    })
}

fn check_cap(atoms: usize, limits: &Limits) -> Result<()> {
    if atoms > limits.max_atoms {
        return Err(Error::AtomCap {
            atoms,
            cap: limits.max_atoms,
        });
    }
    Ok(())
}

/// First total assignment over `atoms(f)` (in extension order) that does not
/// satisfy `f`, or `None` if `f` is valid.
pub fn brute_counterexample(f: &Formula, limits: &Limits, exec: Execution) -> Result<Option<Assignment>> {
    let atoms: Vec<Atom> = f.atoms().into_iter().collect();
    check_cap(atoms.len(), limits)?;
    let kernel = Kernel::compile(f, &atoms);
    Ok(kernel
        .first_row(Want::NotTrue, exec)
        .map(|row| row_assignment(&atoms, row)))
}

/// First satisfying total assignment over `atoms(f)`, if any.
pub fn brute_model(f: &Formula, limits: &Limits, exec: Execution) -> Result<Option<Assignment>> {
    let atoms: Vec<Atom> = f.atoms().into_iter().collect();
    check_cap(atoms.len(), limits)?;
    let kernel = Kernel::compile(f, &atoms);
    Ok(kernel
        .first_row(Want::True, exec)
        .map(|row| row_assignment(&atoms, row)))
}

pub fn brute_valid(f: &Formula, limits: &Limits) -> Result<bool> {
    brute_valid_with(f, limits, Execution::default())
}

pub fn brute_valid_with(f: &Formula, limits: &Limits, exec: Execution) -> Result<bool> {
    Ok(brute_counterexample(f, limits, exec)?.is_none())
}

pub fn brute_satisfiable(f: &Formula, limits: &Limits) -> Result<bool> {
    Ok(brute_model(f, limits, Execution::default())?.is_some())
}

/// Equivalence by sweeping `atoms(f) ∪ atoms(g)`.
pub fn brute_equivalent(f: &Formula, g: &Formula, limits: &Limits) -> Result<bool> {
    brute_valid(&Formula::iff(f.clone(), g.clone()), limits)
}
