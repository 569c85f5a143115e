//! Non-CNF DPLL over residuals.
//!
//! Each node computes the residual of the input under the current partial
//! assignment. A `true` residual closes the branch with a model, `false`
//! closes it as a conflict. Literals that appear as top-level conjuncts of the
//! residual are forced (unit propagation on the residual); there is no
//! pure-literal rule.

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::formula::{conjuncts, Atom, Formula, Literal};
use crate::limits::Limits;
use crate::semantics::residual;

use super::{Engine, EnumResult, Mode};

/// Branch-atom selection.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Branching {
    /// Most frequent atom of the current residual, ties by name.
    #[default]
    MostFrequent,
    /// First atom of the given order that still occurs in the residual.
    Static(Vec<Atom>),
}

impl Branching {
    fn pick(&self, r: &Formula) -> Option<Atom> {
        match self {
            Branching::MostFrequent => r.most_frequent_atom(),
            Branching::Static(order) => {
                let present = r.atoms();
                order
                    .iter()
                    .find(|a| present.contains(*a))
                    .cloned()
                    .or_else(|| present.into_iter().next())
            }
        }
    }
}

/// Extends `mu` with every literal forced as a top-level conjunct, to a
/// fixpoint, and returns the final residual.
fn propagate(f: &Formula, mu: &mut Assignment) -> Formula {
    loop {
        let r = residual(f, mu);
        if r.as_const().is_some() {
            return r;
        }
        let units: Vec<Literal> = conjuncts(&r).into_iter().filter_map(Formula::as_literal).collect();
        if units.is_empty() {
            return r;
        }
        for u in &units {
            if mu.insert(u).is_err() {
                return Formula::FALSE;
            }
        }
    }
}

struct Search<'a> {
    formula: &'a Formula,
    branching: &'a Branching,
    branches: usize,
    branch_budget: usize,
}

impl Search<'_> {
    fn enumerate(&mut self, mut mu: Assignment, out: &mut Vec<Assignment>) -> Result<()> {
        self.branches += 1;
        if self.branches > self.branch_budget {
            return Err(Error::BranchBudget(self.branch_budget));
        }
        let r = propagate(self.formula, &mut mu);
        match r.as_const() {
            Some(true) => out.push(mu),
            Some(false) => {}
            None => {
                let atom = self.branching.pick(&r).expect("non-constant residual has atoms");
                for value in [true, false] {
                    let child = mu.with(&Literal::new(atom.clone(), value))?;
                    self.enumerate(child, out)?;
                }
            }
        }
        Ok(())
    }
}

/// All-SAT by non-CNF DPLL. The returned assignments validate `f`, are
/// pairwise inconsistent, and their disjunction is equivalent to `f`.
pub fn dpll_enumerate(f: &Formula, branching: &Branching, limits: &Limits) -> Result<EnumResult> {
    let mut search = Search {
        formula: f,
        branching,
        branches: 0,
        branch_budget: limits.branch_budget,
    };
    let mut out = Vec::new();
    search.enumerate(Assignment::empty(), &mut out)?;
    Ok(EnumResult {
        engine: Engine::Dpll,
        mode: Mode::Validating,
        assignments: out,
    })
}

/// Finds a model of `f` with the same search, returning it as a total
/// assignment over `atoms(f)` (atoms the search never fixed are set false).
pub fn solve(f: &Formula, limits: &Limits) -> Result<Option<Assignment>> {
    struct Solver<'a> {
        formula: &'a Formula,
        conflicts: usize,
        budget: usize,
    }
    impl Solver<'_> {
        fn go(&mut self, mut mu: Assignment) -> Result<Option<Assignment>> {
            let r = propagate(self.formula, &mut mu);
            match r.as_const() {
                Some(true) => Ok(Some(mu)),
                Some(false) => {
                    self.conflicts += 1;
                    if self.conflicts > self.budget {
                        return Err(Error::ConflictBudget(self.budget));
                    }
                    Ok(None)
                }
                None => {
                    let atom = r.most_frequent_atom().expect("non-constant residual has atoms");
                    for value in [true, false] {
                        if let Some(m) = self.go(mu.with(&Literal::new(atom.clone(), value))?)? {
                            return Ok(Some(m));
                        }
                    }
                    Ok(None)
                }
            }
        }
    }
    let mut solver = Solver {
        formula: f,
        conflicts: 0,
        budget: limits.conflict_budget,
    };
    Ok(solver.go(Assignment::empty())?.map(|mut m| {
        for a in f.atoms() {
            if !m.binds(&a) {
                m.insert(&Literal::new(a, false)).expect("unbound atom");
            }
        }
        m
    }))
}
