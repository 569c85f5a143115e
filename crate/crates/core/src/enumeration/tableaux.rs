//! Propositional analytic tableaux over the `!`/`&` core.
//!
//! Alpha rules (`a & b`, `!!a`) extend the branch, the beta rule
//! (`!(a & b)`) splits it. Alpha formulas are always expanded before any
//! split. Every open saturated branch contributes its literal set.

use std::collections::VecDeque;

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::limits::Limits;

use super::{Engine, EnumResult, Mode};

#[derive(Clone)]
struct Branch {
    pending: VecDeque<Formula>,
    literals: Assignment,
}

fn is_beta(f: &Formula) -> bool {
    matches!(f, Formula::Not(inner) if matches!(inner.as_ref(), Formula::And(..)))
}

struct Prover {
    branches: usize,
    budget: usize,
}

impl Prover {
    fn expand(&mut self, mut branch: Branch, out: &mut Vec<Assignment>) -> Result<()> {
        self.branches += 1;
        if self.branches > self.budget {
            return Err(Error::BranchBudget(self.budget));
        }
        loop {
            let next = match branch.pending.iter().position(|f| !is_beta(f)) {
                Some(i) => branch.pending.remove(i),
                None => branch.pending.pop_front(),
            };
            let Some(f) = next else {
                out.push(branch.literals);
                return Ok(());
            };
            if let Some(lit) = f.as_literal() {
                if branch.literals.insert(&lit).is_err() {
                    return Ok(());
                }
                continue;
            }
            match f {
                Formula::Const(true) => {}
                Formula::Const(false) => return Ok(()),
                Formula::And(l, r) => {
                    branch.pending.push_back(*l);
                    branch.pending.push_back(*r);
                }
                Formula::Not(inner) => match *inner {
                    Formula::Const(b) => branch.pending.push_back(Formula::Const(!b)),
                    Formula::Not(g) => branch.pending.push_back(*g),
                    Formula::And(l, r) => {
                        for side in [*l, *r] {
                            let mut child = branch.clone();
                            child.pending.push_back(Formula::not(side));
                            self.expand(child, out)?;
                        }
                        return Ok(());
                    }
                    other => unreachable!("desugared formula contains {other}"),
                },
                other => unreachable!("desugared formula contains {other}"),
            }
        }
    }
}

/// Enumerates open branches of the tableau for `f`. Duplicated or subsumed
/// assignments are kept unless `dedup` is set, in which case exact
/// duplicates and strict supersets of another result are dropped.
pub fn tableaux_enumerate(f: &Formula, dedup: bool, limits: &Limits) -> Result<EnumResult> {
    let mut prover = Prover {
        branches: 0,
        budget: limits.branch_budget,
    };
    let mut out = Vec::new();
    prover.expand(
        Branch {
            pending: VecDeque::from([f.desugar()]),
            literals: Assignment::empty(),
        },
        &mut out,
    )?;
    if dedup {
        out = remove_subsumed(out);
    }
    Ok(EnumResult {
        engine: Engine::Tableaux,
        mode: Mode::Validating,
        assignments: out,
    })
}

fn remove_subsumed(list: Vec<Assignment>) -> Vec<Assignment> {
    let mut kept: Vec<Assignment> = Vec::new();
    for (i, mu) in list.iter().enumerate() {
        let dominated = list.iter().enumerate().any(|(j, other)| {
            j != i && other.is_subset_of(mu) && (other.len() < mu.len() || j < i)
        });
        if !dominated {
            kept.push(mu.clone());
        }
    }
    kept
}
