//! Propositional predicate abstraction `exists B . (phi & ⋀ (Ai <-> phi_i))`,
//! enumerated as pairwise inconsistent cubes over the labels `Ai`.
//!
//! The search is DPLL over the labels in problem order, true first. A node
//! closes when the matrix is unsatisfiable under it. Otherwise the leaf test
//! of the mode runs (`exists_validates` or `exists_entails`); if it fails,
//! labels whose opposite polarity is unsatisfiable are fixed and the test
//! repeats, and only then does the search branch. Entailing mode therefore
//! stops as soon as a cube entails the abstraction.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::enumeration::{Engine, EnumResult, Mode};
use crate::error::{Error, Result};
use crate::formula::{parse, Atom, Formula, Literal};
use crate::limits::Limits;
use crate::quantified::{exists_entails, exists_validates, ExistentialFormula};
use crate::semantics::{brute_equivalent, brute_satisfiable, residual};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredAbsProblem {
    pub base: Formula,
    /// `(label, definition)` pairs; labels are fresh w.r.t. every formula.
    pub predicates: Vec<(Atom, Formula)>,
}

/// JSON form: `{"base": "<formula>", "predicates": [{"label": "A1", "def": "<formula>"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemJson {
    pub base: String,
    #[serde(default)]
    pub predicates: Vec<PredicateJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateJson {
    pub label: String,
    pub def: String,
}

impl PredAbsProblem {
    /// Builds and checks a problem.
    pub fn new(base: Formula, predicates: Vec<(Atom, Formula)>) -> Result<PredAbsProblem> {
        let p = PredAbsProblem { base, predicates };
        p.check()?;
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<PredAbsProblem> {
        let raw: ProblemJson =
            serde_json::from_str(text).map_err(|e| Error::Precondition(format!("bad problem file: {e}")))?;
        raw.decode()
    }

    pub fn to_json(&self) -> ProblemJson {
        ProblemJson {
            base: self.base.to_string(),
            predicates: self
                .predicates
                .iter()
                .map(|(a, d)| PredicateJson {
                    label: a.to_string(),
                    def: d.to_string(),
                })
                .collect(),
        }
    }

    pub fn labels(&self) -> Vec<Atom> {
        self.predicates.iter().map(|(a, _)| a.clone()).collect()
    }

    /// Atoms of the base and of every definition.
    pub fn body_atoms(&self) -> BTreeSet<Atom> {
        let mut out = self.base.atoms();
        for (_, d) in &self.predicates {
            d.collect_atoms(&mut out);
        }
        out
    }

    fn check(&self) -> Result<()> {
        let body = self.body_atoms();
        let mut seen = BTreeSet::new();
        for (a, _) in &self.predicates {
            if body.contains(a) || !seen.insert(a) {
                return Err(Error::LabelCollision(a.clone()));
            }
        }
        Ok(())
    }

    pub fn to_existential(&self) -> Result<ExistentialFormula> {
        self.check()?;
        let matrix = Formula::conjunction(
            std::iter::once(self.base.clone()).chain(
                self.predicates
                    .iter()
                    .map(|(a, d)| Formula::iff(Formula::Atom(a.clone()), d.clone())),
            ),
        );
        Ok(ExistentialFormula {
            matrix,
            quantified: self.body_atoms(),
        })
    }
}

impl ProblemJson {
    pub fn decode(&self) -> Result<PredAbsProblem> {
        let base = parse(&self.base)?;
        let predicates = self
            .predicates
            .iter()
            .map(|p| Ok((p.label.parse::<Atom>()?, parse(&p.def)?)))
            .collect::<Result<Vec<_>>>()?;
        PredAbsProblem::new(base, predicates)
    }
}

struct Search<'a> {
    ef: &'a ExistentialFormula,
    labels: &'a [Atom],
    mode: Mode,
    limits: &'a Limits,
    branches: usize,
}

impl Search<'_> {
    fn consistent(&self, mu: &Assignment) -> Result<bool> {
        brute_satisfiable(&residual(&self.ef.matrix, mu), self.limits)
    }

    fn leaf(&self, mu: &Assignment) -> Result<bool> {
        Ok(match self.mode {
            Mode::Validating => exists_validates(mu, self.ef, self.limits)?.holds(),
            Mode::Entailing => exists_entails(mu, self.ef, self.limits)?.holds(),
        })
    }

    /// Fixes every unassigned label whose other polarity is inconsistent.
    /// Returns whether anything was added.
    fn propagate(&self, mu: &mut Assignment) -> Result<bool> {
        let mut changed = false;
        loop {
            let mut round = false;
            for a in self.labels {
                if mu.binds(a) {
                    continue;
                }
                for value in [true, false] {
                    let lit = Literal::new(a.clone(), value);
                    if !self.consistent(&mu.with(&lit)?)? {
                        mu.insert(&lit.negate())?;
                        round = true;
                        break;
                    }
                }
            }
            if !round {
                return Ok(changed);
            }
            changed = true;
        }
    }

    fn enumerate(&mut self, mut mu: Assignment, out: &mut Vec<Assignment>) -> Result<()> {
        self.branches += 1;
        if self.branches > self.limits.branch_budget {
            return Err(Error::BranchBudget(self.limits.branch_budget));
        }
        if !self.consistent(&mu)? {
            return Ok(());
        }
        if self.leaf(&mu)? || (self.propagate(&mut mu)? && self.leaf(&mu)?) {
            out.push(mu);
            return Ok(());
        }
        let atom = self
            .labels
            .iter()
            .find(|a| !mu.binds(a))
            .ok_or_else(|| Error::Invariant(format!("total consistent cube {mu} failed the leaf test")))?;
        for value in [true, false] {
            self.enumerate(mu.with(&Literal::new(atom.clone(), value))?, out)?;
        }
        Ok(())
    }
}

pub fn enumerate_abstraction(p: &PredAbsProblem, mode: Mode, limits: &Limits) -> Result<EnumResult> {
    let ef = p.to_existential()?;
    let labels = p.labels();
    let mut search = Search {
        ef: &ef,
        labels: &labels,
        mode,
        limits,
        branches: 0,
    };
    let mut out = Vec::new();
    search.enumerate(Assignment::empty(), &mut out)?;
    Ok(EnumResult {
        engine: Engine::Dpll,
        mode,
        assignments: out,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeComparison {
    pub validating: EnumResult,
    pub entailing: EnumResult,
    pub cube_count_validating: usize,
    pub cube_count_entailing: usize,
    pub literals_validating: usize,
    pub literals_entailing: usize,
    /// The two cube disjunctions are equivalent.
    pub equivalent: bool,
}

pub fn compare_modes(p: &PredAbsProblem, limits: &Limits) -> Result<ModeComparison> {
    let validating = enumerate_abstraction(p, Mode::Validating, limits)?;
    let entailing = enumerate_abstraction(p, Mode::Entailing, limits)?;
    let equivalent = brute_equivalent(&validating.to_formula(), &entailing.to_formula(), limits)?;
    Ok(ModeComparison {
        cube_count_validating: validating.assignments.len(),
        cube_count_entailing: entailing.assignments.len(),
        literals_validating: validating.total_literals(),
        literals_entailing: entailing.total_literals(),
        equivalent,
        validating,
        entailing,
    })
}
