//! All-SAT engines and the checks that relate their outputs.
//!
//! OBDD paths are partial assignments that *entail* the formula; tableaux and
//! non-CNF DPLL branches *validate* it.

pub mod dpll;
pub mod obdd;
pub mod tableaux;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use dpll::{dpll_enumerate, Branching};
pub use obdd::{build_obdd, obdd_enumerate, Obdd, ObddBuilder};
pub use tableaux::tableaux_enumerate;

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::formula::{Formula, Literal};
use crate::limits::Limits;
use crate::partial;
use crate::semantics::brute_equivalent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Obdd,
    Tableaux,
    Dpll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Entailing,
    Validating,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Obdd => "obdd",
            Engine::Tableaux => "tableaux",
            Engine::Dpll => "dpll",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Engine> {
        match s {
            "obdd" => Ok(Engine::Obdd),
            "tableaux" => Ok(Engine::Tableaux),
            "dpll" => Ok(Engine::Dpll),
            other => Err(Error::Precondition(format!("unknown engine {other:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Entailing => "entailing",
            Mode::Validating => "validating",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "entailing" => Ok(Mode::Entailing),
            "validating" => Ok(Mode::Validating),
            other => Err(Error::Precondition(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumResult {
    pub engine: Engine,
    pub mode: Mode,
    pub assignments: Vec<Assignment>,
}

impl EnumResult {
    /// Sum of cube lengths.
    pub fn total_literals(&self) -> usize {
        self.assignments.iter().map(Assignment::len).sum()
    }

    /// The disjunction of the cubes.
    pub fn to_formula(&self) -> Formula {
        Formula::disjunction(self.assignments.iter().map(|m| m.to_cube().to_formula()))
    }

    pub fn to_json(&self, formula: &Formula) -> EnumJson {
        EnumJson {
            engine: self.engine,
            mode: self.mode,
            formula: formula.to_string(),
            assignments: self
                .assignments
                .iter()
                .map(|m| m.literals().map(|l| l.to_string()).collect())
                .collect(),
        }
    }

    /// Plain-text form: one cube per line, `true` for the empty cube.
    pub fn to_text(&self) -> String {
        self.assignments
            .iter()
            .map(|m| format!("{}\n", m.to_cube()))
            .collect()
    }
}

/// The JSON document for an enumeration:
/// `{engine, mode, formula, assignments: [["A1", "!A2"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumJson {
    pub engine: Engine,
    pub mode: Mode,
    pub formula: String,
    pub assignments: Vec<Vec<String>>,
}

impl EnumJson {
    /// Parses the formula and literal lists back into an [`EnumResult`].
    pub fn decode(&self) -> Result<(Formula, EnumResult)> {
        let formula = crate::formula::parse(&self.formula)?;
        let assignments = self
            .assignments
            .iter()
            .map(|lits| {
                Assignment::from_literals(
                    lits.iter()
                        .map(|l| l.parse::<Literal>())
                        .collect::<Result<Vec<_>>>()?,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((
            formula,
            EnumResult {
                engine: self.engine,
                mode: self.mode,
                assignments,
            },
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Disjointness {
    Holds,
    /// Index pairs of consistent (overlapping) cubes.
    Violated(Vec<(usize, usize)>),
    /// Tableaux results may legitimately overlap.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Indices of assignments that fail the mode's predicate.
    pub mode_violations: Vec<usize>,
    pub disjointness: Disjointness,
    /// Whether the disjunction of the cubes is equivalent to the formula.
    pub covers_formula: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mode_violations.is_empty()
            && !matches!(self.disjointness, Disjointness::Violated(_))
            && self.covers_formula
    }
}

/// Re-checks an enumeration against its source formula.
pub fn verify_enumeration(r: &EnumResult, f: &Formula, limits: &Limits) -> Result<VerifyReport> {
    let mut mode_violations = Vec::new();
    for (i, mu) in r.assignments.iter().enumerate() {
        let ok = match r.mode {
            Mode::Validating => partial::validates(mu, f),
            Mode::Entailing => partial::entails(mu, f, limits)?.holds(),
        };
        if !ok {
            mode_violations.push(i);
        }
    }
    let disjointness = match r.engine {
        Engine::Tableaux => Disjointness::NotApplicable,
        Engine::Obdd | Engine::Dpll => {
            let mut overlaps = Vec::new();
            for i in 0..r.assignments.len() {
                for j in i + 1..r.assignments.len() {
                    if !r.assignments[i].conflicts_with(&r.assignments[j]) {
                        overlaps.push((i, j));
                    }
                }
            }
            if overlaps.is_empty() {
                Disjointness::Holds
            } else {
                Disjointness::Violated(overlaps)
            }
        }
    };
    let covers_formula = brute_equivalent(&r.to_formula(), f, limits)?;
    Ok(VerifyReport {
        mode_violations,
        disjointness,
        covers_formula,
    })
}
