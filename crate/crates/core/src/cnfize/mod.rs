//! Tseitin CNF-ization and the checks for what it forgets about partial
//! assignments.
//!
//! Labeling is strictly bottom-up: every binary connective below the clause
//! skeleton gets a fresh atom `Bk`, numbered in post-order, and contributes
//! the clauses of `Bk <-> (l1 op l2)`. The top-level `&`/`|` structure is kept
//! as the skeleton. Definition clauses follow the skeleton clauses.

mod dimacs;
mod loss;

use std::collections::BTreeSet;

pub use dimacs::to_dimacs;
pub use loss::{
    check_entailment_loss, check_validation_loss, DeltaEntailment, EntailmentLossReport, ValidationLossReport,
};

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::formula::{clause_literals, conjuncts, Atom, Formula, Literal};
use crate::semantics::residual;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TseitinResult {
    pub cnf: Formula,
    pub clauses: Vec<Vec<Literal>>,
    pub fresh_atoms: Vec<Atom>,
    /// `(Bk, l1 op l2)` in introduction order.
    pub definitions: Vec<(Atom, Formula)>,
}

impl TseitinResult {
    /// Total number of literal occurrences over all clauses.
    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    And,
    Or,
    Implies,
    Iff,
}

struct Encoder {
    taken: BTreeSet<Atom>,
    next: usize,
    fresh: Vec<Atom>,
    definitions: Vec<(Atom, Formula)>,
    def_clauses: Vec<Vec<Literal>>,
}

impl Encoder {
    fn fresh_atom(&mut self) -> Atom {
        loop {
            self.next += 1;
            let a = Atom::new(&format!("B{}", self.next));
            if !self.taken.contains(&a) {
                self.fresh.push(a.clone());
                return a;
            }
        }
    }

    /// The literal standing for `f`, labeling binary connectives bottom-up.
    fn label(&mut self, f: &Formula) -> Literal {
        if let Some(l) = f.as_literal() {
            return l;
        }
        let (op, l, r) = match f {
            Formula::Not(g) => return self.label(g).negate(),
            Formula::And(l, r) => (Op::And, l, r),
            Formula::Or(l, r) => (Op::Or, l, r),
            Formula::Implies(l, r) => (Op::Implies, l, r),
            Formula::Iff(l, r) => (Op::Iff, l, r),
            Formula::Const(_) | Formula::Atom(_) => unreachable!("constants are folded first"),
        };
        let l1 = self.label(l);
        let l2 = self.label(r);
        let b = self.fresh_atom();
        let def = match op {
            Op::And => Formula::and(l1.to_formula(), l2.to_formula()),
            Op::Or => Formula::or(l1.to_formula(), l2.to_formula()),
            Op::Implies => Formula::implies(l1.to_formula(), l2.to_formula()),
            Op::Iff => Formula::iff(l1.to_formula(), l2.to_formula()),
        };
        self.definitions.push((b.clone(), def));
        let pb = Literal::new(b.clone(), true);
        let nb = pb.negate();
        let (n1, n2) = (l1.negate(), l2.negate());
        let clauses = match op {
            Op::And => vec![
                vec![nb.clone(), l1],
                vec![nb, l2],
                vec![pb, n1, n2],
            ],
            Op::Or => vec![
                vec![nb, l1, l2],
                vec![pb.clone(), n1],
                vec![pb, n2],
            ],
            Op::Implies => vec![
                vec![nb, n1, l2],
                vec![pb.clone(), l1],
                vec![pb, n2],
            ],
            Op::Iff => vec![
                vec![nb.clone(), n1.clone(), l2.clone()],
                vec![nb, l1.clone(), n2.clone()],
                vec![pb.clone(), l1, l2],
                vec![pb, n1, n2],
            ],
        };
        self.def_clauses.extend(clauses);
        Literal::new(b, true)
    }

    /// A skeleton clause: the disjuncts of a top-level `|` tree, labeled.
    fn clause(&mut self, f: &Formula, out: &mut Vec<Literal>) {
        match f {
            Formula::Or(l, r) => {
                self.clause(l, out);
                self.clause(r, out);
            }
            other => out.push(self.label(other)),
        }
    }
}

fn clause_formula(clause: &[Literal]) -> Formula {
    if clause.is_empty() {
        return Formula::FALSE;
    }
    Formula::disjunction(clause.iter().map(Literal::to_formula))
}

fn cnf_formula(clauses: &[Vec<Literal>]) -> Formula {
    Formula::conjunction(clauses.iter().map(|c| clause_formula(c)))
}

/// Tseitin CNF-ization.
///
/// Constants are folded away first. A constant or a literal passes through
/// unchanged. Fresh atoms are named `B1, B2, ...`, skipping names that occur
/// in `f`.
pub fn tseitin(f: &Formula) -> TseitinResult {
    let folded = residual(f, &Assignment::empty());
    if let Some(b) = folded.as_const() {
        return TseitinResult {
            cnf: folded,
            clauses: if b { Vec::new() } else { vec![Vec::new()] },
            fresh_atoms: Vec::new(),
            definitions: Vec::new(),
        };
    }
    if let Some(l) = folded.as_literal() {
        return TseitinResult {
            cnf: folded,
            clauses: vec![vec![l]],
            fresh_atoms: Vec::new(),
            definitions: Vec::new(),
        };
    }
    let mut enc = Encoder {
        taken: f.atoms(),
        next: 0,
        fresh: Vec::new(),
        definitions: Vec::new(),
        def_clauses: Vec::new(),
    };
    let mut clauses = Vec::new();
    for conjunct in conjuncts(&folded) {
        let mut c = Vec::new();
        enc.clause(conjunct, &mut c);
        clauses.push(c);
    }
    clauses.append(&mut enc.def_clauses);
    TseitinResult {
        cnf: cnf_formula(&clauses),
        clauses,
        fresh_atoms: enc.fresh,
        definitions: enc.definitions,
    }
}

/// Drops clauses containing a complementary pair. All-tautology input
/// becomes `true`; tautology-free input is returned unchanged.
pub fn strip_tautologies(cnf: &Formula) -> Result<Formula> {
    if *cnf == Formula::TRUE {
        return Ok(Formula::TRUE);
    }
    let clauses: Vec<(&Formula, Vec<Literal>)> = conjuncts(cnf)
        .into_iter()
        .map(|c| clause_literals(c).map(|lits| (c, lits)).ok_or(Error::NotCnf))
        .collect::<Result<_>>()?;
    if !clauses.iter().any(|(_, lits)| is_tautological(lits)) {
        return Ok(cnf.clone());
    }
    Ok(Formula::conjunction(
        clauses
            .into_iter()
            .filter(|(_, lits)| !is_tautological(lits))
            .map(|(c, _)| c.clone()),
    ))
}

fn is_tautological(clause: &[Literal]) -> bool {
    clause.iter().any(|l| clause.contains(&l.negate()))
}
