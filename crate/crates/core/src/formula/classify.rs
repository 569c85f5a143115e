//! Structural queries: literals, clauses, cubes and CNF.
//!
//! Clauses and cubes may be associated any way; `(A | B) | C` and
//! `A | (B | C)` are both clauses. `false` counts as the empty clause and
//! `true` as the empty cube (and the empty CNF).

use std::collections::BTreeSet;

use super::{Formula, Literal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Structure {
    pub is_literal: bool,
    pub is_clause: bool,
    pub is_cube: bool,
    pub is_cnf: bool,
    pub is_tautology_free_cnf: bool,
}

impl Structure {
    pub fn of(f: &Formula) -> Structure {
        let is_literal = f.as_literal().is_some();
        let clauses: Option<Vec<Vec<Literal>>> = if *f == Formula::TRUE {
            Some(Vec::new())
        } else {
            conjuncts(f).into_iter().map(clause_literals).collect()
        };
        let is_cnf = clauses.is_some();
        let is_tautology_free_cnf = clauses
            .as_ref()
            .is_some_and(|cs| cs.iter().all(|c| !is_tautological(c)));
        Structure {
            is_literal,
            is_clause: clause_literals(f).is_some(),
            is_cube: is_cube(f),
            is_cnf,
            is_tautology_free_cnf,
        }
    }
}

/// Flattens a tree of `&` into its conjuncts, left to right.
pub fn conjuncts(f: &Formula) -> Vec<&Formula> {
    fn go<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
        match f {
            Formula::And(l, r) => {
                go(l, out);
                go(r, out);
            }
            other => out.push(other),
        }
    }
    let mut out = Vec::new();
    go(f, &mut out);
    out
}

/// The literals of a clause in order of occurrence, or `None` if `f` is not
/// a clause.
pub fn clause_literals(f: &Formula) -> Option<Vec<Literal>> {
    fn go(f: &Formula, out: &mut Vec<Literal>) -> bool {
        match f {
            Formula::Or(l, r) => go(l, out) && go(r, out),
            other => match other.as_literal() {
                Some(lit) => {
                    out.push(lit);
                    true
                }
                None => false,
            },
        }
    }
    if *f == Formula::FALSE {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    go(f, &mut out).then_some(out)
}

pub fn is_clause(f: &Formula) -> bool {
    clause_literals(f).is_some()
}

pub fn is_cube(f: &Formula) -> bool {
    *f == Formula::TRUE || conjuncts(f).iter().all(|c| c.as_literal().is_some())
}

pub(crate) fn is_tautological(clause: &[Literal]) -> bool {
    let set: BTreeSet<&Literal> = clause.iter().collect();
    clause.iter().any(|l| set.contains(&l.negate()))
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn s(text: &str) -> Structure {
        parse(text).unwrap().classify()
    }

    #[test]
    fn tseitin_clauses_are_tautology_free_cnf() {
        let r = s("(!B1 | A2) & (!B1 | A3)");
        assert!(r.is_cnf && r.is_tautology_free_cnf);
        assert!(!r.is_clause && !r.is_literal && !r.is_cube);
    }

    #[test]
    fn tautological_clause() {
        let r = s("A1 | !A1");
        assert!(r.is_clause && r.is_cnf);
        assert!(!r.is_tautology_free_cnf);
    }

    #[test]
    fn nested_association_is_accepted() {
        let r = s("A1 & (A2 | A3)");
        assert!(r.is_cnf && r.is_tautology_free_cnf);
        assert!(s("A1 & (A2 & (A3 | (A4 | !A5)))").is_cnf);
        assert!(s("(A1 | A2) | (A3 | A4)").is_clause);
        assert!(s("A1 & (A2 & !A3)").is_cube);
    }

    #[test]
    fn non_cnf_shapes() {
        assert!(!s("A1 | (A2 & A3)").is_cnf);
        assert!(!s("!(A1 | A2)").is_cnf);
        assert!(!s("A1 -> A2").is_cnf);
        assert!(!s("!!A1").is_literal);
        assert!(!s("A1 & true").is_cnf);
    }

    #[test]
    fn constants_and_literals() {
        let t = s("true");
        assert!(t.is_cnf && t.is_cube && t.is_tautology_free_cnf && !t.is_clause);
        let f = s("false");
        assert!(f.is_cnf && f.is_clause && !f.is_cube);
        let l = s("!A1");
        assert!(l.is_literal && l.is_clause && l.is_cube && l.is_tautology_free_cnf);
    }
}
