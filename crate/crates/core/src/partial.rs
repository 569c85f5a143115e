//! Validation and entailment of partial assignments.
//!
//! `mu` validates `f` when three-valued evaluation gives true. `mu` entails
//! `f` when every total extension satisfies it, i.e. the residual is valid.
//! Validation implies entailment; the converse fails outside tautology-free
//! CNF.

use std::collections::BTreeSet;

use crate::assignment::Assignment;
use crate::cnfize::tseitin;
use crate::enumeration::dpll;
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Literal};
use crate::limits::Limits;
use crate::semantics::{eval3, residual, TruthValue3};
use crate::sweep::{row_assignment, Execution, Kernel, Want};

/// Validation: three-valued evaluation under `mu` is true. Linear in `|f|`.
pub fn validates(mu: &Assignment, f: &Formula) -> bool {
    eval3(f, mu) == TruthValue3::True
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entailment {
    Entailed,
    /// `witness` extends `mu`, is total over `atoms(f)` and falsifies `f`.
    NotEntailed { witness: Assignment },
}

impl Entailment {
    pub fn holds(&self) -> bool {
        matches!(self, Entailment::Entailed)
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            Entailment::Entailed => None,
            Entailment::NotEntailed { witness } => Some(witness),
        }
    }
}

/// How the validity of the residual is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Truth-table sweep up to `Limits::max_atoms`, refutation above.
    #[default]
    Auto,
    Sweep(Execution),
    /// Tseitin-encode the negated residual and search it with DPLL.
    Refutation,
}

pub fn entails(mu: &Assignment, f: &Formula, limits: &Limits) -> Result<Entailment> {
    entails_with(mu, f, limits, Backend::Auto)
}

pub fn entails_with(mu: &Assignment, f: &Formula, limits: &Limits, backend: Backend) -> Result<Entailment> {
    let r = residual(f, mu);
    let falsifier = match r.as_const() {
        Some(true) => return Ok(Entailment::Entailed),
        Some(false) => Assignment::empty(),
        None => {
            let atoms: Vec<Atom> = r.atoms().into_iter().collect();
            let backend = match backend {
                Backend::Auto if atoms.len() <= limits.max_atoms => Backend::Sweep(Execution::default()),
                Backend::Auto => Backend::Refutation,
                other => other,
            };
            let found = match backend {
                Backend::Sweep(exec) => {
                    if atoms.len() > limits.max_atoms {
                        return Err(Error::AtomCap {
                            atoms: atoms.len(),
                            cap: limits.max_atoms,
                        });
                    }
                    Kernel::compile(&r, &atoms)
                        .first_row(Want::NotTrue, exec)
                        .map(|row| row_assignment(&atoms, row))
                }
                _ => refute(&r, limits)?,
            };
            match found {
                None => return Ok(Entailment::Entailed),
                Some(eta) => eta,
            }
        }
    };
    Ok(Entailment::NotEntailed {
        witness: complete(mu, &falsifier, f)?,
    })
}

/// A total assignment over `atoms(r)` falsifying `r`, found by satisfying
/// the CNF of `!r`.
fn refute(r: &Formula, limits: &Limits) -> Result<Option<Assignment>> {
    let encoded = tseitin(&Formula::not(r.clone()));
    let atoms = r.atoms();
    Ok(dpll::solve(&encoded.cnf, limits)?.map(|model| {
        let mut eta = model.restrict(&atoms);
        for a in &atoms {
            if !eta.binds(a) {
                eta.insert(&Literal::new(a.clone(), false)).expect("unbound atom");
            }
        }
        eta
    }))
}

/// `mu ∪ eta`, with the remaining atoms of `f` set false. Atoms that vanished
/// from the residual do not affect the value, so any choice works.
fn complete(mu: &Assignment, eta: &Assignment, f: &Formula) -> Result<Assignment> {
    let mut out = mu.union(eta)?;
    for a in f.atoms() {
        if !out.binds(&a) {
            out.insert(&Literal::new(a, false))?;
        }
    }
    Ok(out)
}

/// Both notions for one `(mu, f)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatVerdict {
    pub validates: bool,
    pub entails: bool,
    pub witness: Option<Assignment>,
}

pub fn verdict(mu: &Assignment, f: &Formula, limits: &Limits) -> Result<SatVerdict> {
    let v = validates(mu, f);
    let e = entails(mu, f, limits)?;
    if v && !e.holds() {
        return Err(Error::Invariant(format!("{mu} validates {f} without entailing it")));
    }
    Ok(SatVerdict {
        validates: v,
        entails: e.holds(),
        witness: e.witness().cloned(),
    })
}

/// Grows an entailing `mu` into a validating superset.
///
/// Atoms are taken most-frequent-first from the residual; a polarity that
/// makes the residual true is preferred, otherwise the first that keeps it
/// from being false. Literals that turn out to be unnecessary are dropped
/// again, last added first.
pub fn extend_to_validating(mu: &Assignment, f: &Formula, limits: &Limits) -> Result<Assignment> {
    if !entails(mu, f, limits)?.holds() {
        return Err(Error::Precondition(format!("{mu} does not entail {f}")));
    }
    let mut out = mu.clone();
    let mut added: Vec<Atom> = Vec::new();
    loop {
        let r = residual(f, &out);
        if r == Formula::TRUE {
            break;
        }
        let atom = r
            .most_frequent_atom()
            .ok_or_else(|| Error::Invariant(format!("entailing residual {r} is constant false")))?;
        let candidates = [true, false].map(|v| {
            let lit = Literal::new(atom.clone(), v);
            let value = eval3(&r, &Assignment::empty().with(&lit).expect("single literal"));
            (lit, value)
        });
        let (lit, _) = candidates
            .iter()
            .find(|(_, v)| *v == TruthValue3::True)
            .or_else(|| candidates.iter().find(|(_, v)| *v != TruthValue3::False))
            .ok_or_else(|| Error::Invariant(format!("both polarities of {atom} falsify {r}")))?;
        out.insert(lit)?;
        added.push(atom);
    }
    for atom in added.iter().rev() {
        let value = out.get(atom).expect("added atom is bound");
        out.remove(atom);
        if !validates(&out, f) {
            out.insert(&Literal::new(atom.clone(), value))?;
        }
    }
    Ok(out)
}

/// On tautology-free CNF the two notions coincide; returns the shared answer.
pub fn cnf_equivalence_check(mu: &Assignment, f: &Formula, limits: &Limits) -> Result<bool> {
    if !f.classify().is_tautology_free_cnf {
        return Err(Error::Precondition(format!("{f} is not a tautology-free CNF")));
    }
    let v = validates(mu, f);
    let e = entails(mu, f, limits)?.holds();
    if v != e {
        return Err(Error::Invariant(format!(
            "validation ({v}) and entailment ({e}) disagree on a tautology-free CNF"
        )));
    }
    Ok(v)
}

/// Atoms of `f` left unbound by `mu`.
pub fn unassigned(mu: &Assignment, f: &Formula) -> BTreeSet<Atom> {
    f.atoms().into_iter().filter(|a| !mu.binds(a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::semantics::sat_total;

    const EX1: &str = "(A1 & A2) | (A1 & !A2)";

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    fn mu(text: &str) -> Assignment {
        Assignment::parse(text).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(!validates(&mu("A1"), &f(EX1)));
        assert!(validates(&mu("A1, A2"), &f(EX1)));
        assert!(validates(&mu(""), &Formula::TRUE));
    }

    #[test]
    fn entailment_examples() {
        let lim = Limits::default();
        assert!(entails(&mu("A1"), &f(EX1), &lim).unwrap().holds());
        assert_eq!(
            entails(&mu("A1"), &f("A1 & A2"), &lim).unwrap(),
            Entailment::NotEntailed { witness: mu("A1, !A2") }
        );
        assert!(entails(&mu(""), &f("A2 | !A2"), &lim).unwrap().holds());
    }

    #[test]
    fn refutation_backend_agrees() {
        let lim = Limits::default();
        for (m, text) in [("A1", EX1), ("A1", "A1 & A2"), ("", "A2 | !A2"), ("!A1", EX1), ("", "A1 <-> (A2 -> A1)")] {
            let a = entails_with(&mu(m), &f(text), &lim, Backend::Sweep(Execution::Sequential)).unwrap();
            let b = entails_with(&mu(m), &f(text), &lim, Backend::Refutation).unwrap();
            assert_eq!(a.holds(), b.holds(), "{m} / {text}");
            if let Some(w) = b.witness() {
                assert!(!sat_total(&f(text), w).unwrap());
                assert!(mu(m).is_subset_of(w));
            }
        }
    }

    #[test]
    fn sweep_over_cap_is_a_resource_error() {
        let lim = Limits {
            max_atoms: 1,
            ..Limits::default()
        };
        let e = entails_with(&mu(""), &f("A1 | A2"), &lim, Backend::Sweep(Execution::Sequential)).unwrap_err();
        assert!(e.is_resource());
        // Auto falls back to refutation instead.
        assert!(!entails(&mu(""), &f("A1 | A2"), &lim).unwrap().holds());
    }

    #[test]
    fn verdict_examples() {
        let lim = Limits::default();
        let v = verdict(&mu("A1"), &f(EX1), &lim).unwrap();
        assert_eq!((v.validates, v.entails, v.witness), (false, true, None));
        let v = verdict(&mu("A1, A2"), &f(EX1), &lim).unwrap();
        assert_eq!((v.validates, v.entails), (true, true));
        let v = verdict(&mu("!A1"), &f(EX1), &lim).unwrap();
        assert_eq!((v.validates, v.entails), (false, false));
        let w = v.witness.unwrap();
        assert!(mu("!A1").is_subset_of(&w));
        assert!(!sat_total(&f(EX1), &w).unwrap());
    }

    #[test]
    fn extension_examples() {
        let lim = Limits::default();
        let ext = extend_to_validating(&mu("A1"), &f(EX1), &lim).unwrap();
        assert!(ext == mu("A1, A2") || ext == mu("A1, !A2"));
        let eta = mu("A1, !A2");
        assert_eq!(extend_to_validating(&eta, &f(EX1), &lim).unwrap(), eta);
        let ext = extend_to_validating(&mu(""), &f("A2 | !A2"), &lim).unwrap();
        assert_eq!(ext.len(), 1);
        assert!(validates(&ext, &f("A2 | !A2")));
        assert!(matches!(
            extend_to_validating(&mu("!A1"), &f(EX1), &lim),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cnf_collapse_examples() {
        let lim = Limits::default();
        assert!(cnf_equivalence_check(&mu("A1"), &f("(A1 | A2) & (A1 | !A3)"), &lim).unwrap());
        assert!(!cnf_equivalence_check(&mu(""), &f("A1"), &lim).unwrap());
        let psi = f("(A1 | B1) & (!B1 | A2) & (!B1 | A3) & (B1 | !A2 | !A3)");
        assert!(!cnf_equivalence_check(&mu("A1"), &psi, &lim).unwrap());
        assert!(matches!(
            cnf_equivalence_check(&mu(""), &f("A1 | !A1"), &lim),
            Err(Error::Precondition(_))
        ));
    }
}
