//! Existentially quantified formulas `exists B . psi`.
//!
//! Validation asks for one total `delta` over `B` with `mu ∪ delta`
//! validating the matrix. Entailment asks, for every total extension `eta`
//! of `mu` over the free atoms, for some `delta` (which may depend on `eta`)
//! with `eta ∪ delta` satisfying it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::formula::parse::{Parser, Tok};
use crate::formula::{clause_literals, conjuncts, Atom, Formula, Literal};
use crate::limits::Limits;
use crate::semantics::residual;
use crate::sweep::{row_assignment, Execution, Kernel, Want};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExistentialFormula {
    pub matrix: Formula,
    /// May include atoms absent from the matrix.
    pub quantified: BTreeSet<Atom>,
}

impl ExistentialFormula {
    pub fn new<I: IntoIterator<Item = Atom>>(matrix: Formula, quantified: I) -> ExistentialFormula {
        ExistentialFormula {
            matrix,
            quantified: quantified.into_iter().collect(),
        }
    }

    /// Parses `exists B1 B2 . <formula>`; a bare formula quantifies nothing.
    pub fn parse(text: &str) -> Result<ExistentialFormula> {
        let mut p = Parser::new(text)?;
        let mut quantified = BTreeSet::new();
        if *p.peek() == Tok::Ident("exists".into()) && matches!(p.peek_nth(1), Tok::Ident(_) | Tok::Dot) {
            p.next();
            while *p.peek() != Tok::Dot {
                quantified.insert(p.atom().map_err(|_| p.unexpected("an atom or `.`"))?);
            }
            p.next();
        }
        let matrix = p.formula()?;
        p.expect_eof()?;
        Ok(ExistentialFormula { matrix, quantified })
    }

    /// Atoms of the matrix that are not quantified.
    pub fn free_atoms(&self) -> BTreeSet<Atom> {
        self.matrix
            .atoms()
            .into_iter()
            .filter(|a| !self.quantified.contains(a))
            .collect()
    }

    fn check_unquantified(&self, mu: &Assignment) -> Result<()> {
        match mu.domain().find(|a| self.quantified.contains(*a)) {
            Some(a) => Err(Error::QuantifiedAtomBound(a.clone())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for ExistentialFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.quantified.is_empty() {
            f.write_str("exists")?;
            for a in &self.quantified {
                write!(f, " {a}")?;
            }
            f.write_str(" . ")?;
        }
        write!(f, "{}", self.matrix)
    }
}

impl FromStr for ExistentialFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExistentialFormula> {
        ExistentialFormula::parse(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShannonOptions {
    /// Keep `false` disjuncts and skip folding of the outer disjunction.
    pub keep_bot: bool,
    /// Tidy each disjunct: drop repeated conjuncts and clauses subsumed by a
    /// unit conjunct. Three-valued evaluation is unaffected.
    pub tidy: bool,
}

impl Default for ShannonOptions {
    fn default() -> Self {
        ShannonOptions {
            keep_bot: false,
            tidy: true,
        }
    }
}

/// Removes repeated top-level conjuncts and any clause conjunct containing a
/// literal that is itself a conjunct. `l & (l | c)` and `l` agree on every
/// three-valued input, as do `x & x` and `x`.
pub fn tidy(f: &Formula) -> Formula {
    let parts = conjuncts(f);
    if parts.len() < 2 {
        return f.clone();
    }
    let units: BTreeSet<Literal> = parts.iter().filter_map(|c| c.as_literal()).collect();
    let mut kept: Vec<&Formula> = Vec::new();
    for c in parts {
        if kept.contains(&c) {
            continue;
        }
        if c.as_literal().is_none()
            && clause_literals(c).is_some_and(|lits| lits.iter().any(|l| units.contains(l)))
        {
            continue;
        }
        kept.push(c);
    }
    Formula::conjunction(kept.into_iter().cloned())
}

/// The residuals of the matrix under every total `delta` over the quantified
/// atoms, in extension order.
pub fn shannon_disjuncts(ef: &ExistentialFormula, opts: ShannonOptions, limits: &Limits) -> Result<Vec<Formula>> {
    if ef.quantified.len() > limits.expansion_cap {
        return Err(Error::AtomCap {
            atoms: ef.quantified.len(),
            cap: limits.expansion_cap,
        });
    }
    Ok(Assignment::empty()
        .extensions(&ef.quantified)?
        .map(|delta| {
            let r = residual(&ef.matrix, &delta);
            if opts.tidy {
                tidy(&r)
            } else {
                r
            }
        })
        .collect())
}

/// The quantifier-free expansion `⋁_delta matrix|delta` over the free atoms.
pub fn shannon_expand(ef: &ExistentialFormula, opts: ShannonOptions, limits: &Limits) -> Result<Formula> {
    let parts = shannon_disjuncts(ef, opts, limits)?;
    if opts.keep_bot {
        return Ok(Formula::disjunction(parts));
    }
    if parts.contains(&Formula::TRUE) {
        return Ok(Formula::TRUE);
    }
    Ok(Formula::disjunction(parts.into_iter().filter(|d| *d != Formula::FALSE)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExistsValidation {
    /// The first validating `delta`, total over the quantified atoms.
    Validated { delta: Assignment },
    NotValidated,
}

impl ExistsValidation {
    pub fn holds(&self) -> bool {
        matches!(self, ExistsValidation::Validated { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExistsEntailment {
    Entailed,
    /// A total extension of `mu` over the free atoms that no `delta` rescues.
    NotEntailed { eta: Assignment },
}

impl ExistsEntailment {
    pub fn holds(&self) -> bool {
        matches!(self, ExistsEntailment::Entailed)
    }
}

fn check_width(n: usize, limits: &Limits) -> Result<()> {
    if n > limits.max_atoms {
        return Err(Error::AtomCap {
            atoms: n,
            cap: limits.max_atoms,
        });
    }
    Ok(())
}

/// Fills every atom of `atoms` unbound in `base` with `value`.
fn fill(mut base: Assignment, atoms: &BTreeSet<Atom>, value: bool) -> Assignment {
    for a in atoms {
        if !base.binds(a) {
            base.insert(&Literal::new(a.clone(), value)).expect("unbound atom");
        }
    }
    base
}

pub fn exists_validates(mu: &Assignment, ef: &ExistentialFormula, limits: &Limits) -> Result<ExistsValidation> {
    exists_validates_with(mu, ef, limits, Execution::default())
}

pub fn exists_validates_with(
    mu: &Assignment,
    ef: &ExistentialFormula,
    limits: &Limits,
    exec: Execution,
) -> Result<ExistsValidation> {
    ef.check_unquantified(mu)?;
    let r = residual(&ef.matrix, mu);
    let sweep: Vec<Atom> = r.atoms().into_iter().filter(|a| ef.quantified.contains(a)).collect();
    check_width(sweep.len(), limits)?;
    // Free atoms stay unknown; quantified atoms outside the residual are
    // irrelevant and take the first value in extension order.
    Ok(Kernel::compile(&r, &sweep)
        .first_row(Want::True, exec)
        .map_or(ExistsValidation::NotValidated, |row| ExistsValidation::Validated {
            delta: fill(row_assignment(&sweep, row), &ef.quantified, true),
        }))
}

pub fn exists_entails(mu: &Assignment, ef: &ExistentialFormula, limits: &Limits) -> Result<ExistsEntailment> {
    exists_entails_with(mu, ef, limits, Execution::default())
}

pub fn exists_entails_with(
    mu: &Assignment,
    ef: &ExistentialFormula,
    limits: &Limits,
    exec: Execution,
) -> Result<ExistsEntailment> {
    ef.check_unquantified(mu)?;
    let r = residual(&ef.matrix, mu);
    let (bound, free): (Vec<Atom>, Vec<Atom>) = r.atoms().into_iter().partition(|a| ef.quantified.contains(a));
    check_width(free.len() + bound.len(), limits)?;
    // Free atoms are the high digits, so each eta owns a contiguous run of
    // 2^|bound| rows.
    let mut order = free.clone();
    order.extend(bound.iter().cloned());
    let kernel = Kernel::compile(&r, &order);
    let run = 1u64 << bound.len();
    let stuck = exec.find_first(0..1u64 << free.len(), |e| {
        kernel.first_row_in(e * run..(e + 1) * run, Want::True).is_none()
    });
    Ok(match stuck {
        None => ExistsEntailment::Entailed,
        Some(e) => {
            let eta = mu.union(&row_assignment(&free, e))?;
            ExistsEntailment::NotEntailed {
                eta: fill(eta, &ef.free_atoms(), false),
            }
        }
    })
}
