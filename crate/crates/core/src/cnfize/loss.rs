//! Sweeps over the fresh atoms of a Tseitin encoding, asking whether some
//! total `delta` lets `mu ∪ delta` keep the verdict `mu` had on the input.

use std::collections::BTreeSet;

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::limits::Limits;
use crate::partial::{entails, validates, Entailment};
use crate::semantics::{brute_satisfiable, residual};

use super::{tseitin, TseitinResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationLossReport {
    pub encoding: TseitinResult,
    /// Each total `delta` over the fresh atoms, with whether `mu ∪ delta`
    /// validates the CNF.
    pub deltas: Vec<(Assignment, bool)>,
    /// No `delta` validates.
    pub loss: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaEntailment {
    Entails,
    /// The first falsifying total extension of `mu ∪ delta`.
    FalsifiedByExtension(Assignment),
    /// `mu ∪ delta` contradicts the CNF outright.
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntailmentLossReport {
    pub encoding: TseitinResult,
    pub deltas: Vec<(Assignment, DeltaEntailment)>,
    /// No `delta` entails.
    pub loss: bool,
}

fn fresh_deltas(mu: &Assignment, t: &TseitinResult, limits: &Limits) -> Result<Vec<Assignment>> {
    let k = t.fresh_atoms.len();
    if k > limits.loss_sweep_cap {
        return Err(Error::AtomCap {
            atoms: k,
            cap: limits.loss_sweep_cap,
        });
    }
    if let Some(a) = t.fresh_atoms.iter().find(|a| mu.binds(a)) {
        return Err(Error::Precondition(format!("assignment binds the fresh atom {a}")));
    }
    let fresh: BTreeSet<_> = t.fresh_atoms.iter().cloned().collect();
    Ok(Assignment::empty().extensions(&fresh)?.collect())
}

/// Requires `mu` to validate `f`.
pub fn check_validation_loss(mu: &Assignment, f: &Formula, limits: &Limits) -> Result<ValidationLossReport> {
    if !validates(mu, f) {
        return Err(Error::Precondition(format!("{mu} does not validate {f}")));
    }
    let encoding = tseitin(f);
    let deltas = fresh_deltas(mu, &encoding, limits)?
        .into_iter()
        .map(|delta| {
            let v = validates(&mu.union(&delta)?, &encoding.cnf);
            Ok((delta, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let loss = !deltas.iter().any(|(_, v)| *v);
    Ok(ValidationLossReport { encoding, deltas, loss })
}

/// Requires `mu` to entail `f`.
pub fn check_entailment_loss(mu: &Assignment, f: &Formula, limits: &Limits) -> Result<EntailmentLossReport> {
    if !entails(mu, f, limits)?.holds() {
        return Err(Error::Precondition(format!("{mu} does not entail {f}")));
    }
    let encoding = tseitin(f);
    let deltas = fresh_deltas(mu, &encoding, limits)?
        .into_iter()
        .map(|delta| {
            let extended = mu.union(&delta)?;
            let verdict = if !brute_satisfiable(&residual(&encoding.cnf, &extended), limits)? {
                DeltaEntailment::Inconsistent
            } else {
                match entails(&extended, &encoding.cnf, limits)? {
                    Entailment::Entailed => DeltaEntailment::Entails,
                    Entailment::NotEntailed { witness } => DeltaEntailment::FalsifiedByExtension(witness),
                }
            };
            Ok((delta, verdict))
        })
        .collect::<Result<Vec<_>>>()?;
    let loss = !deltas.iter().any(|(_, v)| *v == DeltaEntailment::Entails);
    Ok(EntailmentLossReport { encoding, deltas, loss })
}
