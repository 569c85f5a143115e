use thiserror::Error;

use crate::formula::Atom;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("inconsistent literal set: both {0} and !{0}")]
    InconsistentLiterals(Atom),

    #[error("conflicting bindings for {0}")]
    ConflictingBinding(Atom),

    #[error("assignment binds {0}, which is outside the atom set")]
    DomainEscape(Atom),

    #[error("assignment is not total: {0} is unbound")]
    NotTotal(Atom),

    #[error("assignment binds the quantified atom {0}")]
    QuantifiedAtomBound(Atom),

    #[error("predicate label {0} collides with another label or a base atom")]
    LabelCollision(Atom),

    #[error("formula is not in CNF")]
    NotCnf,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("atom cap exceeded: {atoms} atoms, cap is {cap}")]
    AtomCap { atoms: usize, cap: usize },

    #[error("OBDD node budget of {0} exceeded")]
    NodeBudget(usize),

    #[error("branch budget of {0} exceeded")]
    BranchBudget(usize),

    #[error("DPLL conflict budget of {0} exceeded")]
    ConflictBudget(usize),
}

impl Error {
    /// Resource-limit failures are reported apart from semantic answers.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::AtomCap { .. }
                | Error::NodeBudget(_)
                | Error::BranchBudget(_)
                | Error::ConflictBudget(_)
        )
    }
}
