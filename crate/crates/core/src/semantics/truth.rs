use std::fmt;

/// Three-valued truth: true, false, unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue3 {
    True,
    False,
    Unknown,
}

use TruthValue3::{False as F, True as T, Unknown as U};

impl TruthValue3 {
    pub fn from_bool(b: bool) -> TruthValue3 {
        if b {
            T
        } else {
            F
        }
    }

    pub fn is_known(self) -> bool {
        self != U
    }

    pub fn and(self, other: TruthValue3) -> TruthValue3 {
        match (self, other) {
            (T, T) => T,
            (T, U) | (U, T) | (U, U) => U,
            (F, _) | (_, F) => F,
        }
    }

    pub fn or(self, other: TruthValue3) -> TruthValue3 {
        match (self, other) {
            (T, _) | (_, T) => T,
            (U, U) | (U, F) | (F, U) => U,
            (F, F) => F,
        }
    }

    pub fn implies(self, other: TruthValue3) -> TruthValue3 {
        match (self, other) {
            (T, T) => T,
            (T, U) => U,
            (T, F) => F,
            (U, T) => T,
            (U, U) | (U, F) => U,
            (F, _) => T,
        }
    }

    pub fn iff(self, other: TruthValue3) -> TruthValue3 {
        match (self, other) {
            (T, T) | (F, F) => T,
            (T, F) | (F, T) => F,
            _ => U,
        }
    }
}

impl std::ops::Not for TruthValue3 {
    type Output = TruthValue3;

    fn not(self) -> TruthValue3 {
        match self {
            T => F,
            F => T,
            U => U,
        }
    }
}

impl fmt::Display for TruthValue3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            T => "T",
            F => "F",
            U => "?",
        })
    }
}
