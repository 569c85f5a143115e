//! Partial-assignment satisfiability for propositional formulas.
//!
//! A partial assignment `mu` *validates* a formula when three-valued
//! evaluation under `mu` yields true (equivalently, the residual is `true`),
//! and *entails* it when every total extension of `mu` satisfies it. This
//! crate decides both notions, enumerates partial models under each
//! (OBDD paths entail; tableaux and non-CNF DPLL branches validate),
//! CNF-izes formulas while reporting the information lost, lifts both notions
//! to existentially quantified formulas through Shannon expansion, and
//! computes propositional predicate abstractions in either mode.

pub mod assignment;
pub mod cnfize;
pub mod enumeration;
pub mod error;
pub mod formula;
pub mod limits;
pub mod partial;
pub mod predabs;
pub mod quantified;
pub mod semantics;
pub mod sweep;

pub use assignment::{Assignment, Cube};
pub use error::{Error, Result};
pub use formula::{parse, Atom, Formula, Literal, Structure};
pub use limits::Limits;
pub use semantics::{eval3, residual, sat_total, TruthValue3};
