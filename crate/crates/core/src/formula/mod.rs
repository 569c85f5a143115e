//! Propositional formulas over named atoms.
//!
//! `Or`, `Implies` and `Iff` are kept as stored connectives so that residuals
//! and printed output keep the connectives the user wrote. [`Formula::desugar`]
//! rewrites them into the `!`/`&` core when a procedure needs it.

mod classify;
pub(crate) mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use classify::{clause_literals, conjuncts, is_clause, is_cube, Structure};
pub use parse::{parse, parse_literal_list};

use crate::error::Error;

/// A propositional atom. Atoms compare and order by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Panics if `name` is not an identifier; use [`FromStr`] for untrusted input.
    pub fn new(name: &str) -> Atom {
        name.parse().unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !matches!(name, "true" | "false")
    }
}

impl FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Atom, Error> {
        if Atom::valid_name(s) {
            Ok(Atom(Arc::from(s)))
        } else {
            Err(Error::Syntax {
                line: 1,
                column: 1,
                message: format!("invalid atom name {s:?}"),
            })
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn new(atom: Atom, positive: bool) -> Literal {
        Literal { atom, positive }
    }

    pub fn pos(name: &str) -> Literal {
        Literal::new(Atom::new(name), true)
    }

    pub fn neg(name: &str) -> Literal {
        Literal::new(Atom::new(name), false)
    }

    /// The complementary literal; the negation of `!A` is `A`, never `!!A`.
    pub fn negate(&self) -> Literal {
        Literal::new(self.atom.clone(), !self.positive)
    }

    pub fn to_formula(&self) -> Formula {
        let atom = Formula::Atom(self.atom.clone());
        if self.positive {
            atom
        } else {
            Formula::not(atom)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "{}", self.atom)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Literal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Literal, Error> {
        let s = s.trim();
        match s.strip_prefix('!') {
            Some(rest) => Ok(Literal::new(rest.trim().parse()?, false)),
            None => Ok(Literal::new(s.parse()?, true)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub const TRUE: Formula = Formula::Const(true);
    pub const FALSE: Formula = Formula::Const(false);

    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    /// Left-nested conjunction; the empty conjunction is `true`.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::TRUE)
    }

    /// Left-nested disjunction; the empty disjunction is `false`.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::FALSE)
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Const(_) => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Atom(_) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    pub fn as_literal(&self) -> Option<Literal> {
        match self {
            Formula::Atom(a) => Some(Literal::new(a.clone(), true)),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Atom(a) => Some(Literal::new(a.clone(), false)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn as_const(&self) -> Option<bool> {
        match self {
            Formula::Const(b) => Some(*b),
            _ => None,
        }
    }

    /// Rewrites `|`, `->` and `<->` into `!` and `&`:
    /// `a | b` is `!(!a & !b)`, `a -> b` is `!(a & !b)`,
    /// `a <-> b` is `!(a & !b) & !(b & !a)`.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::Const(_) | Formula::Atom(_) => self.clone(),
            Formula::Not(f) => Formula::not(f.desugar()),
            Formula::And(l, r) => Formula::and(l.desugar(), r.desugar()),
            Formula::Or(l, r) => Formula::not(Formula::and(
                Formula::not(l.desugar()),
                Formula::not(r.desugar()),
            )),
            Formula::Implies(l, r) => {
                Formula::not(Formula::and(l.desugar(), Formula::not(r.desugar())))
            }
            Formula::Iff(l, r) => {
                let (l, r) = (l.desugar(), r.desugar());
                Formula::and(
                    Formula::not(Formula::and(l.clone(), Formula::not(r.clone()))),
                    Formula::not(Formula::and(r, Formula::not(l))),
                )
            }
        }
    }

    /// Occurrence count per atom, used by the branching heuristics.
    pub(crate) fn atom_occurrences(&self, counts: &mut std::collections::BTreeMap<Atom, usize>) {
        match self {
            Formula::Const(_) => {}
            Formula::Atom(a) => *counts.entry(a.clone()).or_insert(0) += 1,
            Formula::Not(f) => f.atom_occurrences(counts),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.atom_occurrences(counts);
                r.atom_occurrences(counts);
            }
        }
    }

    /// Most frequent atom, ties broken by the smallest name.
    pub(crate) fn most_frequent_atom(&self) -> Option<Atom> {
        let mut counts = std::collections::BTreeMap::new();
        self.atom_occurrences(&mut counts);
        let mut best: Option<(Atom, usize)> = None;
        for (atom, n) in counts {
            if best.as_ref().is_none_or(|(_, m)| n > *m) {
                best = Some((atom, n));
            }
        }
        best.map(|(a, _)| a)
    }

    pub fn classify(&self) -> Structure {
        Structure::of(self)
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula, Error> {
        parse(s)
    }
}

impl From<Literal> for Formula {
    fn from(l: Literal) -> Formula {
        l.to_formula()
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}
