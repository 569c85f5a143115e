//! Partial and total truth assignments, with map, literal-set and cube views.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::{parse_literal_list, Atom, Formula, Literal};

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    bindings: BTreeMap<Atom, bool>,
}

impl Assignment {
    pub fn empty() -> Assignment {
        Assignment::default()
    }

    /// Builds an assignment from a literal set; `{A, !A}` is rejected.
    pub fn from_literals<I: IntoIterator<Item = Literal>>(lits: I) -> Result<Assignment> {
        let mut bindings = BTreeMap::new();
        for lit in lits {
            match bindings.insert(lit.atom.clone(), lit.positive) {
                Some(prev) if prev != lit.positive => {
                    return Err(Error::InconsistentLiterals(lit.atom))
                }
                _ => {}
            }
        }
        Ok(Assignment { bindings })
    }

    /// Parses the `A1, !A3` literal-list syntax.
    pub fn parse(text: &str) -> Result<Assignment> {
        Assignment::from_literals(parse_literal_list(text)?)
    }

    /// Recovers an assignment from a cube formula (`true` is the empty cube).
    pub fn from_cube(cube: &Formula) -> Result<Assignment> {
        if *cube == Formula::TRUE {
            return Ok(Assignment::empty());
        }
        let lits = crate::formula::conjuncts(cube)
            .into_iter()
            .map(|c| {
                c.as_literal()
                    .ok_or_else(|| Error::Precondition(format!("{c} is not a literal")))
            })
            .collect::<Result<Vec<_>>>()?;
        Assignment::from_literals(lits)
    }

    pub fn get(&self, atom: &Atom) -> Option<bool> {
        self.bindings.get(atom).copied()
    }

    pub fn binds(&self, atom: &Atom) -> bool {
        self.bindings.contains_key(atom)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.bindings.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, bool)> + '_ {
        self.bindings.iter().map(|(a, v)| (a, *v))
    }

    /// Literals in atom order.
    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.bindings
            .iter()
            .map(|(a, v)| Literal::new(a.clone(), *v))
    }

    pub fn is_total_for<'a, I: IntoIterator<Item = &'a Atom>>(&self, atoms: I) -> bool {
        atoms.into_iter().all(|a| self.binds(a))
    }

    /// Returns a copy with one more binding; conflicting bindings are an error.
    pub fn with(&self, lit: &Literal) -> Result<Assignment> {
        let mut out = self.clone();
        out.insert(lit)?;
        Ok(out)
    }

    pub(crate) fn insert(&mut self, lit: &Literal) -> Result<()> {
        match self.bindings.insert(lit.atom.clone(), lit.positive) {
            Some(prev) if prev != lit.positive => {
                self.bindings.insert(lit.atom.clone(), prev);
                Err(Error::ConflictingBinding(lit.atom.clone()))
            }
            _ => Ok(()),
        }
    }

    pub(crate) fn remove(&mut self, atom: &Atom) {
        self.bindings.remove(atom);
    }

    /// Union of two assignments that agree on their common atoms.
    pub fn union(&self, other: &Assignment) -> Result<Assignment> {
        let mut out = self.clone();
        for lit in other.literals() {
            out.insert(&lit)?;
        }
        Ok(out)
    }

    /// True if the two assignments disagree on some atom.
    pub fn conflicts_with(&self, other: &Assignment) -> bool {
        other
            .iter()
            .any(|(a, v)| self.get(a).is_some_and(|w| w != v))
    }

    /// `self ⊆ other` as literal sets.
    pub fn is_subset_of(&self, other: &Assignment) -> bool {
        self.iter().all(|(a, v)| other.get(a) == Some(v))
    }

    /// Keeps only the bindings of atoms in `atoms`.
    pub fn restrict(&self, atoms: &BTreeSet<Atom>) -> Assignment {
        Assignment {
            bindings: self
                .bindings
                .iter()
                .filter(|(a, _)| atoms.contains(*a))
                .map(|(a, v)| (a.clone(), *v))
                .collect(),
        }
    }

    pub fn to_cube(&self) -> Cube {
        Cube(self.literals().collect())
    }

    /// All total extensions of `self` over `atoms`.
    ///
    /// Order is lexicographic: the unbound atoms in name order act as the
    /// digits of a binary counter, most significant first, with `true`
    /// enumerated before `false`.
    pub fn extensions(&self, atoms: &BTreeSet<Atom>) -> Result<Extensions> {
        if let Some(escaped) = self.domain().find(|a| !atoms.contains(*a)) {
            return Err(Error::DomainEscape(escaped.clone()));
        }
        let free: Vec<Atom> = atoms.iter().filter(|a| !self.binds(a)).cloned().collect();
        if free.len() >= 64 {
            return Err(Error::AtomCap {
                atoms: free.len(),
                cap: 63,
            });
        }
        Ok(Extensions {
            base: self.clone(),
            count: 1u64 << free.len(),
            free,
            next: 0,
        })
    }
}

impl fmt::Display for Assignment {
    /// Prints the literal-list form, e.g. `A1, !A2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, lit) in self.literals().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Assignment> {
        Assignment::parse(s)
    }
}

/// Lazy stream of the total extensions of a partial assignment.
#[derive(Debug, Clone)]
pub struct Extensions {
    base: Assignment,
    free: Vec<Atom>,
    count: u64,
    next: u64,
}

impl Extensions {
    /// Number of extensions, `2^k` for `k` unbound atoms.
    pub fn total(&self) -> u64 {
        self.count
    }

    /// The `index`-th extension in enumeration order.
    pub fn get(&self, index: u64) -> Assignment {
        let mut out = self.base.clone();
        out.bindings
            .extend(row_bindings(&self.free, index));
        out
    }
}

/// Bindings for row `index` of a truth table over `atoms`: the first atom is
/// the most significant digit and digit 0 means `true`.
pub(crate) fn row_bindings(atoms: &[Atom], index: u64) -> impl Iterator<Item = (Atom, bool)> + '_ {
    let k = atoms.len();
    atoms
        .iter()
        .enumerate()
        .map(move |(j, a)| (a.clone(), (index >> (k - 1 - j)) & 1 == 0))
}

impl Iterator for Extensions {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        if self.next == self.count {
            return None;
        }
        let out = self.get(self.next);
        self.next += 1;
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.count - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Extensions {}

/// A conjunction of literals with no repeated atom, kept in atom order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube(Vec<Literal>);

impl Cube {
    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_formula(&self) -> Formula {
        Formula::conjunction(self.0.iter().map(Literal::to_formula))
    }

    pub fn to_assignment(&self) -> Assignment {
        Assignment::from_literals(self.0.iter().cloned())
            .expect("cube literals are consistent by construction")
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}
