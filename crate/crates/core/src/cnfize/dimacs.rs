use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::formula::{clause_literals, conjuncts, Atom, Formula, Literal};

/// DIMACS text for a CNF. Atoms are numbered by first occurrence and the
/// numbering is listed in `c` comment lines before the header.
pub fn to_dimacs(cnf: &Formula) -> Result<String> {
    let clauses: Vec<Vec<Literal>> = if *cnf == Formula::TRUE {
        Vec::new()
    } else {
        conjuncts(cnf)
            .into_iter()
            .map(|c| clause_literals(c).ok_or(Error::NotCnf))
            .collect::<Result<_>>()?
    };
    let mut order: Vec<&Atom> = Vec::new();
    let mut index: HashMap<&Atom, usize> = HashMap::new();
    for lit in clauses.iter().flatten() {
        index.entry(&lit.atom).or_insert_with(|| {
            order.push(&lit.atom);
            order.len()
        });
    }
    let mut out = String::new();
    for (i, a) in order.iter().enumerate() {
        writeln!(out, "c {} {}", i + 1, a).unwrap();
    }
    writeln!(out, "p cnf {} {}", order.len(), clauses.len()).unwrap();
    for clause in &clauses {
        for lit in clause {
            let n = index[&lit.atom];
            if lit.positive {
                write!(out, "{n} ").unwrap();
            } else {
                write!(out, "-{n} ").unwrap();
            }
        }
        out.push_str("0\n");
    }
    Ok(out)
}
