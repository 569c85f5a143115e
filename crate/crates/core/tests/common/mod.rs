//! Reference implementations used as oracles. Nothing here calls the
//! library's evaluators, residuals or sweep kernels.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::Rng;

use partialsat::{Assignment, Atom, Formula, Literal};

pub type Env = BTreeMap<Atom, bool>;

pub const EX1: &str = "(A1 & A2) | (A1 & !A2)";

pub fn env_of(mu: &Assignment) -> Env {
    mu.iter().map(|(a, v)| (a.clone(), v)).collect()
}

pub fn to_assignment(env: &Env) -> Assignment {
    Assignment::from_literals(env.iter().map(|(a, v)| Literal::new(a.clone(), *v))).unwrap()
}

/// Two-valued evaluation; panics on an unbound atom.
pub fn eval(f: &Formula, env: &Env) -> bool {
    match f {
        Formula::Const(b) => *b,
        Formula::Atom(a) => env[a],
        Formula::Not(g) => !eval(g, env),
        Formula::And(l, r) => eval(l, env) && eval(r, env),
        Formula::Or(l, r) => eval(l, env) || eval(r, env),
        Formula::Implies(l, r) => !eval(l, env) || eval(r, env),
        Formula::Iff(l, r) => eval(l, env) == eval(r, env),
    }
}

/// Kleene evaluation on {0, 1, 2} = {false, unknown, true}: conjunction is
/// min, disjunction max, negation 2 - x.
pub fn kleene(f: &Formula, env: &Env) -> u8 {
    match f {
        Formula::Const(b) => 2 * (*b as u8),
        Formula::Atom(a) => env.get(a).map_or(1, |&v| 2 * (v as u8)),
        Formula::Not(g) => 2 - kleene(g, env),
        Formula::And(l, r) => kleene(l, env).min(kleene(r, env)),
        Formula::Or(l, r) => kleene(l, env).max(kleene(r, env)),
        Formula::Implies(l, r) => (2 - kleene(l, env)).max(kleene(r, env)),
        Formula::Iff(l, r) => {
            let (a, b) = (kleene(l, env), kleene(r, env));
            (2 - a).max(b).min((2 - b).max(a))
        }
    }
}

/// Every total extension of `base` over `atoms`.
pub fn totals(atoms: &BTreeSet<Atom>, base: &Env) -> Vec<Env> {
    let free: Vec<&Atom> = atoms.iter().filter(|a| !base.contains_key(*a)).collect();
    (0..1u64 << free.len())
        .map(|bits| {
            let mut e = base.clone();
            for (i, a) in free.iter().enumerate() {
                e.insert((*a).clone(), bits >> i & 1 == 1);
            }
            e
        })
        .collect()
}

pub fn oracle_validates(mu: &Assignment, f: &Formula) -> bool {
    kleene(f, &env_of(mu)) == 2
}

pub fn oracle_entails(mu: &Assignment, f: &Formula) -> bool {
    totals(&f.atoms(), &env_of(mu)).iter().all(|e| eval(f, e))
}

pub fn oracle_valid(f: &Formula) -> bool {
    oracle_entails(&Assignment::empty(), f)
}

pub fn oracle_equivalent(f: &Formula, g: &Formula) -> bool {
    let mut atoms = f.atoms();
    atoms.extend(g.atoms());
    totals(&atoms, &Env::new()).iter().all(|e| eval(f, e) == eval(g, e))
}

/// Satisfiability of a clause list under fixed bindings, by plain DPLL.
pub fn cnf_sat(clauses: &[Vec<Literal>], env: &mut Env) -> bool {
    loop {
        let mut units = Vec::new();
        for c in clauses {
            let mut open = None;
            let mut count = 0;
            let mut sat = false;
            for l in c {
                match env.get(&l.atom) {
                    Some(&v) if v == l.positive => sat = true,
                    Some(_) => {}
                    None => {
                        count += 1;
                        open = Some(l);
                    }
                }
            }
            if sat {
                continue;
            }
            match (count, open) {
                (0, _) => return false,
                (1, Some(l)) => units.push(l.clone()),
                _ => {}
            }
        }
        if units.is_empty() {
            break;
        }
        for l in units {
            match env.get(&l.atom) {
                Some(&v) if v != l.positive => return false,
                _ => {
                    env.insert(l.atom, l.positive);
                }
            }
        }
    }
    let pick = clauses
        .iter()
        .flatten()
        .find(|l| !env.contains_key(&l.atom))
        .map(|l| l.atom.clone());
    match pick {
        None => true,
        Some(a) => [true, false].into_iter().any(|v| {
            let mut e = env.clone();
            e.insert(a.clone(), v);
            cnf_sat(clauses, &mut e)
        }),
    }
}

/// `exists delta over b` with `eta ∪ delta` satisfying `f`, for every total
/// `eta` over the free atoms that extends `mu`.
pub fn oracle_exists_entails(mu: &Assignment, f: &Formula, b: &BTreeSet<Atom>) -> bool {
    let free: BTreeSet<Atom> = f.atoms().difference(b).cloned().collect();
    totals(&free, &env_of(mu))
        .iter()
        .all(|eta| totals(b, eta).iter().any(|e| eval(f, e)))
}

pub fn oracle_exists_validates(mu: &Assignment, f: &Formula, b: &BTreeSet<Atom>) -> bool {
    totals(b, &env_of(mu)).iter().any(|e| kleene(f, e) == 2)
}

pub fn atom_names(prefix: &str, n: usize) -> Vec<Atom> {
    (1..=n).map(|i| Atom::new(&format!("{prefix}{i}"))).collect()
}

/// A random formula over `atoms` of depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[Atom], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.05) {
            Formula::Const(rng.gen())
        } else {
            Formula::Atom(atoms[rng.gen_range(0..atoms.len())].clone())
        };
    }
    let sub = |rng: &mut R| random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..9) {
        0 | 1 => Formula::not(sub(rng)),
        2 | 3 => Formula::and(sub(rng), sub(rng)),
        4 | 5 => Formula::or(sub(rng), sub(rng)),
        6 => Formula::implies(sub(rng), sub(rng)),
        _ => Formula::iff(sub(rng), sub(rng)),
    }
}

/// Binds each atom with probability one half, polarity uniform.
pub fn random_partial<R: Rng>(rng: &mut R, atoms: &[Atom]) -> Assignment {
    let mut lits = Vec::new();
    for a in atoms {
        if rng.gen_bool(0.5) {
            lits.push(Literal::new(a.clone(), rng.gen()));
        }
    }
    Assignment::from_literals(lits).unwrap()
}

pub fn random_total<R: Rng>(rng: &mut R, atoms: &[Atom]) -> Assignment {
    Assignment::from_literals(atoms.iter().map(|a| Literal::new(a.clone(), rng.gen())).collect::<Vec<_>>()).unwrap()
}

/// A random tautology-free CNF with 1 to 5 clauses of 1 to 4 literals.
pub fn random_cnf<R: Rng>(rng: &mut R, atoms: &[Atom]) -> Formula {
    let clauses = (0..rng.gen_range(1..=5)).map(|_| {
        let mut lits: BTreeMap<Atom, bool> = BTreeMap::new();
        for _ in 0..rng.gen_range(1..=4) {
            lits.entry(atoms[rng.gen_range(0..atoms.len())].clone()).or_insert(rng.gen());
        }
        Formula::disjunction(lits.into_iter().map(|(a, v)| Literal::new(a, v).to_formula()))
    });
    Formula::conjunction(clauses)
}

/// Negation normal form over `!`, `&`, `|`. Equivalent to the input.
pub fn nnf(f: &Formula, positive: bool) -> Formula {
    match (f, positive) {
        (Formula::Const(b), p) => Formula::Const(*b == p),
        (Formula::Atom(_), true) => f.clone(),
        (Formula::Atom(_), false) => Formula::not(f.clone()),
        (Formula::Not(g), p) => nnf(g, !p),
        (Formula::And(l, r), true) | (Formula::Or(l, r), false) => Formula::and(nnf(l, positive), nnf(r, positive)),
        (Formula::Or(l, r), true) | (Formula::And(l, r), false) => Formula::or(nnf(l, positive), nnf(r, positive)),
        (Formula::Implies(l, r), true) => Formula::or(nnf(l, false), nnf(r, true)),
        (Formula::Implies(l, r), false) => Formula::and(nnf(l, true), nnf(r, false)),
        (Formula::Iff(l, r), true) => Formula::or(
            Formula::and(nnf(l, true), nnf(r, true)),
            Formula::and(nnf(l, false), nnf(r, false)),
        ),
        (Formula::Iff(l, r), false) => Formula::or(
            Formula::and(nnf(l, true), nnf(r, false)),
            Formula::and(nnf(l, false), nnf(r, true)),
        ),
    }
}

/// Swaps the operands of every commutative connective.
pub fn mirror(f: &Formula) -> Formula {
    match f {
        Formula::Const(_) | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(mirror(g)),
        Formula::And(l, r) => Formula::and(mirror(r), mirror(l)),
        Formula::Or(l, r) => Formula::or(mirror(r), mirror(l)),
        Formula::Implies(l, r) => Formula::implies(mirror(l), mirror(r)),
        Formula::Iff(l, r) => Formula::iff(mirror(r), mirror(l)),
    }
}

/// Proptest strategy for formulas over `A1..An` of depth at most `depth`.
pub fn arb_formula(n: usize, depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        9 => (1..=n).prop_map(|i| Formula::atom(&format!("A{i}"))),
        1 => any::<bool>().prop_map(Formula::Const),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::iff(l, r)),
        ]
    })
}

/// Proptest strategy for partial assignments over `A1..An`.
pub fn arb_partial(n: usize) -> impl Strategy<Value = Assignment> {
    proptest::collection::vec(proptest::option::of(any::<bool>()), n).prop_map(|bits| {
        Assignment::from_literals(
            bits.into_iter()
                .enumerate()
                .filter_map(|(i, b)| b.map(|v| Literal::new(Atom::new(&format!("A{}", i + 1)), v)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    })
}
