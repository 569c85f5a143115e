//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    atom_names, cnf_sat, env_of, eval, mirror, nnf, oracle_entails, oracle_exists_entails, random_cnf,
    random_formula, random_partial, random_total, EX1,
};
use partialsat::cnfize::{check_entailment_loss, check_validation_loss, tseitin, DeltaEntailment};
use partialsat::enumeration::{
    build_obdd, dpll_enumerate, obdd_enumerate, tableaux_enumerate, Branching, EnumResult, Mode,
};
use partialsat::partial::{entails, entails_with, validates, verdict, Backend};
use partialsat::predabs::{compare_modes, enumerate_abstraction, PredAbsProblem};
use partialsat::quantified::{exists_entails, exists_validates, shannon_expand, ExistentialFormula, ShannonOptions};
use partialsat::semantics::brute_equivalent;
use partialsat::sweep::Execution;
use partialsat::{eval3, parse, residual, sat_total, Assignment, Formula, Limits, TruthValue3};

const EX4: &str = "exists B1 B2 . (B1 | B2) \
    & (!B1 | A1) & (!B1 | A2) & (B1 | !A1 | !A2) \
    & (!B2 | A1) & (!B2 | !A2) & (B2 | !A1 | A2)";

const PREDABS: &str = r#"{
    "base": "(!B1 | B2) & (B1 | !B2)",
    "predicates": [
        {"label": "A1", "def": "B1 & B2"},
        {"label": "A2", "def": "B1 & !B2"}
    ]
}"#;

const FORMULAS: usize = 500;
const ASSIGNMENTS: usize = 200;
const ENGINE_FORMULAS: usize = 200;

/// Failures collected by one criterion; the first few are kept verbatim.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    failure_count: usize,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }
}

fn mu(text: &str) -> Assignment {
    Assignment::parse(text).unwrap()
}

fn as_set(r: &EnumResult) -> BTreeSet<String> {
    r.assignments.iter().map(|a| a.to_string()).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| mu(s).to_string()).collect()
}

fn example_one(t: &mut Tally) {
    let lim = Limits::default();
    let f = parse(EX1).unwrap();
    let obdd = obdd_enumerate(&build_obdd(&f, None, &lim).unwrap());
    t.check(obdd.assignments == vec![mu("A1")], || format!("obdd gave {:?}", obdd.assignments));
    let want = set(&["A1, A2", "A1, !A2"]);
    let tab = tableaux_enumerate(&f, false, &lim).unwrap();
    t.check(as_set(&tab) == want && tab.assignments.len() == 2, || {
        format!("tableaux gave {:?}", tab.assignments)
    });
    let dpll = dpll_enumerate(&f, &Branching::MostFrequent, &lim).unwrap();
    t.check(as_set(&dpll) == want && dpll.assignments.len() == 2, || {
        format!("dpll gave {:?}", dpll.assignments)
    });
    let v = verdict(&mu("A1"), &f, &lim).unwrap();
    t.check(!v.validates && v.entails, || format!("verdict {v:?}"));
}

fn example_two(t: &mut Tally) {
    let lim = Limits::default();
    let f = parse("A1 | (A2 & A3)").unwrap();
    let enc = tseitin(&f);
    let psi = parse("(A1 | B1) & (!B1 | A2) & (!B1 | A3) & (B1 | !A2 | !A3)").unwrap();
    t.check(enc.cnf == psi, || format!("tseitin gave {}", enc.cnf));
    let r = check_validation_loss(&mu("A1"), &f, &lim).unwrap();
    t.check(r.loss && r.deltas == vec![(mu("B1"), false), (mu("!B1"), false)], || {
        format!("validation loss {:?}", r.deltas)
    });

    let g = parse(EX1).unwrap();
    let enc = tseitin(&g);
    let psi = parse(
        "(B1 | B2) & (!B1 | A1) & (!B1 | A2) & (B1 | !A1 | !A2) \
         & (!B2 | A1) & (!B2 | !A2) & (B2 | !A1 | A2)",
    )
    .unwrap();
    t.check(enc.cnf == psi, || format!("tseitin gave {}", enc.cnf));
    let r = check_entailment_loss(&mu("A1"), &g, &lim).unwrap();
    let classes: Vec<(String, &str)> = r
        .deltas
        .iter()
        .map(|(d, v)| {
            let c = match v {
                DeltaEntailment::Entails => "entails",
                DeltaEntailment::FalsifiedByExtension(_) => "falsified",
                DeltaEntailment::Inconsistent => "inconsistent",
            };
            (d.to_string(), c)
        })
        .collect();
    let want = vec![
        ("B1, B2".to_string(), "inconsistent"),
        ("B1, !B2".to_string(), "falsified"),
        ("!B1, B2".to_string(), "falsified"),
        ("!B1, !B2".to_string(), "inconsistent"),
    ];
    t.check(r.loss && classes == want, || format!("entailment loss {classes:?}"));
}

fn example_four(t: &mut Tally) {
    let lim = Limits::default();
    let ef = ExistentialFormula::parse(EX4).unwrap();
    t.check(ef.matrix.classify().is_tautology_free_cnf, || "not tautology-free CNF".into());
    let opts = ShannonOptions {
        keep_bot: true,
        ..ShannonOptions::default()
    };
    let printed = shannon_expand(&ef, opts, &lim).unwrap().to_string();
    t.check(printed == "(A1 & A2 & !A2) | (A1 & A2) | (A1 & !A2) | false", || {
        format!("expansion printed as {printed}")
    });
    t.check(exists_entails(&mu("A1"), &ef, &lim).unwrap().holds(), || "exists_entails false".into());
    t.check(!exists_validates(&mu("A1"), &ef, &lim).unwrap().holds(), || "exists_validates true".into());
}

fn predicate_abstraction(t: &mut Tally) {
    let lim = Limits::default();
    let p = PredAbsProblem::from_json(PREDABS).unwrap();
    let v = enumerate_abstraction(&p, Mode::Validating, &lim).unwrap();
    t.check(v.assignments == vec![mu("A1, !A2"), mu("!A1, !A2")], || {
        format!("validating gave {:?}", v.assignments)
    });
    let e = enumerate_abstraction(&p, Mode::Entailing, &lim).unwrap();
    t.check(e.assignments == vec![mu("!A2")], || format!("entailing gave {:?}", e.assignments));
    let c = compare_modes(&p, &lim).unwrap();
    t.check(c.equivalent, || "modes not equivalent".into());
}

/// The corpus shared by the property and oracle criteria.
fn corpus() -> Vec<Formula> {
    let atoms = atom_names("A", 8);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = vec![parse(EX1).unwrap()];
    while out.len() < FORMULAS {
        let n = rng.gen_range(1..=8);
        let depth = rng.gen_range(1..=6);
        out.push(random_formula(&mut rng, &atoms[..n], depth));
    }
    out
}

fn property_suite(t: &mut Tally, formulas: &[Formula]) {
    let lim = Limits::default();
    let atoms = atom_names("A", 8);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut gaps = 0usize;
    for f in formulas {
        let variants = [f.desugar(), nnf(f, true), mirror(f)];
        for g in &variants {
            t.check(brute_equivalent(f, g, &lim).unwrap(), || format!("variant of {f} not equivalent"));
        }
        let enc = tseitin(f);
        for _ in 0..ASSIGNMENTS {
            let m = random_partial(&mut rng, &atoms);
            let v = validates(&m, f);
            let e = entails(&m, f, &lim).unwrap().holds();
            gaps += (e && !v) as usize;
            t.check(!v || e, || format!("{m:?} validates but does not entail {f}"));
            t.check(e == oracle_entails(&m, f), || format!("entails({m:?}, {f}) disagrees with oracle"));
            let r = residual(f, &m);
            let val = eval3(f, &m);
            t.check((r == Formula::TRUE) == (val == TruthValue3::True), || format!("top: {m:?} on {f}"));
            t.check((r == Formula::FALSE) == (val == TruthValue3::False), || format!("bottom: {m:?} on {f}"));
            for g in &variants {
                t.check(entails(&m, g, &lim).unwrap().holds() == e, || format!("{m:?}: {f} vs {g}"));
            }

            let eta = random_total(&mut rng, &atoms);
            let s = sat_total(f, &eta).unwrap();
            let val = eval3(f, &eta);
            t.check(val.is_known() && (val == TruthValue3::True) == s, || format!("eval3 on total {eta:?}"));
            t.check(residual(f, &eta) == Formula::Const(s), || format!("residual on total {eta:?}"));
            t.check(s == eval(f, &env_of(&eta)), || format!("sat_total oracle on {eta:?}"));
            let mut env = env_of(&eta.restrict(&f.atoms()));
            t.check(cnf_sat(&enc.clauses, &mut env) == s, || format!("tseitin of {f} on {eta:?}"));
        }
    }
    t.check(gaps > 0, || "no entailing-but-not-validating case was generated".into());

    // Equivalent formulas with different validation verdicts.
    let f = parse(EX1).unwrap();
    let g = parse("A1").unwrap();
    t.check(
        brute_equivalent(&f, &g, &lim).unwrap() && validates(&mu("A1"), &g) && !validates(&mu("A1"), &f),
        || "negative control".into(),
    );

    let atoms6 = atom_names("A", 6);
    for _ in 0..FORMULAS {
        let f = random_cnf(&mut rng, &atoms6);
        for _ in 0..ASSIGNMENTS {
            let m = random_partial(&mut rng, &atoms6);
            let v = validates(&m, &f);
            t.check(v == entails(&m, &f, &lim).unwrap().holds(), || format!("{m:?} on CNF {f}"));
        }
    }

    let free = atom_names("A", 4);
    let mut matrix_atoms = free.clone();
    matrix_atoms.extend(atom_names("B", 4));
    for _ in 0..FORMULAS {
        let depth = rng.gen_range(1..=6);
        let m = random_formula(&mut rng, &matrix_atoms, depth);
        let k = rng.gen_range(0..=4);
        let ef = ExistentialFormula::new(m, atom_names("B", k));
        let x = shannon_expand(&ef, ShannonOptions::default(), &lim).unwrap();
        for _ in 0..ASSIGNMENTS {
            let mu = random_partial(&mut rng, &free);
            let ev = exists_validates(&mu, &ef, &lim).unwrap().holds();
            let ee = exists_entails(&mu, &ef, &lim).unwrap().holds();
            t.check(ev == validates(&mu, &x), || format!("exists-validation {mu:?} on {ef}"));
            t.check(ee == entails(&mu, &x, &lim).unwrap().holds(), || format!("exists-entailment {mu:?} on {ef}"));
            t.check(!ev || ee, || format!("exists-validation without entailment {mu:?} on {ef}"));
        }
        let mu = random_partial(&mut rng, &free);
        t.check(
            exists_entails(&mu, &ef, &lim).unwrap().holds() == oracle_exists_entails(&mu, &ef.matrix, &ef.quantified),
            || format!("exists-entailment oracle {mu:?} on {ef}"),
        );
    }
}

fn dominated(small: &EnumResult, large: &EnumResult) -> bool {
    small
        .assignments
        .iter()
        .all(|m| large.assignments.iter().any(|n| m.is_subset_of(n)))
}

fn engine_cross_validation(t: &mut Tally) -> String {
    let lim = Limits::default();
    let atoms = atom_names("A", 6);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut frequency_misses = 0;
    for i in 0..ENGINE_FORMULAS {
        let f = if i == 0 {
            parse(EX1).unwrap()
        } else {
            let n = rng.gen_range(1..=6);
            let depth = rng.gen_range(1..=6);
            random_formula(&mut rng, &atoms[..n], depth)
        };
        let order: Vec<_> = f.atoms().into_iter().collect();
        let obdd = obdd_enumerate(&build_obdd(&f, Some(&order), &lim).unwrap());
        let dpll = dpll_enumerate(&f, &Branching::Static(order), &lim).unwrap();
        let freq = dpll_enumerate(&f, &Branching::MostFrequent, &lim).unwrap();
        for r in [&obdd, &dpll, &freq] {
            t.check(brute_equivalent(&r.to_formula(), &f, &lim).unwrap(), || {
                format!("{:?} cubes not equivalent to {f}", r.engine)
            });
        }
        t.check(obdd.assignments.len() <= dpll.assignments.len(), || format!("count on {f}"));
        t.check(dominated(&obdd, &dpll), || format!("dominance on {f}"));
        frequency_misses += !dominated(&obdd, &freq) as usize;
    }
    format!("frequency-heuristic DPLL would miss dominance on {frequency_misses}/{ENGINE_FORMULAS}")
}

fn oracle_agreement(t: &mut Tally, formulas: &[Formula]) {
    let lim = Limits::default();
    let atoms = atom_names("A", 8);
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for f in formulas {
        for _ in 0..20 {
            let m = random_partial(&mut rng, &atoms);
            let a = entails_with(&m, f, &lim, Backend::Refutation).unwrap();
            let b = entails_with(&m, f, &lim, Backend::Sweep(Execution::default())).unwrap();
            t.check(a.holds() == b.holds(), || format!("backends disagree on {m:?}, {f}"));
            if let Some(w) = a.witness() {
                t.check(m.is_subset_of(w) && !sat_total(f, w).unwrap(), || format!("bad witness {w:?} for {f}"));
            }
        }
    }
}

fn report(n: usize, name: &str, limit: Duration, run: impl FnOnce(&mut Tally) -> String) -> bool {
    let mut t = Tally::default();
    let start = Instant::now();
    let note = run(&mut t);
    let took = start.elapsed();
    let pass = t.failure_count == 0 && took < limit;
    println!(
        "criterion {n} [{name}]: {} ({} checks, {} violations, {:.2?} of {:?}){}",
        if pass { "PASS" } else { "FAIL" },
        t.checks,
        t.failure_count,
        took,
        limit,
        if note.is_empty() { String::new() } else { format!("; {note}") },
    );
    for f in &t.failures {
        println!("    {f}");
    }
    pass
}

fn main() -> ExitCode {
    let second = Duration::from_secs(1);
    let minute = Duration::from_secs(60);
    let formulas = corpus();
    let results = [
        report(1, "example 1 engines and verdict", second, |t| {
            example_one(t);
            String::new()
        }),
        report(2, "example 2 tseitin and loss", second, |t| {
            example_two(t);
            String::new()
        }),
        report(3, "example 4 shannon expansion", second, |t| {
            example_four(t);
            String::new()
        }),
        report(4, "predicate abstraction", second, |t| {
            predicate_abstraction(t);
            String::new()
        }),
        report(5, "property suite", minute, |t| {
            property_suite(t, &formulas);
            String::new()
        }),
        report(6, "engine cross-validation", minute, engine_cross_validation),
        report(7, "entailment oracle agreement", minute, |t| {
            oracle_agreement(t, &formulas);
            String::new()
        }),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
