//! `partialsat`: batch front end for validation/entailment checks,
//! enumeration, CNF-ization, Shannon expansion and predicate abstraction.
//!
//! Exit codes: 0 success, 1 the queried predicate is false, 2 usage or input
//! error, 3 resource limit.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use partialsat::cnfize::{check_entailment_loss, check_validation_loss, to_dimacs, tseitin, DeltaEntailment};
use partialsat::enumeration::{
    build_obdd, dpll_enumerate, obdd_enumerate, tableaux_enumerate, Branching, Engine, EnumJson, Mode,
};
use partialsat::partial::verdict;
use partialsat::predabs::{compare_modes, enumerate_abstraction, PredAbsProblem};
use partialsat::quantified::{exists_entails, exists_validates, shannon_expand, ExistentialFormula, ShannonOptions};
use partialsat::semantics::brute_equivalent;
use partialsat::{eval3, parse, residual, Assignment, Atom, Error, Formula, Limits};

#[derive(Parser)]
#[command(name = "partialsat", version, about = "Partial-assignment validation and entailment toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct LimitArgs {
    /// Largest atom count for exhaustive sweeps.
    #[arg(long, global = true, env = "PARTIALSAT_MAX_ATOMS", default_value_t = Limits::default().max_atoms)]
    max_atoms: usize,
    #[arg(long, global = true, env = "PARTIALSAT_NODE_BUDGET", default_value_t = Limits::default().node_budget)]
    node_budget: usize,
    #[arg(long, global = true, env = "PARTIALSAT_BRANCH_BUDGET", default_value_t = Limits::default().branch_budget)]
    branch_budget: usize,
    #[arg(long, global = true, env = "PARTIALSAT_CONFLICT_BUDGET", default_value_t = Limits::default().conflict_budget)]
    conflict_budget: usize,
    #[arg(long, global = true, env = "PARTIALSAT_EXPANSION_CAP", default_value_t = Limits::default().expansion_cap)]
    expansion_cap: usize,
    #[arg(long, global = true, env = "PARTIALSAT_LOSS_SWEEP_CAP", default_value_t = Limits::default().loss_sweep_cap)]
    loss_sweep_cap: usize,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_atoms: self.max_atoms,
            expansion_cap: self.expansion_cap,
            loss_sweep_cap: self.loss_sweep_cap,
            node_budget: self.node_budget,
            branch_budget: self.branch_budget,
            conflict_budget: self.conflict_budget,
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Inline formula text.
    #[arg(short = 'f', long)]
    formula: Option<String>,
    /// Read the formula from a file (`#` comments allowed).
    #[arg(long)]
    file: Option<PathBuf>,
}

impl Input {
    fn text(&self) -> Result<String, Failure> {
        match (&self.formula, &self.file) {
            (Some(t), _) => Ok(t.clone()),
            (None, Some(p)) => fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
            (None, None) => unreachable!("clap requires one input"),
        }
    }

    fn formula(&self) -> Result<Formula, Failure> {
        Ok(parse(&self.text()?)?)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Validates,
    Entails,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Obdd,
    Tableaux,
    Dpll,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Validating,
    Entailing,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LossArg {
    Validation,
    Entailment,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an assignment validates and/or entails a formula.
    Check {
        #[command(flatten)]
        input: Input,
        /// Literal list, e.g. "A1, !A3".
        #[arg(short = 'a', long, default_value = "")]
        assign: String,
        #[arg(long, value_enum, default_value_t = CheckMode::Both)]
        mode: CheckMode,
    },
    /// Print the residual of a formula under an assignment.
    Residual {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'a', long, default_value = "")]
        assign: String,
    },
    /// Enumerate partial satisfying assignments.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = EngineArg::Obdd)]
        engine: EngineArg,
        /// Comma-separated atom order for the OBDD or for DPLL branching.
        #[arg(long)]
        order: Option<String>,
        /// Drop duplicate and subsumed tableaux branches.
        #[arg(long)]
        dedup: bool,
    },
    /// Tseitin CNF-ization, optionally with a loss check.
    Cnfize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dimacs_out: Option<PathBuf>,
        /// Sweep the fresh atoms for a loss of validation or entailment.
        #[arg(long, value_enum, requires = "assign")]
        loss: Option<LossArg>,
        #[arg(short = 'a', long)]
        assign: Option<String>,
    },
    /// Shannon expansion of `exists B1 B2 . <formula>`.
    Shannon {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        keep_bot_disjuncts: bool,
        /// Also decide the quantified notions for this assignment.
        #[arg(short = 'a', long)]
        assign: Option<String>,
        #[arg(long, value_enum, default_value_t = CheckMode::Both)]
        mode: CheckMode,
    },
    /// Predicate abstraction from a JSON problem file.
    Predabs {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Validating)]
        mode: ModeArg,
    },
    /// Compare abstraction modes (`--problem`) or engines (formula input).
    Compare {
        #[arg(long, conflicts_with_all = ["formula", "file"])]
        problem: Option<PathBuf>,
        #[arg(short = 'f', long)]
        formula: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

struct Output {
    text: String,
    code: u8,
}

fn ok(text: String) -> Result<Output, Failure> {
    Ok(Output { text, code: 0 })
}

fn pretty(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize"))
}

fn pretty_doc(doc: &EnumJson) -> String {
    format!("{}\n", serde_json::to_string_pretty(doc).expect("JSON documents serialize"))
}

fn literal_list(mu: &Assignment) -> Value {
    Value::from(mu.literals().map(|l| l.to_string()).collect::<Vec<_>>())
}

fn atom_order(text: &str) -> Result<Vec<Atom>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<Atom>().map_err(Failure::from))
        .collect()
}

fn load_problem(path: &PathBuf) -> Result<PredAbsProblem, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(PredAbsProblem::from_json(&text)?)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let limits = cli.limits.limits();
    match &cli.command {
        Command::Check { input, assign, mode } => {
            let f = input.formula()?;
            let mu = Assignment::parse(assign)?;
            let v = verdict(&mu, &f, &limits)?;
            let text = if cli.json {
                pretty(&json!({
                    "validates": v.validates,
                    "entails": v.entails,
                    "witness": v.witness.as_ref().map(literal_list),
                }))
            } else {
                let mut t = String::new();
                if *mode != CheckMode::Entails {
                    t.push_str(&format!("validates: {}\n", v.validates));
                }
                if *mode != CheckMode::Validates {
                    t.push_str(&format!("entails: {}\n", v.entails));
                    if let Some(w) = &v.witness {
                        t.push_str(&format!("witness: {w}\n"));
                    }
                }
                t
            };
            let holds = match mode {
                CheckMode::Validates => v.validates,
                CheckMode::Entails => v.entails,
                CheckMode::Both => true,
            };
            Ok(Output {
                text,
                code: if holds { 0 } else { 1 },
            })
        }
        Command::Residual { input, assign } => {
            let f = input.formula()?;
            let mu = Assignment::parse(assign)?;
            let r = residual(&f, &mu);
            if cli.json {
                ok(pretty(&json!({"residual": r.to_string(), "value": eval3(&f, &mu).to_string()})))
            } else {
                ok(format!("{r}\n"))
            }
        }
        Command::Enumerate {
            input,
            engine,
            order,
            dedup,
        } => {
            let f = input.formula()?;
            let order = order.as_deref().map(atom_order).transpose()?;
            let r = match engine {
                EngineArg::Obdd => obdd_enumerate(&build_obdd(&f, order.as_deref(), &limits)?),
                EngineArg::Tableaux => tableaux_enumerate(&f, *dedup, &limits)?,
                EngineArg::Dpll => {
                    let branching = order.map_or(Branching::MostFrequent, Branching::Static);
                    dpll_enumerate(&f, &branching, &limits)?
                }
            };
            if cli.json {
                ok(pretty_doc(&r.to_json(&f)))
            } else {
                ok(r.to_text())
            }
        }
        Command::Cnfize {
            input,
            dimacs_out,
            loss,
            assign,
        } => {
            let f = input.formula()?;
            let t = tseitin(&f);
            if let Some(path) = dimacs_out {
                fs::write(path, to_dimacs(&t.cnf)?)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            let fresh: Vec<String> = t.fresh_atoms.iter().map(|a| a.to_string()).collect();
            let mu = assign.as_deref().map(Assignment::parse).transpose()?;
            let report: Option<(bool, Vec<(Assignment, String)>)> = match (loss, mu) {
                (Some(LossArg::Validation), Some(mu)) => {
                    let r = check_validation_loss(&mu, &f, &limits)?;
                    let rows = r
                        .deltas
                        .into_iter()
                        .map(|(d, v)| (d, if v { "validates" } else { "does not validate" }.to_string()))
                        .collect();
                    Some((r.loss, rows))
                }
                (Some(LossArg::Entailment), Some(mu)) => {
                    let r = check_entailment_loss(&mu, &f, &limits)?;
                    let rows = r
                        .deltas
                        .into_iter()
                        .map(|(d, v)| {
                            let s = match v {
                                DeltaEntailment::Entails => "entails".to_string(),
                                DeltaEntailment::FalsifiedByExtension(w) => format!("falsified by {w}"),
                                DeltaEntailment::Inconsistent => "inconsistent".to_string(),
                            };
                            (d, s)
                        })
                        .collect();
                    Some((r.loss, rows))
                }
                _ => None,
            };
            if cli.json {
                let mut v = json!({"cnf": t.cnf.to_string(), "fresh_atoms": fresh});
                if let Some((lost, rows)) = &report {
                    v["loss"] = json!(lost);
                    v["deltas"] = rows
                        .iter()
                        .map(|(d, s)| json!({"delta": literal_list(d), "verdict": s}))
                        .collect();
                }
                ok(pretty(&v))
            } else {
                let mut out = format!("{}\n", t.cnf);
                if let Some((lost, rows)) = report {
                    for (d, s) in rows {
                        out.push_str(&format!("delta {d}: {s}\n"));
                    }
                    out.push_str(&format!("loss: {lost}\n"));
                }
                ok(out)
            }
        }
        Command::Shannon {
            input,
            keep_bot_disjuncts,
            assign,
            mode,
        } => {
            let ef = ExistentialFormula::parse(&input.text()?)?;
            let opts = ShannonOptions {
                keep_bot: *keep_bot_disjuncts,
                ..ShannonOptions::default()
            };
            let expansion = shannon_expand(&ef, opts, &limits)?;
            let mut fields = vec![("expansion", Value::from(expansion.to_string()))];
            let mut code = 0;
            if let Some(a) = assign {
                let mu = Assignment::parse(a)?;
                let v = exists_validates(&mu, &ef, &limits)?.holds();
                let e = exists_entails(&mu, &ef, &limits)?.holds();
                if *mode != CheckMode::Entails {
                    fields.push(("validates", Value::from(v)));
                }
                if *mode != CheckMode::Validates {
                    fields.push(("entails", Value::from(e)));
                }
                let holds = match mode {
                    CheckMode::Validates => v,
                    CheckMode::Entails => e,
                    CheckMode::Both => true,
                };
                code = if holds { 0 } else { 1 };
            }
            let text = if cli.json {
                pretty(&Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()))
            } else {
                let mut out = format!("{expansion}\n");
                for (k, v) in fields.into_iter().skip(1) {
                    out.push_str(&format!("{k}: {v}\n"));
                }
                out
            };
            Ok(Output { text, code })
        }
        Command::Predabs { problem, mode } => {
            let p = load_problem(problem)?;
            let mode = match mode {
                ModeArg::Validating => Mode::Validating,
                ModeArg::Entailing => Mode::Entailing,
            };
            let r = enumerate_abstraction(&p, mode, &limits)?;
            if cli.json {
                let mut doc = r.to_json(&Formula::TRUE);
                doc.formula = p.to_existential()?.to_string();
                ok(pretty_doc(&doc))
            } else {
                ok(r.to_text())
            }
        }
        Command::Compare { problem, formula, file } => {
            if let Some(path) = problem {
                let c = compare_modes(&load_problem(path)?, &limits)?;
                if cli.json {
                    return ok(pretty(&json!({
                        "cube_count_validating": c.cube_count_validating,
                        "cube_count_entailing": c.cube_count_entailing,
                        "literals_validating": c.literals_validating,
                        "literals_entailing": c.literals_entailing,
                        "equivalent": c.equivalent,
                    })));
                }
                return ok(format!(
                    "validating: {} cubes, {} literals\nentailing: {} cubes, {} literals\nequivalent: {}\n",
                    c.cube_count_validating,
                    c.literals_validating,
                    c.cube_count_entailing,
                    c.literals_entailing,
                    c.equivalent
                ));
            }
            let input = Input {
                formula: formula.clone(),
                file: file.clone(),
            };
            if input.formula.is_none() && input.file.is_none() {
                return Err(Failure::Usage("compare needs --problem, --formula or --file".into()));
            }
            let f = input.formula()?;
            let results = [
                obdd_enumerate(&build_obdd(&f, None, &limits)?),
                tableaux_enumerate(&f, false, &limits)?,
                dpll_enumerate(&f, &Branching::MostFrequent, &limits)?,
            ];
            let mut rows = Vec::new();
            for r in &results {
                rows.push((
                    r.engine,
                    r.mode,
                    r.assignments.len(),
                    r.total_literals(),
                    brute_equivalent(&r.to_formula(), &f, &limits)?,
                ));
            }
            if cli.json {
                let list: Vec<Value> = rows
                    .iter()
                    .map(|(e, m, n, l, eq)| {
                        json!({"engine": e.to_string(), "mode": m.to_string(), "cubes": n, "literals": l, "equivalent": eq})
                    })
                    .collect();
                return ok(pretty(&Value::from(list)));
            }
            ok(rows
                .iter()
                .map(|(e, m, n, l, eq): &(Engine, Mode, usize, usize, bool)| {
                    format!("{e} ({m}): {n} cubes, {l} literals, equivalent: {eq}\n")
                })
                .collect())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 3 } else { 2 })
        }
    }
}
