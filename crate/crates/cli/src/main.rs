mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cayrep::autgroup::{aut_group, aut_group_with, Strategy};
use cayrep::cayley::ConnectionSpec;
use cayrep::gbase::{g_base, sweep_class_unions, verify_section4};
use cayrep::suites::{all_suites, DEFAULT_SEED};
use cayrep::{Budget, CayleyGraph, Error, GroupSpec, IndexedGroup};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const SCHEMA: &str = include_str!("../schema/output.schema.json");
const BUDGET_ENV: &str = "CAYREP_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "cayrep", version, about = "Cayley representations of central Cayley graphs")]
struct Cli {
    /// Print the JSON schema of all outputs and exit.
    #[arg(long)]
    json_schema: bool,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Wall-clock limit in seconds, overriding the budget.
    #[arg(long, global = true)]
    time_limit: Option<u64>,

    /// Budget overrides as JSON, e.g. {"element_cap": 200000}.
    #[arg(long, global = true, env = BUDGET_ENV)]
    budget: Option<String>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Facts about a group.
    Group {
        #[command(subcommand)]
        what: GroupCommand,
    },
    /// Automorphism group of a Cayley graph.
    Autgroup {
        #[arg(long)]
        group: String,
        #[arg(long)]
        connection: String,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
    },
    /// Pairwise nonequivalent Cayley representations.
    Reps {
        #[arg(long)]
        group: String,
        #[arg(long)]
        connection: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bundled verification runs.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    Info {
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Representations of class-union graphs over a simple group.
    TheoremSimple {
        #[arg(long)]
        group: String,
        /// Every nonempty proper union of nontrivial classes.
        #[arg(long)]
        all_class_unions: bool,
        /// Only unions that are not inverse-closed.
        #[arg(long)]
        directed_only: bool,
    },
    /// The `H_t` construction in `sym m`.
    Section4 {
        #[arg(long)]
        m: usize,
    },
    /// Seeded property suites.
    Lemmas,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    CompleteEmpty,
    SimpleD2Filter,
    SymmetricWreath,
    RefinementBacktrack,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::CompleteEmpty => Strategy::CompleteEmpty,
            StrategyArg::SimpleD2Filter => Strategy::SimpleD2Filter,
            StrategyArg::SymmetricWreath => Strategy::SymmetricWreath,
            StrategyArg::RefinementBacktrack => Strategy::RefinementBacktrack,
        }
    }
}

enum Failure {
    Input(Error),
    Budget(Error),
    /// A verification ran but did not pass; the report is still printed.
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BudgetExceeded(_) | Error::CapExceeded { .. } | Error::ElementCapExceeded { .. } => Failure::Budget(e),
            e => Failure::Input(e),
        }
    }
}

fn budget(cli: &Cli) -> Result<Budget, Failure> {
    let mut b = match &cli.budget {
        Some(text) => serde_json::from_str::<Budget>(text)
            .map_err(|e| Failure::Input(Error::Parse(format!("budget: {e}"))))?,
        None => Budget::default(),
    };
    if cli.time_limit.is_some() {
        b.time_limit_secs = cli.time_limit;
    }
    b.validate().map_err(Failure::Input)?;
    Ok(b)
}

fn load_group(spec: &str, budget: &Budget) -> Result<IndexedGroup, Failure> {
    let spec: GroupSpec = spec.parse()?;
    Ok(IndexedGroup::build_with_cap(&spec, budget.element_cap as usize)?)
}

fn run(cli: &Cli) -> Result<(Value, Option<PathBuf>), Failure> {
    let budget = budget(cli)?;
    let command = cli
        .command
        .as_ref()
        .ok_or_else(|| Failure::Input(Error::Parse("no command given".into())))?;
    match command {
        Command::Group {
            what: GroupCommand::Info { group },
        } => {
            let g = load_group(group, &budget)?;
            Ok((report::group_info(group, &g), None))
        }
        Command::Autgroup {
            group,
            connection,
            strategy,
        } => {
            let g = load_group(group, &budget)?;
            let x = ConnectionSpec::from_json(connection)?.resolve(&g)?;
            let gamma = CayleyGraph::new(&g, &x)?;
            let k = match strategy {
                Some(s) => aut_group_with(&gamma, (*s).into(), &budget)?,
                None => aut_group(&gamma, &budget)?,
            };
            let doc = report::autgroup(group, &gamma, &k);
            if !k.exact {
                return Err(Failure::Check(doc));
            }
            Ok((doc, None))
        }
        Command::Reps { group, connection, out } => {
            let g = load_group(group, &budget)?;
            let x = ConnectionSpec::from_json(connection)?.resolve(&g)?;
            let gamma = CayleyGraph::new(&g, &x)?;
            let base = g_base(&gamma, &budget)?;
            Ok((report::reps(group, &gamma, &base), out.clone()))
        }
        Command::Verify { what } => {
            let doc = match what {
                VerifyCommand::TheoremSimple {
                    group,
                    all_class_unions,
                    directed_only,
                } => {
                    if !all_class_unions && !directed_only {
                        return Err(Failure::Input(Error::Parse(
                            "choose --all-class-unions or --directed-only".into(),
                        )));
                    }
                    let g = load_group(group, &budget)?;
                    let entries = sweep_class_unions(&g, *directed_only, &budget)?;
                    report::theorem_simple(group, &g, *directed_only, &entries)
                }
                VerifyCommand::Section4 { m } => {
                    let r = verify_section4(*m, &budget)?;
                    report::section4(&r)
                }
                VerifyCommand::Lemmas => {
                    let suites = all_suites(cli.seed)?;
                    report::lemmas(cli.seed, &suites)
                }
            };
            if doc["passed"] != json!(true) {
                return Err(Failure::Check(doc));
            }
            Ok((doc, None))
        }
    }
}

fn emit(doc: &Value, out: Option<&PathBuf>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(doc).expect("serializable") + "\n";
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.json_schema {
        print!("{SCHEMA}");
        return ExitCode::SUCCESS;
    }
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cannot configure {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    let started = std::time::Instant::now();
    let result = run(&cli);
    eprintln!("elapsed {:.2}s", started.elapsed().as_secs_f64());
    let (doc, code, out) = match result {
        Ok((doc, out)) => (doc, 0, out),
        Err(Failure::Input(e)) => (report::error(&e, true), 1, None),
        Err(Failure::Budget(e)) => (report::error(&e, false), 2, None),
        Err(Failure::Check(doc)) => {
            let code = if doc.get("exact") == Some(&json!(false)) { 2 } else { 1 };
            (doc, code, None)
        }
    };
    if let Err(e) = emit(&doc, out.as_ref()) {
        eprintln!("cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
