//! Command-line front end: verify and solve detector sets, build the 3-SAT
//! reduction, certify grid patterns, and replay localization scenarios.
//!
//! Exit codes: 0 success / property holds, 1 semantic negative (violation,
//! unproved, mismatch), 2 usage or input error.

use clap::{Args, Parser, Subcommand};
use faultdom::graph::{make_torus, LatticeKind};
use faultdom::grids::{certify_pattern, search_min_pattern, PeriodicPattern};
use faultdom::io;
use faultdom::localize::{
    decode_consistency, decode_elimination, exhaustive_sweep, simulate, Scenario,
};
use faultdom::reduce::{build_reduction, roundtrip_check, CnfFormula};
use faultdom::solve::{exact_min, SearchConfig, SolveError};
use faultdom::verify::{verify, TransmissionVector};
use faultdom::{DetectorSet, Graph, Variant};
use std::fs;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "faultdom", version, about = "fault-tolerant locating-dominating set toolkit")]
struct Cli {
    /// Suppress the version banner.
    #[arg(long, global = true)]
    quiet: bool,
    /// Worker threads (default: env FAULTDOM_JOBS, then 1).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Edge-list file (`n m` header, one `u v` line per edge).
    #[arg(short = 'g', long = "graph")]
    graph: String,
}

#[derive(Args)]
struct SetArg {
    /// Detector-set file (indices on one line, or `*` for all vertices).
    #[arg(short = 's', long = "set")]
    set: String,
}

#[derive(Args)]
struct VariantArg {
    /// ld | red | det | err (also accepts RED_LD / RED:LD forms).
    #[arg(long, default_value = "err")]
    variant: String,
}

#[derive(Args)]
struct BudgetArgs {
    /// Search node budget.
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a detector set against the characterization conditions.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        set: SetArg,
        #[command(flatten)]
        variant: VariantArg,
    },
    /// Compute a minimum detector set by branch and bound.
    Solve {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        variant: VariantArg,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Only search for sets of at most this size.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Test whether any valid detector set exists.
    Exists {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        variant: VariantArg,
    },
    /// Build the reduction graph for a DIMACS 3-CNF formula.
    Reduce {
        /// DIMACS CNF file.
        #[arg(short = 'f', long = "formula")]
        formula: String,
        /// Output edge-list path; labels and the mandatory set are written
        /// alongside with .labels / .mandatory extensions.
        #[arg(short = 'o', long = "out")]
        out: String,
    },
    /// Check the reduction biconditional for a formula.
    Roundtrip {
        #[arg(short = 'f', long = "formula")]
        formula: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Certify a periodic pattern on its lattice.
    GridCertify {
        /// Pattern file (`lattice rows cols` header, `r c` offsets).
        #[arg(short = 'p', long = "pattern")]
        pattern: String,
    },
    /// Exhaustively search for the sparsest certifiable pattern.
    GridSearch {
        /// SQ | TRI | HEX | KING | LADDER.
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value_t = 3)]
        max_rows: usize,
        #[arg(long, default_value_t = 3)]
        max_cols: usize,
    },
    /// Print the alert vector for a scenario and decode it back.
    Simulate {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        set: SetArg,
        /// Intruder vertex, or "none".
        #[arg(long, default_value = "none")]
        intruder: String,
        /// Faulty transmission as detector:symbol.
        #[arg(long)]
        fault: Option<String>,
    },
    /// Replay every one-fault scenario through both decoders.
    Sweep {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        set: SetArg,
    },
    /// Emit the graph in DOT format (detectors filled).
    ExportDot {
        #[command(flatten)]
        graph: GraphArg,
        /// Optional detector-set file to highlight.
        #[arg(short = 's', long = "set")]
        set: Option<String>,
        /// Output path (stdout when omitted).
        #[arg(short = 'o', long = "out")]
        out: Option<String>,
    },
    /// Build a lattice torus and write it as an edge list.
    MakeTorus {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(short = 'o', long = "out")]
        out: Option<String>,
    },
}

/// Semantic outcome of a command, mapped onto the exit-code contract.
enum Outcome {
    Pass,
    Negative,
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !cli.quiet {
        println!("faultdom {}", env!("CARGO_PKG_VERSION"));
    }
    let jobs = cli
        .jobs
        .or_else(|| std::env::var("FAULTDOM_JOBS").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(1);
    let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::from(0),
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(path: &str) -> Result<Graph, CliError> {
    io::read_edge_list(&fs::read_to_string(path)?).map_err(Into::into)
}

fn load_set(path: &str, n: usize) -> Result<DetectorSet, CliError> {
    io::read_detector_set(&fs::read_to_string(path)?, n).map_err(Into::into)
}

fn parse_variant(s: &str) -> Result<Variant, CliError> {
    Variant::parse(s).ok_or_else(|| CliError(format!("unknown variant {s:?}")))
}

fn search_config(b: &BudgetArgs, max_size: Option<usize>) -> SearchConfig {
    SearchConfig {
        node_budget: b.budget,
        time_budget: b.time_limit.map(Duration::from_secs),
        max_size,
    }
}

fn run(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Verify { graph, set, variant } => {
            let g = load_graph(&graph.graph)?;
            let s = load_set(&set.set, g.n())?;
            let variant = parse_variant(&variant.variant)?;
            let verdict = verify(&g, &s, variant);
            println!("{}", verdict.report());
            Ok(if verdict.ok { Outcome::Pass } else { Outcome::Negative })
        }
        Command::Solve { graph, variant, budget, max_size } => {
            let g = load_graph(&graph.graph)?;
            let variant = parse_variant(&variant.variant)?;
            let cfg = search_config(&budget, max_size);
            match exact_min(&g, variant, &cfg) {
                Ok(res) => {
                    let status = if res.proved { "proved" } else { "unproved" };
                    match &res.best {
                        Some(s) => {
                            println!(
                                "{} {} {} nodes={}",
                                variant.name(),
                                s.len(),
                                status,
                                res.nodes
                            );
                            println!("{}", io::write_detector_set(s).trim_end());
                        }
                        None => println!("{} none {} nodes={}", variant.name(), status, res.nodes),
                    }
                    Ok(if res.proved { Outcome::Pass } else { Outcome::Negative })
                }
                Err(SolveError::NoValidSet(v)) => {
                    println!("{} none proved nodes=0", v.name());
                    Ok(Outcome::Negative)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Exists { graph, variant } => {
            let g = load_graph(&graph.graph)?;
            let variant = parse_variant(&variant.variant)?;
            let ok = verify(&g, &DetectorSet::full(g.n()), variant).ok;
            println!("{} {}", variant.name(), if ok { "EXISTS" } else { "NONE" });
            Ok(if ok { Outcome::Pass } else { Outcome::Negative })
        }
        Command::Reduce { formula, out } => {
            let f = CnfFormula::parse_dimacs(&fs::read_to_string(formula)?)?;
            let red = build_reduction(&f)?;
            fs::write(&out, io::write_edge_list(&red.graph))?;
            fs::write(format!("{out}.labels"), io::write_labels(&red.graph))?;
            fs::write(
                format!("{out}.mandatory"),
                io::write_detector_set(&red.mandatory),
            )?;
            println!(
                "REDUCTION vars={} clauses={} vertices={} edges={} mandatory={} target={}",
                red.num_vars,
                red.num_clauses,
                red.graph.n(),
                red.graph.m(),
                red.mandatory.len(),
                red.target()
            );
            Ok(Outcome::Pass)
        }
        Command::Roundtrip { formula, budget } => {
            let f = CnfFormula::parse_dimacs(&fs::read_to_string(formula)?)?;
            let cfg = search_config(&budget, None);
            let rep = roundtrip_check(&f, &cfg)?;
            println!(
                "ROUNDTRIP {} sat={} optimum={} target={} nodes={}",
                if rep.consistent { "ok" } else { "MISMATCH" },
                rep.satisfiable,
                rep.optimum_within_target
                    .map_or("none".into(), |x| x.to_string()),
                rep.target,
                rep.nodes
            );
            Ok(if rep.consistent { Outcome::Pass } else { Outcome::Negative })
        }
        Command::GridCertify { pattern } => {
            let p = PeriodicPattern::parse(&fs::read_to_string(pattern)?)?;
            let cert = certify_pattern(&p)?;
            if cert.ok {
                println!(
                    "OK density {} torus {}x{}",
                    cert.density, cert.window_dims.0, cert.window_dims.1
                );
                Ok(Outcome::Pass)
            } else {
                println!(
                    "FAIL density {} torus {}x{}",
                    cert.density, cert.window_dims.0, cert.window_dims.1
                );
                println!("{}", cert.verdict.report());
                Ok(Outcome::Negative)
            }
        }
        Command::GridSearch { lattice, max_rows, max_cols } => {
            let lattice = LatticeKind::parse(&lattice)
                .ok_or_else(|| CliError(format!("unknown lattice {lattice:?}")))?;
            match search_min_pattern(lattice, (max_rows, max_cols)) {
                Some((p, cert)) => {
                    println!(
                        "FOUND {} density {} cell {}x{} torus {}x{}",
                        lattice.name(),
                        cert.density,
                        p.rows,
                        p.cols,
                        cert.window_dims.0,
                        cert.window_dims.1
                    );
                    print!("{}", p.serialize());
                    Ok(Outcome::Pass)
                }
                None => {
                    println!("NONE {}", lattice.name());
                    Ok(Outcome::Negative)
                }
            }
        }
        Command::Simulate { graph, set, intruder, fault } => {
            let g = load_graph(&graph.graph)?;
            let s = load_set(&set.set, g.n())?;
            let intruder = match intruder.as_str() {
                "none" | "NONE" | "-" => None,
                v => Some(v.parse::<usize>().map_err(CliError::from)?),
            };
            let fault = match fault {
                None => None,
                Some(spec) => {
                    let (d, sym) = spec
                        .split_once(':')
                        .ok_or_else(|| CliError("fault must be detector:symbol".into()))?;
                    Some((
                        d.parse::<usize>().map_err(CliError::from)?,
                        sym.parse::<u8>().map_err(CliError::from)?,
                    ))
                }
            };
            let sc = Scenario { intruder, fault };
            let tv = simulate(&g, &s, &sc)?;
            print_vector(&tv);
            println!("consistency: {}", decode_consistency(&g, &s, &tv)?);
            println!("elimination: {}", decode_elimination(&g, &s, &tv)?);
            Ok(Outcome::Pass)
        }
        Command::Sweep { graph, set } => {
            let g = load_graph(&graph.graph)?;
            let s = load_set(&set.set, g.n())?;
            let verdict = verify(&g, &s, Variant::ErrLd);
            if !verdict.ok {
                return Err(CliError(format!(
                    "detector set is not ERR:LD; sweep precondition failed:\n{}",
                    verdict.report()
                )));
            }
            let rep = exhaustive_sweep(&g, &s);
            println!(
                "scenarios={} correct={} disagreements={}",
                rep.scenarios, rep.correct, rep.disagreements
            );
            for f in &rep.failures {
                println!("{f}");
            }
            Ok(if rep.all_correct() { Outcome::Pass } else { Outcome::Negative })
        }
        Command::ExportDot { graph, set, out } => {
            let g = load_graph(&graph.graph)?;
            let s = match set {
                Some(path) => Some(load_set(&path, g.n())?),
                None => None,
            };
            let dot = io::to_dot(&g, s.as_ref());
            match out {
                Some(path) => fs::write(path, dot)?,
                None => print!("{dot}"),
            }
            Ok(Outcome::Pass)
        }
        Command::MakeTorus { lattice, rows, cols, out } => {
            let lattice = LatticeKind::parse(&lattice)
                .ok_or_else(|| CliError(format!("unknown lattice {lattice:?}")))?;
            let g = make_torus(lattice, rows, cols)?;
            let text = io::write_edge_list(&g);
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(Outcome::Pass)
        }
    }
}

fn print_vector(tv: &TransmissionVector) {
    for (d, sym) in tv.detectors.iter().zip(&tv.symbols) {
        println!("{d}:{sym}");
    }
}
