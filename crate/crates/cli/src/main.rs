//! `wlab`: command line front end for the Weihrauch laboratory crates.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use wlab_catalog::{Catalog, Derivation};
use wlab_constructions::{find, registry, Strength};
use wlab_problems::{check, Coloring, Instance, Solution, Verdict};
use wlab_ramsey::{all_homogeneous, solve_homogeneous_parallel, solve_with, HomSearch, SearchLimits};
use wlab_verifier::{verify_all, verify_reduction, TrialReport, VerifyConfig};

#[derive(Parser)]
#[command(name = "wlab", version, about = "Finite-window Ramsey problems, reductions and the Weihrauch degree catalog")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homogeneous-set search over a JSON colouring.
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Run registered reductions.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Check the contract of one reduction, or of `all`, on seeded trials.
    Verify(VerifyArgs),
    /// Query the degree catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Args)]
struct ColoringInput {
    /// Colouring JSON, bare or as a `coloring` instance.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Requested homogeneous set size.
    #[arg(long)]
    size: usize,
    /// Restrict the colouring to this smaller window first.
    #[arg(long)]
    window: Option<u64>,
}

#[derive(Subcommand)]
enum RamseyCmd {
    /// Print the lexicographically least homogeneous set.
    Solve {
        #[command(flatten)]
        input: ColoringInput,
        /// Maximum number of search nodes.
        #[arg(long)]
        budget: Option<u64>,
        /// Only accept this colour.
        #[arg(long)]
        color: Option<u32>,
        /// Search the first elements in parallel (no budget).
        #[arg(long, conflicts_with_all = ["budget", "color"])]
        parallel: bool,
    },
    /// Print every homogeneous set of the requested size.
    Enumerate {
        #[command(flatten)]
        input: ColoringInput,
        /// Maximum number of search nodes.
        #[arg(long, default_value_t = 1 << 24)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Print the registry.
    List,
    /// Apply the forward map `K` to an instance.
    Run {
        name: String,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Output file; stdout when absent.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Apply the backward map `H` to a target solution.
    Transport {
        name: String,
        #[arg(long, value_name = "FILE")]
        solution: PathBuf,
        /// The source instance; required by weak reductions. When given the
        /// result is also checked against it.
        #[arg(long, value_name = "FILE")]
        instance: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// A registered reduction name, or `all`.
    name: String,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Override the plan's window.
    #[arg(long)]
    window: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report(s) here.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Corrupt every backward answer (mutation sanity run).
    #[arg(long)]
    corrupt: bool,
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Derive a relation such as "RT_{2,2} <=W lim" from the recorded edges.
    Derive {
        query: String,
        /// Catalog JSON to use instead of the shipped data.
        #[arg(long, value_name = "FILE")]
        data: Option<PathBuf>,
    },
    /// Report separations contradicted by derivable positives, and anchorless edges.
    Check {
        #[arg(long, value_name = "FILE")]
        data: Option<PathBuf>,
    },
    /// Print a figure as a DOT graph (fig1, fig2, fig4, fig5).
    Dot {
        figure: String,
        #[arg(long, value_name = "FILE")]
        data: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Ramsey(cmd) => ramsey(cmd),
        Command::Reduce(cmd) => reduce(cmd),
        Command::Verify(args) => verify(args),
        Command::Catalog(cmd) => catalog(cmd),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")?;
            Ok(())
        }
    }
}

/// A colouring file holds either a bare colouring or a `coloring` instance.
fn load_coloring(input: &ColoringInput) -> Result<Coloring> {
    let value: serde_json::Value = serde_json::from_str(&read(&input.input)?)
        .with_context(|| format!("parsing {}", input.input.display()))?;
    let c = match serde_json::from_value::<Instance>(value.clone()) {
        Ok(Instance::Coloring(c)) => c,
        Ok(_) => bail!("{} holds an instance that is not a colouring", input.input.display()),
        Err(_) => serde_json::from_value::<Coloring>(value)
            .with_context(|| format!("{} is not a colouring", input.input.display()))?,
    };
    match input.window {
        Some(w) if w > c.window() => bail!("window {w} exceeds the colouring's window {}", c.window()),
        Some(w) => Ok(c.restrict(w)?),
        None => Ok(c),
    }
}

fn ramsey(cmd: RamseyCmd) -> Result<ExitCode> {
    match cmd {
        RamseyCmd::Solve { input, budget, color, parallel } => {
            let c = load_coloring(&input)?;
            let m = if parallel {
                solve_homogeneous_parallel(&c, input.size)?
            } else {
                let mut q = HomSearch::new(input.size);
                q.color = color;
                q.limits = SearchLimits { max_nodes: budget };
                solve_with(&c, &q)?
            };
            emit(&m, None)?;
        }
        RamseyCmd::Enumerate { input, budget } => {
            let c = load_coloring(&input)?;
            emit(&all_homogeneous(&c, input.size, budget)?, None)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn reduce(cmd: ReduceCmd) -> Result<ExitCode> {
    let lookup = |name: &str| find(name).with_context(|| format!("no reduction named {name:?}; see `wlab reduce list`"));
    match cmd {
        ReduceCmd::List => {
            let mut stdout = std::io::stdout().lock();
            for r in registry() {
                let i = r.info();
                let kind = match i.strength {
                    Strength::Strong => "strong",
                    Strength::Weak => "weak",
                };
                writeln!(
                    stdout,
                    "{:<32} {:<22} {:<4} {:<22} {:<6} {}",
                    i.name,
                    i.source,
                    i.strength.symbol(),
                    i.target,
                    kind,
                    i.anchor
                )?;
            }
        }
        ReduceCmd::Run { name, input, out } => {
            let r = lookup(&name)?;
            let x: Instance = read_json(&input)?;
            r.source_problem(&x)?;
            emit(&r.forward(&x)?, out.as_deref())?;
        }
        ReduceCmd::Transport { name, solution, instance, out } => {
            let r = lookup(&name)?;
            let s: Solution = read_json(&solution)?;
            let x: Option<Instance> = instance.as_deref().map(read_json).transpose()?;
            if r.info().strength == Strength::Weak && x.is_none() {
                bail!("{name} is a weak reduction: pass the source instance with --instance");
            }
            let back = r.backward(x.as_ref(), &s)?;
            emit(&back, out.as_deref())?;
            if let Some(x) = &x {
                let verdict = check(&r.source_problem(x)?, x, &back)?;
                eprintln!("source check: {verdict:?}");
                if matches!(verdict, Verdict::Reject(_)) {
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let cfg = VerifyConfig {
        trials: args.trials,
        window: args.window,
        seed: args.seed,
        corrupt: args.corrupt,
        ..VerifyConfig::default()
    };
    let reports: Vec<TrialReport> =
        if args.name == "all" { verify_all(&cfg)? } else { vec![verify_reduction(&args.name, &cfg)?] };
    let mut stdout = std::io::stdout().lock();
    for r in &reports {
        writeln!(stdout, "{} {}", if r.pass() { "PASS" } else { "FAIL" }, r.summary())?;
        for f in &r.failures {
            writeln!(stdout, "    trial {}: {}", f.trial, f.verdict)?;
        }
    }
    if let Some(path) = &args.report {
        if reports.len() == 1 {
            emit(&reports[0], Some(path))?;
        } else {
            emit(&reports, Some(path))?;
        }
    }
    Ok(if reports.iter().all(TrialReport::pass) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn load_catalog(data: Option<&Path>) -> Result<Catalog> {
    Ok(match data {
        Some(p) => Catalog::from_json(&read(p)?)?,
        None => Catalog::shipped()?,
    })
}

fn catalog(cmd: CatalogCmd) -> Result<ExitCode> {
    let mut stdout = std::io::stdout().lock();
    match cmd {
        CatalogCmd::Derive { query, data } => {
            let d = load_catalog(data.as_deref())?.derive_str(&query)?;
            writeln!(stdout, "{d}")?;
            return Ok(match d {
                Derivation::Derivable(_) => ExitCode::SUCCESS,
                _ => ExitCode::FAILURE,
            });
        }
        CatalogCmd::Check { data } => {
            let cat = load_catalog(data.as_deref())?;
            let conflicts = cat.check_consistency();
            let lint = cat.lint();
            for c in &conflicts {
                writeln!(stdout, "conflict: {} is contradicted by\n{}", c.separation, c.derivation)?;
            }
            for l in &lint {
                writeln!(stdout, "lint: {}: {}", l.edge, l.message)?;
            }
            writeln!(stdout, "{} edges, {} conflicts, {} lint issues", cat.edges().len(), conflicts.len(), lint.len())?;
            if !conflicts.is_empty() || !lint.is_empty() {
                return Ok(ExitCode::FAILURE);
            }
        }
        CatalogCmd::Dot { figure, data } => {
            write!(stdout, "{}", load_catalog(data.as_deref())?.emit_dot(&figure)?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
