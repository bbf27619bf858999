//! Command-line front end.
//!
//! Exit codes: 0 when the answer is true or every check passes, 1 when it is
//! false or a check fails, 2 on usage, parse or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mimicry_core::formula_metric::{logical_distance, logical_distance_upto, state_distance, state_distance_upto};
use mimicry_core::logic::satisfies_state;
use mimicry_core::metrics::{bisimilarity_metric, upto_k_metric};
use mimicry_core::mimicking::{mimicking, mimicking_upto, sim_characteristic, sim_characteristic_upto};
use mimicry_core::relations::{greatest_relation, refine, unmatched_transition, upto_chain};
use mimicry_core::{Discount, ProcessId, Pts, Rational, Relation, RelationKind};

use crate::formula_syntax::parse_formula;
use crate::generator::GeneratorParams;
use crate::pts_format::{format_distribution, parse_pts};
use crate::verify::{default_lambdas, verify_pts, verify_random};

#[derive(Debug, Parser)]
#[command(name = "mimicry", version, about = "Exact bisimulation metrics, mimicking formulae and formula distances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PairArgs {
    /// System description.
    file: PathBuf,
    /// First process.
    s: String,
    /// Second process.
    t: String,
    /// Use the up-to-k relation instead of the greatest one.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide probabilistic bisimilarity.
    Bisim(PairArgs),
    /// Decide whether t simulates s.
    Sim(PairArgs),
    /// Decide whether t ready simulates s.
    Readysim(PairArgs),
    /// Print bisimulation distances.
    Metric {
        file: PathBuf,
        /// Use the up-to-k metric instead of the limit.
        #[arg(long)]
        k: Option<usize>,
        /// Discount factor in (0,1], e.g. `3/4`.
        #[arg(long, default_value = "1")]
        lambda: String,
        /// Only these pairs, written `s,t`.
        #[arg(long, num_args = 1..)]
        pairs: Vec<String>,
    },
    /// Print the mimicking formula of a process.
    Mimic {
        file: PathBuf,
        s: String,
        #[arg(long)]
        k: Option<usize>,
        /// Print the simulation characteristic formula instead.
        #[arg(long)]
        sim_char: bool,
    },
    /// Decide whether a process satisfies a formula.
    Sat {
        file: PathBuf,
        s: String,
        #[arg(long, conflicts_with = "formula_file", required_unless_present = "formula_file")]
        formula: Option<String>,
        #[arg(long)]
        formula_file: Option<PathBuf>,
    },
    /// Distance between two state formulae.
    Fdist {
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long)]
        k: Option<usize>,
        f1: String,
        f2: String,
    },
    /// Distance between the mimicking formulae of two processes.
    Ldist {
        file: PathBuf,
        s: String,
        t: String,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Cross-check every theorem-level invariant.
    Verify {
        /// System to verify; omit with `--random`.
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        file: Option<PathBuf>,
        /// First generator seed.
        #[arg(long, requires = "count")]
        random: Option<u64>,
        /// Number of generated systems.
        #[arg(long)]
        count: Option<u64>,
        /// Single discount factor; defaults to 1, 1/2 and 3/4.
        #[arg(long)]
        lambda: Option<String>,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the system as a Graphviz digraph.
    ExportDot { file: PathBuf },
}

/// Error that maps to exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Runs the tool on `argv` (including the program name), writing results to
/// `out` and diagnostics to `err`; returns the exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn load(path: &Path) -> Result<Pts, Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    parse_pts(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn lambda(text: &str) -> Result<Discount, Usage> {
    let value = parse_rational(text)?;
    Discount::new(value).map_err(|_| Usage(format!("lambda must lie in (0,1], got {text}")))
}

fn parse_rational(text: &str) -> Result<Rational, Usage> {
    text.trim().parse().map_err(|_| Usage(format!("not a rational number: `{text}`")))
}

fn process(pts: &Pts, name: &str) -> Result<ProcessId, Usage> {
    Ok(pts.lookup(name)?)
}

fn run(command: Command, out: &mut dyn Write) -> Result<bool, Usage> {
    match command {
        Command::Bisim(args) => relation(out, args, RelationKind::Bisimulation),
        Command::Sim(args) => relation(out, args, RelationKind::Simulation),
        Command::Readysim(args) => relation(out, args, RelationKind::ReadySimulation),
        Command::Metric { file, k, lambda: l, pairs } => {
            let pts = load(&file)?;
            let lambda = lambda(&l)?;
            let d = match k {
                Some(k) => upto_k_metric(&pts, &lambda, k),
                None => bisimilarity_metric(&pts, &lambda)?,
            };
            let pairs: Vec<(ProcessId, ProcessId)> = if pairs.is_empty() {
                let all: Vec<ProcessId> = pts.processes().collect();
                all.iter()
                    .enumerate()
                    .flat_map(|(i, &s)| all[i + 1..].iter().map(move |&t| (s, t)))
                    .collect()
            } else {
                pairs
                    .iter()
                    .map(|p| {
                        let (s, t) = p.split_once(',').ok_or_else(|| Usage(format!("pair `{p}` is not `s,t`")))?;
                        Ok((process(&pts, s.trim())?, process(&pts, t.trim())?))
                    })
                    .collect::<Result<_, Usage>>()?
            };
            for (s, t) in pairs {
                writeln!(out, "d({}, {}) = {}", pts.name(s), pts.name(t), d.get(s, t))?;
            }
            Ok(true)
        }
        Command::Mimic { file, s, k, sim_char } => {
            let pts = load(&file)?;
            let s = process(&pts, &s)?;
            let phi = match (k, sim_char) {
                (Some(k), false) => mimicking_upto(&pts, s, k)?,
                (None, false) => mimicking(&pts, s)?,
                (Some(k), true) => sim_characteristic_upto(&pts, s, k)?,
                (None, true) => sim_characteristic(&pts, s)?,
            };
            writeln!(out, "{phi}")?;
            Ok(true)
        }
        Command::Sat { file, s, formula, formula_file } => {
            let pts = load(&file)?;
            let name = s;
            let s = process(&pts, &name)?;
            let text = match (formula, formula_file) {
                (Some(f), _) => f,
                (None, Some(path)) => std::fs::read_to_string(&path)
                    .map_err(|e| Usage(format!("{}: {e}", path.display())))?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let phi = parse_formula(text.trim()).map_err(|e| Usage(format!("formula: {e}")))?;
            let holds = satisfies_state(&pts, s, &phi)?;
            writeln!(out, "{name} |= {phi}: {holds}")?;
            Ok(holds)
        }
        Command::Fdist { lambda: l, k, f1, f2 } => {
            let lambda = lambda(&l)?;
            let f1 = parse_formula(&f1).map_err(|e| Usage(format!("first formula: {e}")))?;
            let f2 = parse_formula(&f2).map_err(|e| Usage(format!("second formula: {e}")))?;
            let d = match k {
                Some(k) => state_distance_upto(&lambda, k, &f1, &f2),
                None => state_distance(&lambda, &f1, &f2),
            };
            writeln!(out, "{d}")?;
            Ok(true)
        }
        Command::Ldist { file, s, t, lambda: l, k } => {
            let pts = load(&file)?;
            let lambda = lambda(&l)?;
            let (s, t) = (process(&pts, &s)?, process(&pts, &t)?);
            let d = match k {
                Some(k) => logical_distance_upto(&pts, &lambda, k, s, t)?,
                None => logical_distance(&pts, &lambda, s, t)?,
            };
            writeln!(out, "{d}")?;
            Ok(true)
        }
        Command::Verify { file, random, count, lambda: l, json } => {
            let lambdas = match l {
                Some(l) => vec![lambda(&l)?],
                None => default_lambdas(),
            };
            let report = match (file, random) {
                (Some(file), _) => verify_pts(&load(&file)?, &lambdas),
                (None, Some(seed)) => {
                    let count = count.expect("clap requires --count");
                    verify_random(seed..seed.saturating_add(count), &GeneratorParams::default(), &lambdas)
                }
                (None, None) => unreachable!("clap requires a file or --random"),
            };
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                writeln!(out, "{report}")?;
            }
            Ok(report.passed())
        }
        Command::ExportDot { file } => {
            let pts = load(&file)?;
            write!(out, "{}", crate::dot::to_dot(&pts))?;
            Ok(true)
        }
    }
}

fn relation(out: &mut dyn Write, args: PairArgs, kind: RelationKind) -> Result<bool, Usage> {
    let pts = load(&args.file)?;
    let (s, t) = (process(&pts, &args.s)?, process(&pts, &args.t)?);
    let symbol = match kind {
        RelationKind::Bisimulation => "~",
        RelationKind::Simulation => "<=",
        RelationKind::ReadySimulation => "<=r",
    };
    // `prev` is the relation one refinement step earlier; `refine(prev)`
    // is the answer, so a failing pair has a reason relative to `prev`.
    let (result, prev, subscript) = match args.k {
        Some(0) => (Relation::full(pts.len()), Relation::full(pts.len()), "_0".to_owned()),
        Some(k) => {
            let mut chain = upto_chain(&pts, kind, k);
            let result = chain.pop().expect("k + 1 relations");
            (result, chain.pop().expect("k >= 1"), format!("_{k}"))
        }
        None => {
            let r = greatest_relation(&pts, kind);
            debug_assert_eq!(refine(&pts, &r, kind), r);
            (r.clone(), r, String::new())
        }
    };
    let holds = result.contains(s, t);
    writeln!(out, "{} {symbol}{subscript} {}: {holds}", args.s, args.t)?;
    if !holds {
        writeln!(out, "witness: {}", reason(&pts, &prev, kind, s, t))?;
    }
    Ok(holds)
}

/// Why `(s, t)` drops out of `refine(prev, kind)`.
fn reason(pts: &Pts, prev: &Relation, kind: RelationKind, s: ProcessId, t: ProcessId) -> String {
    let (sn, tn) = (pts.name(s), pts.name(t));
    if let Some((a, pi)) = unmatched_transition(pts, prev, s, t) {
        return format!("{sn} -{a}-> {} has no matching {a}-transition of {tn}", format_distribution(pts, pi));
    }
    if kind == RelationKind::Bisimulation {
        if let Some((a, pi)) = unmatched_transition(pts, &prev.inverse(), t, s) {
            return format!("{tn} -{a}-> {} has no matching {a}-transition of {sn}", format_distribution(pts, pi));
        }
    }
    let refused = pts.alphabet().iter().find(|a| {
        pts.derivatives(s, a).is_ok_and(|d| d.is_empty()) && pts.derivatives(t, a).is_ok_and(|d| !d.is_empty())
    });
    match refused {
        Some(a) => format!("{tn} can perform {a} but {sn} cannot"),
        None => "no single transition explains the failure".into(),
    }
}
