//! Command-line driver: every construction and verification as a subcommand
//! with deterministic text or JSON output.
//!
//! Exit codes: 0 on success, 1 on usage/domain/parse errors, 2 when a
//! theorem-backed check fails (a bug sentinel, never a user error).

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hamspec::error::Error;
use hamspec::rainbow::{DEFAULT_CHAIN_BUDGET, DEFAULT_RHO_BUDGET, MAX_RHO_POINTS};
use hamspec::report::Report;
use hamspec::simplex::DEFAULT_SIZE_BUDGET;
use hamspec::{
    erdos_turan_sidon, gap_binary, gap_construction, is_rainbow, make_embedding,
    parse_pointset, prefix_rainbow, rainbow_in_large_set, rho_exact, rw_sphere_trace,
    serialize_pointset, verify_thm1, FieldSpec, PointSet,
};

#[derive(Parser)]
#[command(
    name = "hamspec",
    version,
    about = "Hamming distance spectra of finite point sets: constructions, bounds, rainbow search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the q-ary simplex code S_q(m) as a point set
    Simplex {
        /// Field order (a prime power)
        #[arg(long)]
        q: u32,
        /// Code dimension
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on the number of codewords
        #[arg(long, default_value_t = DEFAULT_SIZE_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Build a set in [q]^n spanning exactly k distances (k-fold simplex product)
    FewDistances {
        /// Field order (a prime power)
        #[arg(long)]
        q: u32,
        /// Ambient dimension
        #[arg(long)]
        n: u32,
        /// Number of distances to span
        #[arg(long)]
        k: u32,
        /// Cap on the number of points; larger products are sampled
        #[arg(long, default_value_t = DEFAULT_SIZE_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Embed a point set into binary space, scaling all distances uniformly
    Embed {
        /// Point-set file (stdin when absent)
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Distance spectrum, lower bound, and sphere trace of a point set
    Analyze {
        /// Point-set file (stdin when absent)
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Check whether a set is rainbow, or find its largest rainbow subset
    Rainbow {
        /// Point-set file (stdin when absent)
        #[arg(long)]
        input: Option<PathBuf>,
        /// Run the exact branch-and-bound search for the largest rainbow subset
        #[arg(long)]
        exact: bool,
        /// Node budget for the exact search
        #[arg(long, default_value_t = DEFAULT_RHO_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// The (n+1)-point set spanning n distances with no rainbow triple
    Gap {
        #[arg(long)]
        n: u32,
        /// Emit the binary image under the symbol embedding
        #[arg(long)]
        binary: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Quadratic Sidon set in {1..n} and its prefix-vector rainbow set
    Sidon {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Extract a rainbow subset of a dense binary set via a chain witness
    Pipeline {
        /// Point-set file (stdin when absent)
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of (shift, permutation) samples in the chain search
        #[arg(long, default_value_t = DEFAULT_CHAIN_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
}

/// Failure modes with their process exit codes.
enum Failure {
    /// Bad usage, bad input, infeasible parameters: exit 1.
    User(String),
    /// A theorem-backed check failed: exit 2.
    Sentinel(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed(_) => Failure::Sentinel(e.to_string()),
            other => Failure::User(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outputs, not usage errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::User(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Sentinel(msg)) => {
            eprintln!("theorem violation (implementation bug): {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<PointSet, Failure> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::User(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::User(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    parse_pointset(&text).map_err(|e| Failure::User(e.to_string()))
}

/// Fills the distance/bound/trace section shared by every report. Returns
/// false when a theorem-backed check failed (exit-2 sentinel).
fn fill_analysis(report: &mut Report, s: &PointSet, with_trace: bool) -> Result<bool, Failure> {
    report.q = s.q();
    report.n = s.n() as u64;
    report.size = s.len() as u64;
    let ds = s.distance_set();
    report.distance_set = ds.values().to_vec();
    report.delta_size = ds.len() as u64;
    if s.len() >= 2 {
        let bound = verify_thm1(s).map_err(Failure::from)?;
        report.bound_value = bound.bound_value;
        report.thm1_holds = bound.holds;
        if with_trace && s.q() == 2 {
            let trace = rw_sphere_trace(s).map_err(Failure::from)?;
            if trace.is_tight() {
                report.flags.push("rw_tight".into());
            }
            let ok = bound.holds && trace.rw_holds;
            report.sphere_trace = Some(trace);
            return Ok(ok);
        }
        return Ok(bound.holds);
    }
    // Singletons and empty sets span no distances; the bound is vacuous.
    report.bound_value = 0.0;
    report.thm1_holds = true;
    Ok(true)
}

fn emit(report: &Report, set: Option<&PointSet>, format: OutputFormat) {
    match format {
        OutputFormat::Json => println!("{}", report.to_json()),
        OutputFormat::Text => {
            if let Some(s) = set {
                print!("{}", serialize_pointset(s));
            } else {
                print_text_report(report);
            }
        }
    }
}

fn print_text_report(report: &Report) {
    println!("command: {}", report.command);
    for (name, value) in &report.params {
        println!("{name}: {value}");
    }
    println!("seed: {}", report.seed);
    println!("q: {}", report.q);
    println!("n: {}", report.n);
    println!("size: {}", report.size);
    let ds: Vec<String> = report.distance_set.iter().map(|d| d.to_string()).collect();
    println!("distance_set: {}", ds.join(" "));
    println!("delta_size: {}", report.delta_size);
    println!("bound_value: {:.4}", report.bound_value);
    println!("thm1_holds: {}", report.thm1_holds);
    if let Some(rho) = report.rho {
        println!("rho: {rho}");
    }
    if let Some(chain) = report.chain_size {
        println!("chain_size: {chain}");
    }
    if !report.flags.is_empty() {
        println!("flags: {}", report.flags.join(" "));
    }
}

fn sentinel_gate(ok: bool, report: &Report, context: &str) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        // The report has already been printed; the exit code flags the bug.
        Err(Failure::Sentinel(format!(
            "{context}: a bound that must hold failed (see report flags: {:?})",
            report.flags
        )))
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Simplex {
            q,
            m,
            seed,
            budget,
            output,
        } => {
            let field = FieldSpec::from_order(q).map_err(Failure::from)?;
            let code = hamspec::simplex::generate_simplex_with_budget(&field, m, budget)
                .map_err(Failure::from)?;
            let set = code.to_pointset();
            let mut report = Report {
                command: "simplex".into(),
                params: vec![("q".into(), q as i64), ("m".into(), m as i64)],
                seed,
                ..Default::default()
            };
            let ok = fill_analysis(&mut report, &set, true)?;
            emit(&report, Some(&set), output);
            sentinel_gate(ok, &report, "simplex")
        }
        Command::FewDistances {
            q,
            n,
            k,
            budget,
            seed,
            output,
        } => {
            let field = FieldSpec::from_order(q).map_err(Failure::from)?;
            let fd = hamspec::few_distance_set_with(&field, n, k, budget, seed)
                .map_err(Failure::from)?;
            let mut report = Report {
                command: "few-distances".into(),
                params: vec![
                    ("q".into(), q as i64),
                    ("n".into(), n as i64),
                    ("k".into(), k as i64),
                    ("m".into(), fd.m as i64),
                ],
                seed,
                ..Default::default()
            };
            if !fd.exact {
                report.flags.push("sampled".into());
            }
            let ok = fill_analysis(&mut report, &fd.set, true)?;
            emit(&report, Some(&fd.set), output);
            sentinel_gate(ok, &report, "few-distances")
        }
        Command::Embed {
            input,
            seed,
            output,
        } => {
            let set = read_input(&input)?;
            let embedding = make_embedding(set.q()).map_err(Failure::from)?;
            let image = embedding.embed_set(&set).map_err(Failure::from)?;
            let mut report = Report {
                command: "embed".into(),
                params: vec![
                    ("source_q".into(), set.q() as i64),
                    ("target_q".into(), embedding.target_q() as i64),
                ],
                seed,
                ..Default::default()
            };
            let ok = fill_analysis(&mut report, &image, true)?;
            emit(&report, Some(&image), output);
            sentinel_gate(ok, &report, "embed")
        }
        Command::Analyze {
            input,
            seed,
            output,
        } => {
            let set = read_input(&input)?;
            if set.len() < 2 {
                return Err(Failure::User("analysis needs at least 2 points".into()));
            }
            let mut report = Report {
                command: "analyze".into(),
                seed,
                ..Default::default()
            };
            let ok = fill_analysis(&mut report, &set, true)?;
            emit(&report, None, output);
            sentinel_gate(ok, &report, "analyze")
        }
        Command::Rainbow {
            input,
            exact,
            budget,
            seed,
            output,
        } => {
            let set = read_input(&input)?;
            let mut report = Report {
                command: "rainbow".into(),
                params: vec![("exact".into(), exact as i64)],
                seed,
                ..Default::default()
            };
            let ok = fill_analysis(&mut report, &set, false)?;
            if exact {
                if set.len() > MAX_RHO_POINTS {
                    return Err(Failure::User(format!(
                        "exact search handles at most {MAX_RHO_POINTS} points, got {}",
                        set.len()
                    )));
                }
                let out = rho_exact(&set, budget).map_err(Failure::from)?;
                report.rho = Some(out.witness.size);
                report.rainbow_subset = Some(
                    out.witness
                        .subset
                        .words()
                        .iter()
                        .map(|w| w.symbols())
                        .collect(),
                );
                if !out.exact {
                    report.flags.push("budget_exhausted".into());
                }
            } else {
                let check = is_rainbow(&set);
                report.flags.push(if check.is_rainbow {
                    "is_rainbow".into()
                } else {
                    "not_rainbow".into()
                });
                if check.is_rainbow {
                    report.rainbow_subset =
                        Some(set.words().iter().map(|w| w.symbols()).collect());
                }
            }
            emit(&report, None, output);
            sentinel_gate(ok, &report, "rainbow")
        }
        Command::Gap {
            n,
            binary,
            seed,
            output,
        } => {
            let set = if binary {
                gap_binary(n).map_err(Failure::from)?
            } else {
                gap_construction(n).map_err(Failure::from)?
            };
            let mut report = Report {
                command: "gap".into(),
                params: vec![("n".into(), n as i64), ("binary".into(), binary as i64)],
                seed,
                ..Default::default()
            };
            let ok = fill_analysis(&mut report, &set, binary)?;
            if set.len() <= MAX_RHO_POINTS {
                let out = rho_exact(&set, DEFAULT_RHO_BUDGET).map_err(Failure::from)?;
                report.rho = Some(out.witness.size);
                report.rainbow_subset = Some(
                    out.witness
                        .subset
                        .words()
                        .iter()
                        .map(|w| w.symbols())
                        .collect(),
                );
            } else {
                report.flags.push("rho_skipped".into());
            }
            emit(&report, Some(&set), output);
            sentinel_gate(ok, &report, "gap")
        }
        Command::Sidon { n, seed, output } => {
            let sidon = erdos_turan_sidon(n as u64).map_err(Failure::from)?;
            let rainbow = prefix_rainbow(n).map_err(Failure::from)?;
            let mut report = Report {
                command: "sidon".into(),
                params: vec![("n".into(), n as i64)],
                seed,
                ..Default::default()
            };
            let ok = fill_analysis(&mut report, &rainbow.subset, false)?;
            report.size = sidon.len() as u64;
            report.rainbow_subset = Some(
                rainbow
                    .subset
                    .words()
                    .iter()
                    .map(|w| w.symbols())
                    .collect(),
            );
            match output {
                OutputFormat::Json => emit(&report, None, output),
                OutputFormat::Text => {
                    let elements: Vec<String> =
                        sidon.elements().iter().map(|e| e.to_string()).collect();
                    println!("# sidon n={n} size={}", sidon.len());
                    println!("# B = {}", elements.join(" "));
                    print!("{}", serialize_pointset(&rainbow.subset));
                }
            }
            sentinel_gate(ok, &report, "sidon")
        }
        Command::Pipeline {
            input,
            seed,
            budget,
            output,
        } => {
            let set = read_input(&input)?;
            let outcome = rainbow_in_large_set(&set, seed, budget).map_err(Failure::from)?;
            let mut report = Report {
                command: "pipeline".into(),
                params: vec![("budget".into(), budget as i64)],
                seed,
                ..Default::default()
            };
            // The analysis section describes the extracted rainbow subset.
            let ok = fill_analysis(&mut report, &outcome.report.subset, false)?;
            report.rainbow_subset = Some(
                outcome
                    .report
                    .subset
                    .words()
                    .iter()
                    .map(|w| w.symbols())
                    .collect(),
            );
            report.chain_size = outcome.chain.as_ref().map(|c| c.chain.len() as u64);
            if outcome.below_guarantee {
                report.flags.push("below_guarantee".into());
            }
            emit(&report, None, output);
            sentinel_gate(ok && outcome.report.is_rainbow, &report, "pipeline")
        }
    }
}
