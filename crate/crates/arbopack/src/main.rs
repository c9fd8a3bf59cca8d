//! Command-line front end: sampling, degree statistics, the packing bound,
//! the exact enumeration, constructive packing, and config-driven sweeps.
//!
//! Exit codes: 0 for success (including a constructed packing), 1 for a
//! refuted packing request, 2 for usage errors, 3 for internal or limit
//! errors (including an inconclusive packing attempt).

use anyhow::Context;
use arbopack::digraph::{format_digraph, read_digraph, write_digraph, Direction};
use arbopack::experiment::{fmt_sig12, ExperimentConfig, SUMMARY_HEADER};
use arbopack::frank::{tau_exact_with_limit, TauCertificate, DEFAULT_VERTEX_LIMIT};
use arbopack::lambda::lambda_of;
use arbopack::pack::{pack, EffortBudget, InfeasibleProof, PackOutcome, UnknownReason};
use arbopack::stats::{delta_star, light_report, DegreeHistogram};
use arbopack::{Digraph, Packing, Scalar, Seed};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(version, about = "Arc-disjoint arborescence packings of digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn probability(s: &str) -> Result<Scalar, String> {
    match s.parse::<Scalar>() {
        Ok(p) if (0.0..=1.0).contains(&p) => Ok(p),
        _ => Err(format!("{s} is not a probability in [0,1]")),
    }
}

fn positive_count(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("{s} is not a positive count")),
    }
}

fn open_unit(s: &str) -> Result<Scalar, String> {
    match s.parse::<Scalar>() {
        Ok(x) if x > 0.0 && x < 1.0 => Ok(x),
        _ => Err(format!("{s} is not inside the open interval (0,1)")),
    }
}

fn positive_scalar(s: &str) -> Result<Scalar, String> {
    match s.parse::<Scalar>() {
        Ok(x) if x > 0.0 => Ok(x),
        _ => Err(format!("{s} is not a positive number")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random digraph and write it in the `n m` arc-list format
    Gen {
        /// Number of vertices
        #[arg(short)]
        n: usize,
        /// Arc probability
        #[arg(short, value_parser = probability)]
        p: Scalar,
        #[arg(long, default_value_t = 0)]
        seed: Seed,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Degree statistics of a digraph file
    Stats {
        file: PathBuf,
        /// Reference density: adds the expected-profile statistic and the
        /// light-vertex census
        #[arg(short, value_parser = probability)]
        p: Option<Scalar>,
        /// Slack for the light-vertex census, in units of p times n
        #[arg(long, default_value_t = 0.05, value_parser = positive_scalar)]
        epsilon: Scalar,
    },
    /// Degree-profile packing bound of a digraph file
    Lambda { file: PathBuf },
    /// Exact packing number by subpartition enumeration (small n only)
    Tau {
        file: PathBuf,
        /// Largest vertex count the enumeration will accept
        #[arg(long, default_value_t = DEFAULT_VERTEX_LIMIT, value_parser = positive_count)]
        limit: usize,
    },
    /// Construct k arc-disjoint spanning arborescences
    Pack {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        /// Greedy restarts before falling back to the exhaustive sweep
        #[arg(long)]
        budget: Option<usize>,
        /// Also write the packing as `n k` plus `tree u v` arc lines
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Invert the minimum-degree shape function F(x) = 1 - x + x log x
    InvertF {
        #[arg(long, value_parser = open_unit)]
        target: Scalar,
    },
    /// Run a sweep described by a config file; prints the summary rows
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn load(file: &PathBuf) -> anyhow::Result<Digraph> {
    read_digraph(file).with_context(|| format!("reading {}", file.display()))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gen { n, p, seed, out } => {
            let d = arbopack::random::sample(n, p, seed)?;
            match out {
                Some(path) => write_digraph(&d, &path)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{}", format_digraph(&d)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats { file, p, epsilon } => {
            let d = load(&file)?;
            if d.duplicates_collapsed() > 0 {
                eprintln!("warning: {} duplicate arcs collapsed", d.duplicates_collapsed());
            }
            print_stats(&d, p, epsilon)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lambda { file } => {
            let d = load(&file)?;
            let r = lambda_of(&d);
            match r.violation {
                Some(v) => println!("lambda={} violating_ell={} lhs={}", r.value, v.ell, v.lhs),
                None => println!("lambda={} degenerate=true", r.value),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tau { file, limit } => {
            let d = load(&file)?;
            match tau_exact_with_limit(&d, limit)? {
                TauCertificate::Bounded { tau, tight, tight_sum } => {
                    println!("tau={tau}");
                    println!("tight_family={tight}");
                    println!("tight_sum={tight_sum}");
                }
                TauCertificate::Unbounded => println!("tau=unbounded"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pack { file, k, budget, out } => {
            let d = load(&file)?;
            let mut effort = EffortBudget::default();
            if let Some(restarts) = budget {
                effort.restarts = restarts;
            }
            match pack(&d, k, &effort) {
                PackOutcome::Packed(packing) => {
                    for (i, tree) in packing.iter().enumerate() {
                        println!("tree {i}: {tree}");
                    }
                    if let Some(path) = out {
                        std::fs::write(&path, format_packing(d.n(), &packing))
                            .with_context(|| format!("writing {}", path.display()))?;
                    }
                    Ok(ExitCode::SUCCESS)
                }
                PackOutcome::Infeasible(proof) => {
                    match proof {
                        InfeasibleProof::DegreeProfile { violation } => println!(
                            "infeasible: degree profile fails at ell={} (lhs={} forced roots \
                             exceed the level)",
                            violation.ell, violation.lhs
                        ),
                        InfeasibleProof::ExhaustedAssignments { assignments_tried, example } => {
                            println!(
                                "infeasible: all {assignments_tried} root assignments refuted; \
                                 example roots={:?} deficient_set={} in_degree={} root_mass={}",
                                example.roots,
                                example.witness.set,
                                example.witness.in_degree,
                                example.witness.root_mass
                            )
                        }
                    }
                    Ok(ExitCode::from(1))
                }
                PackOutcome::Unknown(reason) => {
                    match reason {
                        UnknownReason::AssignmentSpaceTooLarge { assignments, limit } => println!(
                            "unknown: greedy failed and {assignments} assignments exceed the \
                             sweep limit {limit}"
                        ),
                        UnknownReason::GrowthStuck => {
                            println!("unknown: tree growth ran out of safe arcs")
                        }
                    }
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::InvertF { target } => {
            let alpha = arbopack::stats::invert_f(target)?;
            println!("alpha={}", fmt_sig12(alpha));
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment { config } => {
            let config = ExperimentConfig::from_file(&config)
                .with_context(|| format!("loading {}", config.display()))?;
            let out = arbopack::experiment::sweep(&config)?;
            println!("{SUMMARY_HEADER}");
            for row in &out.summary {
                println!("{}", row.to_csv_row());
            }
            eprintln!(
                "wrote {} records to {} and {} summary rows to {}",
                out.records.len(),
                config.records_out.display(),
                out.summary.len(),
                config.summary_out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_stats(d: &Digraph, p: Option<Scalar>, epsilon: Scalar) -> anyhow::Result<()> {
    println!("n={} arcs={}", d.n(), d.arc_count());
    println!("delta_in={} delta_out={}", d.min_degree(Direction::In), d.min_degree(Direction::Out));
    let fmt_counts = |dir| {
        let h = DegreeHistogram::from_digraph(d, dir);
        h.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    };
    println!("in_degree_counts={}", fmt_counts(Direction::In));
    println!("out_degree_counts={}", fmt_counts(Direction::Out));
    let Some(p) = p else {
        return Ok(());
    };
    let ds = delta_star(d.n(), p)?;
    println!("delta_star={}{}", ds.value, if ds.degenerate { " degenerate=true" } else { "" });
    if p > 0.0 {
        let r = light_report(d, epsilon, p)?;
        println!("in_light={} threshold={}", r.in_light, fmt_sig12(r.in_threshold));
        println!("out_light={} threshold={}", r.out_light, fmt_sig12(r.out_threshold));
        println!(
            "in_conflicts: adjacent={} shared={} total={}",
            r.adjacent_in_pairs, r.shared_in_neighbor_pairs, r.in_conflict_pairs
        );
        println!(
            "out_conflicts: adjacent={} shared={} total={}",
            r.adjacent_out_pairs, r.shared_out_neighbor_pairs, r.out_conflict_pairs
        );
    }
    Ok(())
}

/// Machine-readable packing: header `n k`, then one `tree u v` line per arc.
fn format_packing(n: usize, packing: &Packing) -> String {
    let mut out = format!("{} {}\n", n, packing.len());
    for (i, tree) in packing.iter().enumerate() {
        for (u, v) in tree.arcs() {
            out.push_str(&format!("{i} {u} {v}\n"));
        }
    }
    out
}
