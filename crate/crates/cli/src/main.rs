use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oomid::bench::{
    parse_results_csv, results_csv, run_experiment, score_instance, summarize, summary_csv, GeneratorParams,
    UtilityClass,
};
use oomid::convert::{convert, ConversionConfig};
use oomid::exact::{brute_force_meu_with_guard, solve_exact, POLICY_GUARD};
use oomid::oom_solver::{brute_force_oom_with_guard, elim_oom_id};
use oomid::{DiagramError, InfluenceDiagram, LoadOptions, OomInfluenceDiagram};

#[derive(Parser)]
#[command(name = "oomid", version, about = "Order-of-magnitude influence diagram toolkit")]
struct Cli {
    /// Keep information sets as written instead of adding earlier decisions
    /// and their parents.
    #[arg(long, global = true)]
    no_closure: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum expected utility and one optimal policy of a numeric diagram.
    SolveExact {
        file: PathBuf,
        #[command(flatten)]
        enumerate: Enumerate,
    },
    /// Quantize a numeric diagram and print the order-of-magnitude diagram.
    Convert {
        file: PathBuf,
        #[arg(long, value_parser = epsilon)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order-of-magnitude MEU and the set of optimal policies.
    SolveOom {
        file: PathBuf,
        #[arg(long, value_parser = epsilon, required_unless_present = "oom", conflicts_with = "oom")]
        epsilon: Option<f64>,
        /// The file already holds order-of-magnitude tables.
        #[arg(long)]
        oom: bool,
        #[command(flatten)]
        enumerate: Enumerate,
    },
    /// Policy-quality experiment on random diagrams, as CSV.
    Bench {
        #[arg(long, default_value = "P")]
        class: UtilityClass,
        #[arg(long, value_delimiter = ',', default_values_t = [25, 35, 45])]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_parser = epsilon, default_values_t = [0.5, 0.05, 0.005])]
        epsilons: Vec<f64>,
        #[arg(long, default_value_t = 30)]
        instances: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score sampled optimal order-of-magnitude policies of one diagram.
    Compare {
        file: PathBuf,
        #[arg(long, value_parser = epsilon)]
        epsilon: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a diagram and list every violation.
    Validate {
        file: PathBuf,
        #[arg(long)]
        oom: bool,
    },
    /// Percentiles of eta_med and eta_max from a bench CSV.
    Summarize {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Enumerate {
    /// Enumerate every policy instead of eliminating variables.
    #[arg(long)]
    brute_force: bool,
    /// Largest policy space the enumeration may visit.
    #[arg(long, default_value_t = POLICY_GUARD)]
    guard: f64,
}

fn epsilon(s: &str) -> Result<f64, String> {
    let e: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    ConversionConfig::new(e).map(|c| c.epsilon()).map_err(|err| err.to_string())
}

fn exit_code(e: &DiagramError) -> u8 {
    match e {
        DiagramError::Io(_) => 3,
        DiagramError::GuardExceeded { .. } => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let options = LoadOptions {
        non_forgetting: !cli.no_closure,
    };
    match run(cli.command, options) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(text: String, out: Option<&Path>) -> Result<String, DiagramError> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn run(command: Command, options: LoadOptions) -> Result<String, DiagramError> {
    let mut out = String::new();
    match command {
        Command::SolveExact { file, enumerate } => {
            let d = InfluenceDiagram::load(file, options)?;
            let s = solve_exact(&d)?;
            let meu = if enumerate.brute_force {
                brute_force_meu_with_guard(&d, enumerate.guard)?.meu
            } else {
                s.meu
            };
            let _ = writeln!(out, "MEU = {meu:.6}");
            out.push_str(&s.policy.render(&d));
        }
        Command::Convert { file, epsilon, out: path } => {
            let d = InfluenceDiagram::load(file, options)?;
            let o = convert(&d, &ConversionConfig::new(epsilon)?)?;
            return emit(o.to_json() + "\n", path.as_deref());
        }
        Command::SolveOom {
            file,
            epsilon,
            oom,
            enumerate,
        } => {
            let d = if oom {
                OomInfluenceDiagram::load(file, options)?
            } else {
                let numeric = InfluenceDiagram::load(file, options)?;
                let eps = epsilon.expect("clap requires --epsilon without --oom");
                convert(&numeric, &ConversionConfig::new(eps)?)?
            };
            let (meu, policies) = if enumerate.brute_force {
                let b = brute_force_oom_with_guard(&d, enumerate.guard)?;
                (b.meu, b.policies)
            } else {
                let s = elim_oom_id(&d)?;
                (s.meu, s.policies)
            };
            let _ = writeln!(out, "MEU = {meu}, policies = {}", policies.count());
            out.push_str(&policies.render(&d));
        }
        Command::Bench {
            class,
            n,
            epsilons,
            instances,
            samples,
            seed,
            out: path,
        } => {
            let mut results = Vec::new();
            for size in n {
                let params = GeneratorParams::standard(size, class, seed);
                results.extend(run_experiment(&params, &epsilons, samples, instances, seed)?);
            }
            return emit(results_csv(&results), path.as_deref());
        }
        Command::Compare {
            file,
            epsilon,
            samples,
            seed,
        } => {
            let d = InfluenceDiagram::load(file, options)?;
            let r = score_instance(&d, &[epsilon], samples, seed, 0, UtilityClass::P)?
                .pop()
                .expect("one epsilon");
            let _ = writeln!(out, "v = {:.6}", r.v);
            let _ = writeln!(out, "v_med = {:.6}", r.v_med);
            let _ = writeln!(out, "v_max = {:.6}", r.v_max);
            let _ = writeln!(out, "eta_med = {:.6}", r.eta_med);
            let _ = writeln!(out, "eta_max = {:.6}", r.eta_max);
            let _ = writeln!(out, "policies = {}, sampled = {}", r.policy_count, r.sampled.len());
            if !r.flags.is_empty() {
                let _ = writeln!(out, "flags = {}", r.flags.join(";"));
            }
            for (i, u) in r.sampled.iter().enumerate() {
                let _ = writeln!(out, "sample {}: {u:.6}", i + 1);
            }
        }
        Command::Validate { file, oom } => {
            let problems = if oom {
                OomInfluenceDiagram::load(file, options).map(|d| d.validate())
            } else {
                InfluenceDiagram::load(file, options).map(|d| d.validate())
            };
            let problems = match problems {
                Ok(p) => p,
                Err(DiagramError::Invalid(p)) => p,
                Err(e) => return Err(e),
            };
            if !problems.is_empty() {
                return Err(DiagramError::Invalid(problems));
            }
            out.push_str("valid\n");
        }
        Command::Summarize { file, out: path } => {
            let text = std::fs::read_to_string(file)?;
            let results = parse_results_csv(&text)?;
            return emit(summary_csv(&summarize(&results)), path.as_deref());
        }
    }
    Ok(out)
}
