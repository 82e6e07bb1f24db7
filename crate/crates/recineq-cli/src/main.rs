//! Batch verification CLI: run scenarios, list them, or dump the raw
//! constructions.
//!
//! Exit codes: 0 all verdicts pass, 1 a scenario failed, 2 usage or config
//! error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use recineq::pathology::{
    self, block_padding, decode, encode, parse_machine_text, render_machine_text, simulate,
    DEFAULT_SEARCH_CAP,
};
use recineq::{rat, rat_u64, Exact, Nat, Seq, Value};
use recineq_cli::config::Config;
use recineq_cli::scenarios;

#[derive(Parser)]
#[command(
    name = "recineq",
    version,
    about = "Rates and counterexamples for the recursive inequality mu_{n+1} <= mu_n - alpha_n beta_n + gamma_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its report.
    Run {
        /// Scenario name (see `list`).
        scenario: String,
        /// TOML config file with one section per scenario.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory (default: $RECINEQ_OUT or ./reports).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the available scenarios.
    List,
    /// Dump a raw construction to stdout.
    Dump {
        #[command(subcommand)]
        what: DumpWhat,
    },
}

#[derive(Subcommand)]
enum DumpWhat {
    /// Rows (n, s_n, witnessing machine or -1) of the Specker sequence over
    /// a_n = 1/(n+1), encoding v1.
    Specker {
        #[arg(long, default_value_t = 200)]
        count: u64,
    },
    /// Block starts and padded values for s_n = 1/(n+1), alpha = 1/4,
    /// theta = 1.
    Block {
        #[arg(long, default_value_t = 40)]
        horizon: u64,
    },
    /// Run a named demo trajectory and print it as CSV.
    Trajectory {
        /// One of: l1-box-5, quadratic-2, sine-km, accretive-square.
        name: String,
        #[arg(long, default_value_t = 200)]
        horizon: u64,
    },
    /// Decode a machine (decimal code, or a table file via --file), print
    /// its table, its canonical code, and optionally simulate it.
    Machine {
        /// Decimal machine code.
        code: Option<String>,
        /// Textual transition-table file.
        #[arg(long, conflicts_with = "code")]
        file: Option<PathBuf>,
        /// Unary input length to simulate on.
        #[arg(long)]
        input: Option<u64>,
        /// Step budget for the simulation.
        #[arg(long, default_value_t = 1000)]
        budget: u64,
    },
}

fn out_dir(explicit: Option<PathBuf>) -> PathBuf {
    explicit
        .or_else(|| std::env::var_os("RECINEQ_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("reports"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Run {
            scenario,
            config,
            out,
        } => {
            let config = Config::load(config.as_deref())?;
            let out = out_dir(out);
            let report = recineq_cli::run_and_write(&scenario, &config, &out)?;
            let path = out.join(format!("{scenario}.report.txt"));
            println!(
                "{}: {} ({})",
                scenario,
                if report.passed() { "pass" } else { "FAIL" },
                path.display()
            );
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::List => {
            for s in scenarios::registry() {
                println!("{:<20} {}", s.name, s.description);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dump { what } => {
            dump(what)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn dump(what: DumpWhat) -> anyhow::Result<()> {
    match what {
        DumpWhat::Specker { count } => {
            let rows = pathology::specker_rows(
                &Seq::from_fn(|n| Exact::from_integer(1.into()) / rat_u64(n + 1)),
                count,
            )?;
            println!("n,s,witness");
            for (n, s, m) in rows {
                println!("{n},{},{}", s.render(), m.map_or(-1i64, |m| m as i64));
            }
        }
        DumpWhat::Block { horizon } => {
            let s = Seq::from_fn(|n| Exact::from_integer(1.into()) / rat_u64(n + 1));
            let alpha = Seq::constant(rat(1, 4));
            let bc = block_padding(&s, &alpha, &rat(1, 1), horizon, DEFAULT_SEARCH_CAP)?;
            println!("# block starts: {:?}", bc.starts);
            println!("k,beta");
            for (k, b) in bc.beta.iter().enumerate() {
                println!("{k},{}", b.render());
            }
        }
        DumpWhat::Trajectory { name, horizon } => {
            let traj = recineq::descent::run_named_demo(&name, horizon)?;
            print!("{}", traj.to_csv());
        }
        DumpWhat::Machine {
            code,
            file,
            input,
            budget,
        } => {
            let machine = match (code, file) {
                (Some(code), None) => {
                    let n: Nat = code
                        .parse()
                        .map_err(|_| anyhow::anyhow!("machine code must be a decimal natural"))?;
                    decode(&n)
                }
                (None, Some(path)) => parse_machine_text(&std::fs::read_to_string(path)?)?,
                _ => anyhow::bail!("give a decimal code or --file, not both"),
            };
            print!("{}", render_machine_text(&machine));
            println!("# canonical code: {}", encode(&machine));
            if let Some(input) = input {
                match simulate(&machine, input, budget) {
                    pathology::HaltStatus::Halted { step } => {
                        println!("# halts on input {input} at exactly step {step}")
                    }
                    pathology::HaltStatus::Running => {
                        println!("# still running on input {input} after {budget} steps")
                    }
                }
            }
        }
    }
    Ok(())
}
