//! `enriques`: run the verification suites from the command line.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::DEFAULT_SEED;
use report::{Format, InputError, RunReport};

#[derive(Parser)]
#[command(name = "enriques", version, about = "Checks for Enriques surfaces with finite automorphism group in characteristic 2")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vinberg's finite-index criterion on a dual graph.
    CheckVinberg {
        graph: String,
        /// Also print the census of maximal parabolic subdiagrams.
        #[arg(long)]
        census: bool,
        #[arg(long, default_value_t = enriques_core::lattice::AMBIENT_RANK)]
        ambient_rank: usize,
    },
    /// Census of maximal parabolic subdiagrams with their fibre types.
    Census { graph: String },
    /// Symmetry group of a dual graph.
    Symmetries { graph: String },
    /// Extremality of fibre configurations; without arguments, every listed fibration.
    Fibrations { configs: Vec<String> },
    /// Conductrix table row for a fibre configuration.
    Conductrix { config: String },
    /// Blow-up invariants of a curve of arithmetic genus 0 or 1.
    BlowupTable {
        pa: u32,
        /// Smallest A.C to enumerate (default -2 for genus 0, 0 for genus 1).
        #[arg(long, allow_hyphen_values = true)]
        ac_min: Option<i32>,
    },
    /// Check a derivation spec file.
    VerifyDerivation { spec: String },
    /// Check an automorphism spec file.
    VerifyAut {
        spec: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of random specializations (default: the count in the spec file).
        #[arg(long)]
        trials: Option<u32>,
    },
    /// Run the whole shipped corpus.
    VerifyAll {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        trials: Option<u32>,
    },
}

fn run(command: Command) -> Result<RunReport, InputError> {
    match command {
        Command::CheckVinberg { graph, census, ambient_rank } => commands::check_vinberg(&graph, census, ambient_rank),
        Command::Census { graph } => commands::census(&graph),
        Command::Symmetries { graph } => commands::symmetries(&graph),
        Command::Fibrations { configs } => commands::fibrations(&configs),
        Command::Conductrix { config } => commands::conductrix(&config),
        Command::BlowupTable { pa, ac_min } => commands::blowup_table(pa, ac_min),
        Command::VerifyDerivation { spec } => commands::verify_derivation(&spec),
        Command::VerifyAut { spec, seed, trials } => commands::verify_aut(&spec, seed, trials),
        Command::VerifyAll { seed, trials } => commands::verify_all(seed, trials),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::from(report.exit_code as u8)
        }
        Err(InputError(msg)) => {
            match cli.format {
                Format::Text => eprintln!("error: {msg}"),
                Format::Structured => {
                    println!("{}", serde_json::json!({ "error": msg, "exit_code": 2 }))
                }
            }
            ExitCode::from(2)
        }
    }
}
