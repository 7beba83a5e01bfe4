// Copyright 2026 The klm-prep Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 3 internal invariant breach.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use klm_prep::experiments::{
    format_percent, sweep_ratio, sweep_success, threshold_report, verify, write_ratio_csv,
    write_success_csv,
};
use klm_prep::io::PlanDocument;
use klm_prep::planner::FIDELITY_TOL;
use klm_prep::{plan, KlmSpec, Strategy};

#[derive(Parser)]
#[command(
    name = "klm-prep",
    version,
    about = "Plan and verify KLM ancilla state preparation"
)]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a preparation plan for a target spec file as JSON.
    Plan {
        spec: PathBuf,
        #[arg(long, default_value = "optimal")]
        strategy: Strategy,
    },
    /// Plan, simulate and report fidelity and success against the all-pi baseline.
    Verify {
        spec: PathBuf,
        #[arg(long, default_value = "optimal")]
        strategy: Strategy,
        /// Also print a one-line percentage summary on standard error.
        #[arg(long)]
        summary: bool,
    },
    /// Reachable split ratio and gate success as a function of gate phase (CSV).
    SweepRatio {
        #[arg(long, default_value_t = 0.0)]
        phi_min: f64,
        #[arg(long, default_value_t = PI)]
        phi_max: f64,
        #[arg(long, default_value_t = 1000)]
        points: usize,
    },
    /// Optimal success, phase and signal angle as a function of split ratio (CSV).
    SweepSuccess {
        #[arg(long, default_value_t = 0.01)]
        r_min: f64,
        #[arg(long, default_value_t = 2.0)]
        r_max: f64,
        #[arg(long, default_value_t = 1000)]
        points: usize,
    },
    /// Ratio above which a pi gate beats the smallest feasible phase.
    Threshold,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<klm_prep::KlmError> for Failure {
    fn from(e: klm_prep::KlmError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_spec(path: &Path) -> Result<KlmSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(KlmSpec::from_json(&text)?)
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::Input(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let output = cli.output.as_deref();
    match cli.command {
        Command::Plan { spec, strategy } => {
            let spec = read_spec(&spec)?;
            let p = plan(&spec, strategy)?;
            let mut out = open_output(output)?;
            writeln!(out, "{}", PlanDocument::from(&p).to_json_pretty())?;
            out.flush()?;
        }
        Command::Verify {
            spec,
            strategy,
            summary,
        } => {
            let spec = read_spec(&spec)?;
            let v = verify(&spec, strategy)?;
            if v.fidelity < 1.0 - FIDELITY_TOL {
                return Err(Failure::Internal(format!(
                    "simulated fidelity {} below 1 - {FIDELITY_TOL:e}",
                    v.fidelity
                )));
            }
            let mut out = open_output(output)?;
            let json = serde_json::to_string_pretty(&v.document()).expect("serializes");
            writeln!(out, "{json}")?;
            out.flush()?;
            if summary {
                eprintln!(
                    "{strategy}: success {} vs baseline {} ({:+.0}%)",
                    format_percent(v.total),
                    format_percent(v.baseline),
                    v.improvement_percent
                );
            }
        }
        Command::SweepRatio {
            phi_min,
            phi_max,
            points,
        } => {
            let rows = sweep_ratio(phi_min, phi_max, points)?;
            let mut out = open_output(output)?;
            write_ratio_csv(&rows, &mut out)?;
            out.flush()?;
        }
        Command::SweepSuccess {
            r_min,
            r_max,
            points,
        } => {
            let rows = sweep_success(r_min, r_max, points)?;
            let mut out = open_output(output)?;
            write_success_csv(&rows, &mut out)?;
            out.flush()?;
        }
        Command::Threshold => {
            let mut out = open_output(output)?;
            let json = serde_json::to_string_pretty(&threshold_report()).expect("serializes");
            writeln!(out, "{json}")?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
