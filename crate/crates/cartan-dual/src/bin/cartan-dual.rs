//! Thin command-line front end: validate structure files, run the check
//! catalogue, and emit bundled fixtures.
//!
//! Exit codes for `check`: 0 all PASS, 1 any FAIL, 2 any INDETERMINATE
//! (with no FAIL), 3 load or validation error.

use cartan_dual::checks::{run_checks, CheckName};
use cartan_dual::report::{emit_report, Format};
use cartan_dual::spec::load_spec;
use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cartan-dual",
    version,
    about = "Torsion/curvature 2-forms, Hodge duals and duality-constraint checks for Riemann-Cartan structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a structure file and report every violation.
    Validate { spec: PathBuf },
    /// Run checks against a structure file.
    Check {
        spec: PathBuf,
        /// Restrict to a comma-separated subset of the catalogue.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Override the pass tolerance for every check.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// List or emit the bundled fixture structures.
    Fixtures {
        #[arg(long, conflicts_with = "emit")]
        list: bool,
        #[arg(long)]
        emit: Option<String>,
    },
}

#[derive(clap::ValueEnum, Clone, Copy)]
enum OutputFormat {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Validate { spec } => {
            load_spec(&spec).map_err(|e| e.to_string())?;
            println!("ok: {} is a valid structure file", spec.display());
            Ok(0)
        }
        Command::Check {
            spec,
            only,
            format,
            tolerance,
        } => {
            let mut structure = load_spec(&spec).map_err(|e| e.to_string())?;
            if !only.is_empty() {
                let mut selected = Vec::new();
                for name in &only {
                    let check = CheckName::from_str(name).ok_or_else(|| {
                        format!(
                            "unknown check `{name}` (catalogue: {})",
                            CheckName::all()
                                .iter()
                                .map(|c| c.as_str())
                                .collect::<Vec<_>>()
                                .join(", ")
                        )
                    })?;
                    selected.push(check);
                }
                structure.checks = selected;
            }
            if let Some(t) = tolerance {
                if !(t > 0.0) {
                    return Err(format!("tolerance must be positive, got {t}"));
                }
                structure.tolerances.pass_override = Some(t);
            }
            let report = run_checks(&structure).map_err(|e| e.to_string())?;
            let bytes = emit_report(
                &report,
                match format {
                    OutputFormat::Json => Format::Json,
                    OutputFormat::Text => Format::Text,
                },
            );
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| e.to_string())?;
            Ok(report.exit_code() as u8)
        }
        Command::Fixtures { list, emit } => {
            match emit {
                Some(name) => {
                    let text = cartan_dual::fixtures::emit(&name)
                        .ok_or_else(|| format!("no fixture named `{name}`"))?;
                    print!("{text}");
                }
                None => {
                    let _ = list;
                    for name in cartan_dual::fixtures::list() {
                        println!("{name}");
                    }
                }
            }
            Ok(0)
        }
    }
}
