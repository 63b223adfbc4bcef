use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use qwkb_cli::config::{merge_config, parse_args, Command, RunConfig};
use qwkb_cli::report::emit_spectrum;
use qwkb_cli::run::{run_field, run_phase, run_spectrum, run_wavefunction};
use qwkb_cli::verify::run_checks;
use qwkb_cli::CliError;

fn output(config: &RunConfig) -> Result<Box<dyn Write>, CliError> {
    Ok(match &config.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn execute(argv: Vec<OsString>) -> Result<(), CliError> {
    let cli = match parse_args(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    let cli = merge_config(&argv, cli)?;
    let config = RunConfig::from_command(&cli.command)?;

    if config.potential == qwkb_cli::config::PotentialArg::Log
        && config.methods.closed_form
        && !config.log_variant_explicit
    {
        eprintln!("note: logarithmic closed form uses the re-derived spectrum (factor 2 inside the logarithm); pass --log-variant paper for the published form");
    }

    match cli.command {
        Command::Spectrum(_) => {
            let rows = run_spectrum(&config)?;
            let mut out = output(&config)?;
            emit_spectrum(&rows, &config, config.output, &mut out)?;
            out.flush()?;
        }
        Command::Phase(_) | Command::Wavefunction(_) | Command::Field(_) => {
            let table = match cli.command {
                Command::Phase(_) => run_phase(&config)?,
                Command::Wavefunction(_) => run_wavefunction(&config)?,
                _ => run_field(&config)?,
            };
            let mut out = output(&config)?;
            table.emit(&config, config.output, &mut out)?;
            out.flush()?;
        }
        Command::Verify(_) => {
            let checks = run_checks();
            let mut out = output(&config)?;
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
            writeln!(
                out,
                "{} of {} checks passed",
                checks.len() - failed.len(),
                checks.len()
            )?;
            out.flush()?;
            if !failed.is_empty() {
                return Err(CliError::Verification(failed.join(", ")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(std::env::args_os().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
