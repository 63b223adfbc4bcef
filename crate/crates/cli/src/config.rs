//! Command-line flags, `key = value` config files and the validated
//! [`RunConfig`] they produce.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwkb::{EffectivePotential, LogVariant, PhysicalParams, WkbProblem};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "qwkb",
    version,
    about = "WKB spectra for a quadrupolar particle in cylindrical radial fields"
)]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Energy levels from the requested methods, one row per level
    Spectrum(CommonArgs),
    /// Phase integral at the given energies
    Phase(CommonArgs),
    /// WKB radial function of level n_min
    Wavefunction(CommonArgs),
    /// Density, field and coupled potential on a radial grid
    Field(CommonArgs),
    /// Run the verification checks
    Verify(CommonArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Phase(_) => "phase",
            Command::Wavefunction(_) => "wavefunction",
            Command::Field(_) => "field",
            Command::Verify(_) => "verify",
        }
    }

    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Spectrum(a)
            | Command::Phase(a)
            | Command::Wavefunction(a)
            | Command::Field(a)
            | Command::Verify(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialArg {
    Linear,
    Cubic,
    Log,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LogVariantArg {
    Paper,
    Rederived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value = "linear")]
    pub potential: PotentialArg,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub nu: f64,
    #[arg(long = "E0", default_value_t = 1.0)]
    pub e0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub r0: f64,
    /// Power-law amplitude (quadrupole strength included)
    #[arg(long = "A", default_value_t = 0.5)]
    pub a: f64,
    /// Power-law exponent
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long = "Q", default_value_t = 1.0)]
    pub q: f64,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// Radial quantum numbers as `a:b` or a single `n`
    #[arg(long, default_value = "1:5")]
    pub n: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub k: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    /// Comma-separated subset of wkb-numeric, closed-form, oracle, or `all`
    #[arg(long, default_value = "wkb-numeric")]
    pub method: String,
    #[arg(long, default_value_t = 0.5)]
    pub maslov: f64,
    #[arg(long, value_enum, default_value = "on")]
    pub langer: Switch,
    #[arg(long = "log-variant", value_enum)]
    pub log_variant: Option<LogVariantArg>,
    #[arg(long, value_enum, default_value = "csv")]
    pub output: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Comma-separated energies for `phase`
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub energy: String,
    /// Sample count for `wavefunction` and `field`
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[arg(long = "r-min", default_value_t = 0.1)]
    pub r_min: f64,
    #[arg(long = "r-max", default_value_t = 5.0)]
    pub r_max: f64,
    /// Guard band around turning points, as a fraction of r2 − r1
    #[arg(long, default_value_t = 0.01)]
    pub guard: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct MethodSet {
    pub wkb: bool,
    pub closed_form: bool,
    pub oracle: bool,
}

impl MethodSet {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut set = MethodSet::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "wkb-numeric" => set.wkb = true,
                "closed-form" => set.closed_form = true,
                "oracle" => set.oracle = true,
                "all" => {
                    set = MethodSet {
                        wkb: true,
                        closed_form: true,
                        oracle: true,
                    }
                }
                other => return Err(CliError::Usage(format!("unknown method `{other}`"))),
            }
        }
        if set == MethodSet::default() {
            return Err(CliError::Usage("method set is empty".into()));
        }
        Ok(set)
    }
}

pub const N_MAX: u32 = 200;

pub fn parse_n_range(text: &str) -> Result<(u32, u32), CliError> {
    let bad = || {
        CliError::Usage(format!(
            "invalid n-range `{text}`, expected a:b with 1 <= a <= b <= {N_MAX}"
        ))
    };
    let (a, b) = match text.split_once(':') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), text.trim()),
    };
    let a: u32 = a.parse().map_err(|_| bad())?;
    let b: u32 = b.parse().map_err(|_| bad())?;
    if a < 1 || a > b || b > N_MAX {
        return Err(bad());
    }
    Ok((a, b))
}

/// Validated run description; also echoed into JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub potential: PotentialArg,
    pub constants: Vec<(String, f64)>,
    #[serde(rename = "Q")]
    pub q: f64,
    pub hbar: f64,
    pub mass: f64,
    pub k: f64,
    pub n_min: u32,
    pub n_max: u32,
    pub l: u32,
    pub methods: MethodSet,
    pub maslov: f64,
    pub langer: Switch,
    pub log_variant: LogVariantArg,
    #[serde(skip)]
    pub log_variant_explicit: bool,
    pub output: OutputFormat,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: Option<usize>,
    pub energies: Vec<f64>,
    pub points: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub guard: f64,
    #[serde(skip)]
    pub problem: WkbProblem,
}

impl RunConfig {
    pub fn from_command(command: &Command) -> Result<Self, CliError> {
        let a = command.args();
        let (n_min, n_max) = parse_n_range(&a.n)?;
        let methods = MethodSet::parse(&a.method)?;
        if a.maslov != 0.25 && a.maslov != 0.5 {
            return Err(CliError::Usage(format!(
                "--maslov must be 0.25 or 0.5, got {}",
                a.maslov
            )));
        }
        let params = PhysicalParams::new(a.hbar, a.mass)
            .and_then(|p| p.with_axial_wavenumber(a.k))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let (potential, constants) = build_potential(a)?;
        let problem = WkbProblem::new(params, potential, a.l)
            .with_langer(a.langer == Switch::On)
            .with_maslov(a.maslov)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let energies = a
            .energy
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("invalid energy `{s}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if a.points < 2 {
            return Err(CliError::Usage("--points must be at least 2".into()));
        }
        if !(a.r_min > 0.0 && a.r_max > a.r_min) {
            return Err(CliError::Usage("need 0 < --r-min < --r-max".into()));
        }
        if a.jobs == Some(0) {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        Ok(Self {
            subcommand: command.name(),
            potential: a.potential,
            constants,
            q: a.q,
            hbar: a.hbar,
            mass: a.mass,
            k: a.k,
            n_min,
            n_max,
            l: a.l,
            methods,
            maslov: a.maslov,
            langer: a.langer,
            log_variant: a.log_variant.unwrap_or(LogVariantArg::Rederived),
            log_variant_explicit: a.log_variant.is_some(),
            output: a.output,
            out: a.out.clone(),
            jobs: a.jobs,
            energies,
            points: a.points,
            r_min: a.r_min,
            r_max: a.r_max,
            guard: a.guard,
            problem,
        })
    }

    pub fn log_variant(&self) -> LogVariant {
        match self.log_variant {
            LogVariantArg::Paper => LogVariant::Published,
            LogVariantArg::Rederived => LogVariant::Rederived,
        }
    }
}

fn build_potential(a: &CommonArgs) -> Result<(EffectivePotential, Vec<(String, f64)>), CliError> {
    let usage = |e: qwkb::Error| CliError::Usage(e.to_string());
    Ok(match a.potential {
        PotentialArg::Linear => (
            EffectivePotential::linear(a.mu, a.q).map_err(usage)?,
            vec![("mu".into(), a.mu)],
        ),
        PotentialArg::Cubic => (
            EffectivePotential::cubic(a.nu, a.q).map_err(usage)?,
            vec![("nu".into(), a.nu)],
        ),
        PotentialArg::Log => (
            EffectivePotential::logarithmic(a.e0, a.r0, a.q).map_err(usage)?,
            vec![("E0".into(), a.e0), ("r0".into(), a.r0)],
        ),
        PotentialArg::Power => {
            if !(a.q > 0.0) {
                return Err(CliError::Usage("Q must be > 0".into()));
            }
            (
                EffectivePotential::power_law(a.a, a.p).map_err(usage)?,
                vec![("A".into(), a.a), ("p".into(), a.p)],
            )
        }
    })
}

/// Turns a flat `key = value` file into `--key value` tokens.
pub fn config_file_tokens(path: &Path) -> Result<Vec<OsString>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<Vec<OsString>, CliError> {
    let mut tokens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "config line {}: expected `key = value`",
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || key.starts_with('-') {
            return Err(CliError::Usage(format!(
                "config line {}: bad key `{key}`",
                lineno + 1
            )));
        }
        if key == "config" {
            return Err(CliError::Usage(
                "config files cannot include other config files".into(),
            ));
        }
        tokens.push(OsString::from(format!("--{key}")));
        tokens.push(OsString::from(value));
    }
    Ok(tokens)
}

/// Parses argv, folding in `--config` so that flags given on the command
/// line take precedence over the file.
pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    Cli::try_parse_from(&argv)
}

pub fn merge_config(argv: &[OsString], cli: Cli) -> Result<Cli, CliError> {
    let Some(path) = cli.command.args().config.clone() else {
        return Ok(cli);
    };
    let tokens = config_file_tokens(&path)?;
    // argv[0] = program, argv[1] = subcommand
    let mut merged: Vec<OsString> = argv.iter().take(2).cloned().collect();
    merged.extend(tokens);
    merged.extend(argv.iter().skip(2).cloned());
    Cli::try_parse_from(&merged)
        .map_err(|e| CliError::Usage(format!("config {}: {}", path.display(), e.kind())))
}
