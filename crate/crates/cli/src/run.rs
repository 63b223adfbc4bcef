//! Subcommand orchestration.

use qwkb::{
    analytic_phase, closed_form_energy, exact_spectrum, field_from_density, find_turning_points,
    phase_integral, quadrupole_coupling, solve_level, wkb_wavefunction, ChargeDensityProfile,
    EffectivePotential, OracleConfig, QuadrupoleTensor,
};
use rayon::prelude::*;

use crate::config::{PotentialArg, RunConfig};
use crate::report::{SpectrumRow, Table};
use crate::CliError;

fn relative(a: f64, reference: f64) -> f64 {
    (a - reference) / reference.abs()
}

fn with_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(work))
}

/// One row per `n`; each requested method is computed independently.
pub fn run_spectrum(config: &RunConfig) -> Result<Vec<SpectrumRow>, CliError> {
    let problem = config.problem;
    let methods = config.methods;
    if methods.closed_form {
        if config.l != 0 {
            return Err(CliError::Usage(
                "closed-form spectra exist only for s waves (--l 0)".into(),
            ));
        }
        if config.potential == PotentialArg::Power {
            return Err(CliError::Usage(
                "closed-form spectra need linear, cubic or log potentials".into(),
            ));
        }
        if problem.centrifugal_coefficient() != 0.0 {
            return Err(CliError::Usage(
                "closed-form spectra assume --langer on".into(),
            ));
        }
    }

    let oracle = if methods.oracle {
        let cfg = OracleConfig::default().with_levels(config.n_max as usize);
        Some(exact_spectrum(&problem, &cfg)?)
    } else {
        None
    };
    let variant = config.log_variant();
    let params = problem.params;

    let rows: Vec<Result<SpectrumRow, CliError>> = with_pool(config.jobs, || {
        (config.n_min..=config.n_max)
            .into_par_iter()
            .map(|n| {
                let wkb = if methods.wkb {
                    Some(solve_level(&problem, n)?)
                } else {
                    None
                };
                let closed = if methods.closed_form {
                    Some(closed_form_energy(&problem, n, variant)?)
                } else {
                    None
                };
                let oracle_e = oracle.as_ref().map(|o| o.eigenvalues[n as usize - 1]);

                let (r1, r2, phase_residual) = match (&wkb, closed.or(oracle_e)) {
                    (Some(level), _) => (
                        level.turning_points.r1,
                        level.turning_points.r2,
                        level.phase_residual,
                    ),
                    (None, Some(e)) => {
                        let ph = phase_integral(&problem, e)?;
                        let target = (f64::from(n) - problem.maslov) * std::f64::consts::PI;
                        (
                            ph.turning_points.r1,
                            ph.turning_points.r2,
                            ((ph.phase - target) / target).abs(),
                        )
                    }
                    (None, None) => unreachable!("method set is never empty"),
                };

                let e_wkb = wkb.map(|w| w.total_energy);
                let e_closed = closed.map(|e| params.axial_shift(e));
                let e_oracle = oracle_e.map(|e| params.axial_shift(e));
                Ok(SpectrumRow {
                    n,
                    l: config.l,
                    E_wkb: e_wkb,
                    E_closed: e_closed,
                    E_oracle: e_oracle,
                    r1,
                    r2,
                    rel_err_wkb_vs_oracle: e_wkb.zip(e_oracle).map(|(w, o)| relative(w, o)),
                    rel_err_wkb_vs_closed: e_wkb.zip(e_closed).map(|(w, c)| relative(w, c)),
                    phase_residual,
                })
            })
            .collect()
    })?;

    let mut rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    rows.sort_by_key(|r| (r.l, r.n));
    Ok(rows)
}

pub const PHASE_COLUMNS: [&str; 7] = [
    "E",
    "r1",
    "r2",
    "phase",
    "quadrature_error",
    "evaluations",
    "phase_analytic",
];

pub fn run_phase(config: &RunConfig) -> Result<Table, CliError> {
    if config.energies.is_empty() {
        return Err(CliError::Usage("--energy needs at least one value".into()));
    }
    let problem = config.problem;
    let mut table = Table::new(PHASE_COLUMNS.to_vec());
    for &e in &config.energies {
        let ph = phase_integral(&problem, e)?;
        let analytic = if problem.centrifugal_coefficient() == 0.0 {
            analytic_phase(&problem.potential, &problem.params, e).ok()
        } else {
            None
        };
        table.push(vec![
            Some(e),
            Some(ph.turning_points.r1),
            Some(ph.turning_points.r2),
            Some(ph.phase),
            Some(ph.quadrature_error),
            Some(ph.evaluations as f64),
            analytic,
        ]);
    }
    Ok(table)
}

pub const WAVEFUNCTION_COLUMNS: [&str; 5] = ["r", "phase", "u", "R", "valid"];

pub fn run_wavefunction(config: &RunConfig) -> Result<Table, CliError> {
    let problem = config.problem;
    let level = solve_level(&problem, config.n_min)?;
    let tp = find_turning_points(&problem, level.energy)?;
    let count = config.points;
    let grid: Vec<f64> = (1..=count)
        .map(|i| tp.r1 + tp.width() * i as f64 / (count + 1) as f64)
        .collect();
    let wf = wkb_wavefunction(&problem, level.energy, &grid, config.guard)?;
    let mut table = Table::new(WAVEFUNCTION_COLUMNS.to_vec());
    for s in wf.samples {
        table.push(vec![
            Some(s.r),
            s.phase,
            s.u,
            s.radial,
            Some(if s.is_valid() { 1.0 } else { 0.0 }),
        ]);
    }
    Ok(table)
}

pub const FIELD_COLUMNS: [&str; 5] = ["r", "rho", "E_r", "V_coupled", "V_preset"];

/// Density producing the selected preset through the tensor contraction.
fn density_for(config: &RunConfig) -> Result<ChargeDensityProfile, qwkb::Error> {
    match config.problem.potential {
        EffectivePotential::Linear { q_mu } => {
            ChargeDensityProfile::for_linear_field(q_mu / config.q)
        }
        EffectivePotential::Cubic { q_nu } => {
            ChargeDensityProfile::for_cubic_field(q_nu / config.q)
        }
        EffectivePotential::Logarithmic { q_e0, r0 } => {
            ChargeDensityProfile::logarithmic(q_e0 / config.q, r0)
        }
        EffectivePotential::PowerLaw {
            amplitude,
            exponent,
        } => ChargeDensityProfile::power_law(
            amplitude * (exponent + 2.0) / ((exponent + 1.0) * config.q),
            exponent,
        ),
    }
}

pub fn run_field(config: &RunConfig) -> Result<Table, CliError> {
    let profile = density_for(config).map_err(|e| CliError::Usage(e.to_string()))?;
    let field = field_from_density(profile.clone());
    let tensor =
        QuadrupoleTensor::axial_preset(config.q).map_err(|e| CliError::Usage(e.to_string()))?;
    let coupled = quadrupole_coupling(&tensor, &field)?;
    let preset = config.problem.potential;
    let mut table = Table::new(FIELD_COLUMNS.to_vec());
    let n = config.points;
    for i in 0..n {
        let r = config.r_min + (config.r_max - config.r_min) * i as f64 / (n - 1) as f64;
        table.push(vec![
            Some(r),
            Some(profile.density(r)),
            Some(field.value(r)?),
            Some(coupled.value(r)?),
            Some(preset.value(r)),
        ]);
    }
    Ok(table)
}
