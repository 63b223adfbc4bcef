//! Analytic s-wave spectra and phase integrals for the three preset
//! potentials, plus the gamma function they need.

use std::f64::consts::PI;

use crate::error::{ensure_positive, Error, Result};
use crate::model::{EffectivePotential, PhysicalParams, WkbProblem};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Γ(x)` for `x > 0` (Lanczos, `g = 7`, with reflection below 1/2).
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::invalid("x", format!("gamma needs x > 0, got {x}")));
    }
    Ok(gamma_positive(x))
}

fn gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_positive(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    // split the power so large x does not overflow before the exponential
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * (-t).exp() * half * a
}

/// Which closed form a spectrum comes from. The logarithmic spectrum exists in
/// two forms: the published one and a re-derivation whose logarithm carries an
/// extra factor 2. Only the latter satisfies the quantization condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormVariant {
    Linear,
    Cubic,
    LogPublished,
    LogRederived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LogVariant {
    Published,
    #[default]
    Rederived,
}

impl From<LogVariant> for ClosedFormVariant {
    fn from(v: LogVariant) -> Self {
        match v {
            LogVariant::Published => ClosedFormVariant::LogPublished,
            LogVariant::Rederived => ClosedFormVariant::LogRederived,
        }
    }
}

fn radial_factor(n: u32, maslov: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::invalid("n", "radial quantum number starts at 1"));
    }
    if !(maslov > 0.0 && maslov < 1.0) {
        return Err(Error::invalid(
            "maslov",
            format!("must lie in (0, 1), got {maslov}"),
        ));
    }
    Ok(f64::from(n) - maslov)
}

/// `E = μQ·[9ħ²π²/(8m·μQ)·(n − maslov)²]^{1/3}`.
pub fn linear_energy(n: u32, params: &PhysicalParams, q_mu: f64, maslov: f64) -> Result<f64> {
    let nu = radial_factor(n, maslov)?;
    let q_mu = ensure_positive("q_mu", q_mu)?;
    let hbar = params.hbar();
    let inner = 9.0 * hbar * hbar * PI * PI / (8.0 * params.mass() * q_mu) * nu * nu;
    Ok(q_mu * inner.cbrt())
}

/// `E = [6ħ(n − maslov)·√(π/2m)·(Qν)^{1/3}·Γ(11/6)/Γ(1/3)]^{6/5}`.
pub fn cubic_energy(n: u32, params: &PhysicalParams, q_nu: f64, maslov: f64) -> Result<f64> {
    let nu = radial_factor(n, maslov)?;
    let q_nu = ensure_positive("q_nu", q_nu)?;
    let ratio = gamma_positive(11.0 / 6.0) / gamma_positive(1.0 / 3.0);
    let base = 6.0 * params.hbar() * nu * (PI / (2.0 * params.mass())).sqrt() * q_nu.cbrt() * ratio;
    Ok(base.powf(1.2))
}

/// `E = (QE0/2)·ln[c·(ħ/r0)·√(π/(QE0·m))·(n − maslov)] − QE0/4` with `c = 1`
/// for the published form and `c = 2` for the re-derived one.
pub fn log_energy(
    n: u32,
    params: &PhysicalParams,
    q_e0: f64,
    r0: f64,
    variant: LogVariant,
    maslov: f64,
) -> Result<f64> {
    let nu = radial_factor(n, maslov)?;
    let q_e0 = ensure_positive("q_e0", q_e0)?;
    let r0 = ensure_positive("r0", r0)?;
    let c = match variant {
        LogVariant::Published => 1.0,
        LogVariant::Rederived => 2.0,
    };
    let arg = c * params.hbar() / r0 * (PI / (q_e0 * params.mass())).sqrt() * nu;
    Ok(0.5 * q_e0 * arg.ln() - 0.25 * q_e0)
}

/// Closed-form s-wave energy for a problem's preset potential.
pub fn closed_form_energy(problem: &WkbProblem, n: u32, log_variant: LogVariant) -> Result<f64> {
    if problem.centrifugal_coefficient() != 0.0 {
        return Err(Error::Unsupported(format!(
            "closed forms exist only for s waves with the Langer replacement (l = {}, langer = {})",
            problem.l, problem.langer_modified
        )));
    }
    let p = &problem.params;
    match problem.potential {
        EffectivePotential::Linear { q_mu } => linear_energy(n, p, q_mu, problem.maslov),
        EffectivePotential::Cubic { q_nu } => cubic_energy(n, p, q_nu, problem.maslov),
        EffectivePotential::Logarithmic { q_e0, r0 } => {
            log_energy(n, p, q_e0, r0, log_variant, problem.maslov)
        }
        EffectivePotential::PowerLaw { .. } => Err(Error::Unsupported(
            "no closed-form spectrum for a general power law".into(),
        )),
    }
}

/// Analytic `(1/ħ)∫₀^{r2} q dr` for `l = 0`.
pub fn analytic_phase(
    potential: &EffectivePotential,
    params: &PhysicalParams,
    energy: f64,
) -> Result<f64> {
    let hbar = params.hbar();
    let m = params.mass();
    match *potential {
        EffectivePotential::Linear { q_mu } => {
            if energy < 0.0 {
                return Err(Error::NoBoundRegion { energy });
            }
            let r2 = energy / q_mu;
            Ok(2.0 / (3.0 * hbar) * (2.0 * m * q_mu).sqrt() * r2.powf(1.5))
        }
        EffectivePotential::Cubic { q_nu } => {
            if energy < 0.0 {
                return Err(Error::NoBoundRegion { energy });
            }
            let ratio = gamma_positive(1.0 / 3.0) / gamma_positive(11.0 / 6.0);
            Ok((2.0 * m * PI).sqrt() / (6.0 * hbar)
                * q_nu.cbrt().recip()
                * ratio
                * energy.powf(5.0 / 6.0))
        }
        EffectivePotential::Logarithmic { q_e0, r0 } => {
            let shifted = energy + 0.25 * q_e0;
            let r2 = r0 * (2.0 * shifted / q_e0).exp();
            Ok(r2 / hbar * (m * q_e0).sqrt() * PI.sqrt() / 2.0)
        }
        EffectivePotential::PowerLaw { .. } => Err(Error::Unsupported(
            "no closed-form phase for a general power law".into(),
        )),
    }
}
