//! Radial fields inside a long charged cylinder and their coupling to the
//! quadrupole tensor.
//!
//! Gauss's law is used with the normalization `E_r(r) = (1/r)∫₀ʳ ρ(s)·s ds`.
//! Under that convention the logarithmic density reproduces its textbook
//! field exactly, while the power-law densities `μ̄·r` and `ν̄·r³` give
//! `(1/2)μr²` and `(1/2)νr⁴` with `μ = 2μ̄/3` and `ν = 2ν̄/5`.

use std::fmt;
use std::sync::Arc;

use crate::error::{ensure_positive, Error, Result};
use crate::model::{EffectivePotential, QuadrupoleTensor};
use crate::quadrature::{integrate, AdaptiveOptions};

pub type DensityFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum ChargeDensityProfile {
    /// `c·r^p`
    PowerLaw { coefficient: f64, exponent: f64 },
    /// `E0·ln(r/r0)`
    Logarithmic { e0: f64, r0: f64 },
    /// Arbitrary density, integrated numerically.
    Custom(DensityFn),
}

impl fmt::Debug for ChargeDensityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PowerLaw {
                coefficient,
                exponent,
            } => f
                .debug_struct("PowerLaw")
                .field("coefficient", coefficient)
                .field("exponent", exponent)
                .finish(),
            Self::Logarithmic { e0, r0 } => f
                .debug_struct("Logarithmic")
                .field("e0", e0)
                .field("r0", r0)
                .finish(),
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl ChargeDensityProfile {
    pub fn power_law(coefficient: f64, exponent: f64) -> Result<Self> {
        let coefficient = ensure_positive("c", coefficient)?;
        if !(exponent >= 0.0) || !exponent.is_finite() {
            return Err(Error::invalid(
                "p",
                format!("must be finite and >= 0, got {exponent}"),
            ));
        }
        Ok(Self::PowerLaw {
            coefficient,
            exponent,
        })
    }

    pub fn logarithmic(e0: f64, r0: f64) -> Result<Self> {
        Ok(Self::Logarithmic {
            e0: ensure_positive("E0", e0)?,
            r0: ensure_positive("r0", r0)?,
        })
    }

    pub fn custom(density: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Custom(Arc::new(density))
    }

    /// `μ̄·r`
    pub fn linear_density(mu_bar: f64) -> Result<Self> {
        Self::power_law(mu_bar, 1.0)
    }

    /// `ν̄·r³`
    pub fn cubic_density(nu_bar: f64) -> Result<Self> {
        Self::power_law(nu_bar, 3.0)
    }

    /// Density whose field is `(1/2)μr²`.
    pub fn for_linear_field(mu: f64) -> Result<Self> {
        Self::power_law(1.5 * mu, 1.0)
    }

    /// Density whose field is `(1/2)νr⁴`.
    pub fn for_cubic_field(nu: f64) -> Result<Self> {
        Self::power_law(2.5 * nu, 3.0)
    }

    pub fn density(&self, r: f64) -> f64 {
        match self {
            Self::PowerLaw {
                coefficient,
                exponent,
            } => coefficient * r.powf(*exponent),
            Self::Logarithmic { e0, r0 } => e0 * (r / r0).ln(),
            Self::Custom(f) => f(r),
        }
    }
}

/// Radial field of a cylinder with the given density profile.
#[derive(Debug, Clone)]
pub struct RadialField {
    profile: ChargeDensityProfile,
}

pub fn field_from_density(profile: ChargeDensityProfile) -> RadialField {
    RadialField { profile }
}

impl RadialField {
    pub fn profile(&self) -> &ChargeDensityProfile {
        &self.profile
    }

    /// `E_r(r)`.
    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(r));
        }
        match &self.profile {
            ChargeDensityProfile::PowerLaw {
                coefficient,
                exponent,
            } => Ok(coefficient * r.powf(exponent + 1.0) / (exponent + 2.0)),
            ChargeDensityProfile::Logarithmic { e0, r0 } => {
                Ok(e0 * r * (0.5 * (r / r0).ln() - 0.25))
            }
            ChargeDensityProfile::Custom(f) => {
                let enclosed = integrate(|s| f(s) * s, 0.0, r, &AdaptiveOptions::default())?;
                Ok(enclosed.value / r)
            }
        }
    }

    /// `dE_r/dr = ρ(r) − E_r(r)/r`, which follows from `d(r·E_r)/dr = r·ρ`.
    pub fn gradient(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(r));
        }
        match &self.profile {
            ChargeDensityProfile::PowerLaw {
                coefficient,
                exponent,
            } => Ok(coefficient * (exponent + 1.0) / (exponent + 2.0) * r.powf(*exponent)),
            ChargeDensityProfile::Logarithmic { e0, r0 } => Ok(e0 * (0.5 * (r / r0).ln() + 0.25)),
            ChargeDensityProfile::Custom(_) => Ok(self.profile.density(r) - self.value(r)? / r),
        }
    }
}

/// Potential produced by contracting a diagonal quadrupole tensor with a
/// radial field, `V(r) = −Q_rr·∂_r E_r`.
#[derive(Debug, Clone)]
pub struct CoupledPotential {
    strength: f64,
    field: RadialField,
}

pub fn quadrupole_coupling(
    tensor: &QuadrupoleTensor,
    field: &RadialField,
) -> Result<CoupledPotential> {
    if !tensor.is_diagonal() {
        return Err(Error::Unsupported(
            "quadrupole coupling needs a diagonal tensor".into(),
        ));
    }
    Ok(CoupledPotential {
        strength: -tensor.q_rr,
        field: field.clone(),
    })
}

impl CoupledPotential {
    /// `−Q_rr`.
    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        if self.strength == 0.0 {
            if !(r > 0.0) {
                return Err(Error::Domain(r));
            }
            return Ok(0.0);
        }
        Ok(self.strength * self.field.gradient(r)?)
    }

    /// Converts to one of the confining effective-potential variants. Only
    /// analytic densities with a positive coupling strength qualify.
    pub fn to_effective(&self) -> Result<EffectivePotential> {
        if !(self.strength > 0.0) {
            return Err(Error::Unsupported(format!(
                "coupling strength −Q_rr = {} does not give a confining potential",
                self.strength
            )));
        }
        let s = self.strength;
        match *self.field.profile() {
            ChargeDensityProfile::PowerLaw {
                coefficient,
                exponent,
            } => {
                let a = s * coefficient * (exponent + 1.0) / (exponent + 2.0);
                if exponent == 1.0 {
                    Ok(EffectivePotential::Linear { q_mu: a })
                } else if exponent == 3.0 {
                    Ok(EffectivePotential::Cubic { q_nu: a })
                } else {
                    EffectivePotential::power_law(a, exponent)
                }
            }
            // (sE0/2)[ln(r/r0) + 1/2] = (sE0/2)[ln(r/(r0/e)) − 1/2]
            ChargeDensityProfile::Logarithmic { e0, r0 } => Ok(EffectivePotential::Logarithmic {
                q_e0: s * e0,
                r0: r0 / std::f64::consts::E,
            }),
            ChargeDensityProfile::Custom(_) => Err(Error::Unsupported(
                "custom densities have no preset potential form".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PotentialKind;

    #[test]
    fn log_field_example() {
        let field = field_from_density(ChargeDensityProfile::logarithmic(1.0, 1.0).unwrap());
        let e = std::f64::consts::E;
        assert!((field.value(e).unwrap() - 0.679_570_457_114_761_3).abs() < 1e-15);
    }

    #[test]
    fn power_law_field_example() {
        let field = field_from_density(ChargeDensityProfile::power_law(3.0, 1.0).unwrap());
        assert!((field.value(2.0).unwrap() - 4.0).abs() < 1e-15);
        for &c in &[0.2, 1.0, 7.0] {
            let field = field_from_density(ChargeDensityProfile::power_law(c, 1.0).unwrap());
            for &r in &[0.1, 1.0, 3.3] {
                let ratio = field.value(2.0 * r).unwrap() / field.value(r).unwrap();
                assert!((ratio - 4.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn power_law_field_vanishes_at_origin() {
        let field = field_from_density(ChargeDensityProfile::cubic_density(2.0).unwrap());
        assert!(field.value(1e-8).unwrap().abs() < 1e-30);
    }

    #[test]
    fn domain_errors() {
        let field = field_from_density(ChargeDensityProfile::linear_density(1.0).unwrap());
        assert_eq!(field.value(0.0), Err(Error::Domain(0.0)));
        assert!(field.gradient(-1.0).is_err());
        assert!(ChargeDensityProfile::power_law(0.0, 1.0).is_err());
        assert!(ChargeDensityProfile::power_law(1.0, -1.0).is_err());
        assert!(ChargeDensityProfile::logarithmic(1.0, 0.0).is_err());
    }

    #[test]
    fn custom_density_matches_analytic() {
        let custom = field_from_density(ChargeDensityProfile::custom(|r| 2.0 * r * r));
        let exact = field_from_density(ChargeDensityProfile::power_law(2.0, 2.0).unwrap());
        for &r in &[0.3, 1.0, 4.0] {
            let (a, b) = (custom.value(r).unwrap(), exact.value(r).unwrap());
            assert!(((a - b) / b).abs() < 1e-12);
            let (a, b) = (custom.gradient(r).unwrap(), exact.gradient(r).unwrap());
            assert!(((a - b) / b).abs() < 1e-11);
        }
    }

    #[test]
    fn coupling_examples() {
        let tensor = QuadrupoleTensor::axial_preset(1.0).unwrap();
        let field = field_from_density(ChargeDensityProfile::for_linear_field(1.0).unwrap());
        let v = quadrupole_coupling(&tensor, &field).unwrap();
        for &r in &[0.5, 1.0, 2.0, 9.0] {
            assert!((v.value(r).unwrap() - r).abs() < 1e-14);
        }

        let zero = quadrupole_coupling(&QuadrupoleTensor::zero(), &field).unwrap();
        assert_eq!(zero.value(3.0).unwrap(), 0.0);
        assert!(zero.to_effective().is_err());

        let cubic = field_from_density(ChargeDensityProfile::for_cubic_field(1.0).unwrap());
        let v = quadrupole_coupling(&tensor, &cubic).unwrap();
        for &r in &[0.5, 1.0, 2.0] {
            assert!((v.value(r).unwrap() - 2.0 * r * r * r).abs() < 1e-13);
        }
        assert_eq!(
            v.to_effective().unwrap(),
            EffectivePotential::Cubic { q_nu: 2.0 }
        );
    }

    #[test]
    fn coupling_linear_matches_preset() {
        let q = 1.7;
        let mu = 0.6;
        let tensor = QuadrupoleTensor::axial_preset(q).unwrap();
        let field = field_from_density(ChargeDensityProfile::for_linear_field(mu).unwrap());
        let coupled = quadrupole_coupling(&tensor, &field).unwrap();
        let preset = crate::model::preset_potential(PotentialKind::Linear, &[mu], q).unwrap();
        for i in 1..50 {
            let r = 0.2 * f64::from(i);
            assert!((coupled.value(r).unwrap() - preset.value(r)).abs() < 1e-13 * preset.value(r));
        }
        let eff = coupled.to_effective().unwrap();
        assert!(
            matches!(eff, EffectivePotential::Linear { q_mu } if (q_mu - q * mu).abs() < 1e-15)
        );
    }

    #[test]
    fn coupling_log_differs_from_preset_by_constant() {
        // −Q_rr ∂_r E_r = (QE0/2)[ln(r/r0) + 1/2], the preset has −1/2.
        let tensor = QuadrupoleTensor::axial_preset(1.0).unwrap();
        let field = field_from_density(ChargeDensityProfile::logarithmic(2.0, 1.5).unwrap());
        let coupled = quadrupole_coupling(&tensor, &field).unwrap();
        let preset = EffectivePotential::logarithmic(2.0, 1.5, 1.0).unwrap();
        let eff = coupled.to_effective().unwrap();
        for &r in &[0.3, 1.0, 5.0] {
            let c = coupled.value(r).unwrap();
            assert!((c - preset.value(r) - 1.0).abs() < 1e-13);
            assert!((c - eff.value(r)).abs() < 1e-13);
        }
    }

    #[test]
    fn coupling_rejects_off_diagonal() {
        let tensor = QuadrupoleTensor::axial_preset(1.0)
            .unwrap()
            .with_off_diagonal([0.1, 0.0, 0.0]);
        let field = field_from_density(ChargeDensityProfile::linear_density(1.0).unwrap());
        assert!(matches!(
            quadrupole_coupling(&tensor, &field),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn gauss_law_round_trip() {
        let profiles = [
            ChargeDensityProfile::linear_density(1.3).unwrap(),
            ChargeDensityProfile::cubic_density(0.4).unwrap(),
            ChargeDensityProfile::logarithmic(1.0, 0.2).unwrap(),
        ];
        for profile in profiles {
            let field = field_from_density(profile.clone());
            for i in 0..=45 {
                let r = 0.5 + 0.1 * f64::from(i);
                let h = 1e-4 * r;
                let flux = |x: f64| x * field.value(x).unwrap();
                let recovered = (flux(r + h) - flux(r - h)) / (2.0 * h) / r;
                let rho = profile.density(r);
                assert!(((recovered - rho) / rho).abs() < 1e-6, "{profile:?} at {r}");
            }
        }
    }
}
