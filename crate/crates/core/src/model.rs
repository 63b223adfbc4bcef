//! Physical constants, the quadrupole tensor, effective radial potentials and
//! the quantization problem record shared by the rest of the crate.
//!
//! Everything here is immutable after construction. Quadrupole strength is
//! folded into the potential constants when a preset is built, so a
//! [`EffectivePotential`] stores products such as `Q·μ` directly.

use crate::error::{ensure_positive, Error, Result};

/// Particle-frame constants. Defaults to reduced units (`ħ = m = 1`, `k = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    hbar: f64,
    mass: f64,
    k: f64,
    energy_unit: f64,
    length_unit: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            k: 0.0,
            energy_unit: 1.0,
            length_unit: 1.0,
        }
    }
}

impl PhysicalParams {
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        Ok(Self {
            hbar: ensure_positive("hbar", hbar)?,
            mass: ensure_positive("mass", mass)?,
            ..Self::default()
        })
    }

    /// Reduced units, `ħ = m = 1`.
    pub fn reduced() -> Self {
        Self::default()
    }

    pub fn with_axial_wavenumber(mut self, k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::invalid("k", "must be finite"));
        }
        self.k = k;
        Ok(self)
    }

    /// Scale factors used to convert between user units and the reduced
    /// units the solvers work in.
    pub fn with_units(mut self, energy_unit: f64, length_unit: f64) -> Result<Self> {
        self.energy_unit = ensure_positive("energy_unit", energy_unit)?;
        self.length_unit = ensure_positive("length_unit", length_unit)?;
        Ok(self)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn energy_unit(&self) -> f64 {
        self.energy_unit
    }

    pub fn length_unit(&self) -> f64 {
        self.length_unit
    }

    pub fn to_reduced_energy(&self, energy: f64) -> f64 {
        energy / self.energy_unit
    }

    pub fn from_reduced_energy(&self, energy: f64) -> f64 {
        energy * self.energy_unit
    }

    pub fn to_reduced_length(&self, length: f64) -> f64 {
        length / self.length_unit
    }

    pub fn from_reduced_length(&self, length: f64) -> f64 {
        length * self.length_unit
    }

    /// `ħ²/m`, the combination that sets every kinetic scale.
    pub(crate) fn kinetic_scale(&self) -> f64 {
        self.hbar * self.hbar / self.mass
    }

    /// Adds the free axial kinetic energy `ħ²k²/2m` to a radial energy.
    pub fn axial_shift(&self, radial_energy: f64) -> f64 {
        radial_energy + self.hbar * self.hbar * self.k * self.k / (2.0 * self.mass)
    }
}

/// Free-function form of [`PhysicalParams::axial_shift`].
pub fn axial_shift(params: &PhysicalParams, radial_energy: f64) -> f64 {
    params.axial_shift(radial_energy)
}

/// Diagonal quadrupole tensor in cylindrical components. Off-diagonal entries
/// are carried only so that unsupported configurations can be rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadrupoleTensor {
    pub q_rr: f64,
    pub q_phiphi: f64,
    pub q_zz: f64,
    /// `(rφ, rz, φz)` components.
    pub off_diagonal: [f64; 3],
}

impl QuadrupoleTensor {
    const TRACE_TOL: f64 = 1e-12;

    pub fn new(q_rr: f64, q_phiphi: f64, q_zz: f64) -> Result<Self> {
        let t = Self {
            q_rr,
            q_phiphi,
            q_zz,
            off_diagonal: [0.0; 3],
        };
        if ![q_rr, q_phiphi, q_zz].iter().all(|c| c.is_finite()) {
            return Err(Error::invalid("quadrupole", "components must be finite"));
        }
        let scale = q_rr.abs().max(q_phiphi.abs()).max(q_zz.abs());
        if t.trace().abs() > Self::TRACE_TOL * scale {
            return Err(Error::invalid(
                "quadrupole",
                format!("tensor must be traceless, trace = {}", t.trace()),
            ));
        }
        Ok(t)
    }

    /// `Q_rr = Q_φφ = −Q`, `Q_zz = 2Q`.
    pub fn axial_preset(q: f64) -> Result<Self> {
        let q = ensure_positive("Q", q)?;
        Ok(Self {
            q_rr: -q,
            q_phiphi: -q,
            q_zz: 2.0 * q,
            off_diagonal: [0.0; 3],
        })
    }

    pub fn zero() -> Self {
        Self {
            q_rr: 0.0,
            q_phiphi: 0.0,
            q_zz: 0.0,
            off_diagonal: [0.0; 3],
        }
    }

    pub fn with_off_diagonal(mut self, off_diagonal: [f64; 3]) -> Self {
        self.off_diagonal = off_diagonal;
        self
    }

    pub fn trace(&self) -> f64 {
        self.q_rr + self.q_phiphi + self.q_zz
    }

    pub fn is_diagonal(&self) -> bool {
        self.off_diagonal.iter().all(|&c| c == 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialKind {
    Linear,
    Cubic,
    Logarithmic,
    PowerLaw,
}

/// Radial effective potential `V(r) = −Q·E` with the quadrupole strength
/// already multiplied in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EffectivePotential {
    /// `Qμ·r`
    Linear { q_mu: f64 },
    /// `Qν·r³`
    Cubic { q_nu: f64 },
    /// `(Q·E0/2)[ln(r/r0) − 1/2]`
    Logarithmic { q_e0: f64, r0: f64 },
    /// `A·r^p`
    PowerLaw { amplitude: f64, exponent: f64 },
}

impl EffectivePotential {
    pub fn linear(mu: f64, q: f64) -> Result<Self> {
        let mu = ensure_positive("mu", mu)?;
        let q = ensure_positive("Q", q)?;
        Ok(Self::Linear { q_mu: q * mu })
    }

    pub fn cubic(nu: f64, q: f64) -> Result<Self> {
        let nu = ensure_positive("nu", nu)?;
        let q = ensure_positive("Q", q)?;
        Ok(Self::Cubic { q_nu: q * nu })
    }

    pub fn logarithmic(e0: f64, r0: f64, q: f64) -> Result<Self> {
        let e0 = ensure_positive("E0", e0)?;
        let r0 = ensure_positive("r0", r0)?;
        let q = ensure_positive("Q", q)?;
        Ok(Self::Logarithmic { q_e0: q * e0, r0 })
    }

    /// `A·r^p`. The exponent must be strictly positive so that the potential
    /// stays strictly increasing.
    pub fn power_law(amplitude: f64, exponent: f64) -> Result<Self> {
        let amplitude = ensure_positive("A", amplitude)?;
        let exponent = ensure_positive("p", exponent)?;
        Ok(Self::PowerLaw {
            amplitude,
            exponent,
        })
    }

    pub fn kind(&self) -> PotentialKind {
        match self {
            Self::Linear { .. } => PotentialKind::Linear,
            Self::Cubic { .. } => PotentialKind::Cubic,
            Self::Logarithmic { .. } => PotentialKind::Logarithmic,
            Self::PowerLaw { .. } => PotentialKind::PowerLaw,
        }
    }

    /// `V(r)`. Returns `−∞` for the logarithmic variant at `r = 0`.
    pub fn value(&self, r: f64) -> f64 {
        match *self {
            Self::Linear { q_mu } => q_mu * r,
            Self::Cubic { q_nu } => q_nu * r * r * r,
            Self::Logarithmic { q_e0, r0 } => 0.5 * q_e0 * ((r / r0).ln() - 0.5),
            Self::PowerLaw {
                amplitude,
                exponent,
            } => amplitude * r.powf(exponent),
        }
    }

    /// Analytic `dV/dr`.
    pub fn derivative(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(r));
        }
        Ok(match *self {
            Self::Linear { q_mu } => q_mu,
            Self::Cubic { q_nu } => 3.0 * q_nu * r * r,
            Self::Logarithmic { q_e0, .. } => 0.5 * q_e0 / r,
            Self::PowerLaw {
                amplitude,
                exponent,
            } => amplitude * exponent * r.powf(exponent - 1.0),
        })
    }

    /// Greatest lower bound of `V` on `r > 0`.
    pub fn infimum(&self) -> f64 {
        match self {
            Self::Logarithmic { .. } => f64::NEG_INFINITY,
            _ => 0.0,
        }
    }

    /// `Ē = E + Q·E0/4` for the logarithmic variant.
    pub fn shifted_energy(&self, energy: f64) -> Option<f64> {
        match *self {
            Self::Logarithmic { q_e0, .. } => Some(energy + 0.25 * q_e0),
            _ => None,
        }
    }

    /// Energy scale set by the potential strength and `ħ²/m`. For `A·r^p`
    /// this is `(ħ²/m)^{p/(p+2)}·A^{2/(p+2)}`.
    pub fn natural_energy(&self, params: &PhysicalParams) -> f64 {
        let kin = params.kinetic_scale();
        let scaled = |a: f64, p: f64| kin.powf(p / (p + 2.0)) * a.powf(2.0 / (p + 2.0));
        match *self {
            Self::Linear { q_mu } => scaled(q_mu, 1.0),
            Self::Cubic { q_nu } => scaled(q_nu, 3.0),
            Self::Logarithmic { q_e0, .. } => 0.5 * q_e0,
            Self::PowerLaw {
                amplitude,
                exponent,
            } => scaled(amplitude, exponent),
        }
    }

    /// Length scale matching [`natural_energy`](Self::natural_energy).
    pub fn natural_length(&self, params: &PhysicalParams) -> f64 {
        let kin = params.kinetic_scale();
        let scaled = |a: f64, p: f64| (kin / a).powf(1.0 / (p + 2.0));
        match *self {
            Self::Linear { q_mu } => scaled(q_mu, 1.0),
            Self::Cubic { q_nu } => scaled(q_nu, 3.0),
            Self::Logarithmic { r0, .. } => r0,
            Self::PowerLaw {
                amplitude,
                exponent,
            } => scaled(amplitude, exponent),
        }
    }
}

/// Builds one of the preset potentials from a kind tag and its constants:
/// `[μ]`, `[ν]`, `[E0, r0]` or `[A, p]`. `Q` multiplies every variant except
/// the power law, whose amplitude already includes it.
pub fn preset_potential(
    kind: PotentialKind,
    constants: &[f64],
    q: f64,
) -> Result<EffectivePotential> {
    let expect = |n: usize| {
        if constants.len() == n {
            Ok(())
        } else {
            Err(Error::invalid(
                "constants",
                format!("{kind:?} takes {n} constant(s), got {}", constants.len()),
            ))
        }
    };
    match kind {
        PotentialKind::Linear => {
            expect(1)?;
            EffectivePotential::linear(constants[0], q)
        }
        PotentialKind::Cubic => {
            expect(1)?;
            EffectivePotential::cubic(constants[0], q)
        }
        PotentialKind::Logarithmic => {
            expect(2)?;
            EffectivePotential::logarithmic(constants[0], constants[1], q)
        }
        PotentialKind::PowerLaw => {
            expect(2)?;
            ensure_positive("Q", q)?;
            EffectivePotential::power_law(constants[0], constants[1])
        }
    }
}

/// A fully specified quantization task.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WkbProblem {
    pub params: PhysicalParams,
    pub potential: EffectivePotential,
    pub l: u32,
    pub langer_modified: bool,
    pub maslov: f64,
}

impl WkbProblem {
    pub const MASLOV_CYLINDRICAL: f64 = 0.5;
    pub const MASLOV_HARD_WALL: f64 = 0.25;

    pub fn new(params: PhysicalParams, potential: EffectivePotential, l: u32) -> Self {
        Self {
            params,
            potential,
            l,
            langer_modified: true,
            maslov: Self::MASLOV_CYLINDRICAL,
        }
    }

    pub fn with_langer(mut self, langer_modified: bool) -> Self {
        self.langer_modified = langer_modified;
        self
    }

    pub fn with_maslov(mut self, maslov: f64) -> Result<Self> {
        if !(maslov > 0.0 && maslov < 1.0) {
            return Err(Error::invalid(
                "maslov",
                format!("must lie in (0, 1), got {maslov}"),
            ));
        }
        self.maslov = maslov;
        Ok(self)
    }

    /// `l²` with the Langer replacement, `l² − 1/4` without it.
    pub fn centrifugal_coefficient(&self) -> f64 {
        let l = f64::from(self.l);
        if self.langer_modified {
            l * l
        } else {
            l * l - 0.25
        }
    }

    /// `V(r) + L·ħ²/(2m r²)`.
    pub fn effective_potential(&self, r: f64) -> f64 {
        let cent = self.centrifugal_coefficient();
        let v = self.potential.value(r);
        if cent == 0.0 {
            v
        } else {
            v + cent * self.params.kinetic_scale() / (2.0 * r * r)
        }
    }
}
