//! Semiclassical bound states of a neutral particle whose electric quadrupole
//! moment couples to the radial field of a non-uniformly charged cylinder.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`]: physical constants, quadrupole tensor, effective potentials
//!   and the quantization problem record.
//! * [`electrostatics`]: fields from charge densities via Gauss's law and the
//!   tensor–field contraction.
//! * [`wkb`]: local momentum, turning points, the phase integral, level
//!   solving and the WKB wavefunction.
//! * [`closed_form`]: analytic s-wave spectra and phase integrals.
//! * [`oracle`]: a finite-difference eigensolver used as an exact reference.
//! * [`quadrature`], [`roots`]: numerical building blocks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed_form;
pub mod electrostatics;
pub mod error;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod roots;
pub mod wkb;

pub use closed_form::{
    analytic_phase, closed_form_energy, cubic_energy, gamma, linear_energy, log_energy,
    ClosedFormVariant, LogVariant,
};
pub use electrostatics::{
    field_from_density, quadrupole_coupling, ChargeDensityProfile, CoupledPotential, RadialField,
};
pub use error::{Error, Result};
pub use model::{
    axial_shift, preset_potential, EffectivePotential, PhysicalParams, PotentialKind,
    QuadrupoleTensor, WkbProblem,
};
pub use oracle::{airy_reference_linear, exact_spectrum, OracleConfig, OracleSpectrum};
pub use wkb::{
    find_turning_points, local_momentum_sq, phase_integral, solve_level, wkb_wavefunction,
    LevelSolution, PhaseResult, TurningPoints, WavefunctionSample, WkbWavefunction,
};
