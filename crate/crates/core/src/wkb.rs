//! Semiclassical quantization in the cylindrical radial channel.
//!
//! The local momentum is `q²(r) = 2m[E − V(r)] − L·ħ²/r²` with `L = l²` under
//! the Langer replacement and `L = l² − 1/4` without it. Bound levels satisfy
//! `(1/ħ)∫_{r1}^{r2} q dr = (n − maslov)·π`. For `L = 0` the inner turning
//! point is the origin.
//!
//! The phase integral is evaluated after substituting
//! `r = r1 + (r2 − r1)·sin²θ`, which turns the square-root zeros of `q` at
//! simple turning points into smooth endpoint behaviour.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::closed_form::{closed_form_energy, LogVariant};
use crate::error::{Error, Result};
use crate::model::WkbProblem;
use crate::quadrature::{integrate, AdaptiveOptions};
use crate::roots::{brent, brent_with_values, Tolerance};

/// Relative tolerance for turning points.
pub const TURNING_POINT_RTOL: f64 = 1e-12;
/// Relative tolerance for quantized energies.
pub const ENERGY_RTOL: f64 = 1e-12;
/// Relative tolerance requested from the phase quadrature.
pub const PHASE_RTOL: f64 = 1e-13;
/// Intervals shorter than this are treated as empty.
pub const DEGENERATE_WIDTH: f64 = 1e-14;

const MAX_BRACKET_STEPS: usize = 2100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    pub r1: f64,
    pub r2: f64,
}

impl TurningPoints {
    pub fn width(&self) -> f64 {
        self.r2 - self.r1
    }

    pub fn is_degenerate(&self) -> bool {
        self.r2 <= self.r1 + DEGENERATE_WIDTH
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    /// `(1/ħ)∫ q dr`.
    pub phase: f64,
    pub quadrature_error: f64,
    pub evaluations: usize,
    pub turning_points: TurningPoints,
    pub degenerate: bool,
}

/// `q²(r) = 2m[E − V(r)] − L·ħ²/r²`.
pub fn local_momentum_sq(problem: &WkbProblem, energy: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(r));
    }
    Ok(momentum_sq(problem, energy, r))
}

fn momentum_sq(problem: &WkbProblem, energy: f64, r: f64) -> f64 {
    let p = &problem.params;
    let cent = problem.centrifugal_coefficient();
    let kinetic = 2.0 * p.mass() * (energy - problem.potential.value(r));
    if cent == 0.0 {
        kinetic
    } else {
        kinetic - cent * p.hbar() * p.hbar() / (r * r)
    }
}

/// Locates the classically allowed interval `[r1, r2]` at energy `E`.
pub fn find_turning_points(problem: &WkbProblem, energy: f64) -> Result<TurningPoints> {
    if !energy.is_finite() {
        return Err(Error::invalid(
            "energy",
            format!("must be finite, got {energy}"),
        ));
    }
    let cent = problem.centrifugal_coefficient();
    let length = problem.potential.natural_length(&problem.params);
    let q2 = |r: f64| Ok(momentum_sq(problem, energy, r));
    let tol = Tolerance::relative(TURNING_POINT_RTOL);

    if cent <= 0.0 {
        // q² is positive all the way down to the origin.
        let inf = problem.potential.infimum();
        if cent == 0.0 && energy <= inf {
            if energy == inf {
                return Ok(TurningPoints { r1: 0.0, r2: 0.0 });
            }
            return Err(Error::NoBoundRegion { energy });
        }
        let (lo, hi) = bracket_outer(&q2, length, energy)?;
        let root = brent_with_values(q2, lo, hi, tol)?;
        return Ok(TurningPoints {
            r1: 0.0,
            r2: root.x,
        });
    }

    // L > 0: q² → −∞ at both ends, single maximum where r³·V'(r) = L·ħ²/m.
    let peak = momentum_peak(problem, length)?;
    let q2_peak = momentum_sq(problem, energy, peak);
    if !(q2_peak > 0.0) {
        if q2_peak == 0.0 {
            return Ok(TurningPoints { r1: peak, r2: peak });
        }
        return Err(Error::NoBoundRegion { energy });
    }

    let mut inner = peak;
    let mut inner_val = q2_peak;
    let mut steps = 0;
    while inner_val > 0.0 {
        inner *= 0.5;
        inner_val = momentum_sq(problem, energy, inner);
        steps += 1;
        if steps > MAX_BRACKET_STEPS || inner == 0.0 {
            return Err(Error::Bracketing(format!(
                "inner turning point below r = {inner}"
            )));
        }
    }
    let r1 = brent_with_values(q2, (inner, inner_val), (peak, q2_peak), tol)?.x;

    let mut outer = peak;
    let mut outer_val = q2_peak;
    steps = 0;
    while outer_val > 0.0 {
        outer *= 2.0;
        outer_val = momentum_sq(problem, energy, outer);
        steps += 1;
        if steps > MAX_BRACKET_STEPS || !outer.is_finite() {
            return Err(Error::Bracketing("potential is not confining".into()));
        }
    }
    let r2 = brent_with_values(q2, (peak, q2_peak), (outer, outer_val), tol)?.x;
    Ok(TurningPoints { r1, r2 })
}

/// Bracket for the single sign change of `q²` when `q² > 0` near the origin.
fn bracket_outer<F>(q2: &F, length: f64, energy: f64) -> Result<((f64, f64), (f64, f64))>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut lo = length;
    let mut lo_val = q2(lo)?;
    let mut steps = 0;
    while !(lo_val > 0.0) {
        lo *= 0.5;
        lo_val = q2(lo)?;
        steps += 1;
        if steps > MAX_BRACKET_STEPS || lo == 0.0 {
            return Err(Error::NoBoundRegion { energy });
        }
    }
    let mut hi = lo;
    let mut hi_val = lo_val;
    steps = 0;
    while hi_val > 0.0 {
        lo = hi;
        lo_val = hi_val;
        hi *= 2.0;
        hi_val = q2(hi)?;
        steps += 1;
        if steps > MAX_BRACKET_STEPS || !hi.is_finite() {
            return Err(Error::Bracketing("potential is not confining".into()));
        }
    }
    Ok(((lo, lo_val), (hi, hi_val)))
}

/// Radius of the maximum of `q²` for `L > 0`.
fn momentum_peak(problem: &WkbProblem, length: f64) -> Result<f64> {
    let p = &problem.params;
    let target = problem.centrifugal_coefficient() * p.hbar() * p.hbar() / p.mass();
    let g = |r: f64| -> Result<f64> { Ok(r * r * r * problem.potential.derivative(r)? - target) };
    let mut lo = length;
    let mut steps = 0;
    while g(lo)? > 0.0 {
        lo *= 0.5;
        steps += 1;
        if steps > MAX_BRACKET_STEPS {
            return Err(Error::Bracketing("no centrifugal barrier maximum".into()));
        }
    }
    let mut hi = lo;
    steps = 0;
    while g(hi)? < 0.0 {
        hi *= 2.0;
        steps += 1;
        if steps > MAX_BRACKET_STEPS || !hi.is_finite() {
            return Err(Error::Bracketing("potential is not confining".into()));
        }
    }
    if lo == hi {
        return Ok(lo);
    }
    Ok(brent(g, lo, hi, Tolerance::relative(1e-14))?.x)
}

/// Lowest energy with a non-empty allowed region, `−∞` when unbounded.
fn energy_floor(problem: &WkbProblem) -> Result<f64> {
    let cent = problem.centrifugal_coefficient();
    if cent < 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if cent == 0.0 {
        return Ok(problem.potential.infimum());
    }
    let length = problem.potential.natural_length(&problem.params);
    let peak = momentum_peak(problem, length)?;
    Ok(problem.effective_potential(peak))
}

fn quad_options() -> AdaptiveOptions {
    AdaptiveOptions {
        rel_tol: PHASE_RTOL,
        abs_tol: 0.0,
        max_panels: 4000,
        initial_panels: 4,
    }
}

/// Phase accumulated from `r1` to the point `r1 + width·sin²θ_end`.
fn phase_to_angle(
    problem: &WkbProblem,
    energy: f64,
    tp: &TurningPoints,
    theta_start: f64,
    theta_end: f64,
) -> Result<(f64, f64, usize)> {
    let width = tp.width();
    let hbar = problem.params.hbar();
    let integrand = |theta: f64| {
        let s = theta.sin();
        let r = tp.r1 + width * s * s;
        if !(r > 0.0) {
            return 0.0;
        }
        let q2 = momentum_sq(problem, energy, r);
        if q2 <= 0.0 {
            return 0.0;
        }
        q2.sqrt() * width * (2.0 * theta).sin()
    };
    let res = integrate(integrand, theta_start, theta_end, &quad_options())?;
    Ok((res.value / hbar, res.error / hbar, res.evaluations))
}

/// `Φ(E) = (1/ħ)∫_{r1}^{r2} q dr`.
pub fn phase_integral(problem: &WkbProblem, energy: f64) -> Result<PhaseResult> {
    let cent = problem.centrifugal_coefficient();
    if cent < 0.0 {
        return Err(Error::DivergentPhase { coefficient: cent });
    }
    let tp = find_turning_points(problem, energy)?;
    if tp.is_degenerate() {
        return Ok(PhaseResult {
            phase: 0.0,
            quadrature_error: 0.0,
            evaluations: 0,
            turning_points: tp,
            degenerate: true,
        });
    }
    let (phase, err, evals) = phase_to_angle(problem, energy, &tp, 0.0, FRAC_PI_2)?;
    Ok(PhaseResult {
        phase,
        quadrature_error: err,
        evaluations: evals,
        turning_points: tp,
        degenerate: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSolution {
    pub n: u32,
    /// Radial energy, the root of the quantization condition.
    pub energy: f64,
    /// Radial energy plus the free axial kinetic energy.
    pub total_energy: f64,
    pub turning_points: TurningPoints,
    pub phase: f64,
    /// `|Φ(E) − (n − maslov)π| / ((n − maslov)π)`.
    pub phase_residual: f64,
    pub iterations: usize,
}

/// Solves `Φ(E) = (n − maslov)·π` for the radial energy of level `n`.
pub fn solve_level(problem: &WkbProblem, n: u32) -> Result<LevelSolution> {
    if n < 1 {
        return Err(Error::invalid("n", "radial quantum number starts at 1"));
    }
    let cent = problem.centrifugal_coefficient();
    if cent < 0.0 {
        return Err(Error::DivergentPhase { coefficient: cent });
    }
    let target = (f64::from(n) - problem.maslov) * PI;
    let scale = problem.potential.natural_energy(&problem.params);
    let floor = energy_floor(problem)?;

    let solver_err = |e: Error| Error::Solver {
        n,
        reason: e.to_string(),
    };

    let mismatch = |e: f64| -> Result<f64> {
        if floor.is_finite() && e <= floor {
            return Ok(-target);
        }
        match phase_integral(problem, e) {
            Ok(p) => Ok(p.phase - target),
            Err(Error::NoBoundRegion { .. }) => Ok(-target),
            Err(err) => Err(err),
        }
    };

    let seed = if cent == 0.0 {
        closed_form_energy(problem, n, LogVariant::Rederived).ok()
    } else {
        None
    }
    .unwrap_or_else(|| {
        let base = if floor.is_finite() { floor } else { 0.0 };
        base + scale * (f64::from(n) - problem.maslov + 1.0)
    });

    let mut step = 0.05 * scale.max(seed.abs() - floor.max(0.0).min(seed.abs()));
    if !(step > 0.0) {
        step = scale;
    }

    let mut hi = seed + step;
    let mut f_hi = mismatch(hi).map_err(solver_err)?;
    let mut lo = seed - step;
    if floor.is_finite() && lo <= floor {
        lo = floor;
    }
    let mut f_lo = mismatch(lo).map_err(solver_err)?;

    let mut grow = step;
    let mut steps = 0;
    while f_hi < 0.0 {
        lo = hi;
        f_lo = f_hi;
        grow *= 2.0;
        hi += grow;
        f_hi = mismatch(hi).map_err(solver_err)?;
        steps += 1;
        if steps > 200 {
            return Err(solver_err(Error::Bracketing("upper energy bracket".into())));
        }
    }
    grow = step;
    steps = 0;
    while f_lo > 0.0 {
        hi = lo;
        f_hi = f_lo;
        grow *= 2.0;
        lo -= grow;
        if floor.is_finite() && lo <= floor {
            lo = floor;
        }
        f_lo = mismatch(lo).map_err(solver_err)?;
        steps += 1;
        if steps > 200 {
            return Err(solver_err(Error::Bracketing("lower energy bracket".into())));
        }
    }

    let tol = Tolerance::relative(ENERGY_RTOL).with_abs(1e-14 * scale);
    let root = brent_with_values(mismatch, (lo, f_lo), (hi, f_hi), tol).map_err(solver_err)?;
    let energy = root.x;
    let phase = phase_integral(problem, energy).map_err(solver_err)?;
    Ok(LevelSolution {
        n,
        energy,
        total_energy: problem.params.axial_shift(energy),
        turning_points: phase.turning_points,
        phase: phase.phase,
        phase_residual: ((phase.phase - target) / target).abs(),
        iterations: root.iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionSample {
    pub r: f64,
    /// Accumulated phase `(1/ħ)∫_{r1}^{r} q dr′`, present when valid.
    pub phase: Option<f64>,
    /// `u(r) = 2/√q · cos(phase − π/4)`.
    pub u: Option<f64>,
    /// `R(r) = u(r)/√r`.
    pub radial: Option<f64>,
}

impl WavefunctionSample {
    pub fn is_valid(&self) -> bool {
        self.u.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WkbWavefunction {
    pub energy: f64,
    pub turning_points: TurningPoints,
    pub total_phase: f64,
    /// Distance of `Φ/π + maslov` from the nearest integer; zero for a level
    /// that satisfies the quantization condition.
    pub quantization_defect: f64,
    pub samples: Vec<WavefunctionSample>,
}

pub const DEFAULT_GUARD_FRACTION: f64 = 0.01;

/// Samples the WKB radial function on `grid`. Points outside the allowed
/// region, or within `guard_fraction·(r2 − r1)` of a turning point, come back
/// flagged invalid instead of evaluated.
pub fn wkb_wavefunction(
    problem: &WkbProblem,
    energy: f64,
    grid: &[f64],
    guard_fraction: f64,
) -> Result<WkbWavefunction> {
    if !(0.0..0.5).contains(&guard_fraction) {
        return Err(Error::invalid("guard_fraction", "must lie in [0, 0.5)"));
    }
    let total = phase_integral(problem, energy)?;
    let tp = total.turning_points;
    let cycles = total.phase / PI + problem.maslov;
    let quantization_defect = (cycles - cycles.round()).abs();

    let guard = guard_fraction * tp.width();
    let lo = tp.r1 + guard;
    let hi = tp.r2 - guard;

    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid[a].total_cmp(&grid[b]));

    let mut samples: Vec<WavefunctionSample> = grid
        .iter()
        .map(|&r| WavefunctionSample {
            r,
            phase: None,
            u: None,
            radial: None,
        })
        .collect();

    let mut theta_prev = 0.0;
    let mut phase_acc = 0.0;
    for idx in order {
        let r = grid[idx];
        if tp.is_degenerate() || !(r > lo && r < hi) {
            continue;
        }
        let q2 = momentum_sq(problem, energy, r);
        if !(q2 > 0.0) {
            continue;
        }
        let theta = ((r - tp.r1) / tp.width()).sqrt().clamp(0.0, 1.0).asin();
        let (dphi, _, _) = phase_to_angle(problem, energy, &tp, theta_prev, theta)?;
        phase_acc += dphi;
        theta_prev = theta;
        let q = q2.sqrt();
        let u = 2.0 / q.sqrt() * (phase_acc - FRAC_PI_4).cos();
        samples[idx] = WavefunctionSample {
            r,
            phase: Some(phase_acc),
            u: Some(u),
            radial: Some(u / r.sqrt()),
        };
    }

    Ok(WkbWavefunction {
        energy,
        turning_points: tp,
        total_phase: total.phase,
        quantization_defect,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{analytic_phase, cubic_energy, linear_energy, log_energy};
    use crate::model::{EffectivePotential, PhysicalParams};

    fn reduced(pot: EffectivePotential, l: u32) -> WkbProblem {
        WkbProblem::new(PhysicalParams::reduced(), pot, l)
    }

    fn linear() -> EffectivePotential {
        EffectivePotential::linear(1.0, 1.0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn momentum_examples() {
        let p = reduced(linear(), 0);
        assert_eq!(local_momentum_sq(&p, 1.0, 1.0).unwrap(), 0.0);
        assert_eq!(local_momentum_sq(&p, 1.0, 0.5).unwrap(), 1.0);
        assert!(local_momentum_sq(&p, 1.0, 0.0).is_err());

        let on = reduced(linear(), 1);
        let off = on.with_langer(false);
        for &r in &[0.1, 0.7, 3.0] {
            let d =
                local_momentum_sq(&off, 2.0, r).unwrap() - local_momentum_sq(&on, 2.0, r).unwrap();
            assert!((d - 1.0 / (4.0 * r * r)).abs() < 1e-12 * (1.0 / (r * r)));
        }
    }

    #[test]
    fn turning_point_examples() {
        let tp = find_turning_points(&reduced(linear(), 0), 2.0).unwrap();
        assert_eq!(tp.r1, 0.0);
        assert!(rel(tp.r2, 2.0) < 1e-12);

        let cub = EffectivePotential::cubic(1.0, 1.0).unwrap();
        let tp = find_turning_points(&reduced(cub, 0), 8.0).unwrap();
        assert!(rel(tp.r2, 2.0) < 1e-12);

        let log = EffectivePotential::logarithmic(1.0, 1.0, 1.0).unwrap();
        let tp = find_turning_points(&reduced(log, 0), -0.25).unwrap();
        assert!(rel(tp.r2, 1.0) < 1e-12);
        let tp = find_turning_points(&reduced(log, 0), -40.0).unwrap();
        assert!(rel(tp.r2, (2.0 * (-40.0 + 0.25f64)).exp()) < 1e-11);
    }

    #[test]
    fn turning_points_with_angular_momentum() {
        let p = reduced(linear(), 2);
        let tp = find_turning_points(&p, 5.0).unwrap();
        assert!(tp.r1 > 0.0 && tp.r2 > tp.r1);
        assert!(local_momentum_sq(&p, 5.0, tp.r1).unwrap().abs() < 1e-9);
        assert!(local_momentum_sq(&p, 5.0, tp.r2).unwrap().abs() < 1e-9);
        for i in 1..100 {
            let r = tp.r1 + tp.width() * f64::from(i) / 100.0;
            assert!(local_momentum_sq(&p, 5.0, r).unwrap() > 0.0);
        }
    }

    #[test]
    fn no_bound_region() {
        assert!(matches!(
            find_turning_points(&reduced(linear(), 0), -1.0),
            Err(Error::NoBoundRegion { .. })
        ));
        // barrier minimum of r + 1/(2r²) is 1.5 at r = 1
        assert!(matches!(
            find_turning_points(&reduced(linear(), 1), 1.4),
            Err(Error::NoBoundRegion { .. })
        ));
    }

    #[test]
    fn phase_examples() {
        let p = reduced(linear(), 0);
        let ph = phase_integral(&p, 1.0).unwrap();
        assert!(rel(ph.phase, 2.0 * 2f64.sqrt() / 3.0) < 1e-12);
        assert!(ph.quadrature_error < 1e-10 * ph.phase);
        let ph = phase_integral(&p, 0.0).unwrap();
        assert_eq!(ph.phase, 0.0);
        assert!(ph.degenerate);

        let log = EffectivePotential::logarithmic(1.0, 1.0, 1.0).unwrap();
        let pl = reduced(log, 0);
        for &e in &[-2.0, 0.0, 0.5, 3.0] {
            let num = phase_integral(&pl, e).unwrap().phase;
            let exact = analytic_phase(&log, &pl.params, e).unwrap();
            assert!(rel(num, exact) < 1e-9, "E = {e}: {num} vs {exact}");
        }
    }

    #[test]
    fn phase_diverges_without_langer_for_s_waves() {
        let p = reduced(linear(), 0).with_langer(false);
        assert!(matches!(
            phase_integral(&p, 1.0),
            Err(Error::DivergentPhase { .. })
        ));
        assert!(matches!(
            solve_level(&p, 1),
            Err(Error::DivergentPhase { .. })
        ));
    }

    #[test]
    fn solve_level_examples() {
        let p = reduced(linear(), 0);
        let lvl = solve_level(&p, 1).unwrap();
        assert!(rel(lvl.energy, 1.405_391_833_200_954_5) < 1e-10);
        for n in 1..=10 {
            let lvl = solve_level(&p, n).unwrap();
            let target = (f64::from(n) - 0.5) * PI;
            let phase = phase_integral(&p, lvl.energy).unwrap().phase;
            assert!(rel(phase, target) < 1e-9);
            assert!(lvl.phase_residual < 1e-9);
        }
        let cub = reduced(EffectivePotential::cubic(1.0, 1.0).unwrap(), 0);
        let ratio = solve_level(&cub, 2).unwrap().energy / solve_level(&cub, 1).unwrap().energy;
        assert!(rel(ratio, 3f64.powf(1.2)) < 1e-9);
        assert!(solve_level(&p, 0).is_err());
    }

    #[test]
    fn solve_level_matches_closed_forms() {
        let params = PhysicalParams::new(0.8, 1.7).unwrap();
        let lin = WkbProblem::new(params, EffectivePotential::linear(1.2, 0.9).unwrap(), 0);
        let cub = WkbProblem::new(params, EffectivePotential::cubic(0.5, 2.0).unwrap(), 0);
        let log = WkbProblem::new(
            params,
            EffectivePotential::logarithmic(1.4, 0.6, 1.1).unwrap(),
            0,
        );
        for n in [1, 4, 13] {
            let e = solve_level(&lin, n).unwrap().energy;
            assert!(rel(e, linear_energy(n, &params, 1.08, 0.5).unwrap()) < 1e-9);
            let e = solve_level(&cub, n).unwrap().energy;
            assert!(rel(e, cubic_energy(n, &params, 1.0, 0.5).unwrap()) < 1e-9);
            let e = solve_level(&log, n).unwrap().energy;
            let exact = log_energy(n, &params, 1.4 * 1.1, 0.6, LogVariant::Rederived, 0.5).unwrap();
            assert!((e - exact).abs() < 1e-9 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn nonzero_l_and_power_law_levels() {
        let p = reduced(linear(), 3);
        let mut prev = f64::NEG_INFINITY;
        for n in 1..=5 {
            let lvl = solve_level(&p, n).unwrap();
            assert!(lvl.energy > prev);
            assert!(lvl.phase_residual < 1e-9);
            assert!(lvl.turning_points.r1 > 0.0);
            prev = lvl.energy;
        }
        // WKB is exact for the harmonic oscillator with the Langer replacement:
        // E = ħω(2n_r + l + 1) with n_r = n − 1 when maslov = 1/2.
        let ho = reduced(EffectivePotential::power_law(0.5, 2.0).unwrap(), 2);
        for n in 1..=4u32 {
            let e = solve_level(&ho, n).unwrap().energy;
            let exact = 2.0 * f64::from(n - 1) + 3.0;
            assert!(rel(e, exact) < 1e-9, "n = {n}: {e}");
        }
    }

    #[test]
    fn langer_off_lowers_energies_for_nonzero_l() {
        for l in 1..4 {
            let on = reduced(linear(), l);
            let off = on.with_langer(false);
            for n in 1..=4 {
                assert!(solve_level(&off, n).unwrap().energy < solve_level(&on, n).unwrap().energy);
            }
        }
    }

    #[test]
    fn axial_shift_enters_total_energy() {
        let params = PhysicalParams::reduced()
            .with_axial_wavenumber(2.0)
            .unwrap();
        let p = WkbProblem::new(params, linear(), 0);
        let lvl = solve_level(&p, 1).unwrap();
        assert!(rel(lvl.energy, 1.405_391_833_200_954_5) < 1e-10);
        assert!((lvl.total_energy - lvl.energy - 2.0).abs() < 1e-14);
    }

    #[test]
    fn wavefunction_limits_and_flags() {
        let p = reduced(linear(), 0);
        let e = solve_level(&p, 3).unwrap().energy;
        let tp = find_turning_points(&p, e).unwrap();
        let grid = [1e-9, tp.r2 * 0.999, tp.r2 * 1.5, -1.0, tp.r2 * 0.5];
        let wf = wkb_wavefunction(&p, e, &grid, 0.0).unwrap();
        assert!(wf.quantization_defect < 1e-9);
        let first = wf.samples[0];
        let q = local_momentum_sq(&p, e, 1e-9).unwrap().sqrt();
        assert!((first.u.unwrap() - 2f64.sqrt() / q.sqrt()).abs() < 1e-6);
        assert!(wf.samples[1].is_valid());
        assert!(!wf.samples[2].is_valid());
        assert!(!wf.samples[3].is_valid());

        let guarded = wkb_wavefunction(&p, e, &grid, DEFAULT_GUARD_FRACTION).unwrap();
        assert!(!guarded.samples[0].is_valid());
        assert!(!guarded.samples[1].is_valid());
        assert!(guarded.samples[4].is_valid());
        let mid = guarded.samples[4];
        assert!((mid.radial.unwrap() - mid.u.unwrap() / mid.r.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn wavefunction_node_count() {
        for pot in [
            linear(),
            EffectivePotential::cubic(1.0, 1.0).unwrap(),
            EffectivePotential::logarithmic(1.0, 1.0, 1.0).unwrap(),
        ] {
            let p = reduced(pot, 0);
            for n in 1..=8 {
                let e = solve_level(&p, n).unwrap().energy;
                let tp = find_turning_points(&p, e).unwrap();
                let grid: Vec<f64> = (1..2000).map(|i| tp.r2 * f64::from(i) / 2000.0).collect();
                let wf = wkb_wavefunction(&p, e, &grid, DEFAULT_GUARD_FRACTION).unwrap();
                let values: Vec<f64> = wf.samples.iter().filter_map(|s| s.u).collect();
                let changes = values
                    .windows(2)
                    .filter(|w| w[0].signum() != w[1].signum())
                    .count();
                assert_eq!(changes as u32, n - 1, "{pot:?}");
            }
        }
    }

    #[test]
    fn wavefunction_reports_unquantized_energy() {
        let p = reduced(linear(), 0);
        let wf = wkb_wavefunction(&p, 1.0, &[0.5], 0.01).unwrap();
        assert!(wf.quantization_defect > 0.1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn phase_strictly_increasing(a in 0.05f64..20.0, d in 1e-3f64..5.0, l in 0u32..3) {
                for pot in [
                    linear(),
                    EffectivePotential::cubic(1.0, 1.0).unwrap(),
                    EffectivePotential::logarithmic(1.0, 1.0, 1.0).unwrap(),
                ] {
                    let p = reduced(pot, l);
                    let lo = phase_integral(&p, a).map(|r| r.phase).unwrap_or(0.0);
                    let hi = match phase_integral(&p, a + d) {
                        Ok(r) => r.phase,
                        Err(Error::NoBoundRegion { .. }) => continue,
                        Err(e) => return Err(TestCaseError::fail(e.to_string())),
                    };
                    prop_assert!(hi > lo, "{pot:?} l={l}: {lo} !< {hi}");
                }
            }

            #[test]
            fn linear_scaling_law(n in 1u32..15, q_mu in 0.05f64..20.0) {
                let a = reduced(EffectivePotential::Linear { q_mu }, 0);
                let b = reduced(EffectivePotential::Linear { q_mu: 8.0 * q_mu }, 0);
                let ratio = solve_level(&b, n).unwrap().energy / solve_level(&a, n).unwrap().energy;
                prop_assert!((ratio - 4.0).abs() < 4e-9);
            }
        }
    }
}
