//! Verification checks run by `qwkb verify`.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use qwkb::quadrature::{integrate, AdaptiveOptions};
use qwkb::{
    airy_reference_linear, analytic_phase, cubic_energy, exact_spectrum, field_from_density, gamma,
    linear_energy, log_energy, phase_integral, solve_level, ChargeDensityProfile,
    EffectivePotential, LogVariant, OracleConfig, PhysicalParams, WkbProblem,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    fn below(name: &'static str, measured: f64, threshold: f64) -> Self {
        Self {
            name,
            measured,
            threshold,
            pass: measured < threshold,
        }
    }

    fn failed(name: &'static str, threshold: f64) -> Self {
        Self {
            name,
            measured: f64::NAN,
            threshold,
            pass: false,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:4}  {:<40} measured = {:<12.3e} threshold = {:.1e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.threshold
        )
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn reduced(pot: EffectivePotential) -> WkbProblem {
    WkbProblem::new(PhysicalParams::reduced(), pot, 0)
}

fn lin() -> EffectivePotential {
    EffectivePotential::Linear { q_mu: 1.0 }
}

fn cub() -> EffectivePotential {
    EffectivePotential::Cubic { q_nu: 1.0 }
}

fn log() -> EffectivePotential {
    EffectivePotential::Logarithmic { q_e0: 1.0, r0: 1.0 }
}

type Measure = Result<f64, qwkb::Error>;

fn max_of(values: impl IntoIterator<Item = Measure>) -> Measure {
    values.into_iter().try_fold(0.0f64, |m, v| Ok(m.max(v?)))
}

fn check(name: &'static str, threshold: f64, measure: impl FnOnce() -> Measure) -> Check {
    match measure() {
        Ok(v) => Check::below(name, v, threshold),
        Err(_) => Check::failed(name, threshold),
    }
}

pub fn run_checks() -> Vec<Check> {
    let p = PhysicalParams::reduced();
    let mut out = Vec::new();

    out.push(check("phase quadrature vs analytic", 1e-9, || {
        max_of([lin(), cub(), log()].into_iter().flat_map(|pot| {
            [0.5, 1.0, 2.0, 5.0].map(move |e| {
                let num = phase_integral(&reduced(pot), e)?.phase;
                Ok(rel(num, analytic_phase(&pot, &p, e)?))
            })
        }))
    }));

    out.push(check("linear spectrum numeric vs closed", 1e-8, || {
        max_of((1..=20).map(|n| {
            Ok(rel(
                solve_level(&reduced(lin()), n)?.energy,
                linear_energy(n, &p, 1.0, 0.5)?,
            ))
        }))
    }));
    out.push(check("cubic spectrum numeric vs closed", 1e-8, || {
        max_of((1..=20).map(|n| {
            Ok(rel(
                solve_level(&reduced(cub()), n)?.energy,
                cubic_energy(n, &p, 1.0, 0.5)?,
            ))
        }))
    }));
    out.push(check("log spectrum numeric vs rederived", 1e-8, || {
        max_of((1..=20).map(|n| {
            let e = solve_level(&reduced(log()), n)?.energy;
            Ok(rel(
                e,
                log_energy(n, &p, 1.0, 1.0, LogVariant::Rederived, 0.5)?,
            ))
        }))
    }));
    out.push(check("log published offset (QE0/2)ln2", 1e-8, || {
        max_of((1..=20).map(|n| {
            let e = solve_level(&reduced(log()), n)?.energy;
            let published = log_energy(n, &p, 1.0, 1.0, LogVariant::Published, 0.5)?;
            Ok((e - published - 0.5 * LN_2).abs())
        }))
    }));

    let oracle = exact_spectrum(&reduced(lin()), &OracleConfig::default().with_levels(10));
    out.push(check("oracle vs Airy reference n=1..5", 1e-6, || {
        let spec = oracle.clone()?;
        max_of((1..=5u32).map(|n| {
            Ok(rel(
                spec.eigenvalues[n as usize - 1],
                airy_reference_linear(n, &p, 1.0)?,
            ))
        }))
    }));
    out.push(check("WKB maslov=1/4 vs oracle, n>=5", 1e-3, || {
        let spec = oracle.clone()?;
        let problem = reduced(lin()).with_maslov(0.25)?;
        max_of((5..=10u32).map(|n| {
            Ok(rel(
                solve_level(&problem, n)?.energy,
                spec.eigenvalues[n as usize - 1],
            ))
        }))
    }));
    out.push(check(
        "WKB maslov=1/2 vs predicted ratio, n>=5",
        0.1,
        || {
            let spec = oracle.clone()?;
            max_of((5..=10u32).map(|n| {
                let err = rel(
                    solve_level(&reduced(lin()), n)?.energy,
                    spec.eigenvalues[n as usize - 1],
                );
                let nf = f64::from(n);
                let predicted = (((nf - 0.5) / (nf - 0.25)).powf(2.0 / 3.0) - 1.0).abs();
                Ok(rel(err, predicted))
            }))
        },
    ));

    out.push(check("log field symbolic residual", 1e-12, || {
        let field = field_from_density(ChargeDensityProfile::logarithmic(1.0, 1.0)?);
        max_of((1..=100).map(|i| {
            let r = 0.05 * f64::from(i);
            Ok((field.value(r)? / r - (0.5 * r.ln() - 0.25)).abs())
        }))
    }));
    out.push(check("Gauss-law density recovery", 1e-6, || {
        let profiles = [
            ChargeDensityProfile::linear_density(1.0)?,
            ChargeDensityProfile::cubic_density(1.0)?,
            ChargeDensityProfile::logarithmic(1.0, 0.1)?,
        ];
        max_of(profiles.into_iter().flat_map(|profile| {
            let field = field_from_density(profile.clone());
            (0..=45).map(move |i| {
                let r = 0.5 + 0.1 * f64::from(i);
                let h = 1e-4 * r;
                let flux = |x: f64| field.value(x).map(|e| x * e);
                let d = (flux(r + h)? - flux(r - h)?) / (2.0 * h) / r;
                Ok(rel(d, profile.density(r)))
            })
        }))
    }));

    out.push(check("linear scaling E(8μQ)/E(μQ) = 4", 1e-9, || {
        let big = reduced(EffectivePotential::Linear { q_mu: 8.0 });
        max_of((1..=10).map(|n| {
            Ok(
                (solve_level(&big, n)?.energy / solve_level(&reduced(lin()), n)?.energy - 4.0)
                    .abs(),
            )
        }))
    }));
    out.push(check(
        "phase and level monotonicity violations",
        0.5,
        || {
            let mut violations = 0.0;
            for pot in [lin(), cub(), log()] {
                let problem = reduced(pot);
                let phases = (1..=40)
                    .map(|i| phase_integral(&problem, 0.25 * f64::from(i)).map(|r| r.phase))
                    .collect::<Result<Vec<_>, _>>()?;
                violations += phases.windows(2).filter(|w| !(w[1] > w[0])).count() as f64;
                let levels = (1..=20)
                    .map(|n| solve_level(&problem, n).map(|l| l.energy))
                    .collect::<Result<Vec<_>, _>>()?;
                violations += levels.windows(2).filter(|w| !(w[1] > w[0])).count() as f64;
            }
            Ok(violations)
        },
    ));
    out.push(check("oracle node counts = n-1 mismatches", 0.5, || {
        let spec = oracle.clone()?;
        Ok(spec
            .node_counts
            .iter()
            .enumerate()
            .filter(|(i, &c)| c != *i)
            .count() as f64)
    }));
    out.push(check("log spacing independent of r0 and m", 1e-9, || {
        max_of(
            [(1.0, 1.0), (0.2, 3.0), (4.0, 0.5)]
                .into_iter()
                .flat_map(|(r0, m)| {
                    (1..=10u32).map(move |n| {
                        let params = PhysicalParams::new(1.0, m)?;
                        let problem = WkbProblem::new(
                            params,
                            EffectivePotential::logarithmic(1.0, r0, 1.0)?,
                            0,
                        );
                        let gap =
                            solve_level(&problem, n + 1)?.energy - solve_level(&problem, n)?.energy;
                        let nf = f64::from(n);
                        Ok((gap - 0.5 * ((2.0 * nf + 1.0) / (2.0 * nf - 1.0)).ln()).abs())
                    })
                }),
        )
    }));

    out.push(check("Gamma(1/2) = sqrt(pi)", 1e-12, || {
        Ok(rel(gamma(0.5)?, PI.sqrt()))
    }));
    out.push(check("Beta integral identity", 1e-10, || {
        // x = t³ removes the x^{-2/3} singularity
        let num = integrate(
            |t: f64| 3.0 * (1.0 - t * t * t).max(0.0).sqrt(),
            0.0,
            1.0,
            &AdaptiveOptions::default(),
        )?;
        Ok(rel(
            num.value,
            gamma(1.0 / 3.0)? * gamma(1.5)? / gamma(11.0 / 6.0)?,
        ))
    }));
    out.push(check("integral sqrt(x)e^-x = sqrt(pi)/2", 1e-10, || {
        let num = integrate(
            |t: f64| 2.0 * t * t * (-t * t).exp(),
            0.0,
            40.0,
            &AdaptiveOptions::default(),
        )?;
        Ok(rel(num.value, PI.sqrt() / 2.0))
    }));

    out
}
