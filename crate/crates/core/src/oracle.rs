//! Reference eigenvalues of the reduced radial equation
//!
//! `−(ħ²/2m)u″ + [V(r) + L·ħ²/(2m r²)]u = E·u`, `u(0) = u(r_max) = 0`,
//!
//! discretized with second-order central differences on a uniform grid. The
//! resulting symmetric tridiagonal matrix is solved by Sturm-sequence
//! bisection; successive grid halvings are combined by Richardson
//! extrapolation and eigenvectors come from inverse iteration.

use crate::error::{Error, Result};
use crate::model::{PhysicalParams, WkbProblem};
use crate::wkb::solve_level;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Interior points on the coarsest grid.
    pub grid_points: usize,
    /// Domain end as a multiple of the outer turning point of the highest level.
    pub r_max_factor: f64,
    pub levels: usize,
    /// Number of grids; each halves the spacing of the previous one.
    pub refinement_levels: usize,
    /// Centrifugal convention; `None` follows the problem.
    pub langer_modified: Option<bool>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid_points: 4000,
            r_max_factor: 2.0,
            levels: 10,
            refinement_levels: 2,
            langer_modified: None,
        }
    }
}

impl OracleConfig {
    pub fn with_levels(mut self, levels: usize) -> Self {
        self.levels = levels;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.grid_points < 100 {
            return Err(Error::invalid("grid_points", "need at least 100 points"));
        }
        if !(self.r_max_factor >= 1.5) || !self.r_max_factor.is_finite() {
            return Err(Error::invalid("r_max_factor", "must be >= 1.5"));
        }
        if self.levels == 0 {
            return Err(Error::invalid("levels", "need at least one level"));
        }
        if self.refinement_levels == 0 || self.refinement_levels > 6 {
            return Err(Error::invalid("refinement_levels", "must lie in 1..=6"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSpectrum {
    /// Extrapolated eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Interior nodes of each eigenvector on the finest grid.
    pub node_counts: Vec<usize>,
    /// Relative gap between the extrapolated value and the finest raw value.
    pub convergence_estimate: Vec<f64>,
    /// Raw eigenvalues per grid, coarsest first.
    pub grid_eigenvalues: Vec<Vec<f64>>,
    pub grid_spacings: Vec<f64>,
    pub r_max: f64,
}

/// Symmetric tridiagonal matrix with constant off-diagonal.
struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `x`.
    fn sturm_count(&self, x: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diag.iter().enumerate() {
            q = if i == 0 { d - x } else { d - x - off2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + self.off.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        self.diag
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &d| {
                (lo.min(d - r), hi.max(d + r))
            })
    }

    /// `index`-th eigenvalue (zero-based) by bisection on `[lo, hi]`.
    fn bisect(&self, index: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
        let mut c_lo = self.sturm_count(lo);
        let mut c_hi = self.sturm_count(hi);
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                break;
            }
            let c = self.sturm_count(mid);
            if c < c_lo || c > c_hi {
                return Err(Error::Numerical(format!(
                    "non-monotone Sturm count at {mid}: {c} outside [{c_lo}, {c_hi}]"
                )));
            }
            if c > index {
                hi = mid;
                c_hi = c;
            } else {
                lo = mid;
                c_lo = c;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    fn lowest(&self, count: usize) -> Result<Vec<f64>> {
        let (mut lo, hi) = self.gershgorin();
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let e = self.bisect(k, lo, hi)?;
            out.push(e);
            lo = e - 1e-12 * e.abs().max(1.0);
            if self.sturm_count(lo) > k {
                lo = self.gershgorin().0;
            }
        }
        Ok(out)
    }

    /// Eigenvector for `lambda` by two rounds of inverse iteration.
    fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        let shift = lambda + 1e-13 * lambda.abs().max(1.0);
        let mut x = vec![1.0; n];
        for _ in 0..3 {
            x = self.solve_shifted(shift, &x);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 && norm.is_finite() {
                x.iter_mut().for_each(|v| *v /= norm);
            }
        }
        x
    }

    /// Solves `(T − σI)x = b` by Gaussian elimination with partial pivoting.
    fn solve_shifted(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        let tiny =
            f64::EPSILON * (self.off.abs() + self.diag.iter().fold(0.0f64, |m, d| m.max(d.abs())));
        // rows hold (sub, diag, sup, sup2) after elimination
        let mut d: Vec<f64> = self.diag.iter().map(|v| v - sigma).collect();
        let mut du = vec![self.off; n.saturating_sub(1)];
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut dl = vec![self.off; n.saturating_sub(1)];
        let mut rhs = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let f = dl[i] / d[i];
                d[i + 1] -= f * du[i];
                rhs[i + 1] -= f * rhs[i];
                dl[i] = f;
                if i + 2 < n {
                    du2[i] = 0.0;
                }
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let tmp = d[i + 1];
                d[i + 1] = du[i] - f * tmp;
                du[i] = tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du2[i];
                }
                rhs.swap(i, i + 1);
                rhs[i + 1] -= f * rhs[i];
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = rhs[n - 1] / d[n - 1];
        if n > 1 {
            x[n - 2] = (rhs[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (rhs[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
        }
        x
    }
}

fn build_matrix(problem: &WkbProblem, centrifugal: f64, points: usize, h: f64) -> Tridiagonal {
    let kin = problem.params.hbar() * problem.params.hbar() / problem.params.mass();
    let diag = (1..=points)
        .map(|i| {
            let r = h * i as f64;
            kin / (h * h) + problem.potential.value(r) + centrifugal * kin / (2.0 * r * r)
        })
        .collect();
    Tridiagonal {
        diag,
        off: -kin / (2.0 * h * h),
    }
}

fn count_nodes(v: &[f64]) -> usize {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = 1e-8 * peak;
    let mut last = 0.0f64;
    let mut nodes = 0;
    for &x in v {
        if x.abs() <= floor {
            continue;
        }
        if last != 0.0 && x.signum() != last.signum() {
            nodes += 1;
        }
        last = x;
    }
    nodes
}

/// Level whose outer turning point sets the smallest allowed domain.
pub const MIN_DOMAIN_LEVEL: usize = 5;

/// Lowest `config.levels` eigenvalues of the radial problem.
pub fn exact_spectrum(problem: &WkbProblem, config: &OracleConfig) -> Result<OracleSpectrum> {
    config.validate()?;
    let mut problem = *problem;
    if let Some(flag) = config.langer_modified {
        problem.langer_modified = flag;
    }
    let centrifugal = problem.centrifugal_coefficient();

    // Domain from the semiclassical extent of the highest level, but never
    // narrower than that of level `MIN_DOMAIN_LEVEL`; the Langer form keeps the
    // estimate finite for s waves.
    let estimate_problem = problem.with_langer(true);
    let top = solve_level(
        &estimate_problem,
        config.levels.max(MIN_DOMAIN_LEVEL) as u32,
    )?;
    let r_max = config.r_max_factor * top.turning_points.r2;

    let mut grid_eigenvalues = Vec::with_capacity(config.refinement_levels);
    let mut grid_spacings = Vec::with_capacity(config.refinement_levels);
    let mut finest = None;
    for g in 0..config.refinement_levels {
        let points = (config.grid_points + 1) * (1 << g) - 1;
        let h = r_max / (points + 1) as f64;
        let matrix = build_matrix(&problem, centrifugal, points, h);
        let values = matrix.lowest(config.levels)?;
        grid_eigenvalues.push(values);
        grid_spacings.push(h);
        if g + 1 == config.refinement_levels {
            finest = Some(matrix);
        }
    }
    let finest = finest.expect("at least one grid");
    let fine_values = grid_eigenvalues.last().expect("at least one grid").clone();

    let mut node_counts = Vec::with_capacity(config.levels);
    for (level, &lambda) in fine_values.iter().enumerate() {
        let v = finest.eigenvector(lambda);
        let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let tail_ratio = v[v.len() - 1].abs() / peak;
        if !(tail_ratio <= 1e-6) {
            return Err(Error::DomainTooSmall {
                level: level + 1,
                tail_ratio,
            });
        }
        node_counts.push(count_nodes(&v));
    }

    let mut eigenvalues = Vec::with_capacity(config.levels);
    let mut convergence_estimate = Vec::with_capacity(config.levels);
    for k in 0..config.levels {
        let column: Vec<f64> = grid_eigenvalues.iter().map(|g| g[k]).collect();
        let extrapolated = richardson(&column);
        let raw = *column.last().expect("non-empty");
        eigenvalues.push(extrapolated);
        convergence_estimate.push(if column.len() > 1 {
            ((extrapolated - raw) / extrapolated.abs().max(f64::MIN_POSITIVE)).abs()
        } else {
            f64::NAN
        });
    }

    if eigenvalues.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Numerical(
            "oracle eigenvalues are not strictly increasing".into(),
        ));
    }

    Ok(OracleSpectrum {
        eigenvalues,
        node_counts,
        convergence_estimate,
        grid_eigenvalues,
        grid_spacings,
        r_max,
    })
}

/// Romberg-style elimination of the `h²`, `h⁴`, … error terms from values on
/// successively halved grids.
fn richardson(values: &[f64]) -> f64 {
    let mut row = values.to_vec();
    let mut factor = 4.0;
    while row.len() > 1 {
        row = row
            .windows(2)
            .map(|w| w[1] + (w[1] - w[0]) / (factor - 1.0))
            .collect();
        factor *= 4.0;
    }
    row[0]
}

/// Magnitudes of the first ten zeros of Ai, computed independently to 30
/// digits and rounded.
const AIRY_ZEROS: [f64; 10] = [
    2.338_107_410_459_767,
    4.087_949_444_130_971,
    5.520_559_828_095_551,
    6.786_708_090_071_759,
    7.944_133_587_120_853,
    9.022_650_853_340_98,
    10.040_174_341_558_086,
    11.008_524_303_733_263,
    11.936_015_563_236_263,
    12.828_776_752_865_757,
];

/// Exact level `n` of `V = μQ·r` with `u(0) = 0` and no centrifugal term:
/// `E_n = |a_n|·(ħ²(μQ)²/2m)^{1/3}`.
pub fn airy_reference_linear(n: u32, params: &PhysicalParams, q_mu: f64) -> Result<f64> {
    if n < 1 || n as usize > AIRY_ZEROS.len() {
        return Err(Error::Range {
            what: "n",
            value: n,
            range: "1..=10",
        });
    }
    let q_mu = crate::error::ensure_positive("q_mu", q_mu)?;
    let hbar = params.hbar();
    let scale = (hbar * hbar * q_mu * q_mu / (2.0 * params.mass())).cbrt();
    Ok(AIRY_ZEROS[n as usize - 1] * scale)
}
