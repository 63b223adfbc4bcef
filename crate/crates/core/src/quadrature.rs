//! Fixed-order Gauss–Legendre panels with adaptive bisection.
//!
//! Each panel is estimated twice: once with a single rule over the panel and
//! once with the rule applied to both halves. Their difference is the panel's
//! error estimate; the panel with the largest estimate is split until the sum
//! of estimates meets the requested tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, f: &mut F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum();
        sum * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

pub(crate) const PANEL_ORDER: usize = 20;

pub(crate) fn panel_rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(PANEL_ORDER))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub initial_panels: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 0.0,
            max_panels: 4000,
            initial_panels: 4,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn estimate<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, evals: &mut usize) -> Panel {
    let rule = panel_rule();
    let m = 0.5 * (a + b);
    let coarse = rule.integrate(f, a, b);
    let fine = rule.integrate(f, a, m) + rule.integrate(f, m, b);
    *evals += 3 * rule.order();
    Panel {
        a,
        b,
        value: fine,
        error: (fine - coarse).abs(),
    }
}

/// Adaptive integral of `f` over `[a, b]`. On failure the best estimate is
/// carried inside [`Error::QuadratureTolerance`].
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    opts: &AdaptiveOptions,
) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let mut evals = 0;
    let pieces = opts.initial_panels.max(1);
    let width = (b - a) / pieces as f64;
    let mut heap: BinaryHeap<Panel> = (0..pieces)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == pieces { b } else { lo + width };
            estimate(&mut f, lo, hi, &mut evals)
        })
        .collect();

    loop {
        let (value, error, magnitude) = heap.iter().fold((0.0, 0.0, 0.0), |(v, e, m), p| {
            (v + p.value, e + p.error, m + p.value.abs())
        });
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        let roundoff = 50.0 * f64::EPSILON * magnitude;
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureTolerance {
                estimate: value,
                error,
                tolerance: target,
            });
        }
        if error <= target || error <= roundoff {
            return Ok(Integral {
                value,
                error,
                evaluations: evals,
            });
        }
        if heap.len() >= opts.max_panels {
            return Err(Error::QuadratureTolerance {
                estimate: value,
                error,
                tolerance: target,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // Panel can no longer be split in floating point.
            heap.push(Panel {
                error: 0.0,
                ..worst
            });
            continue;
        }
        heap.push(estimate(&mut f, worst.a, m, &mut evals));
        heap.push(estimate(&mut f, m, worst.b, &mut evals));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(10);
        let s: f64 = rule.weights().iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // degree 19 is integrated exactly by a 10-point rule
        let v = rule.integrate(&mut |x: f64| x.powi(18), -1.0, 1.0);
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
        let v = rule.integrate(&mut |x: f64| 3.0 * x * x, 0.0, 2.0);
        assert!((v - 8.0).abs() < 1e-13);
    }

    #[test]
    fn nodes_sorted_and_symmetric() {
        let rule = GaussLegendre::new(PANEL_ORDER);
        for w in rule.nodes().windows(2) {
            assert!(w[0] < w[1]);
        }
        for (x, y) in rule.nodes().iter().zip(rule.nodes().iter().rev()) {
            assert!((x + y).abs() < 1e-15);
        }
    }

    #[test]
    fn adaptive_handles_sqrt_endpoint() {
        // ∫₀¹ √x dx = 2/3
        let r = integrate(|x: f64| x.sqrt(), 0.0, 1.0, &AdaptiveOptions::default()).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn adaptive_handles_log_endpoint() {
        // ∫₀¹ -ln x dx = 1
        let r = integrate(|x: f64| -x.ln(), 0.0, 1.0, &AdaptiveOptions::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn reports_failure_with_estimate() {
        let opts = AdaptiveOptions {
            max_panels: 5,
            ..AdaptiveOptions::default()
        };
        let err = integrate(|x: f64| x.powf(-0.9), 0.0, 1.0, &opts).unwrap_err();
        assert!(matches!(err, Error::QuadratureTolerance { estimate, .. } if estimate > 0.0));
    }
}
