//! Adaptive tensor-product Gauss-Legendre quadrature over sup-norm boxes
//! [-T, T]^d, d <= 3.
//!
//! The panel grid is refined by halving every axis panel until two successive
//! estimates agree within the absolute tolerance. Panel sums are accumulated
//! in fixed panel-index order, so results do not depend on scheduling.

use crate::error::{Error, Result};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "need at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-15 {
                    let (_, d) = legendre_and_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }
}

/// (P_n(x), P_n'(x)) via the three-term recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0_f64;
    let mut p1 = 0.0_f64;
    for j in 0..n {
        let p2 = p1;
        p1 = p0;
        p0 = (((2 * j + 1) as f64) * x * p1 - j as f64 * p2) / (j + 1) as f64;
    }
    let dp = n as f64 * (x * p0 - p1) / (x * x - 1.0);
    (p0, dp)
}

/// Quadrature configuration; the box itself and the initial panel counts are
/// derived per integral from the integrand's oscillation scale.
#[derive(Clone, Debug)]
pub struct QuadratureSpec {
    /// Gauss-Legendre nodes per panel and axis.
    pub nodes_per_panel: usize,
    /// Absolute tolerance on the difference of successive refinements.
    pub abs_tol: f64,
    /// Maximum number of panel halvings before giving up.
    pub max_refinements: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            nodes_per_panel: 16,
            abs_tol: 1e-8,
            max_refinements: 12,
        }
    }
}

/// Diagnostics of one adaptive integration.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct QuadDiagnostics {
    pub panels_per_axis: usize,
    pub refinements: usize,
    pub last_change: f64,
    pub evaluations: u64,
}

/// Result of one adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct QuadOutcome {
    pub value: f64,
    pub diagnostics: QuadDiagnostics,
}

/// Integrate `f` over the sup-norm box [-half_width, half_width]^dim.
///
/// `initial_panels` is a per-axis panel count hint (each entry clamped to at
/// least 1); every refinement doubles all of them. Returns an
/// [`Error::Unconverged`] carrying the best estimate when the refinement
/// limit is hit.
pub fn integrate_box<F>(
    f: F,
    dim: usize,
    half_width: f64,
    initial_panels: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadOutcome>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if dim == 0 || dim > 3 {
        return Err(Error::InvalidInput(format!(
            "box quadrature supports 1 <= d <= 3, got {dim}"
        )));
    }
    assert!(half_width > 0.0 && half_width.is_finite());
    let gl = GaussLegendre::new(spec.nodes_per_panel.max(2));
    let mut panels: Vec<usize> = (0..dim)
        .map(|ax| {
            let hint = initial_panels.get(ax).copied().unwrap_or(1.0);
            (hint.ceil().max(1.0) as usize).min(1 << 12)
        })
        .collect();

    let mut evals: u64 = 0;
    let mut prev = eval_grid(&f, dim, half_width, &panels, &gl, &mut evals);
    let mut last_change = f64::INFINITY;
    for refinement in 0..=spec.max_refinements {
        if refinement == spec.max_refinements {
            return Err(Error::Unconverged {
                best: prev,
                last_change,
                refinements: refinement,
            });
        }
        for p in panels.iter_mut() {
            *p *= 2;
        }
        let next = eval_grid(&f, dim, half_width, &panels, &gl, &mut evals);
        last_change = (next - prev).abs();
        if last_change < spec.abs_tol {
            return Ok(QuadOutcome {
                value: next,
                diagnostics: QuadDiagnostics {
                    panels_per_axis: panels[0],
                    refinements: refinement + 1,
                    last_change,
                    evaluations: evals,
                },
            });
        }
        prev = next;
    }
    unreachable!()
}

fn eval_grid<F>(
    f: &F,
    dim: usize,
    half_width: f64,
    panels: &[usize],
    gl: &GaussLegendre,
    evals: &mut u64,
) -> f64
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    // Per-axis flattened (position, weight) lists: panel-major, node-minor.
    let axes: Vec<(Vec<f64>, Vec<f64>)> = panels
        .iter()
        .map(|&p| {
            let h = half_width / p as f64; // panel half-length
            let mut pos = Vec::with_capacity(p * gl.nodes.len());
            let mut wts = Vec::with_capacity(p * gl.nodes.len());
            for j in 0..p {
                let center = -half_width + (2 * j + 1) as f64 * h;
                for (x, w) in gl.nodes.iter().zip(&gl.weights) {
                    pos.push(center + h * x);
                    wts.push(h * w);
                }
            }
            (pos, wts)
        })
        .collect();

    let n0 = axes[0].0.len();
    *evals += axes.iter().map(|(p, _)| p.len() as u64).product::<u64>();

    // Parallel over the first axis, sequential sum in index order.
    let partials: Vec<f64> = (0..n0)
        .into_par_iter()
        .map(|i0| {
            let mut t = vec![0.0; dim];
            t[0] = axes[0].0[i0];
            let w0 = axes[0].1[i0];
            match dim {
                1 => w0 * f(&t),
                2 => {
                    let mut acc = 0.0;
                    for (x1, w1) in axes[1].0.iter().zip(&axes[1].1) {
                        t[1] = *x1;
                        acc += w1 * f(&t);
                    }
                    w0 * acc
                }
                _ => {
                    let mut acc = 0.0;
                    for (x1, w1) in axes[1].0.iter().zip(&axes[1].1) {
                        t[1] = *x1;
                        let mut inner = 0.0;
                        for (x2, w2) in axes[2].0.iter().zip(&axes[2].1) {
                            t[2] = *x2;
                            inner += w2 * f(&t);
                        }
                        acc += w1 * inner;
                    }
                    w0 * acc
                }
            }
        })
        .collect();
    partials.iter().sum()
}
