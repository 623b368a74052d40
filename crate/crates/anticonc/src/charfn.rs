//! Characteristic functions of the weighted-sum laws and their symmetric
//! infinitely divisible companions, plus the box-quadrature functional
//! `tau^d * integral_{|t| <= 1/tau} |F^(t)| dt` (sup-norm box; the
//! concentration ball elsewhere stays Euclidean).

use crate::error::{Error, Result};
use crate::measures::{CoefficientVector, FiniteDiscreteMeasure, SubMeasureSpec};
use crate::quad::{integrate_box, QuadDiagnostics, QuadratureSpec};
use num_complex::Complex64;
use std::f64::consts::PI;

/// A characteristic function with the metadata the quadrature needs: its
/// dimension, a per-axis oscillation scale (largest cosine frequency along
/// each axis), and whether the function is known to be real and nonnegative.
pub struct CharFn {
    dim: usize,
    nonneg: bool,
    axis_scales: Vec<f64>,
    eval: Box<dyn Fn(&[f64]) -> Complex64 + Send + Sync>,
}

impl CharFn {
    pub fn new(
        dim: usize,
        nonneg: bool,
        axis_scales: Vec<f64>,
        eval: Box<dyn Fn(&[f64]) -> Complex64 + Send + Sync>,
    ) -> Self {
        CharFn {
            dim,
            nonneg,
            axis_scales,
            eval,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True when the function is known real and >= 0 (symmetric infinitely
    /// divisible laws). With the flag set, the box functional also bounds
    /// the concentration function from below up to a d-constant.
    pub fn is_nonneg(&self) -> bool {
        self.nonneg
    }

    pub fn axis_scales(&self) -> &[f64] {
        &self.axis_scales
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        debug_assert_eq!(t.len(), self.dim);
        (self.eval)(t)
    }

    /// Characteristic function of F_a, the law of `sum_k X_k a_k`.
    pub fn weighted_sum(law_of_x: &FiniteDiscreteMeasure, a: &CoefficientVector) -> Result<Self> {
        let x_atoms = law_of_x.scalar_atoms()?;
        if !law_of_x.is_probability() {
            return Err(Error::InvalidMeasure(
                "weighted-sum law needs a probability measure".into(),
            ));
        }
        let x_range = x_atoms
            .iter()
            .map(|(x, _)| x.abs())
            .fold(0.0_f64, f64::max);
        let coeffs = a.entries().to_vec();
        let scales = a.axis_scales().iter().map(|s| s * x_range).collect();
        let dim = a.dim();
        Ok(CharFn::new(
            dim,
            false,
            scales,
            Box::new(move |t: &[f64]| {
                let mut prod = Complex64::new(1.0, 0.0);
                for ak in &coeffs {
                    let s: f64 = ak.iter().zip(t).map(|(c, ti)| c * ti).sum();
                    let mut phi = Complex64::new(0.0, 0.0);
                    for (x, p) in &x_atoms {
                        phi += p * Complex64::new(0.0, s * x).exp();
                    }
                    prod *= phi;
                }
                prod
            }),
        ))
    }

    /// `H_z^lam`: the symmetric infinitely divisible law with characteristic
    /// function `exp(-(lam/2) sum_k (1 - cos(<t, a_k> z)))`.
    pub fn h_power(a: &CoefficientVector, z: f64, lam: f64) -> Self {
        let coeffs = a.entries().to_vec();
        let scales = a.axis_scales().iter().map(|s| s * z.abs()).collect();
        CharFn::new(
            a.dim(),
            true,
            scales,
            Box::new(move |t: &[f64]| Complex64::new(cf_h_entries(&coeffs, z, lam, t), 0.0)),
        )
    }

    /// Symmetrization envelope for a symmetric mixing measure `G`:
    /// `exp(-1/2 sum_k integral (1 - cos(<t, a_k> z)) G{dz})`.
    pub fn envelope(a: &CoefficientVector, g: &FiniteDiscreteMeasure) -> Result<Self> {
        let g_atoms = g.scalar_atoms()?;
        if !g.is_probability() {
            return Err(Error::InvalidMeasure(
                "envelope needs a probability measure".into(),
            ));
        }
        if !g.is_symmetric(1e-9) {
            return Err(Error::InvalidInput(
                "envelope needs a symmetric mixing measure".into(),
            ));
        }
        Ok(Self::envelope_unchecked(a, &g_atoms))
    }

    /// Envelope with a dominated measure `V = f . G` in place of `G` (total
    /// mass may be below 1); the integrand is nonnegative, so shrinking the
    /// measure can only increase the value.
    pub fn envelope_of_submeasure(a: &CoefficientVector, v: &SubMeasureSpec) -> Self {
        let atoms: Vec<(f64, f64)> = v
            .weights()
            .iter()
            .zip(v.base().atoms())
            .filter(|(f, _)| **f > 0.0)
            .map(|(f, (x, p))| (x[0], f * p))
            .collect();
        Self::envelope_unchecked(a, &atoms)
    }

    /// Envelope built from arbitrary nonnegative scalar mixing atoms
    /// `(z_j, m_j)`: `exp(-1/2 sum_k sum_j m_j (1 - cos(<t, a_k> z_j)))`.
    pub fn envelope_from_mixing_atoms(a: &CoefficientVector, mix_atoms: &[(f64, f64)]) -> Self {
        Self::envelope_unchecked(a, mix_atoms)
    }

    fn envelope_unchecked(a: &CoefficientVector, mix_atoms: &[(f64, f64)]) -> Self {
        let z_range = mix_atoms
            .iter()
            .map(|(z, _)| z.abs())
            .fold(0.0_f64, f64::max);
        let coeffs = a.entries().to_vec();
        let atoms = mix_atoms.to_vec();
        let scales = a.axis_scales().iter().map(|s| s * z_range).collect();
        CharFn::new(
            a.dim(),
            true,
            scales,
            Box::new(move |t: &[f64]| {
                let mut expo = 0.0;
                for ak in &coeffs {
                    let s: f64 = ak.iter().zip(t).map(|(c, ti)| c * ti).sum();
                    for (z, m) in &atoms {
                        expo += m * (1.0 - (s * z).cos());
                    }
                }
                Complex64::new((-0.5 * expo).exp(), 0.0)
            }),
        )
    }

    /// The constant function 1 (point mass at the origin).
    pub fn constant_one(dim: usize) -> Self {
        CharFn::new(
            dim,
            true,
            vec![0.0; dim],
            Box::new(|_| Complex64::new(1.0, 0.0)),
        )
    }
}

/// Characteristic function of F_a at `t`: `prod_k phi_X(<t, a_k>)`.
pub fn cf_weighted_sum(
    law_of_x: &FiniteDiscreteMeasure,
    a: &CoefficientVector,
    t: &[f64],
) -> Result<Complex64> {
    if t.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: t.len(),
        });
    }
    Ok(CharFn::weighted_sum(law_of_x, a)?.eval(t))
}

fn cf_h_entries(coeffs: &[Vec<f64>], z: f64, lam: f64, t: &[f64]) -> f64 {
    let mut sum = 0.0;
    for ak in coeffs {
        let s: f64 = ak.iter().zip(t).map(|(c, ti)| c * ti).sum();
        sum += 1.0 - (s * z).cos();
    }
    (-0.5 * lam * sum).exp()
}

/// `H_z^lam` evaluated at `t`; real and strictly positive.
pub fn cf_h(a: &CoefficientVector, z: f64, lam: f64, t: &[f64]) -> Result<f64> {
    assert!(lam >= 0.0, "cf_h needs lam >= 0");
    if t.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: t.len(),
        });
    }
    Ok(cf_h_entries(a.entries(), z, lam, t))
}

/// Exact symmetrization envelope value at `t`; dominates `|F_a^(t)|` when
/// `G` is the symmetrization of the summand law.
pub fn symmetrization_envelope(
    a: &CoefficientVector,
    g: &FiniteDiscreteMeasure,
    t: &[f64],
) -> Result<f64> {
    if t.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: t.len(),
        });
    }
    Ok(CharFn::envelope(a, g)?.eval(t).re)
}

/// `integral_{|t| <= T} |cf(t)| dt` over the sup-norm box of half-width `T`,
/// by adaptive Gauss-Legendre. The initial panel count per axis resolves the
/// integrand's cosine oscillations: at least `ceil(T * scale / pi)` panels.
pub fn box_integral(cf: &CharFn, half_width: f64, spec: &QuadratureSpec) -> Result<EsseenOutcome> {
    assert!(half_width > 0.0, "box_integral needs a positive half-width");
    let d = cf.dim();
    if d > 3 {
        return Err(Error::InvalidInput(format!(
            "no quadrature path for d = {d} > 3"
        )));
    }
    let initial: Vec<f64> = cf
        .axis_scales()
        .iter()
        .map(|s| (half_width * s / PI).ceil().max(1.0))
        .collect();
    let nonneg = cf.is_nonneg();
    let outcome = integrate_box(
        |t| {
            let v = cf.eval(t);
            if nonneg {
                v.re
            } else {
                v.norm()
            }
        },
        d,
        half_width,
        &initial,
        spec,
    );
    match outcome {
        Ok(q) => Ok(EsseenOutcome {
            value: q.value,
            diagnostics: q.diagnostics,
        }),
        Err(e) => Err(e),
    }
}

/// The box functional `tau^d * integral_{|t| <= 1/tau} |cf(t)| dt`.
pub fn esseen_functional(cf: &CharFn, tau: f64, spec: &QuadratureSpec) -> Result<EsseenOutcome> {
    assert!(tau > 0.0, "esseen_functional needs tau > 0");
    let scale = tau.powi(cf.dim() as i32);
    match box_integral(cf, 1.0 / tau, spec) {
        Ok(q) => Ok(EsseenOutcome {
            value: scale * q.value,
            diagnostics: q.diagnostics,
        }),
        Err(Error::Unconverged {
            best,
            last_change,
            refinements,
        }) => Err(Error::Unconverged {
            best: scale * best,
            last_change,
            refinements,
        }),
        Err(e) => Err(e),
    }
}

/// Value of the box functional together with quadrature diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct EsseenOutcome {
    pub value: f64,
    pub diagnostics: QuadDiagnostics,
}
