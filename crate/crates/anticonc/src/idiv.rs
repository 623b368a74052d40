//! Compound Poisson laws `exp(alpha (M^(t) - 1))`: spectral measures built
//! from coefficient vectors, exact characteristic functions, and seeded
//! samplers.

use crate::charfn::CharFn;
use crate::error::{Error, Result};
use crate::measures::{CoefficientVector, FiniteDiscreteMeasure, MeasureKind};
use crate::rng::Stream;
use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

/// A compound Poisson law: intensity `alpha` and a jump probability law.
#[derive(Clone, Debug)]
pub struct CompoundPoissonModel {
    alpha: f64,
    jump_law: FiniteDiscreteMeasure,
}

impl CompoundPoissonModel {
    pub fn new(alpha: f64, jump_law: FiniteDiscreteMeasure) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidInput(format!("intensity {alpha} must be >= 0")));
        }
        if !jump_law.is_probability() {
            return Err(Error::InvalidMeasure(
                "jump law must be a probability measure".into(),
            ));
        }
        Ok(CompoundPoissonModel { alpha, jump_law })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn jump_law(&self) -> &FiniteDiscreteMeasure {
        &self.jump_law
    }

    pub fn dim(&self) -> usize {
        self.jump_law.dim()
    }
}

/// The spectral construction for `H_1^lam`: Levy measure `(lam/4)` at each
/// of `+-a_k`, i.e. intensity `lam * n / 2` with the normalized symmetric
/// jump law. Its characteristic function equals `H_1^lam` identically.
pub fn spectral_of_coefficients(
    a: &CoefficientVector,
    lam: f64,
) -> Result<CompoundPoissonModel> {
    if !(lam > 0.0) || !lam.is_finite() {
        return Err(Error::InvalidInput(format!("lam = {lam} must be positive")));
    }
    let n = a.len();
    let mass = 1.0 / (2 * n) as f64;
    let mut atoms = Vec::with_capacity(2 * n);
    for ak in a.entries() {
        atoms.push((ak.clone(), mass));
        atoms.push((ak.iter().map(|v| -v).collect(), mass));
    }
    let jump_law = FiniteDiscreteMeasure::new(a.dim(), atoms, MeasureKind::Probability)?;
    CompoundPoissonModel::new(lam * n as f64 / 2.0, jump_law)
}

/// `exp(alpha (M^(t) - 1))` evaluated exactly; real and positive for
/// symmetric jump laws.
pub fn cf_compound_poisson(model: &CompoundPoissonModel, t: &[f64]) -> Result<Complex64> {
    if t.len() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            got: t.len(),
        });
    }
    let mut m_hat = Complex64::new(0.0, 0.0);
    for (x, p) in model.jump_law.atoms() {
        let s: f64 = x.iter().zip(t).map(|(a, b)| a * b).sum();
        m_hat += p * Complex64::new(0.0, s).exp();
    }
    Ok((model.alpha * (m_hat - 1.0)).exp())
}

/// The model's characteristic function packaged for quadrature.
pub fn charfn_of_model(model: &CompoundPoissonModel) -> CharFn {
    let m = model.clone();
    let symmetric = model.jump_law.is_symmetric(1e-9);
    let mut scales = vec![0.0_f64; model.dim()];
    for (x, _) in model.jump_law.atoms() {
        for (s, v) in scales.iter_mut().zip(x) {
            *s = s.max(v.abs());
        }
    }
    CharFn::new(
        model.dim(),
        symmetric,
        scales,
        Box::new(move |t| cf_compound_poisson(&m, t).expect("dimension checked")),
    )
}

/// Walker alias table for O(1) draws from a finite discrete law.
struct AliasTable {
    prob: Vec<f64>,
    alias: Vec<usize>,
}

impl AliasTable {
    fn new(masses: &[f64]) -> Self {
        let n = masses.len();
        let total: f64 = masses.iter().sum();
        let mut scaled: Vec<f64> = masses.iter().map(|m| m * n as f64 / total).collect();
        let mut small: Vec<usize> = Vec::new();
        let mut large: Vec<usize> = Vec::new();
        for (i, &s) in scaled.iter().enumerate() {
            if s < 1.0 {
                small.push(i);
            } else {
                large.push(i);
            }
        }
        let mut prob = vec![1.0; n];
        let mut alias: Vec<usize> = (0..n).collect();
        while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
            small.pop();
            prob[s] = scaled[s];
            alias[s] = l;
            scaled[l] -= 1.0 - scaled[s];
            if scaled[l] < 1.0 {
                large.pop();
                small.push(l);
            }
        }
        AliasTable { prob, alias }
    }

    #[inline]
    fn draw(&self, stream: &mut Stream) -> usize {
        let i = stream.next_index(self.prob.len());
        if stream.next_f64() < self.prob[i] {
            i
        } else {
            self.alias[i]
        }
    }
}

/// Poisson count: sequential inversion below this intensity, transformed
/// rejection above.
const POISSON_INVERSION_CUTOFF: f64 = 30.0;

fn poisson_inversion(alpha: f64, stream: &mut Stream) -> u64 {
    let mut k: u64 = 0;
    let mut p = (-alpha).exp();
    let mut cdf = p;
    let u = stream.next_f64();
    // bounded walk; the tail beyond alpha + 20 sqrt(alpha) + 50 is below 1e-16
    let cap = (alpha + 20.0 * alpha.sqrt() + 50.0) as u64;
    while u > cdf && k < cap {
        k += 1;
        p *= alpha / k as f64;
        cdf += p;
    }
    k
}

/// PTRS transformed rejection (Hoermann 1993): a normal-shaped proposal in a
/// transformed domain with an exact acceptance test against the Poisson pmf.
fn poisson_ptrs(alpha: f64, stream: &mut Stream) -> u64 {
    let log_alpha = alpha.ln();
    let b = 0.931 + 2.53 * alpha.sqrt();
    let a = -0.059 + 0.02483 * b;
    let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    let v_r = 0.9277 - 3.6224 / (b - 2.0);
    loop {
        let u = stream.next_f64() - 0.5;
        let v = stream.next_f64();
        let us = 0.5 - u.abs();
        let k = ((2.0 * a / us + b) * u + alpha + 0.43).floor();
        if us >= 0.07 && v <= v_r {
            return k as u64;
        }
        if k < 0.0 || (us < 0.013 && v > us) {
            continue;
        }
        let lhs = (v * inv_alpha / (a / (us * us) + b)).ln();
        let rhs = k * log_alpha - alpha - ln_gamma(k + 1.0);
        if lhs <= rhs {
            return k as u64;
        }
    }
}

fn poisson_count(alpha: f64, stream: &mut Stream) -> u64 {
    if alpha == 0.0 {
        0
    } else if alpha < POISSON_INVERSION_CUTOFF {
        poisson_inversion(alpha, stream)
    } else {
        poisson_ptrs(alpha, stream)
    }
}

/// One compound Poisson draw: a Poisson(`alpha`) number of i.i.d. jumps.
fn sample_one(
    model: &CompoundPoissonModel,
    table: &AliasTable,
    stream: &mut Stream,
) -> Vec<f64> {
    let mut point = vec![0.0_f64; model.dim()];
    let n_jumps = poisson_count(model.alpha, stream);
    for _ in 0..n_jumps {
        let j = table.draw(stream);
        for (acc, v) in point.iter_mut().zip(&model.jump_law.atoms()[j].0) {
            *acc += v;
        }
    }
    point
}

/// Draw `n_samples` i.i.d. compound Poisson points, deterministically in
/// `seed`. Batches run under split substreams keyed by sample index and
/// concatenate in index order.
pub fn sample_compound_poisson(
    model: &CompoundPoissonModel,
    n_samples: usize,
    seed: u64,
) -> Vec<Vec<f64>> {
    let masses: Vec<f64> = model.jump_law.atoms().iter().map(|(_, p)| *p).collect();
    let table = AliasTable::new(&masses);
    let root = Stream::new(seed);
    (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut s = root.split(i as u64);
            sample_one(model, &table, &mut s)
        })
        .collect()
}

/// A seeded single-point sampler for [`crate::concentration::concentration_mc`];
/// the alias table is shared across calls.
pub fn sampler_of_model(model: &CompoundPoissonModel) -> impl Fn(u64) -> Vec<f64> + Sync + '_ {
    let masses: Vec<f64> = model.jump_law.atoms().iter().map(|(_, p)| *p).collect();
    let table = AliasTable::new(&masses);
    move |seed: u64| {
        let mut s = Stream::new(seed);
        sample_one(model, &table, &mut s)
    }
}
