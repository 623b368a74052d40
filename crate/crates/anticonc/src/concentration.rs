//! Computation of the concentration function
//! `Q(F, lambda) = sup_x P(Y in x + lambda B)` with `B` the closed Euclidean
//! ball of radius 1/2: exact in dimensions 1 and 2, Monte Carlo above, and
//! dedicated exact paths for Rademacher-weighted sums.

use crate::error::{Error, Result};
use crate::measures::{CoefficientVector, FiniteDiscreteMeasure};
use crate::rng::Stream;
use rayon::prelude::*;
use serde::Serialize;

/// How a concentration value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact1d,
    Exact2d,
    MonteCarlo,
    Dp,
}

/// A concentration value with its provenance; exact methods carry a zero
/// confidence half-width.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConcentrationResult {
    pub value: f64,
    pub method: Method,
    pub half_width: f64,
    pub samples: u64,
}

impl ConcentrationResult {
    fn exact(value: f64, method: Method) -> Self {
        ConcentrationResult {
            value,
            method,
            half_width: 0.0,
            samples: 0,
        }
    }
}

/// Maximum mass of a closed window `[x, x + lambda]` over sorted positions.
/// The optimal window can always be slid left until it starts at an atom.
fn max_window_mass(positions: &[f64], masses: &[f64], lambda: f64) -> f64 {
    debug_assert_eq!(positions.len(), masses.len());
    let n = positions.len();
    if n == 0 {
        return 0.0;
    }
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    for m in masses {
        prefix.push(prefix.last().unwrap() + m);
    }
    let mut best = 0.0_f64;
    let mut j = 0usize;
    for i in 0..n {
        if j < i {
            j = i;
        }
        while j + 1 < n && positions[j + 1] <= positions[i] + lambda {
            j += 1;
        }
        best = best.max(prefix[j + 1] - prefix[i]);
    }
    best
}

/// Exact `Q(F, lambda)` for a one-dimensional discrete law: the largest mass
/// of any closed interval of length `lambda` (two-pointer sweep over sorted
/// atoms). `lambda = 0` returns the largest atom mass.
pub fn concentration_exact_1d(
    f: &FiniteDiscreteMeasure,
    lambda: f64,
) -> Result<ConcentrationResult> {
    assert!(lambda >= 0.0 && lambda.is_finite());
    let atoms = f.scalar_atoms()?;
    let positions: Vec<f64> = atoms.iter().map(|(x, _)| *x).collect();
    let masses: Vec<f64> = atoms.iter().map(|(_, p)| *p).collect();
    Ok(ConcentrationResult::exact(
        max_window_mass(&positions, &masses, lambda),
        Method::Exact1d,
    ))
}

/// Slack for closed-boundary membership of constructed disk centers.
const DISK_TOL: f64 = 1e-9;

/// Exact `Q(F, lambda)` on R^2: the largest mass of a closed Euclidean disk
/// of radius `lambda / 2`.
///
/// Candidate centers are every atom plus, for every atom pair within
/// distance `lambda`, the two centers of the radius-`lambda/2` circles
/// through both; an optimal fixed-radius disk can be translated until an
/// atom sits at its center or two atoms lie on its boundary. O(n^3).
pub fn concentration_exact_2d(
    f: &FiniteDiscreteMeasure,
    lambda: f64,
) -> Result<ConcentrationResult> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: f.dim(),
        });
    }
    assert!(lambda >= 0.0 && lambda.is_finite());
    let atoms = f.atoms();
    if lambda == 0.0 {
        return Ok(ConcentrationResult::exact(f.max_atom_mass(), Method::Exact2d));
    }
    let r = lambda / 2.0;
    let r2 = r * r;
    let mut candidates: Vec<[f64; 2]> = atoms.iter().map(|(x, _)| [x[0], x[1]]).collect();
    for i in 0..atoms.len() {
        for j in (i + 1)..atoms.len() {
            let (p, q) = (&atoms[i].0, &atoms[j].0);
            let dx = q[0] - p[0];
            let dy = q[1] - p[1];
            let d2 = dx * dx + dy * dy;
            if d2 > lambda * lambda * (1.0 + DISK_TOL) || d2 == 0.0 {
                continue;
            }
            let mid = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
            let h2 = (r2 - d2 / 4.0).max(0.0);
            let h = h2.sqrt();
            let inv_d = 1.0 / d2.sqrt();
            let perp = [-dy * inv_d, dx * inv_d];
            candidates.push([mid[0] + h * perp[0], mid[1] + h * perp[1]]);
            candidates.push([mid[0] - h * perp[0], mid[1] - h * perp[1]]);
        }
    }
    let mut best = 0.0_f64;
    for c in &candidates {
        let mut mass = 0.0;
        for (x, p) in atoms {
            let dx = x[0] - c[0];
            let dy = x[1] - c[1];
            if dx * dx + dy * dy <= r2 + DISK_TOL * (1.0 + r2) {
                mass += p;
            }
        }
        best = best.max(mass);
    }
    Ok(ConcentrationResult::exact(best, Method::Exact2d))
}

const BOOTSTRAP_RESAMPLES: usize = 200;

/// Monte Carlo estimate of `Q(law, lambda)` from a seeded point sampler.
///
/// Sample `i` is drawn by calling `sampler` with a seed derived from
/// `(seed, i)`; batches may evaluate in parallel but concatenate in index
/// order, so the result depends only on `seed`. In d = 1 the estimate is the
/// exact sliding window of the empirical measure; in d >= 2 it is a lower
/// bound that uses sample points as candidate centers. The half-width is a
/// percentile bootstrap over 200 multinomial resamples.
pub fn concentration_mc<S>(
    sampler: S,
    lambda: f64,
    n_samples: usize,
    seed: u64,
) -> Result<ConcentrationResult>
where
    S: Fn(u64) -> Vec<f64> + Sync,
{
    const MIN_SAMPLES: usize = 100;
    if n_samples < MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            got: n_samples,
            min: MIN_SAMPLES,
        });
    }
    assert!(lambda >= 0.0 && lambda.is_finite());
    let root = Stream::new(seed);
    let sample_root = root.split(0);
    let samples: Vec<Vec<f64>> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut s = sample_root.split(i as u64);
            sampler(s.next_u64())
        })
        .collect();
    let dim = samples[0].len();
    if samples.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidInput(
            "sampler returned points of mixed dimension".into(),
        ));
    }

    let boot_root = root.split(1);
    let (value, boot_values) = if dim == 1 {
        mc_window_1d(&samples, lambda, &boot_root)
    } else {
        mc_cover_nd(&samples, lambda, &boot_root)
    };

    let mut sorted = boot_values;
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let lo = sorted[(0.025 * (sorted.len() - 1) as f64).round() as usize];
    let hi = sorted[(0.975 * (sorted.len() - 1) as f64).round() as usize];
    Ok(ConcentrationResult {
        value: value.min(1.0),
        method: Method::MonteCarlo,
        half_width: ((hi - lo) / 2.0).max(0.0),
        samples: n_samples as u64,
    })
}

fn mc_window_1d(samples: &[Vec<f64>], lambda: f64, boot_root: &Stream) -> (f64, Vec<f64>) {
    let n = samples.len();
    let mut positions: Vec<f64> = samples.iter().map(|p| p[0]).collect();
    positions.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let uniform = vec![1.0 / n as f64; n];
    let value = max_window_mass(&positions, &uniform, lambda);

    let boot_values: Vec<f64> = (0..BOOTSTRAP_RESAMPLES)
        .into_par_iter()
        .map(|b| {
            let mut s = boot_root.split(b as u64);
            let mut weights = vec![0.0_f64; n];
            let unit = 1.0 / n as f64;
            for _ in 0..n {
                weights[s.next_index(n)] += unit;
            }
            max_window_mass(&positions, &weights, lambda)
        })
        .collect();
    (value, boot_values)
}

/// Candidate-center cap for the d >= 2 lower-bound estimate; the bootstrap
/// re-maximizes over the best [`TOP_CANDIDATES`] centers only.
const MAX_CANDIDATES: usize = 2000;
const TOP_CANDIDATES: usize = 64;

fn mc_cover_nd(samples: &[Vec<f64>], lambda: f64, boot_root: &Stream) -> (f64, Vec<f64>) {
    let n = samples.len();
    let r2 = (lambda / 2.0) * (lambda / 2.0);
    let n_candidates = n.min(MAX_CANDIDATES);
    let stride = n / n_candidates;
    let candidate_idx: Vec<usize> = (0..n_candidates).map(|c| c * stride).collect();

    let members: Vec<Vec<u32>> = candidate_idx
        .par_iter()
        .map(|&ci| {
            let center = &samples[ci];
            let mut list = Vec::new();
            for (i, p) in samples.iter().enumerate() {
                let d2: f64 = p
                    .iter()
                    .zip(center)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                if d2 <= r2 {
                    list.push(i as u32);
                }
            }
            list
        })
        .collect();

    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(members[c].len()));
    let value = members[order[0]].len() as f64 / n as f64;
    let top: Vec<&Vec<u32>> = order
        .iter()
        .take(TOP_CANDIDATES)
        .map(|&c| &members[c])
        .collect();

    let boot_values: Vec<f64> = (0..BOOTSTRAP_RESAMPLES)
        .into_par_iter()
        .map(|b| {
            let mut s = boot_root.split(b as u64);
            let mut counts = vec![0u32; n];
            for _ in 0..n {
                counts[s.next_index(n)] += 1;
            }
            let best = top
                .iter()
                .map(|list| list.iter().map(|&i| counts[i as usize] as u64).sum::<u64>())
                .max()
                .unwrap_or(0);
            best as f64 / n as f64
        })
        .collect();
    (value, boot_values)
}

/// Memory cap for the enumeration path: distinct partial sums kept at once.
const ENUM_ATOM_CAP: usize = 1 << 25;
const ENUM_N_CAP: usize = 30;
/// Grid cap for the subset-sum DP (entries of the probability vector).
const DP_GRID_CAP: usize = 20_000_000;

/// Exact `Q(F_a, tau)` for Rademacher summands: the distribution of
/// `sum_k +-a_k` is built exactly, then the 1-d window maximum is taken.
///
/// Coefficients lying on a common grid take an integer subset-sum DP (any
/// `n`); otherwise the 2^n sign patterns are enumerated by convolution with
/// atom merging, capped at n <= 30.
pub fn rademacher_sum_concentration(
    a: &CoefficientVector,
    tau: f64,
) -> Result<ConcentrationResult> {
    assert!(tau >= 0.0 && tau.is_finite());
    let coeffs = a.scalars()?;
    if let Some((grid, steps)) = common_grid(&coeffs) {
        let (positions, masses) = rademacher_dp(&steps, grid);
        return Ok(ConcentrationResult::exact(
            max_window_mass(&positions, &masses, tau),
            Method::Dp,
        ));
    }
    if coeffs.len() > ENUM_N_CAP {
        return Err(Error::InstanceTooLarge(format!(
            "{} non-griddable coefficients exceed the enumeration cap {ENUM_N_CAP}",
            coeffs.len()
        )));
    }
    let (positions, masses) = rademacher_enumerate(&coeffs)?;
    Ok(ConcentrationResult::exact(
        max_window_mass(&positions, &masses, tau),
        Method::Exact1d,
    ))
}

/// Greatest common grid of the coefficients: `g` with every `|a_k| = m_k g`
/// for integers `m_k`, found by a toleranced Euclid pass. Returns the grid
/// and the integer multipliers, or None when the coefficients are
/// incommensurable or the DP grid would be too large.
fn common_grid(coeffs: &[f64]) -> Option<(f64, Vec<i64>)> {
    let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        // all coefficients zero: the sum is a point mass at 0
        return Some((1.0, vec![0; coeffs.len()]));
    }
    let tol = 1e-9 * scale;
    let mut g = 0.0_f64;
    for &c in coeffs {
        let mut a = g;
        let mut b = c.abs();
        while b > tol {
            let t = a % b;
            a = b;
            b = t;
        }
        g = a;
    }
    if g <= tol {
        return None;
    }
    let mut steps = Vec::with_capacity(coeffs.len());
    let mut span: i64 = 0;
    for &c in coeffs {
        let m = (c / g).round();
        if (c - m * g).abs() > tol {
            return None;
        }
        steps.push(m as i64);
        span += (m as i64).abs();
    }
    if 2 * span + 1 > DP_GRID_CAP as i64 {
        return None;
    }
    Some((g, steps))
}

/// Exact subset-sum distribution of `sum_k +-m_k` on the integer grid;
/// probabilities are dyadic rationals, exact in f64 up to n ~ 50.
fn rademacher_dp(steps: &[i64], grid: f64) -> (Vec<f64>, Vec<f64>) {
    let span: i64 = steps.iter().map(|m| m.abs()).sum();
    let size = (2 * span + 1) as usize;
    let offset = span;
    let mut prob = vec![0.0_f64; size];
    prob[offset as usize] = 1.0;
    let mut lo = offset;
    let mut hi = offset;
    for &m in steps {
        if m == 0 {
            continue;
        }
        let am = m.abs();
        let mut next = vec![0.0_f64; size];
        for v in lo..=hi {
            let p = prob[v as usize];
            if p > 0.0 {
                next[(v - am) as usize] += 0.5 * p;
                next[(v + am) as usize] += 0.5 * p;
            }
        }
        prob = next;
        lo -= am;
        hi += am;
    }
    let mut positions = Vec::new();
    let mut masses = Vec::new();
    for v in lo..=hi {
        let p = prob[v as usize];
        if p > 0.0 {
            positions.push((v - offset) as f64 * grid);
            masses.push(p);
        }
    }
    (positions, masses)
}

/// All 2^n sign sums by iterative convolution with duplicate merging.
fn rademacher_enumerate(coeffs: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut positions = vec![0.0_f64];
    let mut masses = vec![1.0_f64];
    for &c in coeffs {
        let mut next: Vec<(f64, f64)> = Vec::with_capacity(2 * positions.len());
        for (x, p) in positions.iter().zip(&masses) {
            next.push((x - c, 0.5 * p));
            next.push((x + c, 0.5 * p));
        }
        next.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        positions.clear();
        masses.clear();
        for (x, p) in next {
            match positions.last() {
                Some(last) if (x - last).abs() <= 1e-12 => {
                    *masses.last_mut().unwrap() += p;
                }
                _ => {
                    positions.push(x);
                    masses.push(p);
                }
            }
        }
        if positions.len() > ENUM_ATOM_CAP {
            return Err(Error::InstanceTooLarge(format!(
                "sign-sum support exceeded {ENUM_ATOM_CAP} atoms"
            )));
        }
    }
    Ok((positions, masses))
}

/// Exact law of `sum_k X_k a_k` (scalar summands, coefficients in R^d) by
/// iterated convolution with atom merging. Exponential in the worst case;
/// intended for desk-scale instances.
pub fn law_of_weighted_sum(
    law_of_x: &FiniteDiscreteMeasure,
    a: &CoefficientVector,
) -> Result<FiniteDiscreteMeasure> {
    let x_atoms = law_of_x.scalar_atoms()?;
    if !law_of_x.is_probability() {
        return Err(Error::InvalidMeasure(
            "weighted sum needs a probability law".into(),
        ));
    }
    let dim = a.dim();
    let mut law = FiniteDiscreteMeasure::point_mass(vec![0.0; dim])?;
    for ak in a.entries() {
        let term_atoms: Vec<(Vec<f64>, f64)> = x_atoms
            .iter()
            .map(|(x, p)| (ak.iter().map(|c| c * x).collect(), *p))
            .collect();
        let term = FiniteDiscreteMeasure::probability(dim, term_atoms)?;
        law = law.convolve(&term)?;
        if law.atoms().len() > ENUM_ATOM_CAP {
            return Err(Error::InstanceTooLarge(format!(
                "weighted-sum support exceeded {ENUM_ATOM_CAP} atoms"
            )));
        }
    }
    Ok(law)
}

/// Exact binomial central coefficient value `C(n, floor(n/2)) / 2^n`, the
/// classical extremal concentration of the all-ones sign sum for 0 <= tau < 2.
pub fn central_binomial_concentration(n: usize) -> f64 {
    let mut c = 1.0_f64; // C(n, 0)
    let k = n / 2;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c / 2.0_f64.powi(n as i32)
}
