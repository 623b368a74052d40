//! Arithmetic structure of supports: the symmetric signed-combination sets
//! K_1(u), mass deficits outside their closed sup-norm tau-neighborhoods,
//! and generator search that realizes small deficits with few generators.

use crate::concentration::concentration_mc;
use crate::error::{Error, Result};
use crate::idiv::{sampler_of_model, CompoundPoissonModel};
use crate::measures::{sup_dist, sup_norm, FiniteDiscreteMeasure, MERGE_TOL};
use crate::rng::Stream;
use rayon::prelude::*;
use serde::Serialize;

/// Generators u = (u_1, ..., u_r) in (R^d)^r; r = 0 is allowed.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    dim: usize,
    generators: Vec<Vec<f64>>,
}

/// Materialization cap on K_1(u): 3^12 ~ 5.3e5 points.
pub const MAX_GENERATORS: usize = 12;

impl GeneratorSet {
    pub fn new(dim: usize, generators: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        for g in &generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
            if !g.iter().all(|v| v.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite generator {g:?}")));
            }
        }
        Ok(GeneratorSet { dim, generators })
    }

    pub fn empty(dim: usize) -> Self {
        GeneratorSet {
            dim,
            generators: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn r(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    pub fn extended(&self, v: Vec<f64>) -> Self {
        let mut generators = self.generators.clone();
        generators.push(v);
        GeneratorSet {
            dim: self.dim,
            generators,
        }
    }
}

fn dedup_points(mut points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    points.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.partial_cmp(y).unwrap())
            .find(|o| *o != std::cmp::Ordering::Equal)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        match out.last() {
            Some(last) if sup_dist(last, &p) <= MERGE_TOL => {}
            _ => out.push(p),
        }
    }
    out
}

/// All sums `sum_j n_j u_j` with `n_j in {-1, 0, 1}`, deduplicated.
/// Contains the origin and is symmetric under negation; at most 3^r points.
pub fn enumerate_k1(u: &GeneratorSet) -> Result<Vec<Vec<f64>>> {
    if u.r() > MAX_GENERATORS {
        return Err(Error::TooManyGenerators {
            r: u.r(),
            max: MAX_GENERATORS,
        });
    }
    let mut points = vec![vec![0.0; u.dim()]];
    for g in u.generators() {
        let mut next = Vec::with_capacity(points.len() * 3);
        for p in &points {
            next.push(p.clone());
            next.push(p.iter().zip(g).map(|(a, b)| a + b).collect());
            next.push(p.iter().zip(g).map(|(a, b)| a - b).collect());
        }
        points = dedup_points(next);
    }
    Ok(points)
}

fn covered(atom: &[f64], k1: &[Vec<f64>], tau: f64) -> bool {
    k1.iter().any(|p| sup_dist(atom, p) <= tau)
}

/// `alpha * M{ atoms at sup-norm distance > tau from K_1(u) }` (the
/// neighborhood is closed: distance exactly tau counts as covered).
pub fn deficit(
    m: &FiniteDiscreteMeasure,
    alpha: f64,
    u: &GeneratorSet,
    tau: f64,
) -> Result<f64> {
    assert!(alpha >= 0.0 && tau >= 0.0);
    if m.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: u.dim(),
        });
    }
    let k1 = enumerate_k1(u)?;
    let uncovered_mass: f64 = m
        .atoms()
        .iter()
        .filter(|(x, _)| !covered(x, &k1, tau))
        .map(|(_, p)| p)
        .sum();
    Ok(alpha * uncovered_mass)
}

/// Search strategy for [`search_generators`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Greedy,
    Exact,
}

/// Outcome of a generator search or scaling run.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub generators: Vec<Vec<f64>>,
    pub r: usize,
    pub deficit: f64,
    /// Atom positions left outside the covered neighborhood.
    pub uncovered: Vec<Vec<f64>>,
    /// Deficit after 0, 1, 2, ... accepted generators (nonincreasing).
    pub deficit_trace: Vec<f64>,
    pub gamma: Option<f64>,
    pub gamma_half_width: Option<f64>,
    /// `r / (|log gamma| + 1)`; reported, never asserted against a constant.
    pub ratio_r: Option<f64>,
    /// `deficit / (|log gamma| + 1)^3`.
    pub ratio_deficit: Option<f64>,
    pub notes: Vec<String>,
}

/// Default candidate pool: atom locations, pairwise differences, and
/// half-points. A pragmatic, non-canonical choice.
fn default_pool(m: &FiniteDiscreteMeasure) -> Vec<Vec<f64>> {
    let atoms: Vec<&Vec<f64>> = m.atoms().iter().map(|(x, _)| x).collect();
    let mut pool: Vec<Vec<f64>> = Vec::new();
    for x in &atoms {
        pool.push((*x).clone());
        pool.push(x.iter().map(|v| v / 2.0).collect());
    }
    for i in 0..atoms.len() {
        for j in 0..atoms.len() {
            if i != j {
                pool.push(atoms[i].iter().zip(atoms[j]).map(|(a, b)| a - b).collect());
            }
        }
    }
    pool.retain(|c| sup_norm(c) > MERGE_TOL);
    dedup_points(pool)
}

const POOL_CAP: usize = 5000;
const EXACT_SUBSET_CAP: u128 = 1_000_000;

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Search for generators minimizing the deficit with at most `r_max` of them.
///
/// Greedy mode adds the pool candidate covering the most remaining mass
/// (ties to the lexicographically smallest), then runs one pass of local
/// replacement. Exact mode exhausts all `r_max`-subsets of the pool. The
/// pool defaults to atom locations, pairwise differences, and half-points;
/// pools above 5000 candidates are deterministically subsampled with `seed`.
pub fn search_generators(
    m: &FiniteDiscreteMeasure,
    alpha: f64,
    tau: f64,
    r_max: usize,
    mode: SearchMode,
    candidate_pool: Option<&[Vec<f64>]>,
    seed: u64,
) -> Result<StructureReport> {
    assert!(tau >= 0.0 && alpha >= 0.0);
    if r_max > MAX_GENERATORS {
        return Err(Error::TooManyGenerators {
            r: r_max,
            max: MAX_GENERATORS,
        });
    }
    let mut pool = match candidate_pool {
        Some(p) => dedup_points(p.to_vec()),
        None => default_pool(m),
    };
    for c in &pool {
        if c.len() != m.dim() {
            return Err(Error::DimensionMismatch {
                expected: m.dim(),
                got: c.len(),
            });
        }
    }
    let mut notes = Vec::new();
    if pool.len() > POOL_CAP {
        let mut s = Stream::new(seed);
        let mut kept: Vec<Vec<f64>> = Vec::with_capacity(POOL_CAP);
        for _ in 0..POOL_CAP {
            kept.push(pool[s.next_index(pool.len())].clone());
        }
        pool = dedup_points(kept);
        notes.push(format!("pool subsampled to {} candidates", pool.len()));
    }

    let report = match mode {
        SearchMode::Greedy => greedy_search(m, alpha, tau, r_max, &pool)?,
        SearchMode::Exact => exact_search(m, alpha, tau, r_max, &pool)?,
    };
    Ok(StructureReport {
        notes: [report.notes.clone(), notes].concat(),
        ..report
    })
}

fn uncovered_indices(m: &FiniteDiscreteMeasure, k1: &[Vec<f64>], tau: f64) -> Vec<usize> {
    m.atoms()
        .iter()
        .enumerate()
        .filter(|(_, (x, _))| !covered(x, k1, tau))
        .map(|(i, _)| i)
        .collect()
}

fn report_for(
    m: &FiniteDiscreteMeasure,
    alpha: f64,
    tau: f64,
    generators: Vec<Vec<f64>>,
    trace: Vec<f64>,
) -> Result<StructureReport> {
    let u = GeneratorSet::new(m.dim(), generators.clone())?;
    let k1 = enumerate_k1(&u)?;
    let uncovered = uncovered_indices(m, &k1, tau);
    let deficit_mass: f64 = uncovered.iter().map(|&i| m.atoms()[i].1).sum();
    Ok(StructureReport {
        r: generators.len(),
        generators,
        deficit: alpha * deficit_mass,
        uncovered: uncovered.iter().map(|&i| m.atoms()[i].0.clone()).collect(),
        deficit_trace: trace,
        gamma: None,
        gamma_half_width: None,
        ratio_r: None,
        ratio_deficit: None,
        notes: Vec::new(),
    })
}

fn greedy_search(
    m: &FiniteDiscreteMeasure,
    alpha: f64,
    tau: f64,
    r_max: usize,
    pool: &[Vec<f64>],
) -> Result<StructureReport> {
    let mut chosen: Vec<Vec<f64>> = Vec::new();
    let mut k1 = vec![vec![0.0; m.dim()]];
    let mut uncovered = uncovered_indices(m, &k1, tau);
    let base_mass = |idx: &[usize]| -> f64 { idx.iter().map(|&i| m.atoms()[i].1).sum() };
    let mut trace = vec![alpha * base_mass(&uncovered)];

    for _ in 0..r_max {
        if uncovered.is_empty() {
            break;
        }
        // gain of candidate c: uncovered mass within tau of K1 shifted by +-c
        let gains: Vec<f64> = pool
            .par_iter()
            .map(|c| {
                uncovered
                    .iter()
                    .filter(|&&i| {
                        let atom = &m.atoms()[i].0;
                        k1.iter().any(|p| {
                            let mut dist_plus = 0.0_f64;
                            let mut dist_minus = 0.0_f64;
                            for ((x, pk), ck) in atom.iter().zip(p).zip(c) {
                                dist_plus = dist_plus.max((x - pk - ck).abs());
                                dist_minus = dist_minus.max((x - pk + ck).abs());
                            }
                            dist_plus <= tau || dist_minus <= tau
                        })
                    })
                    .map(|&i| m.atoms()[i].1)
                    .sum()
            })
            .collect();
        let mut best: Option<usize> = None;
        for (i, g) in gains.iter().enumerate() {
            let better = match best {
                None => *g > 0.0,
                Some(b) => {
                    *g > gains[b] || (*g == gains[b] && lex_less(&pool[i], &pool[b]))
                }
            };
            if better {
                best = Some(i);
            }
        }
        let Some(b) = best else { break };
        chosen.push(pool[b].clone());
        let u = GeneratorSet::new(m.dim(), chosen.clone())?;
        k1 = enumerate_k1(&u)?;
        uncovered = uncovered_indices(m, &k1, tau);
        trace.push(alpha * base_mass(&uncovered));
    }

    // one pass of local replacement
    if !chosen.is_empty() && !uncovered.is_empty() {
        for slot in 0..chosen.len() {
            let current_deficit = *trace.last().unwrap();
            let mut best_replacement: Option<(usize, f64)> = None;
            let candidates: Vec<f64> = pool
                .par_iter()
                .map(|c| {
                    if chosen.iter().any(|g| sup_dist(g, c) <= MERGE_TOL) {
                        return f64::INFINITY;
                    }
                    let mut trial = chosen.clone();
                    trial[slot] = c.clone();
                    let u = GeneratorSet::new(m.dim(), trial).expect("validated pool");
                    let k1 = enumerate_k1(&u).expect("r within cap");
                    let mass: f64 = m
                        .atoms()
                        .iter()
                        .filter(|(x, _)| !covered(x, &k1, tau))
                        .map(|(_, p)| p)
                        .sum();
                    alpha * mass
                })
                .collect();
            for (i, d) in candidates.iter().enumerate() {
                let better = match best_replacement {
                    None => *d < current_deficit,
                    Some((bi, bd)) => *d < bd || (*d == bd && lex_less(&pool[i], &pool[bi])),
                };
                if better {
                    best_replacement = Some((i, *d));
                }
            }
            if let Some((i, d)) = best_replacement {
                chosen[slot] = pool[i].clone();
                trace.push(d);
            }
        }
    }

    report_for(m, alpha, tau, chosen, trace)
}

fn exact_search(
    m: &FiniteDiscreteMeasure,
    alpha: f64,
    tau: f64,
    r_max: usize,
    pool: &[Vec<f64>],
) -> Result<StructureReport> {
    let r = r_max.min(pool.len());
    let mut count: u128 = 1;
    for i in 0..r {
        count = count.saturating_mul((pool.len() - i) as u128) / (i as u128 + 1);
        if count > EXACT_SUBSET_CAP {
            return Err(Error::InstanceTooLarge(format!(
                "C({}, {r}) exceeds the exact-mode cap {EXACT_SUBSET_CAP}",
                pool.len()
            )));
        }
    }

    let empty = GeneratorSet::empty(m.dim());
    let mut best_deficit = deficit(m, alpha, &empty, tau)?;
    let mut best_set: Vec<Vec<f64>> = Vec::new();
    let mut indices: Vec<usize> = (0..r).collect();
    if r > 0 {
        loop {
            let gens: Vec<Vec<f64>> = indices.iter().map(|&i| pool[i].clone()).collect();
            let u = GeneratorSet::new(m.dim(), gens.clone())?;
            let d = deficit(m, alpha, &u, tau)?;
            if d < best_deficit {
                best_deficit = d;
                best_set = gens;
                if d == 0.0 {
                    break;
                }
            }
            // next combination
            let mut k = r;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if indices[k] != k + pool.len() - r {
                    indices[k] += 1;
                    for j in (k + 1)..r {
                        indices[j] = indices[j - 1] + 1;
                    }
                    break;
                }
                if k == 0 {
                    indices.clear();
                    break;
                }
            }
            if indices.is_empty() {
                break;
            }
        }
    }
    let trace = vec![best_deficit];
    report_for(m, alpha, tau, best_set, trace)
}

/// Scaling diagnostics for a compound Poisson law `D`: gamma = Q(D, tau) by
/// Monte Carlo, a greedy generator search on the spectral measure, and the
/// ratios `r / (|log gamma| + 1)` and `deficit / (|log gamma| + 1)^3`
/// (reported only; the hidden dimensional constants are unknown).
pub fn theorem_scaling_report(
    model: &CompoundPoissonModel,
    tau: f64,
    r_max: usize,
    mc_samples: usize,
    seed: u64,
) -> Result<StructureReport> {
    let root = Stream::new(seed);
    let sampler = sampler_of_model(model);
    let mut gamma_seed = root.split(0);
    let gamma = concentration_mc(&sampler, tau, mc_samples, gamma_seed.next_u64())?;
    let mut search_seed = root.split(1);
    let mut report = search_generators(
        model.jump_law(),
        model.alpha(),
        tau,
        r_max,
        SearchMode::Greedy,
        None,
        search_seed.next_u64(),
    )?;
    attach_gamma(&mut report, gamma.value, gamma.half_width);
    Ok(report)
}

/// The product-of-factors variant: every factor is shifted by its
/// highest-mass atom before search, gamma is the Monte Carlo concentration
/// of the product law, and the deficit is summed over the shifted factors.
pub fn product_scaling_report(
    factors: &[FiniteDiscreteMeasure],
    tau: f64,
    r_max: usize,
    mc_samples: usize,
    seed: u64,
) -> Result<StructureReport> {
    if factors.is_empty() {
        return Err(Error::InvalidInput("need at least one factor".into()));
    }
    let dim = factors[0].dim();
    for f in factors {
        if f.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: f.dim(),
            });
        }
        if !f.is_probability() {
            return Err(Error::InvalidMeasure("factors must be probability laws".into()));
        }
    }

    // shift every factor by its mode so the searched set can be common
    let mut shifted_atoms: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut cdfs: Vec<Vec<(Vec<f64>, f64)>> = Vec::new();
    for f in factors {
        let mode = f
            .atoms()
            .iter()
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("nonempty")
            .0
            .clone();
        for (x, p) in f.atoms() {
            shifted_atoms.push((x.iter().zip(&mode).map(|(a, b)| a - b).collect(), *p));
        }
        let mut acc = 0.0;
        cdfs.push(
            f.atoms()
                .iter()
                .map(|(x, p)| {
                    acc += p;
                    (x.clone(), acc)
                })
                .collect(),
        );
    }
    let m_sum = FiniteDiscreteMeasure::unnormalized(dim, shifted_atoms)?;

    let root = Stream::new(seed);
    let sampler = move |s: u64| {
        let mut stream = Stream::new(s);
        let mut point = vec![0.0_f64; dim];
        for cdf in &cdfs {
            let u = stream.next_f64();
            let atom = cdf
                .iter()
                .find(|(_, c)| u < *c)
                .unwrap_or_else(|| cdf.last().unwrap());
            for (acc, v) in point.iter_mut().zip(&atom.0) {
                *acc += v;
            }
        }
        point
    };
    let mut gamma_seed = root.split(0);
    let gamma = concentration_mc(sampler, tau, mc_samples, gamma_seed.next_u64())?;
    let mut search_seed = root.split(1);
    let mut report = search_generators(
        &m_sum,
        1.0,
        tau,
        r_max,
        SearchMode::Greedy,
        None,
        search_seed.next_u64(),
    )?;
    report
        .notes
        .push("factors shifted to their highest-mass atoms before search".into());
    attach_gamma(&mut report, gamma.value, gamma.half_width);
    Ok(report)
}

fn attach_gamma(report: &mut StructureReport, gamma: f64, half_width: f64) {
    let log_term = gamma.max(f64::MIN_POSITIVE).ln().abs() + 1.0;
    report.gamma = Some(gamma);
    report.gamma_half_width = Some(half_width);
    report.ratio_r = Some(report.r as f64 / log_term);
    report.ratio_deficit = Some(report.deficit / log_term.powi(3));
}
