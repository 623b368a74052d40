//! Finite discrete measures on R^d, coefficient vectors, dominated
//! sub-measures, and the scalar helpers used by the bound evaluators.
//!
//! Two norms are in play throughout the crate and each routine states which
//! one it uses: the sup-norm `|x| = max_j |x_j|` (integration boxes,
//! tau-neighborhoods) and the Euclidean norm `||x||` (the concentration ball
//! of radius lambda/2).

use crate::error::{Error, Result};
use statrs::distribution::{ContinuousCDF, Normal};

/// Points closer than this in sup-norm are treated as the same atom and
/// their masses are summed.
pub const MERGE_TOL: f64 = 1e-12;

/// Slack allowed on total mass when classifying a measure as probability /
/// sub-probability.
pub const MASS_TOL: f64 = 1e-12;

/// Sup-norm `max_j |x_j|`.
#[inline]
pub fn sup_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Euclidean norm.
#[inline]
pub fn euclid_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Sup-norm distance between two points of equal dimension.
#[inline]
pub fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
}

/// Total-mass class of a measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    /// Total mass 1 within [`MASS_TOL`].
    Probability,
    /// Total mass at most 1 + [`MASS_TOL`].
    SubProbability,
    /// Any positive total mass (spectral measures).
    Unnormalized,
}

/// A finite discrete measure on R^d: finitely many atoms with strictly
/// positive masses, pairwise distinct after merging points within sup-norm
/// [`MERGE_TOL`].
#[derive(Clone, Debug)]
pub struct FiniteDiscreteMeasure {
    dim: usize,
    atoms: Vec<(Vec<f64>, f64)>,
    kind: MeasureKind,
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y).expect("finite coordinates") {
            std::cmp::Ordering::Equal => continue,
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

impl FiniteDiscreteMeasure {
    /// Build a measure from raw atoms, merging near-duplicates and checking
    /// the total mass against `kind`.
    pub fn new(dim: usize, atoms: Vec<(Vec<f64>, f64)>, kind: MeasureKind) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMeasure("dimension must be positive".into()));
        }
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("measure needs at least one atom".into()));
        }
        for (x, p) in &atoms {
            if x.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: x.len(),
                });
            }
            if !x.iter().all(|v| v.is_finite()) {
                return Err(Error::InvalidMeasure(format!("non-finite atom {x:?}")));
            }
            if !p.is_finite() || *p <= 0.0 {
                return Err(Error::InvalidMeasure(format!("nonpositive mass {p}")));
            }
        }
        let atoms = merge_atoms(atoms);
        let total: f64 = atoms.iter().map(|(_, p)| p).sum();
        match kind {
            MeasureKind::Probability if (total - 1.0).abs() > MASS_TOL => {
                return Err(Error::InvalidMeasure(format!(
                    "total mass {total} is not 1 within {MASS_TOL}"
                )));
            }
            MeasureKind::SubProbability if total > 1.0 + MASS_TOL => {
                return Err(Error::InvalidMeasure(format!(
                    "total mass {total} exceeds 1"
                )));
            }
            _ => {}
        }
        Ok(FiniteDiscreteMeasure { dim, atoms, kind })
    }

    /// Probability measure from atoms.
    pub fn probability(dim: usize, atoms: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        Self::new(dim, atoms, MeasureKind::Probability)
    }

    /// Unnormalized measure (e.g. a spectral measure).
    pub fn unnormalized(dim: usize, atoms: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        Self::new(dim, atoms, MeasureKind::Unnormalized)
    }

    /// Point mass E_y.
    pub fn point_mass(point: Vec<f64>) -> Result<Self> {
        let dim = point.len();
        Self::probability(dim, vec![(point, 1.0)])
    }

    /// One-dimensional probability measure from (position, mass) pairs.
    pub fn from_scalar_atoms(atoms: &[(f64, f64)]) -> Result<Self> {
        Self::probability(1, atoms.iter().map(|&(x, p)| (vec![x], p)).collect())
    }

    /// The +-1 law with equal masses.
    pub fn rademacher() -> Self {
        Self::from_scalar_atoms(&[(-1.0, 0.5), (1.0, 0.5)]).expect("valid")
    }

    /// Uniform law on the given scalar points.
    pub fn uniform_on(points: &[f64]) -> Result<Self> {
        let p = 1.0 / points.len() as f64;
        Self::from_scalar_atoms(&points.iter().map(|&x| (x, p)).collect::<Vec<_>>())
    }

    /// Equal-mass quantile discretization of the standard normal law:
    /// `k` atoms at the quantile midpoints Phi^{-1}((i + 1/2)/k).
    pub fn gaussian_quantiles(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidMeasure("need at least one atom".into()));
        }
        let normal = Normal::new(0.0, 1.0).expect("standard normal");
        let p = 1.0 / k as f64;
        let atoms = (0..k)
            .map(|i| (vec![normal.inverse_cdf((i as f64 + 0.5) / k as f64)], p))
            .collect();
        Self::probability(1, atoms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    /// Atoms in lexicographic position order.
    pub fn atoms(&self) -> &[(Vec<f64>, f64)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, p)| p).sum()
    }

    pub fn is_probability(&self) -> bool {
        self.kind == MeasureKind::Probability
    }

    /// Scalar positions for a one-dimensional measure.
    pub fn scalar_atoms(&self) -> Result<Vec<(f64, f64)>> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: self.dim,
            });
        }
        Ok(self.atoms.iter().map(|(x, p)| (x[0], *p)).collect())
    }

    /// Mass of the atom at `point`, 0 if absent (sup-norm match within
    /// [`MERGE_TOL`]).
    pub fn mass_at(&self, point: &[f64]) -> f64 {
        self.atoms
            .iter()
            .filter(|(x, _)| sup_dist(x, point) <= MERGE_TOL)
            .map(|(_, p)| p)
            .sum()
    }

    /// Largest atom mass.
    pub fn max_atom_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, p)| *p).fold(0.0, f64::max)
    }

    /// Law of `c * Y` when `Y ~ self`.
    pub fn scaled(&self, c: f64) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|(x, p)| (x.iter().map(|v| c * v).collect(), *p))
            .collect();
        FiniteDiscreteMeasure {
            dim: self.dim,
            atoms: merge_atoms(atoms),
            kind: self.kind,
        }
    }

    /// Law of `Y + v` when `Y ~ self`.
    pub fn shifted(&self, v: &[f64]) -> Result<Self> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let atoms = self
            .atoms
            .iter()
            .map(|(x, p)| (x.iter().zip(v).map(|(a, b)| a + b).collect(), *p))
            .collect();
        Ok(FiniteDiscreteMeasure {
            dim: self.dim,
            atoms: merge_atoms(atoms),
            kind: self.kind,
        })
    }

    /// Exact convolution (law of the sum of independent draws).
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut atoms = Vec::with_capacity(self.atoms.len() * other.atoms.len());
        for (x, p) in &self.atoms {
            for (y, q) in &other.atoms {
                atoms.push((x.iter().zip(y).map(|(a, b)| a + b).collect(), p * q));
            }
        }
        FiniteDiscreteMeasure::new(self.dim, atoms, self.kind)
    }

    /// True when the measure is invariant under negation: every atom at `z`
    /// has a matching atom at `-z` with the same mass (within `tol`).
    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.atoms.iter().all(|(x, p)| {
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            self.atoms
                .iter()
                .any(|(y, q)| sup_dist(y, &neg) <= MERGE_TOL && (p - q).abs() <= tol)
        })
    }
}

/// Sort lexicographically and sum masses of points within sup-norm
/// [`MERGE_TOL`] of the group representative (the first point in order).
fn merge_atoms(mut atoms: Vec<(Vec<f64>, f64)>) -> Vec<(Vec<f64>, f64)> {
    atoms.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    let mut merged: Vec<(Vec<f64>, f64)> = Vec::with_capacity(atoms.len());
    for (x, p) in atoms {
        match merged.last_mut() {
            Some((y, q)) if sup_dist(y, &x) <= MERGE_TOL => *q += p,
            _ => merged.push((x, p)),
        }
    }
    merged
}

/// Law of `X1 - X2` for independent copies of a one-dimensional `X`:
/// the exact discrete self-convolution with reflection.
pub fn symmetrize(law_of_x: &FiniteDiscreteMeasure) -> Result<FiniteDiscreteMeasure> {
    if law_of_x.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: law_of_x.dim(),
        });
    }
    if !law_of_x.is_probability() {
        return Err(Error::InvalidMeasure(
            "symmetrize needs a probability measure".into(),
        ));
    }
    let atoms = law_of_x.scalar_atoms()?;
    let mut out = Vec::with_capacity(atoms.len() * atoms.len());
    for (xi, pi) in &atoms {
        for (xj, pj) in &atoms {
            out.push((vec![xi - xj], pi * pj));
        }
    }
    FiniteDiscreteMeasure::probability(1, out)
}

/// The floor convention used by every bound here: the largest integer `k`
/// with `k < x`, strictly. Differs from `f64::floor` at integers, where it
/// returns `x - 1`.
pub fn paper_floor(x: f64) -> i64 {
    assert!(x.is_finite(), "paper_floor needs a finite argument");
    let f = x.floor();
    if f == x {
        f as i64 - 1
    } else {
        f as i64
    }
}

/// The integrand weight `log(1 + paper_floor(tau / (eps |z|)))`.
///
/// Zero on `|z| >= tau/eps`; `+inf` sentinel at `z = 0` (callers decide how
/// to treat mass at the origin).
pub fn log_factor(z: f64, tau: f64, eps: f64) -> f64 {
    assert!(tau > 0.0 && eps > 0.0, "log_factor needs tau, eps > 0");
    if z == 0.0 {
        return f64::INFINITY;
    }
    let az = z.abs();
    if az >= tau / eps {
        return 0.0;
    }
    (1.0 + paper_floor(tau / (eps * az)) as f64).ln()
}

/// Tail mass `G{ |z| >= delta }` of a one-dimensional probability measure
/// (closed inequality).
pub fn tail_mass(g: &FiniteDiscreteMeasure, delta: f64) -> Result<f64> {
    assert!(delta > 0.0, "tail_mass needs delta > 0");
    Ok(g.scalar_atoms()?
        .iter()
        .filter(|(z, _)| z.abs() >= delta)
        .map(|(_, p)| p)
        .sum())
}

/// A measure `V = f . G` dominated by its base `G`: a weight `0 <= f <= 1`
/// per atom of `G`. For discrete measures the atomwise constraint is
/// equivalent to domination on every Borel set.
#[derive(Clone, Debug)]
pub struct SubMeasureSpec {
    base: FiniteDiscreteMeasure,
    weights: Vec<f64>,
    lambda: f64,
}

impl SubMeasureSpec {
    pub fn new(base: FiniteDiscreteMeasure, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != base.atoms().len() {
            return Err(Error::InvalidInput(format!(
                "{} weights for {} atoms",
                weights.len(),
                base.atoms().len()
            )));
        }
        let mut clamped = Vec::with_capacity(weights.len());
        for &f in &weights {
            if !f.is_finite() || f < 0.0 || f > 1.0 + MASS_TOL {
                return Err(Error::InvalidInput(format!(
                    "weight {f} outside [0, 1]"
                )));
            }
            clamped.push(f.min(1.0));
        }
        let lambda: f64 = clamped
            .iter()
            .zip(base.atoms())
            .map(|(f, (_, p))| f * p)
            .sum();
        if lambda <= 0.0 {
            return Err(Error::EmptySubmeasure);
        }
        Ok(SubMeasureSpec {
            base,
            weights: clamped,
            lambda,
        })
    }

    /// Indicator weight `f = 1{ |z| >= delta }` on a one-dimensional base.
    pub fn indicator_tail(base: FiniteDiscreteMeasure, delta: f64) -> Result<Self> {
        let weights = base
            .scalar_atoms()?
            .iter()
            .map(|(z, _)| if z.abs() >= delta { 1.0 } else { 0.0 })
            .collect();
        Self::new(base, weights).map_err(|e| match e {
            Error::EmptySubmeasure => Error::ZeroTail { delta },
            other => other,
        })
    }

    /// The weight `f(z) = 1 / max{1, log_factor(z, tau, eps)}` with
    /// `f(0) = 0`, the choice that keeps the exponent integral finite for
    /// every base measure.
    pub fn log_weight(base: FiniteDiscreteMeasure, tau: f64, eps: f64) -> Result<Self> {
        let weights = base
            .scalar_atoms()?
            .iter()
            .map(|(z, _)| {
                if *z == 0.0 {
                    0.0
                } else {
                    1.0 / log_factor(*z, tau, eps).max(1.0)
                }
            })
            .collect();
        Self::new(base, weights).map_err(|e| match e {
            Error::EmptySubmeasure => Error::DegenerateLaw,
            other => other,
        })
    }

    pub fn base(&self) -> &FiniteDiscreteMeasure {
        &self.base
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Total mass of `V`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Atoms of the normalized law `F = V / lambda` (zero-weight atoms are
    /// dropped).
    pub fn normalized_atoms(&self) -> Vec<(Vec<f64>, f64)> {
        self.weights
            .iter()
            .zip(self.base.atoms())
            .filter(|(f, _)| **f > 0.0)
            .map(|(f, (x, p))| (x.clone(), f * p / self.lambda))
            .collect()
    }

    /// Mass that `V` places at the origin.
    pub fn mass_at_zero(&self) -> f64 {
        self.weights
            .iter()
            .zip(self.base.atoms())
            .filter(|(_, (x, _))| sup_norm(x) <= MERGE_TOL)
            .map(|(f, (_, p))| f * p)
            .sum()
    }
}

/// The weighted coefficients a = (a_1, ..., a_n), a_k in R^d.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector {
    dim: usize,
    entries: Vec<Vec<f64>>,
}

impl CoefficientVector {
    pub fn new(dim: usize, entries: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if entries.is_empty() {
            return Err(Error::InvalidInput("need at least one coefficient".into()));
        }
        for a in &entries {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.len(),
                });
            }
            if !a.iter().all(|v| v.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite coefficient {a:?}")));
            }
        }
        Ok(CoefficientVector { dim, entries })
    }

    /// One-dimensional coefficients from scalars.
    pub fn from_scalars(values: &[f64]) -> Result<Self> {
        Self::new(1, values.iter().map(|&v| vec![v]).collect())
    }

    /// `n` ones in dimension 1.
    pub fn ones(n: usize) -> Self {
        Self::from_scalars(&vec![1.0; n]).expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    /// Scalar values for dimension-1 coefficients.
    pub fn scalars(&self) -> Result<Vec<f64>> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: self.dim,
            });
        }
        Ok(self.entries.iter().map(|a| a[0]).collect())
    }

    /// Per-axis maximum of `|a_k[axis]|`, the oscillation scale of cosine
    /// factors along each integration axis.
    pub fn axis_scales(&self) -> Vec<f64> {
        let mut scales = vec![0.0_f64; self.dim];
        for a in &self.entries {
            for (s, v) in scales.iter_mut().zip(a) {
                *s = s.max(v.abs());
            }
        }
        scales
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_atoms_eq(m: &FiniteDiscreteMeasure, expected: &[(f64, f64)]) {
        let got = m.scalar_atoms().unwrap();
        assert_eq!(got.len(), expected.len(), "atom count: {got:?}");
        for ((x, p), (ex, ep)) in got.iter().zip(expected) {
            assert!((x - ex).abs() <= 1e-12, "position {x} vs {ex}");
            assert!((p - ep).abs() <= 1e-12, "mass {p} vs {ep}");
        }
    }

    #[test]
    fn symmetrize_rademacher_matches_outcome_enumeration() {
        // oracle: enumerate the 2x2 outcomes of X1 - X2
        let x = FiniteDiscreteMeasure::rademacher();
        let mut mass = std::collections::BTreeMap::new();
        for (x1, p1) in [(-1.0, 0.5), (1.0, 0.5)] {
            for (x2, p2) in [(-1.0, 0.5), (1.0, 0.5)] {
                *mass.entry((x1 - x2) as i64).or_insert(0.0) += p1 * p2;
            }
        }
        assert_eq!(mass[&-2], 0.25);
        assert_eq!(mass[&0], 0.5);
        assert_eq!(mass[&2], 0.25);

        let g = symmetrize(&x).unwrap();
        assert_atoms_eq(&g, &[(-2.0, 0.25), (0.0, 0.5), (2.0, 0.25)]);
    }

    #[test]
    fn symmetrize_point_mass_is_point_at_zero() {
        let x = FiniteDiscreteMeasure::point_mass(vec![3.7]).unwrap();
        let g = symmetrize(&x).unwrap();
        assert_atoms_eq(&g, &[(0.0, 1.0)]);
    }

    #[test]
    fn symmetrize_uniform_three_points() {
        // oracle: 3x3 outcome enumeration gives {0: 3/9, +-1: 2/9, +-2: 1/9}
        let x = FiniteDiscreteMeasure::uniform_on(&[0.0, 1.0, 2.0]).unwrap();
        let g = symmetrize(&x).unwrap();
        assert_atoms_eq(
            &g,
            &[
                (-2.0, 1.0 / 9.0),
                (-1.0, 2.0 / 9.0),
                (0.0, 3.0 / 9.0),
                (1.0, 2.0 / 9.0),
                (2.0, 1.0 / 9.0),
            ],
        );
    }

    #[test]
    fn symmetrize_rejects_non_probability() {
        let m = FiniteDiscreteMeasure::unnormalized(1, vec![(vec![0.0], 2.0)]).unwrap();
        assert!(matches!(symmetrize(&m), Err(Error::InvalidMeasure(_))));
    }

    #[test]
    fn symmetrize_output_is_symmetric_with_unit_mass() {
        let x = FiniteDiscreteMeasure::from_scalar_atoms(&[(0.3, 0.2), (1.7, 0.5), (-2.2, 0.3)])
            .unwrap();
        let g = symmetrize(&x).unwrap();
        assert!(g.is_symmetric(1e-12));
        assert!((g.total_mass() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn paper_floor_is_strict_at_integers() {
        assert_eq!(paper_floor(1.0), 0);
        assert_eq!(paper_floor(2.5), 2);
        assert_eq!(paper_floor(-0.5), -1);
        assert_eq!(paper_floor(0.0), -1);
        assert_eq!(paper_floor(-3.0), -4);
    }

    #[test]
    fn paper_floor_brackets_its_argument() {
        let mut s = crate::rng::Stream::new(11);
        for _ in 0..2000 {
            let x = s.uniform(-50.0, 50.0);
            let k = paper_floor(x) as f64;
            assert!(k < x && x <= k + 1.0, "x = {x}, k = {k}");
        }
        // integer arguments sit exactly at the top of their bracket
        for k in -5..=5 {
            let x = k as f64;
            assert_eq!(paper_floor(x) as f64, x - 1.0);
        }
    }

    #[test]
    fn log_factor_examples() {
        assert_eq!(log_factor(2.0, 1.0, 1.0), 0.0);
        // tau/(eps|z|) = 10, strict floor 9, so log 10
        let v = log_factor(1.0, 1.0, 0.1);
        assert!((v - 10.0_f64.ln()).abs() < 1e-15, "{v}");
        assert!(log_factor(0.0, 1.0, 1.0).is_infinite());
    }

    #[test]
    fn log_factor_zero_on_closed_outer_region_and_monotone() {
        assert_eq!(log_factor(1.0, 1.0, 1.0), 0.0); // |z| = tau/eps exactly
        let mut s = crate::rng::Stream::new(5);
        for _ in 0..500 {
            let tau = s.uniform(0.1, 3.0);
            let eps = s.uniform(0.1, 3.0);
            let z1 = s.uniform(1e-3, 5.0);
            let z2 = z1 + s.uniform(0.0, 5.0);
            let f1 = log_factor(z1, tau, eps);
            let f2 = log_factor(z2, tau, eps);
            assert!(f1 >= f2, "not nonincreasing: {f1} < {f2}");
            assert!(f2 >= 0.0);
            assert_eq!(log_factor(-z1, tau, eps), f1);
        }
    }

    #[test]
    fn tail_mass_on_symmetrized_rademacher() {
        let g = symmetrize(&FiniteDiscreteMeasure::rademacher()).unwrap();
        assert_eq!(tail_mass(&g, 1.0).unwrap(), 0.5);
        assert_eq!(tail_mass(&g, 2.0).unwrap(), 0.5); // closed inequality
        assert_eq!(tail_mass(&g, 2.0 + 1e-9).unwrap(), 0.0);
        assert_eq!(tail_mass(&g, 1e-300).unwrap(), 0.5); // atom at 0 excluded
    }

    #[test]
    fn tail_mass_nonincreasing_in_delta() {
        let g = symmetrize(
            &FiniteDiscreteMeasure::from_scalar_atoms(&[(0.0, 0.4), (1.3, 0.35), (-0.4, 0.25)])
                .unwrap(),
        )
        .unwrap();
        let mut prev = 1.0;
        for i in 1..200 {
            let d = i as f64 * 0.02;
            let t = tail_mass(&g, d).unwrap();
            assert!(t <= prev + 1e-15);
            prev = t;
        }
    }

    #[test]
    fn atom_merging_sums_masses() {
        let m = FiniteDiscreteMeasure::probability(
            1,
            vec![(vec![1.0], 0.5), (vec![1.0 + 5e-13], 0.25), (vec![0.0], 0.25)],
        )
        .unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert!((m.mass_at(&[1.0]) - 0.75).abs() <= 1e-15);
    }

    #[test]
    fn measure_rejects_bad_input() {
        assert!(FiniteDiscreteMeasure::probability(1, vec![(vec![0.0], 0.5)]).is_err());
        assert!(FiniteDiscreteMeasure::probability(1, vec![(vec![0.0], -1.0)]).is_err());
        assert!(FiniteDiscreteMeasure::probability(1, vec![(vec![f64::NAN], 1.0)]).is_err());
        assert!(FiniteDiscreteMeasure::probability(2, vec![(vec![0.0], 1.0)]).is_err());
        assert!(FiniteDiscreteMeasure::probability(1, vec![]).is_err());
    }

    #[test]
    fn submeasure_weights_bounded_and_dominated() {
        let g = symmetrize(&FiniteDiscreteMeasure::rademacher()).unwrap();
        let v = SubMeasureSpec::new(g.clone(), vec![0.5, 0.0, 1.0]).unwrap();
        assert!((v.lambda() - (0.5 * 0.25 + 1.0 * 0.25)).abs() <= 1e-15);
        for (f, (_, p)) in v.weights().iter().zip(v.base().atoms()) {
            assert!(f * p <= *p + 1e-15);
        }
        assert!(SubMeasureSpec::new(g.clone(), vec![1.5, 0.0, 0.0]).is_err());
        assert!(SubMeasureSpec::new(g.clone(), vec![-0.1, 0.0, 0.0]).is_err());
        assert!(matches!(
            SubMeasureSpec::new(g, vec![0.0, 0.0, 0.0]),
            Err(Error::EmptySubmeasure)
        ));
    }

    #[test]
    fn indicator_tail_matches_tail_mass() {
        let g = symmetrize(&FiniteDiscreteMeasure::rademacher()).unwrap();
        let v = SubMeasureSpec::indicator_tail(g.clone(), 1.0).unwrap();
        assert!((v.lambda() - tail_mass(&g, 1.0).unwrap()).abs() <= 1e-15);
        assert!(matches!(
            SubMeasureSpec::indicator_tail(g, 10.0),
            Err(Error::ZeroTail { .. })
        ));
    }

    #[test]
    fn gaussian_quantiles_shape() {
        let m = FiniteDiscreteMeasure::gaussian_quantiles(256).unwrap();
        assert_eq!(m.atoms().len(), 256);
        assert!((m.total_mass() - 1.0).abs() <= 1e-9);
        assert!(m.is_symmetric(1e-9));
        let mean: f64 = m.scalar_atoms().unwrap().iter().map(|(x, p)| x * p).sum();
        assert!(mean.abs() < 1e-12);
    }

    #[test]
    fn scaled_and_shifted() {
        let m = FiniteDiscreteMeasure::uniform_on(&[0.0, 1.0]).unwrap();
        let s = m.scaled(-2.0);
        assert_atoms_eq(&s, &[(-2.0, 0.5), (0.0, 0.5)]);
        let t = m.shifted(&[3.0]).unwrap();
        assert_atoms_eq(&t, &[(3.0, 0.5), (4.0, 0.5)]);
    }
}
