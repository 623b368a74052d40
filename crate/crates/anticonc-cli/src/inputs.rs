//! Resolution of file and keyword inputs into library objects.

use anticonc::error::{Error, Result};
use anticonc::io;
use anticonc::measures::{symmetrize, CoefficientVector, FiniteDiscreteMeasure, SubMeasureSpec};
use std::path::Path;

/// `rademacher`, `gaussian:k` (equal-mass quantile atoms, default 256), or a
/// measure JSON file.
pub fn resolve_x(spec: &str) -> Result<FiniteDiscreteMeasure> {
    if spec == "rademacher" {
        return Ok(FiniteDiscreteMeasure::rademacher());
    }
    if spec == "gaussian" {
        return FiniteDiscreteMeasure::gaussian_quantiles(256);
    }
    if let Some(k) = spec.strip_prefix("gaussian:") {
        let k: usize = k
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad atom count in '{spec}'")))?;
        return FiniteDiscreteMeasure::gaussian_quantiles(k);
    }
    io::read_measure(Path::new(spec))
}

/// The symmetric mixing measure: `--g` file when given, else the
/// symmetrization of the `--x` law.
pub fn resolve_g(
    g_path: Option<&str>,
    x_spec: Option<&str>,
) -> Result<FiniteDiscreteMeasure> {
    match (g_path, x_spec) {
        (Some(path), _) => {
            let g = io::read_measure(Path::new(path))?;
            if !g.is_symmetric(1e-9) {
                return Err(Error::InvalidInput(format!(
                    "measure in {path} is not symmetric"
                )));
            }
            Ok(g)
        }
        (None, Some(x)) => symmetrize(&resolve_x(x)?),
        (None, None) => Err(Error::InvalidInput(
            "need --g or --x to determine the mixing measure".into(),
        )),
    }
}

pub fn resolve_coefficients(path: &str) -> Result<CoefficientVector> {
    io::read_coefficients(Path::new(path))
}

/// Weights aligned with `g`'s atoms, from a bare JSON array file.
pub fn resolve_submeasure(
    g: FiniteDiscreteMeasure,
    weights_path: &str,
) -> Result<SubMeasureSpec> {
    let weights = io::read_weights(Path::new(weights_path))?;
    SubMeasureSpec::new(g, weights)
}

/// Comma-separated reals.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad grid entry '{s}'")))
        })
        .collect()
}

/// Default threshold grid for a symmetric mixing measure: the distinct
/// positive atom magnitudes (at most 16, evenly thinned).
pub fn default_delta_grid(g: &FiniteDiscreteMeasure) -> Result<Vec<f64>> {
    let mut mags: Vec<f64> = g
        .scalar_atoms()?
        .iter()
        .map(|(z, _)| z.abs())
        .filter(|z| *z > 1e-12)
        .collect();
    mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
    mags.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    if mags.is_empty() {
        return Err(Error::DegenerateLaw);
    }
    if mags.len() > 16 {
        let stride = mags.len() as f64 / 16.0;
        mags = (0..16)
            .map(|i| mags[(i as f64 * stride) as usize])
            .collect();
    }
    Ok(mags)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keywords_resolve() {
        assert_eq!(resolve_x("rademacher").unwrap().atoms().len(), 2);
        assert_eq!(resolve_x("gaussian:64").unwrap().atoms().len(), 64);
        assert!(resolve_x("gaussian:x").is_err());
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0.5, 1, 2").unwrap(), vec![0.5, 1.0, 2.0]);
        assert!(parse_grid("0.5,oops").is_err());
    }

    #[test]
    fn default_grid_uses_atom_magnitudes() {
        let g = symmetrize(&FiniteDiscreteMeasure::rademacher()).unwrap();
        assert_eq!(default_delta_grid(&g).unwrap(), vec![2.0]);
    }
}
