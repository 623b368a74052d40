//! Diff-stable text output: '.' decimal, no locale, reals with 12
//! significant digits in CSV.

/// A real with 12 significant digits.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.11e}")
    }
}

pub fn opt_sig(x: Option<f64>) -> String {
    x.map(sig).unwrap_or_default()
}

/// One CSV line from cells (cells are known not to contain commas).
pub fn csv_line(cells: &[String]) -> String {
    cells.join(",")
}
