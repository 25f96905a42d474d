//! Fixed numeric formatting for CSV output.

/// Seventeen significant digits in scientific notation; enough to round-trip
/// any `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}
