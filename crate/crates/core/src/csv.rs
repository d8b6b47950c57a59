//! Number formatting shared by the CSV exports.

/// Rounds to `digits` significant digits and prints the shortest decimal
/// that reads back as the rounded value, in exponent form outside
/// `[1e-5, 1e15)`.
pub fn significant(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap();
    // Avoid "-0".
    if rounded == 0.0 {
        return "0".into();
    }
    let magnitude = rounded.abs();
    if (1e-5..1e15).contains(&magnitude) {
        rounded.to_string()
    } else {
        format!("{rounded:e}")
    }
}

/// [`significant`] with the 12 digits used by every table.
pub fn number(x: f64) -> String {
    significant(x, 12)
}
