//! Fixed-precision rendering for exported numbers (12 significant digits).

/// Rounds to 12 significant digits. Non-finite values pass through.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Shortest text for `round_sig12(x)`; exponent form outside `[1e-6, 1e15)`.
pub fn sig12(x: f64) -> String {
    let y = round_sig12(x);
    if y == 0.0 {
        return "0".into();
    }
    if !y.is_finite() {
        return format!("{y}");
    }
    let a = y.abs();
    if (1e-6..1e15).contains(&a) {
        format!("{y}")
    } else {
        format!("{y:e}")
    }
}
