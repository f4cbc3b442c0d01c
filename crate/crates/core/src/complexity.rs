//! Growth-exponent fitting for the benchmark harness.

/// Least-squares slope of `log y` against `log x`, i.e. the exponent `k` in
/// `y ≈ c·x^k`. Returns `None` with fewer than two distinct `x` values or any
/// non-positive sample.
pub fn fit_exponent(points: &[(f64, f64)]) -> Option<f64> {
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if logs.len() < 2 || sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_known_exponents() {
        let linear: Vec<_> = [1e3, 1e4, 1e5].iter().map(|&x| (x, 7.0 * x)).collect();
        assert!((fit_exponent(&linear).unwrap() - 1.0).abs() < 1e-12);
        let cubic: Vec<_> = [10.0, 20.0, 40.0].iter().map(|&x: &f64| (x, 0.5 * x.powi(3))).collect();
        assert!((fit_exponent(&cubic).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(fit_exponent(&[(10.0, 1.0)]), None);
        assert_eq!(fit_exponent(&[(10.0, 1.0), (10.0, 2.0)]), None);
        assert_eq!(fit_exponent(&[(10.0, 0.0), (20.0, 2.0)]), None);
    }
}
