//! Thin wrapper over tanh-sinh quadrature with fixed breakpoints.

/// Integral and accumulated error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

/// `int_a^b f` split at unit-width (or narrower) pieces starting from `a`,
/// so oscillatory integrands see only a few periods per piece. Pieces are
/// summed left to right.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, width: f64, tol: f64) -> QuadResult {
    let pieces = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / pieces as f64;
    let per = tol / pieces as f64;
    let mut out = QuadResult { value: 0.0, error: 0.0 };
    for i in 0..pieces {
        let lo = a + i as f64 * h;
        let hi = if i + 1 == pieces { b } else { lo + h };
        let r = quadrature::double_exponential::integrate(&f, lo, hi, per);
        out.value += r.integral;
        out.error += r.error_estimate;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_oscillation() {
        let r = integrate(|x| x * x, 0.0, 3.0, 1.0, 1e-12);
        assert!((r.value - 9.0).abs() < 1e-11, "{r:?}");
        let w = 37.0;
        let r = integrate(|x: f64| (w * x).cos(), 0.0, 50.0, 0.5, 1e-12);
        assert!((r.value - (w * 50.0).sin() / w).abs() < 1e-10, "{r:?}");
    }
}
