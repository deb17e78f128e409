//! Special functions: J-Bessel of integer order, complex digamma, `e(x)`.

mod bessel;
mod digamma;

pub use bessel::{bessel_bound_check, bessel_j, bessel_j_int, bessel_majorant, BesselBoundCheck, BesselEvalPolicy};
pub use digamma::digamma;

use num_complex::Complex64;

/// `exp(2 pi i x)`, with `x` reduced modulo 1 first.
pub fn e(x: f64) -> Complex64 {
    let r = x - x.round();
    let (s, c) = (std::f64::consts::TAU * r).sin_cos();
    Complex64::new(c, s)
}

/// `e(j / den)` for an exact rational argument.
pub fn e_rational(j: i128, den: i128) -> Complex64 {
    let r = j.rem_euclid(den);
    e(r as f64 / den as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_values() {
        assert_eq!(e(0.0), Complex64::new(1.0, 0.0));
        assert!((e(0.5) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((e(1.0 / 3.0) + e(2.0 / 3.0) + 1.0).norm() <= 1e-15);
        assert!((e(1e9 + 0.25) - Complex64::new(0.0, 1.0)).norm() < 1e-6);
        assert!((e_rational(7, 4) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        for i in 0..100 {
            let z = e(i as f64 * 0.123_456_7);
            assert!((z.norm() - 1.0).abs() < 1e-15);
        }
    }
}
