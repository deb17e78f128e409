use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestFunctionKind {
    /// `phi(x) = sigma sinc^2(sigma x)`, `phi_hat(y) = (1 - |y| / sigma)^+`.
    Fejer,
    /// `phi_hat(y) = cos^2(pi y / (2 sigma))` on `[-sigma, sigma]`.
    CosineSquared,
}

impl FromStr for TestFunctionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fejer" => Ok(TestFunctionKind::Fejer),
            "cosine-squared" | "cos2" => Ok(TestFunctionKind::CosineSquared),
            other => Err(Error::param(
                "phi",
                format!("unknown test function {other:?} (fejer, cosine-squared)"),
            )),
        }
    }
}

impl fmt::Display for TestFunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestFunctionKind::Fejer => "fejer",
            TestFunctionKind::CosineSquared => "cosine-squared",
        })
    }
}

/// An even test function whose Fourier transform `phi_hat(y) = int phi(x) e(-xy) dx`
/// is supported in `[-sigma, sigma]`; both sides are closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub kind: TestFunctionKind,
    pub sigma: f64,
}

/// `sin(pi z) / (pi z)`.
fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-8 {
        1.0 - (PI * z).powi(2) / 6.0
    } else {
        (PI * z).sin() / (PI * z)
    }
}

impl TestFunction {
    pub fn new(kind: TestFunctionKind, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::param(
                "sigma",
                format!("support half-width must be positive, got {sigma}"),
            ));
        }
        Ok(TestFunction { kind, sigma })
    }

    pub fn fejer(sigma: f64) -> Result<Self> {
        Self::new(TestFunctionKind::Fejer, sigma)
    }

    pub fn cosine_squared(sigma: f64) -> Result<Self> {
        Self::new(TestFunctionKind::CosineSquared, sigma)
    }

    pub fn phi(&self, x: f64) -> f64 {
        let s = self.sigma;
        match self.kind {
            TestFunctionKind::Fejer => s * sinc(s * x).powi(2),
            TestFunctionKind::CosineSquared => {
                // sigma sin(pi z) / (pi z (1 - z^2)) with z = 2 sigma x
                let z = (2.0 * s * x).abs();
                if z < 0.5 {
                    s * sinc(z) / (1.0 - z * z)
                } else {
                    // sin(pi z) = sin(pi w) and 1 - z^2 = w (1 + z) with w = 1 - z,
                    // which stays finite at z = 1
                    let w = 1.0 - z;
                    s * sinc(w) / (z * (1.0 + z))
                }
            }
        }
    }

    pub fn phi_hat(&self, y: f64) -> f64 {
        let (s, a) = (self.sigma, y.abs());
        if a >= s {
            return 0.0;
        }
        match self.kind {
            TestFunctionKind::Fejer => 1.0 - a / s,
            TestFunctionKind::CosineSquared => (PI * a / (2.0 * s)).cos().powi(2),
        }
    }

    /// `phi_hat(0) - phi_hat(y)` without cancellation.
    pub fn phi_hat_deficit(&self, y: f64) -> f64 {
        let (s, a) = (self.sigma, y.abs());
        if a >= s {
            return 1.0;
        }
        match self.kind {
            TestFunctionKind::Fejer => a / s,
            TestFunctionKind::CosineSquared => (PI * a / (2.0 * s)).sin().powi(2),
        }
    }

    /// `int_{-t}^{t} phi_hat` for `t >= 0`.
    pub fn phi_hat_integral(&self, t: f64) -> f64 {
        let s = self.sigma;
        let t = t.min(s);
        match self.kind {
            TestFunctionKind::Fejer => 2.0 * (t - t * t / (2.0 * s)),
            TestFunctionKind::CosineSquared => t + (s / PI) * (PI * t / s).sin(),
        }
    }

    /// `int_q^inf phi(x) dx` for `q >= 2 / sigma`, by its two leading
    /// asymptotic terms; the returned error bounds the next one.
    pub fn phi_tail(&self, q: f64) -> (f64, f64) {
        let s = self.sigma;
        let w = 2.0 * PI * s;
        match self.kind {
            TestFunctionKind::Fejer => {
                // (1/(2 pi^2 sigma)) int_q^inf (1 - cos(w x)) / x^2 dx
                let c = 1.0 / (2.0 * PI * PI * s);
                let value = c * (1.0 / q + (w * q).sin() / (w * q * q));
                (value, c * 2.0 / (w * w * q.powi(3)))
            }
            TestFunctionKind::CosineSquared => {
                // phi = -sin(w x) / (8 pi sigma^2 x^3) (1 + O(x^-2))
                let c = 1.0 / (8.0 * PI * s * s);
                let value = -c * (w * q).cos() / (w * q.powi(3));
                (value, c * (3.0 / (w * w * q.powi(4)) + 1.0 / (4.0 * s * s * q.powi(4))))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;

    #[test]
    fn closed_forms() {
        let f = TestFunction::fejer(1.0).unwrap();
        assert_eq!(f.phi(0.0), 1.0);
        assert_eq!(f.phi_hat(0.0), 1.0);
        let g = TestFunction::fejer(1.5).unwrap();
        assert_eq!(g.phi_hat(1.5), 0.0);
        assert!((g.phi_hat(0.75) - 0.5).abs() < 1e-15);
        let c = TestFunction::cosine_squared(0.8).unwrap();
        assert!((c.phi(0.0) - 0.8).abs() < 1e-15);
        assert!((c.phi(1.0 / 1.6) - 0.4).abs() < 1e-12);
        assert!((c.phi(1.0 / 1.6 + 1e-9) - 0.4).abs() < 1e-8);
        assert!(TestFunction::fejer(0.0).is_err());
    }

    /// `phi_hat(y) = 2 int_0^inf phi(x) cos(2 pi x y) dx` by quadrature.
    fn transform(tf: &TestFunction, y: f64) -> f64 {
        let q = 4000.0;
        let r = integrate(|x| tf.phi(x) * (2.0 * PI * x * y).cos(), 0.0, q, 0.25, 1e-11);
        let tail = if y == 0.0 { tf.phi_tail(q).0 } else { 0.0 };
        2.0 * (r.value + tail)
    }

    #[test]
    fn fourier_pairs() {
        let f = TestFunction::fejer(1.0).unwrap();
        assert!((transform(&f, 0.0) - 1.0).abs() < 1e-8);
        for tf in [
            TestFunction::fejer(0.7).unwrap(),
            TestFunction::fejer(1.4).unwrap(),
            TestFunction::cosine_squared(0.5).unwrap(),
            TestFunction::cosine_squared(1.2).unwrap(),
        ] {
            for y in [0.0, 0.1, 0.33, 0.6] {
                let d = (transform(&tf, y) - tf.phi_hat(y)).abs();
                assert!(d < 2e-4, "{tf:?} y={y} diff={d}");
            }
            assert!((transform(&tf, 0.0) - tf.phi_hat(0.0)).abs() < 1e-8, "{tf:?}");
        }
    }

    #[test]
    fn phi_hat_integrals() {
        for tf in [
            TestFunction::fejer(0.6).unwrap(),
            TestFunction::cosine_squared(1.3).unwrap(),
        ] {
            for t in [0.2f64, 0.9, 1.0, 2.0] {
                let q = integrate(|y| tf.phi_hat(y), -t.min(tf.sigma), t.min(tf.sigma), 0.1, 1e-13);
                assert!((q.value - tf.phi_hat_integral(t)).abs() < 1e-11);
            }
            for y in [0.0, 0.3, 0.59, 5.0] {
                assert!((tf.phi_hat(0.0) - tf.phi_hat(y) - tf.phi_hat_deficit(y)).abs() < 1e-15);
            }
        }
    }
}
