//! Katz–Sarnak side: the kernels `K_eps`, the one-level densities `W_G` and
//! their Fourier transforms, and prediction integrals against a test function.
//!
//! For `n = 1` every group has `W_G(x) = 1 + c sin(2 pi x) / (2 pi x) + d delta_0`
//! and `W_G_hat(u) = delta_0(u) + (c / 2) eta(u) + d`, with `eta` the
//! indicator of `[-1, 1]` taking the value 1/2 at `|u| = 1`.

mod haar;

pub use haar::{haar_sample_density, HaarHistogram, HaarVariant};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::explicit::TestFunction;
use crate::quad;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    U,
    Sp,
    O,
    SOeven,
    SOodd,
}

impl Group {
    pub const ALL: [Group; 5] = [Group::U, Group::Sp, Group::O, Group::SOeven, Group::SOodd];

    pub fn as_str(self) -> &'static str {
        match self {
            Group::U => "u",
            Group::Sp => "sp",
            Group::O => "o",
            Group::SOeven => "soeven",
            Group::SOodd => "soodd",
        }
    }

    /// `(c, d)`: coefficient of `sin(2 pi x) / (2 pi x)` and of `delta_0` in `W`.
    fn coefficients(self) -> (f64, f64) {
        match self {
            Group::U => (0.0, 0.0),
            Group::Sp => (-1.0, 0.0),
            Group::O => (0.0, 0.5),
            Group::SOeven => (1.0, 0.0),
            Group::SOodd => (-1.0, 1.0),
        }
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Group::ALL
            .into_iter()
            .find(|g| g.as_str() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::param("group", format!("unknown group {s:?} (u, sp, o, soeven, soodd)")))
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `sin(pi(x - y)) / (pi(x - y)) + eps sin(pi(x + y)) / (pi(x + y))`.
pub fn kernel_k(eps: i8, x: f64, y: f64) -> Result<f64> {
    if !(-1..=1).contains(&eps) {
        return Err(Error::param("eps", "must be -1, 0 or 1"));
    }
    let s = |z: f64| if z == 0.0 { 1.0 } else { (PI * z).sin() / (PI * z) };
    Ok(s(x - y) + eps as f64 * s(x + y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// `sin(2 pi x) / (2 pi x)`.
    Sinc,
    /// `eta(u)`: 1 on `|u| < 1`, 1/2 at `|u| = 1`, 0 beyond.
    Eta,
}

impl Shape {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            Shape::Sinc => {
                if x == 0.0 {
                    1.0
                } else {
                    (2.0 * PI * x).sin() / (2.0 * PI * x)
                }
            }
            Shape::Eta => match x.abs() {
                a if a < 1.0 => 1.0,
                1.0 => 0.5,
                _ => 0.0,
            },
        }
    }
}

/// `constant + coeff * shape(x)` plus `delta0` times a unit point mass at 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityDistribution {
    pub constant: f64,
    pub coeff: f64,
    pub shape: Shape,
    pub delta0: f64,
}

impl DensityDistribution {
    pub fn smooth(&self, x: f64) -> f64 {
        self.constant + self.coeff * self.shape.eval(x)
    }
}

pub fn density_w(group: Group) -> DensityDistribution {
    let (c, d) = group.coefficients();
    DensityDistribution {
        constant: 1.0,
        coeff: c,
        shape: Shape::Sinc,
        delta0: d,
    }
}

pub fn density_w_hat(group: Group) -> DensityDistribution {
    let (c, d) = group.coefficients();
    DensityDistribution {
        constant: d,
        coeff: c / 2.0,
        shape: Shape::Eta,
        delta0: 1.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    Fourier,
}

/// Absolute accuracy targeted by the `x`-side quadrature.
const X_SIDE_TOL: f64 = 1e-10;

/// `int phi W_G`. The Fourier side is closed form:
/// `phi_hat(0) + (c / 2) int_{-1}^{1} phi_hat + d phi(0)`. The `x` side
/// integrates `phi` times the smooth part over `[-Q, Q]`, adds the analytic
/// tail of `int phi`, and picks `Q` so the neglected sinc tail
/// `<= 1 / (4 pi^3 sigma Q^2)` is below `1e-10`.
pub fn prediction_integral(group: Group, tf: &TestFunction, side: Side) -> f64 {
    match side {
        Side::Fourier => {
            let w = density_w_hat(group);
            w.delta0 * tf.phi_hat(0.0) + w.constant * tf.phi(0.0) + w.coeff * tf.phi_hat_integral(1.0)
        }
        Side::X => {
            let w = density_w(group);
            let q = (1.0 / (4.0 * PI.powi(3) * tf.sigma * X_SIDE_TOL))
                .sqrt()
                .max(1e4)
                .ceil();
            let body = quad::integrate(|x| tf.phi(x) * w.smooth(x), 0.0, q, 0.5, 1e-12);
            let (tail, _) = tf.phi_tail(q);
            2.0 * (body.value + w.constant * tail) + w.delta0 * tf.phi(0.0)
        }
    }
}

/// The orthogonal prediction `phi_hat(0) + phi(0) / 2`.
pub fn orthogonal_prediction(tf: &TestFunction) -> f64 {
    prediction_integral(Group::O, tf, Side::Fourier)
}

#[cfg(test)]
mod tests;
