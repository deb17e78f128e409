//! Generalised Kloosterman sums over `O / (c)`.
//!
//! `S(nu, mu; c) = sum_{a mod c, a invertible} e(Tr((nu a + mu a^{-1}) / (theta c)))`
//! where `theta = 1` for the plain sum and `theta = delta`, the totally
//! positive generator of the different, for the twisted sum that enters the
//! trace formula in degree two. Over `Q` both coincide.

mod residue;
mod table;

pub use residue::{inverse_mod, ResidueSystem};
pub use table::KloostermanTable;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::field::{FieldElement, TotallyRealField};
use crate::special::e_rational;

/// Which denominator the exponential uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Twist {
    /// `e(Tr(x / c))`.
    Plain,
    /// `e(Tr(x / (delta c)))`.
    Different,
}

/// Exact integer form of `z -> Tr(z / (theta c)) mod 1` as `index(z) / den`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PhaseMap {
    w: FieldElement,
    pub(crate) den: i128,
}

impl PhaseMap {
    pub(crate) fn new(field: &TotallyRealField, c: FieldElement, twist: Twist) -> Self {
        let theta_c = match twist {
            Twist::Plain => c,
            Twist::Different => field.mul(field.different(), c),
        };
        let n = field.norm(theta_c);
        let w = field.adjugate(theta_c);
        let w = if n < 0 { -w } else { w };
        PhaseMap { w, den: n.abs() }
    }

    /// `Tr(u z w) mod den` as the pair of coefficients on the box coordinates of `z`.
    pub(crate) fn coefficients(&self, field: &TotallyRealField, u: FieldElement) -> (i128, i128) {
        let uw = field.mul(u, self.w);
        let t0 = field.trace(uw).rem_euclid(self.den);
        let t1 = field.trace(field.mul(uw, FieldElement::new(0, 1))).rem_euclid(self.den);
        (t0, t1)
    }

    pub(crate) fn index(&self, field: &TotallyRealField, z: FieldElement) -> i128 {
        field.trace(field.mul(z, self.w)).rem_euclid(self.den)
    }
}

fn direct_sum(
    field: &TotallyRealField,
    nu: FieldElement,
    mu: FieldElement,
    c: FieldElement,
    twist: Twist,
) -> Result<Complex64> {
    let rs = ResidueSystem::new(field, c)?;
    let phase = PhaseMap::new(field, c, twist);
    let (n0, n1) = phase.coefficients(field, nu);
    let (m0, m1) = phase.coefficients(field, mu);
    let mut s = Complex64::new(0.0, 0.0);
    for (a, inv) in rs.unit_pairs(field) {
        let j = n0 * a.a as i128 + n1 * a.b as i128 + m0 * inv.a as i128 + m1 * inv.b as i128;
        s += e_rational(j, phase.den);
    }
    Ok(s)
}

/// `S(nu, mu; c)` with the plain exponential `e(Tr(x / c))`, summed in
/// lexicographic residue order. A unit modulus gives 1.
pub fn kloosterman_sum(
    field: &TotallyRealField,
    nu: FieldElement,
    mu: FieldElement,
    c: FieldElement,
) -> Result<Complex64> {
    direct_sum(field, nu, mu, c, Twist::Plain)
}

/// `S(nu, mu; c)` with the exponential `e(Tr(x / (delta c)))`.
pub fn kloosterman_sum_twisted(
    field: &TotallyRealField,
    nu: FieldElement,
    mu: FieldElement,
    c: FieldElement,
) -> Result<Complex64> {
    direct_sum(field, nu, mu, c, Twist::Different)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeilCheck {
    pub abs: f64,
    pub bound: f64,
    pub ratio: f64,
    pub ok: bool,
}

fn valuation(field: &TotallyRealField, p: FieldElement, x: FieldElement, cap: u32) -> u32 {
    if x.is_zero() {
        return cap;
    }
    let mut v = 0;
    let mut y = x;
    while v < cap {
        match field.div_exact(y, p) {
            Some(z) => {
                y = z;
                v += 1;
            }
            None => break,
        }
    }
    v
}

/// `N((nu, mu, c))^{1/2} tau((c)) N(c)^{1/2}`; zero entries drop out of the gcd.
///
/// For the plain sum in degree two the entries `nu`, `mu` are first scaled
/// by the different, since `e(Tr(x/c)) = e(Tr(delta x / (delta c)))`.
pub fn weil_bound(
    field: &TotallyRealField,
    nu: FieldElement,
    mu: FieldElement,
    c: FieldElement,
    twist: Twist,
) -> Result<f64> {
    let ideal = field.ideal(c)?;
    let (nu, mu) = match twist {
        Twist::Plain => (field.mul(nu, field.different()), field.mul(mu, field.different())),
        Twist::Different => (nu, mu),
    };
    let mut gcd_norm = 1.0f64;
    for (p, e) in &ideal.factors {
        let v = valuation(field, p.generator, nu, *e).min(valuation(field, p.generator, mu, *e));
        gcd_norm *= (p.norm as f64).powi(v as i32);
    }
    Ok(gcd_norm.sqrt() * ideal.divisor_tau() as f64 * (ideal.norm as f64).sqrt())
}

/// Compares `|S(nu, mu; c)|` with [`weil_bound`].
pub fn weil_check(field: &TotallyRealField, nu: FieldElement, mu: FieldElement, c: FieldElement) -> Result<WeilCheck> {
    weil_check_with(field, nu, mu, c, Twist::Plain)
}

pub fn weil_check_with(
    field: &TotallyRealField,
    nu: FieldElement,
    mu: FieldElement,
    c: FieldElement,
    twist: Twist,
) -> Result<WeilCheck> {
    let s = direct_sum(field, nu, mu, c, twist)?.norm();
    let bound = weil_bound(field, nu, mu, c, twist)?;
    Ok(WeilCheck {
        abs: s,
        bound,
        ratio: s / bound,
        ok: s <= bound * (1.0 + 1e-9),
    })
}
