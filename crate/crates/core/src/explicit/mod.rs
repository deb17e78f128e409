//! The explicit formula for one-level densities and its family average
//! through the truncated newform sums `Delta'`.
//!
//! For a newform `f` of weight `2k` and level `I`, with `L = log R` and
//! `R = k^{2n} N(I)`,
//!
//! ```text
//! D(f; phi) = phi_hat(0) (log N(I) + 2 log D - 2n log 2 pi) / L
//!           + (2n / L) int Re psi(k + 2 pi i t / L) phi(t) dt
//!           - 2 sum_p sum_{v >= 1} phi_hat(v log Np / L) a_f(p^v) log Np / (Np^{v/2} L)
//! ```
//!
//! with `a_f(p^v) = lambda_f(p^v) - lambda_f(p^{v-2})` for `p` prime to the
//! level and `a_f(p^v) = lambda_f(p)^v` otherwise.

mod test_function;

pub use test_function::{TestFunction, TestFunctionKind};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldKey, IdealRep, PrimeIdeal, TotallyRealField};
use crate::petersson::{self, delta_star_batch, TraceParams};
use crate::quad;
use crate::rmt;
use crate::special::digamma;

/// `R = k^{2n} N(I)`.
pub fn analytic_conductor(degree: usize, k: u32, level_norm: u64) -> f64 {
    (k as f64).powi(2 * degree as i32) * level_norm as f64
}

/// A value with an absolute error certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certified {
    pub value: f64,
    pub error: f64,
}

/// `(2n / log R) int Re psi(k + 2 pi i t / log R) phi(t) dt`.
///
/// Evaluated on the Fourier side through Gauss's integral for `psi`:
/// `int psi(k + i a t) phi(t) dt = phi_hat(0) psi(k)
///   + int_0^inf e^{-ku} (phi_hat(0) - phi_hat(u / log R)) / (1 - e^{-u}) du`.
/// The integrand is bounded, and beyond `u = sigma log R` the integral is the
/// series `sum_j e^{-(k+j) sigma log R} / (k + j)`.
pub fn gamma_term(degree: usize, k: u32, r: f64, tf: &TestFunction) -> Result<Certified> {
    if k < 2 {
        return Err(Error::param("k", "must be at least 2"));
    }
    if !(r > 1.0) {
        return Err(Error::param("R", "analytic conductor must exceed 1"));
    }
    let l = r.ln();
    let kf = k as f64;
    let a = tf.sigma * l;
    let body = quad::integrate(
        |u| (-kf * u).exp() * tf.phi_hat_deficit(u / l) / -(-u).exp_m1(),
        0.0,
        a,
        1.0,
        1e-14,
    );
    let mut tail = 0.0;
    for j in 0..10_000_000u64 {
        let t = (-(kf + j as f64) * a).exp() / (kf + j as f64);
        tail += t;
        if t < 1e-18 * tail.max(1e-300) {
            break;
        }
    }
    let psi = digamma(Complex64::new(kf, 0.0)).re;
    let scale = 2.0 * degree as f64 / l;
    Ok(Certified {
        value: scale * (tf.phi_hat(0.0) * psi + body.value + tf.phi_hat(0.0) * tail),
        error: scale * (body.error + 1e-16 * tail),
    })
}

/// `sum_{p prime to I, N(p) <= cutoff} phi_hat(2 log Np / log R) 2 log Np / (Np log R)`.
///
/// `cutoff` must reach `R^{sigma / 2}`, beyond which every term vanishes.
pub fn landau_sum(field: &TotallyRealField, level: &IdealRep, r: f64, tf: &TestFunction, cutoff: u64) -> Result<f64> {
    let required = r.powf(tf.sigma / 2.0);
    if (cutoff as f64) < required.floor() {
        return Err(Error::CutoffTooSmall {
            cutoff: cutoff as f64,
            required: required.floor(),
        });
    }
    let l = r.ln();
    Ok(field
        .prime_ideals_up_to(cutoff)
        .iter()
        .filter(|p| level.valuation(p) == 0)
        .map(|p| weight(tf, p.norm, 2, l))
        .sum())
}

/// `2 phi_hat(v log Np / L) log Np / (Np^{v/2} L)`.
fn weight(tf: &TestFunction, norm: u64, v: u32, l: f64) -> f64 {
    let lp = (norm as f64).ln();
    2.0 * tf.phi_hat(v as f64 * lp / l) * lp / ((norm as f64).powf(v as f64 / 2.0) * l)
}

/// Largest admissible support `sigma` for the average at this weight and level:
/// `(3/2 - (delta + eta + eps)) log(k^n N) / log(k^{2n} N)
///   - (1/2 - (eta + eps)) log k^n / log(k^{2n} N)`.
pub fn support_budget(degree: usize, k: u32, level_norm: u64, delta: f64, eta: f64, eps: f64) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0) || !(delta > 0.0) || !(eps >= 0.0) {
        return Err(Error::param("delta/eta/eps", "need delta > 0, 0 < eta < 1, eps >= 0"));
    }
    let kn = (k as f64).powi(degree as i32);
    let big = (kn * kn * level_norm as f64).ln();
    let mid = (kn * level_norm as f64).ln();
    Ok((1.5 - (delta + eta + eps)) * mid / big - (0.5 - (eta + eps)) * kn.ln() / big)
}

/// Whether `avg_density` rejects a support beyond [`support_budget`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum SupportCheck {
    Enforce {
        delta: f64,
        eta: f64,
        eps: f64,
    },
    /// Numerical experiments outside the proven range.
    Skip,
}

impl Default for SupportCheck {
    fn default() -> Self {
        SupportCheck::Enforce {
            delta: 0.1,
            eta: 0.05,
            eps: 0.0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityParams {
    pub trace: TraceParams,
    pub tf: TestFunction,
    pub support: SupportCheck,
}

/// The explicit-formula terms. `total` is their sum in declaration order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct DensityTerms {
    /// `phi_hat(0) (log N(I) + 2 log D - 2n log 2 pi) / log R`.
    pub main: f64,
    pub gamma_integral: f64,
    /// `+sum_{p prime to I} 2 phi_hat(2 log Np / L) log Np / (Np L)`, the `-1` in `a(p^2)`.
    pub landau: f64,
    pub prime_nu1: f64,
    /// The `lambda(p^2)` part of the `v = 2` terms.
    pub prime_nu2: f64,
    pub prime_nu3plus: f64,
    /// Even powers of ramified primes, exact since `lambda(p)^2 = 1/Np`.
    pub ramified_even: f64,
}

impl DensityTerms {
    pub fn total(&self) -> f64 {
        self.main
            + self.gamma_integral
            + self.landau
            + self.prime_nu1
            + self.prime_nu2
            + self.prime_nu3plus
            + self.ramified_even
    }

    fn abs_sum(&self) -> f64 {
        self.main.abs()
            + self.gamma_integral.abs()
            + self.landau.abs()
            + self.prime_nu1.abs()
            + self.prime_nu2.abs()
            + self.prime_nu3plus.abs()
            + self.ramified_even.abs()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub field: FieldKey,
    pub k: u32,
    pub level_norm: u64,
    pub test_function: TestFunction,
    /// Analytic conductor `k^{2n} N(I)`.
    pub r: f64,
    pub terms: DensityTerms,
    /// Absolute error certificate for each term (omitted moduli and units,
    /// quadrature). Excludes the uncontrolled complementary sum.
    pub certificates: DensityTerms,
    /// `|sum over odd powers of ramified primes| <= ramified_bound`; not in `total`.
    pub ramified_bound: f64,
    pub total: f64,
    /// `phi_hat(0) + phi(0) / 2`.
    pub prediction: f64,
    pub gap: f64,
    /// `Delta'((1))`, the family size estimate dividing the prime sums.
    pub h_est: f64,
    pub dimension_main_term: f64,
    pub support_budget: Option<f64>,
    pub prime_cutoff: u64,
    pub n_prime_powers: usize,
    pub c_max: u64,
    pub x: f64,
    pub y: f64,
    /// The `N(L) > X`, `N(m) > Y` remainder of the newform sieve is not bounded.
    pub remainder_unbounded: bool,
}

impl DensityReport {
    pub fn certificate_total(&self) -> f64 {
        self.certificates.abs_sum() + self.ramified_bound
    }
}

/// Largest `N(p)^v` with `phi_hat(v log Np / log R)` possibly nonzero.
fn prime_cutoff(r: f64, sigma: f64) -> u64 {
    r.powf(sigma).floor() as u64
}

/// Shared non-prime terms of both density paths.
fn archimedean_terms(
    field: &TotallyRealField,
    k: u32,
    level: &IdealRep,
    tf: &TestFunction,
) -> Result<(f64, Certified, f64)> {
    let n = field.degree();
    let r = analytic_conductor(n, k, level.norm);
    let l = r.ln();
    let main = tf.phi_hat(0.0)
        * ((level.norm as f64).ln() + 2.0 * (field.discriminant() as f64).ln() - 2.0 * n as f64 * (2.0 * PI).ln())
        / l;
    let gamma = gamma_term(n, k, r, tf)?;
    let landau = landau_sum(field, level, r, tf, prime_cutoff(r, tf.sigma))?;
    Ok((main, gamma, landau))
}

/// Ramified contributions `(exact even part, bound on the odd part)`.
fn ramified_terms(level: &IdealRep, tf: &TestFunction, r: f64) -> (f64, f64) {
    let l = r.ln();
    let cutoff = prime_cutoff(r, tf.sigma);
    let (mut even, mut odd) = (0.0, 0.0);
    for p in level.prime_factors() {
        let mut v = 1u32;
        while p.norm.checked_pow(v).is_some_and(|q| q <= cutoff) {
            // a(p^v) = lambda^v with lambda^2 = 1/Np
            let t = weight(tf, p.norm, v, l) / (p.norm as f64).powf(v as f64 / 2.0);
            if v % 2 == 0 {
                even -= t;
            } else {
                odd += t;
            }
            v += 1;
        }
    }
    (even, odd)
}

/// Unramified prime powers `(p, v, p^v)` with `N(p)^v <= R^sigma`, ascending in `p`.
fn prime_powers(field: &TotallyRealField, level: &IdealRep, cutoff: u64) -> Vec<(PrimeIdeal, u32, IdealRep)> {
    let mut out = Vec::new();
    for p in field.prime_ideals_up_to(cutoff) {
        if level.valuation(&p) > 0 {
            continue;
        }
        let base = field.prime_ideal(&p);
        let mut v = 1u32;
        while p.norm.checked_pow(v).is_some_and(|q| q <= cutoff) {
            out.push((p.clone(), v, field.ideal_pow(&base, v)));
            v += 1;
        }
    }
    out
}

/// The family average `(1 / H) sum_f D(f; phi)` over newforms of level `I`,
/// with every `lambda_f` average replaced by `Delta'(n) / Delta'((1))`.
pub fn avg_density(field: &TotallyRealField, params: &DensityParams) -> Result<DensityReport> {
    let trace = &params.trace;
    trace.validate()?;
    let (k, level, tf) = (trace.k, &trace.level, &params.tf);
    let n = field.degree();
    let r = analytic_conductor(n, k, level.norm);
    let l = r.ln();
    let budget = match params.support {
        SupportCheck::Enforce { delta, eta, eps } => {
            let b = support_budget(n, k, level.norm, delta, eta, eps)?;
            if tf.sigma > b {
                return Err(Error::SupportBudget {
                    sigma: tf.sigma,
                    budget: b,
                });
            }
            Some(b)
        }
        SupportCheck::Skip => None,
    };
    let cutoff = prime_cutoff(r, tf.sigma);
    let (main, gamma, landau) = archimedean_terms(field, k, level, tf)?;
    let (ramified_even, ramified_bound) = ramified_terms(level, tf, r);

    let powers = prime_powers(field, level, cutoff);
    let mut ns = vec![IdealRep::unit()];
    ns.extend(powers.iter().map(|(_, _, q)| q.clone()));
    let stars = delta_star_batch(field, trace, &ns)?;
    let h = stars[0];

    let mut terms = DensityTerms {
        main,
        gamma_integral: gamma.value,
        landau,
        ramified_even,
        ..Default::default()
    };
    let mut certs = DensityTerms {
        gamma_integral: gamma.error,
        ..Default::default()
    };
    // raw sums of w * Delta' and of |w| * tail, divided by H at the end
    let (mut s1, mut s2, mut s3) = (0.0, 0.0, 0.0);
    let (mut t1, mut t2, mut t3) = (0.0, 0.0, 0.0);
    for (i, (p, v, _)) in powers.iter().enumerate() {
        let w = weight(tf, p.norm, *v, l);
        let here = &stars[i + 1];
        match v {
            1 => {
                s1 += w * here.value;
                t1 += w.abs() * here.tail_bound;
            }
            2 => {
                s2 += w * here.value;
                t2 += w.abs() * here.tail_bound;
            }
            _ => {
                // powers of one prime are consecutive, so p^{v-2} sits two slots back
                let prev = &stars[i - 1];
                s3 += w * (here.value - prev.value);
                t3 += w.abs() * (here.tail_bound + prev.tail_bound);
            }
        }
    }
    let rel = h.tail_bound / h.value.abs();
    terms.prime_nu1 = -s1 / h.value;
    terms.prime_nu2 = -s2 / h.value;
    terms.prime_nu3plus = -s3 / h.value;
    certs.prime_nu1 = t1 / h.value.abs() + terms.prime_nu1.abs() * rel;
    certs.prime_nu2 = t2 / h.value.abs() + terms.prime_nu2.abs() * rel;
    certs.prime_nu3plus = t3 / h.value.abs() + terms.prime_nu3plus.abs() * rel;

    let total = terms.total();
    let prediction = rmt::orthogonal_prediction(tf);
    Ok(DensityReport {
        field: field.key(),
        k,
        level_norm: level.norm,
        test_function: *tf,
        r,
        terms,
        certificates: certs,
        ramified_bound,
        total,
        prediction,
        gap: total - prediction,
        h_est: h.value,
        dimension_main_term: petersson::dimension_main_term(field, k, level),
        support_budget: budget,
        prime_cutoff: cutoff,
        n_prime_powers: powers.len(),
        c_max: trace.c_max,
        x: trace.x,
        y: trace.y,
        remainder_unbounded: true,
    })
}

/// `D(f; phi)` for a single form given its Hecke eigenvalues `lambda(p)`,
/// with `a(p^v)` from `s_v = lambda s_{v-1} - s_{v-2}`, `s_0 = 2`, `s_1 = lambda`
/// (or `lambda^v` for `p | I`).
pub fn density_from_eigenvalues(
    field: &TotallyRealField,
    k: u32,
    level: &IdealRep,
    tf: &TestFunction,
    lambda: &dyn Fn(&PrimeIdeal) -> f64,
) -> Result<Certified> {
    let r = analytic_conductor(field.degree(), k, level.norm);
    let l = r.ln();
    let (main, gamma, _) = archimedean_terms(field, k, level, tf)?;
    let cutoff = prime_cutoff(r, tf.sigma);
    let mut primes = 0.0;
    for p in field.prime_ideals_up_to(cutoff) {
        let lam = lambda(&p);
        let ramified = level.valuation(&p) > 0;
        let (mut prev, mut cur) = (2.0, lam);
        let mut v = 1u32;
        while p.norm.checked_pow(v).is_some_and(|q| q <= cutoff) {
            let a = if ramified { lam.powi(v as i32) } else { cur };
            primes -= weight(tf, p.norm, v, l) * a;
            (prev, cur) = (cur, lam * cur - prev);
            v += 1;
        }
    }
    Ok(Certified {
        value: main + gamma.value + primes,
        error: gamma.error,
    })
}

/// `avg_density` at each level, sorted by level norm.
pub fn density_sweep(
    field: &TotallyRealField,
    base: &DensityParams,
    levels: &[IdealRep],
) -> Result<Vec<DensityReport>> {
    let mut levels = levels.to_vec();
    levels.sort();
    levels
        .iter()
        .map(|level| {
            let mut p = base.clone();
            p.trace.level = level.clone();
            p.trace.c_max = p.trace.c_max.max(level.norm);
            avg_density(field, &p)
        })
        .collect()
}
