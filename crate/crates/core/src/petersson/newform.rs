//! The truncated newform average and the dimension estimate.

use serde::Serialize;

use super::{PeterssonSum, TraceParams};
use crate::error::{Error, Result};
use crate::field::{IdealRep, TotallyRealField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaStarResult {
    /// The truncated average `Delta'(n)`.
    pub value: f64,
    /// Certified bound on the omitted modulus and unit terms of the inner sums.
    pub tail_bound: f64,
    pub n_terms: u64,
    /// The complementary sum over `N(L) > X` or `N(m) > Y` is not bounded:
    /// its control needs GRH for symmetric-square L-functions. Always true;
    /// measure it empirically by varying `Y`.
    pub remainder_unbounded: bool,
}

/// `2 D^{3/2} zeta_F(2) (2k-1)^n / ((4 pi)^n pi^n)`.
///
/// With `Delta` normalised so the diagonal term is 1, this is the factor that
/// turns `sum_f omega_f L(sym^2 f, 1)`-type averages into plain counts. In
/// degree two it equals `zeta_F(-1) (2k-1)^2 / 2`, the leading term of the
/// classical dimension formula; a `D^{1/2}` version would undercount by `D`.
pub fn newform_constant(field: &TotallyRealField, k: u32) -> f64 {
    let n = field.degree() as i32;
    let pi = std::f64::consts::PI;
    2.0 * (field.discriminant() as f64).powf(1.5) * field.dedekind_zeta2_exact() * ((2 * k - 1) as f64).powi(n)
        / ((4.0 * pi).powi(n) * pi.powi(n))
}

/// `Delta'(n)` for each `n`, sharing every inner trace-formula sum.
pub fn delta_star_batch(
    field: &TotallyRealField,
    params: &TraceParams,
    ns: &[IdealRep],
) -> Result<Vec<DeltaStarResult>> {
    params.validate()?;
    let level = &params.level;
    for n in ns {
        if !n.is_coprime_to(level) {
            return Err(Error::NotCoprime {
                ideal_norm: n.norm,
                level_norm: level.norm,
            });
        }
    }
    let constant = newform_constant(field, params.k);
    let ms = field.enumerate_ideals(params.y.floor() as u64);
    let mut value = vec![0.0f64; ns.len()];
    let mut tail = vec![0.0f64; ns.len()];
    let mut terms = vec![0u64; ns.len()];
    for l in field.divisors(level) {
        if l.norm as f64 > params.x {
            continue;
        }
        let big_m = field.ideal_div(level, &l).expect("divisor");
        let coprime: Vec<&IdealRep> = ms.iter().filter(|m| m.is_coprime_to(&big_m)).collect();
        let squares: Vec<IdealRep> = coprime.iter().map(|m| field.ideal_pow(m, 2)).collect();
        let mut pairs = Vec::with_capacity(coprime.len() * ns.len());
        for sq in &squares {
            for n in ns {
                pairs.push((sq.generator, n.generator));
            }
        }
        let engine = PeterssonSum::new(field, params.k, &big_m, params.c_max, params.unit_tol)?;
        let results = engine.evaluate(&pairs)?;
        let outer = l.moebius() as f64 * big_m.norm as f64;
        for (mi, m) in coprime.iter().enumerate() {
            let w = outer / m.norm as f64;
            for ni in 0..ns.len() {
                let r = &results[mi * ns.len() + ni];
                value[ni] += w * r.value;
                tail[ni] += w.abs() * r.tail_bound;
                terms[ni] += r.n_terms;
            }
        }
    }
    Ok((0..ns.len())
        .map(|i| DeltaStarResult {
            value: constant * value[i],
            tail_bound: constant * tail[i],
            n_terms: terms[i],
            remainder_unbounded: true,
        })
        .collect())
}

pub fn delta_star_truncated(field: &TotallyRealField, params: &TraceParams, n: &IdealRep) -> Result<DeltaStarResult> {
    Ok(delta_star_batch(field, params, std::slice::from_ref(n))?[0])
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionEstimate {
    pub main_term: f64,
    pub computed: DeltaStarResult,
    pub x: f64,
    pub y: f64,
    pub c_max: u64,
}

/// The main term `C (2k-1)^n N(I) prod_{p | I} (1 - 1/N(p))`.
pub fn dimension_main_term(field: &TotallyRealField, k: u32, level: &IdealRep) -> f64 {
    newform_constant(field, k) * level.euler_phi() as f64
}

/// Main term together with `Delta'((1))` at `X = Y^{1/2} = (k^n N(I))^{2/5}`.
/// The modulus cutoff targets a 1e-10 tail but never exceeds `c_max_cap`.
pub fn dimension_estimate(
    field: &TotallyRealField,
    k: u32,
    level: &IdealRep,
    unit_tol: f64,
    c_max_cap: u64,
) -> Result<DimensionEstimate> {
    let scale = (k as f64).powi(field.degree() as i32) * level.norm as f64;
    let x = scale.powf(0.4).max(1.0);
    let y = (x * x).max(1.0);
    let y_norm = y.floor() as u64;
    let c_max = super::suggest_c_max(field, k, level, (y_norm * y_norm) as f64, 1e-10).min(c_max_cap);
    let params = TraceParams::new(k, level.clone(), c_max, unit_tol, x, y)?;
    let computed = delta_star_truncated(field, &params, &IdealRep::unit())?;
    Ok(DimensionEstimate {
        main_term: dimension_main_term(field, k, level),
        computed,
        x,
        y,
        c_max,
    })
}
