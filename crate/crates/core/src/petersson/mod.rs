//! Petersson trace formula over a field of narrow class number one.
//!
//! For totally positive `nu`, `mu` and a squarefree level `I`,
//!
//! ```text
//! Delta(nu, mu) = chi_nu(mu) + (2 pi)^n (-1)^{nk} D^{-1/2}
//!     sum_{eps in U/{+-1}} sum_{c in I*/U} S_delta(nu, mu eps^2; c) / |N(c)|
//!         prod_i J_{2k-1}(4 pi sqrt(nu_i mu_i) |eps_i| / (delta_i |c_i|))
//! ```
//!
//! where `S_delta` is the Kloosterman sum with denominator `delta c`.
//! Over `Q` this is the classical formula for weight `2k`.

mod newform;
mod tail;

pub use newform::{
    delta_star_batch, delta_star_truncated, dimension_estimate, dimension_main_term, newform_constant, DeltaStarResult,
    DimensionEstimate,
};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, IdealRep, TotallyRealField};
use crate::kloosterman::{KloostermanTable, ResidueSystem, Twist};
use crate::special::{bessel_j, BesselEvalPolicy};

/// Truncation parameters shared by every trace-formula sum.
#[derive(Debug, Clone, Serialize)]
pub struct TraceParams {
    /// The weight is `(2k, ..., 2k)`.
    pub k: u32,
    pub level: IdealRep,
    /// Largest `|N(c)|` summed explicitly.
    pub c_max: u64,
    /// Unit terms whose Bessel product bound is below this are not evaluated.
    pub unit_tol: f64,
    /// Cutoff on `N(L)` in the newform sieve.
    pub x: f64,
    /// Cutoff on `N(m)` in the newform sieve.
    pub y: f64,
}

impl TraceParams {
    pub fn new(k: u32, level: IdealRep, c_max: u64, unit_tol: f64, x: f64, y: f64) -> Result<Self> {
        let p = TraceParams {
            k,
            level,
            c_max,
            unit_tol,
            x,
            y,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 || 2 * self.k - 1 > BesselEvalPolicy::default().max_order {
            return Err(Error::param("k", format!("k = {} must lie in [2, 51]", self.k)));
        }
        if !self.level.is_squarefree() {
            return Err(Error::NotSquarefree(self.level.norm));
        }
        if self.c_max < self.level.norm {
            return Err(Error::param(
                "c_max",
                format!("c_max = {} is below the level norm {}", self.c_max, self.level.norm),
            ));
        }
        if !(self.unit_tol > 0.0 && self.unit_tol <= 1e-6) {
            return Err(Error::param("unit_tol", "must lie in (0, 1e-6]"));
        }
        if !(self.x >= 1.0) || !(self.y >= 1.0) {
            return Err(Error::param("x/y", "truncations must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceResult {
    pub value: f64,
    /// Certified bound on the omitted modulus and unit terms.
    pub tail_bound: f64,
    pub n_terms: u64,
}

/// 1 iff `mu = nu eps^2` for a unit `eps`.
pub fn chi_diag(field: &TotallyRealField, nu: FieldElement, mu: FieldElement) -> Result<u8> {
    for x in [nu, mu] {
        if !field.is_totally_positive(x) {
            return Err(Error::NotTotallyPositive(x));
        }
    }
    Ok(match field.div_exact(mu, nu) {
        Some(u) => (field.norm(u) == 1 && field.is_totally_positive(u)) as u8,
        None => 0,
    })
}

/// The generator of `C` with the smallest largest embedding, `sigma_1 > 0`.
pub fn balanced_representative(field: &TotallyRealField, ideal: &IdealRep) -> Result<FieldElement> {
    field.balanced_representative(ideal.generator)
}

/// Moduli processed per parallel block; fixed so reductions do not depend
/// on the thread count.
const BLOCK: usize = 16;

struct PairData {
    nu: FieldElement,
    mu: FieldElement,
    /// `4 pi sqrt(nu_i mu_i) / delta_i`.
    amp: [f64; 2],
    chi: u8,
    gcd_norm: f64,
    norm_nu_mu: f64,
}

struct Modulus {
    ideal: IdealRep,
    c: FieldElement,
}

/// Trace-formula evaluator for one field, weight and level, reusable across
/// many `(nu, mu)` pairs.
pub struct PeterssonSum<'f> {
    field: &'f TotallyRealField,
    k: u32,
    level: IdealRep,
    c_max: u64,
    unit_tol: f64,
    moduli: Vec<Modulus>,
    policy: BesselEvalPolicy,
}

impl<'f> PeterssonSum<'f> {
    pub fn new(field: &'f TotallyRealField, k: u32, level: &IdealRep, c_max: u64, unit_tol: f64) -> Result<Self> {
        let moduli = field
            .enumerate_ideals(c_max / level.norm)
            .into_iter()
            .map(|j| {
                let ideal = field.ideal_mul(level, &j);
                let c = field.balanced_representative(ideal.generator)?;
                Ok(Modulus { ideal, c })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut moduli = moduli;
        moduli.sort_by(|a, b| a.ideal.cmp(&b.ideal));
        Ok(PeterssonSum {
            field,
            k,
            level: level.clone(),
            c_max,
            unit_tol,
            moduli,
            policy: BesselEvalPolicy::default(),
        })
    }

    pub fn from_params(field: &'f TotallyRealField, params: &TraceParams) -> Result<Self> {
        params.validate()?;
        Self::new(field, params.k, &params.level, params.c_max, params.unit_tol)
    }

    pub fn level(&self) -> &IdealRep {
        &self.level
    }

    fn prefactor(&self) -> f64 {
        let n = self.field.degree() as i32;
        let sign = if (n as u32 * self.k) % 2 == 0 { 1.0 } else { -1.0 };
        sign * std::f64::consts::TAU.powi(n) / (self.field.discriminant() as f64).sqrt()
    }

    fn pair_data(&self, nu: FieldElement, mu: FieldElement) -> Result<PairData> {
        let f = self.field;
        let chi = chi_diag(f, nu, mu)?;
        let [n1, n2] = f.embed(nu);
        let [m1, m2] = f.embed(mu);
        let [d1, d2] = f.embed(f.different());
        let four_pi = 4.0 * std::f64::consts::PI;
        let gcd = f.ideal_gcd(&f.ideal(nu)?, &f.ideal(mu)?);
        Ok(PairData {
            nu,
            mu,
            amp: [four_pi * (n1 * m1).sqrt() / d1, four_pi * (n2 * m2).sqrt() / d2],
            chi,
            gcd_norm: gcd.norm as f64,
            norm_nu_mu: f.norm(nu) as f64 * f.norm(mu) as f64,
        })
    }

    /// Evaluates `Delta(nu, mu)` for every pair of totally positive generators.
    pub fn evaluate(&self, pairs: &[(FieldElement, FieldElement)]) -> Result<Vec<TraceResult>> {
        let data = pairs
            .iter()
            .map(|&(nu, mu)| self.pair_data(nu, mu))
            .collect::<Result<Vec<_>>>()?;
        let np = data.len();
        let mut sums = vec![0.0f64; np];
        let mut tails = vec![0.0f64; np];
        let mut counts = vec![0u64; np];
        for block in self.moduli.chunks(BLOCK) {
            let parts: Vec<Result<Contribution>> = block.par_iter().map(|m| self.contribution(m, &data)).collect();
            for part in parts {
                let part = part?;
                for i in 0..np {
                    sums[i] += part.values[i];
                    tails[i] += part.tails[i];
                    counts[i] += part.counts[i];
                }
            }
        }
        let pref = self.prefactor();
        Ok(data
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let c_tail = self.modulus_tail(d);
                TraceResult {
                    value: d.chi as f64 + pref * sums[i],
                    tail_bound: pref.abs() * (tails[i] + c_tail),
                    n_terms: counts[i],
                }
            })
            .collect())
    }

    fn modulus_tail(&self, d: &PairData) -> f64 {
        let f = self.field;
        let s = 2 * self.k - 1;
        let j1 = self.c_max / self.level.norm;
        if f.degree() == 1 {
            tail::rational_modulus_tail(s, self.k, d.norm_nu_mu, d.gcd_norm, self.level.norm, j1)
        } else {
            let eps = f.embed(f.fundamental_unit())[0];
            tail::quadratic_modulus_tail(tail::QuadraticTail {
                s,
                k: self.k,
                amp: d.amp,
                norm_delta: f.discriminant() as f64,
                norm_nu_mu: d.norm_nu_mu,
                gcd_norm: d.gcd_norm,
                level_norm: self.level.norm,
                level_tau: self.level.divisor_tau(),
                eps,
                j1,
            })
        }
    }

    fn contribution(&self, m: &Modulus, data: &[PairData]) -> Result<Contribution> {
        let f = self.field;
        // Built on first use: most large moduli only feed the tail.
        let mut table: Option<KloostermanTable> = None;
        let hint = data.len() * f.degree();
        let n_c = m.ideal.norm as f64;
        let [c1, c2] = f.embed(m.c);
        let (c1, c2) = (c1.abs(), c2.abs());
        let s = 2 * self.k - 1;
        let kk = 4.0 * self.k as f64;
        let e = std::f64::consts::E;
        let tau = m.ideal.divisor_tau() as f64;
        let np = data.len();
        let mut out = Contribution {
            values: vec![0.0; np],
            tails: vec![0.0; np],
            counts: vec![0; np],
        };
        let bessel = |x: f64| bessel_j(s, x, &self.policy).expect("order validated");
        let majorant = |u: f64| u.min(1.0).powi(s as i32);

        if f.degree() == 1 {
            for (i, d) in data.iter().enumerate() {
                let x = d.amp[0] / c1;
                let weil = tau * d.gcd_norm.sqrt() * n_c.sqrt();
                let b = majorant(e * x / kk);
                if b >= self.unit_tol {
                    if table.is_none() {
                        table = Some(KloostermanTable::with_query_hint(f, m.c, Twist::Different, hint)?);
                    }
                    let sum = table.as_mut().expect("built").sum(f, d.nu, d.mu).re;
                    out.values[i] = sum * bessel(x) / n_c;
                    out.counts[i] = 1;
                } else {
                    out.tails[i] = weil * b / n_c;
                }
            }
            return Ok(out);
        }

        let log_eps = f.regulator();
        let eps_sq = f.unit_power(2);
        let eps_sq_inv = f.unit_power(-2);
        let ratio = (-(s as f64) * log_eps).exp();
        for (i, d) in data.iter().enumerate() {
            let weil = tau * d.gcd_norm.sqrt() * n_c.sqrt();
            let mut value = 0.0;
            let mut tail_sum = 0.0;
            let mut count = 0u64;
            // direction +1 grows the first embedding of eps^m, direction -1 the second
            for dir in [1i32, -1] {
                let mut m_exp: i32 = if dir > 0 { 0 } else { -1 };
                loop {
                    let g = (m_exp as f64 * log_eps).exp();
                    let x1 = d.amp[0] * g / c1;
                    let x2 = d.amp[1] / g / c2;
                    let (u1, u2) = (e * x1 / kk, e * x2 / kk);
                    let b = majorant(u1) * majorant(u2);
                    if b >= self.unit_tol {
                        if table.is_none() {
                            table = Some(KloostermanTable::with_query_hint(f, m.c, Twist::Different, hint)?);
                        }
                        let t = table.as_mut().expect("built");
                        let rs = t.residues();
                        let base = if m_exp >= 0 { eps_sq } else { eps_sq_inv };
                        let unit_sq = residue_pow(f, rs, base, m_exp.unsigned_abs());
                        let mu_eps = rs.reduce(f.mul(d.mu, unit_sq));
                        let sum = t.sum(f, d.nu, mu_eps).re;
                        value += sum * bessel(x1) * bessel(x2) / n_c;
                        count += 1;
                    } else {
                        tail_sum += weil * b / n_c;
                    }
                    let growing = if dir > 0 { u1 } else { u2 };
                    if growing >= 1.0 && b < self.unit_tol {
                        tail_sum += weil * b / n_c * ratio / (1.0 - ratio);
                        break;
                    }
                    if m_exp.abs() > 5000 {
                        return Err(Error::param("unit_tol", "unit sum failed to converge"));
                    }
                    m_exp += dir;
                }
            }
            out.values[i] = value;
            out.tails[i] = tail_sum;
            out.counts[i] = count;
        }
        Ok(out)
    }
}

fn residue_pow(field: &TotallyRealField, rs: &ResidueSystem, base: FieldElement, mut e: u32) -> FieldElement {
    let mut acc = rs.reduce(FieldElement::ONE);
    let mut b = rs.reduce(base);
    while e > 0 {
        if e & 1 == 1 {
            acc = rs.mul(field, acc, b);
        }
        b = rs.mul(field, b, b);
        e >>= 1;
    }
    acc
}

struct Contribution {
    values: Vec<f64>,
    tails: Vec<f64>,
    counts: Vec<u64>,
}

/// `Delta_{2k, I}(m, n)` for ideals given by canonical generators.
pub fn delta(field: &TotallyRealField, params: &TraceParams, m: &IdealRep, n: &IdealRep) -> Result<TraceResult> {
    let engine = PeterssonSum::from_params(field, params)?;
    Ok(engine.evaluate(&[(m.generator, n.generator)])?[0])
}

/// Many `Delta` values at one level, sharing the Kloosterman tables.
pub fn delta_batch(
    field: &TotallyRealField,
    params: &TraceParams,
    pairs: &[(IdealRep, IdealRep)],
) -> Result<Vec<TraceResult>> {
    let engine = PeterssonSum::from_params(field, params)?;
    let gens: Vec<_> = pairs.iter().map(|(a, b)| (a.generator, b.generator)).collect();
    engine.evaluate(&gens)
}


/// Smallest `C_max = N(I) 2^j` whose modulus-tail certificate is below `tol`
/// for every pair with `N(nu) N(mu) <= norm_nu_mu` (capped at `2^24 N(I)`).
pub fn suggest_c_max(field: &TotallyRealField, k: u32, level: &IdealRep, norm_nu_mu: f64, tol: f64) -> u64 {
    let s = 2 * k - 1;
    let n = field.degree();
    let mut j1 = 1u64;
    loop {
        let t = if n == 1 {
            tail::rational_modulus_tail(s, k, norm_nu_mu, norm_nu_mu, level.norm, j1)
        } else {
            // canonical generators satisfy nu_i <= eps^2 N(nu)^{1/2}
            let eps = field.embed(field.fundamental_unit())[0];
            let [d1, d2] = field.embed(field.different());
            let a = 4.0 * std::f64::consts::PI * eps * eps * norm_nu_mu.sqrt().sqrt();
            tail::quadratic_modulus_tail(tail::QuadraticTail {
                s,
                k,
                amp: [a / d1, a / d2],
                norm_delta: field.discriminant() as f64,
                norm_nu_mu,
                gcd_norm: norm_nu_mu.sqrt(),
                level_norm: level.norm,
                level_tau: level.divisor_tau(),
                eps,
                j1,
            })
        };
        if t * std::f64::consts::TAU.powi(n as i32) < tol || j1 >= 1 << 24 {
            return level.norm * j1;
        }
        j1 *= 2;
    }
}
