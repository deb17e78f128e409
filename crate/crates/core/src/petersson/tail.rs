//! Closed-form bounds for the part of the modulus sum beyond `C_max`.
//!
//! Both use `|S| <= tau(C) N(gcd)^{1/2} N(C)^{1/2}`,
//! `|J_{2k-1}(x)| <= min(1, (e x / 4k)^{2k-1})` and `tau(j) <= 2 sqrt(j)`.

/// `sum_{j >= j0} j^{-a}` for `a > 1`, `j0 >= 1`.
fn zeta_tail(a: f64, j0: f64) -> f64 {
    j0.powf(-a) + j0.powf(1.0 - a) / (a - 1.0)
}

/// Over `Q`: the terms with `c = M j`, `j > j1`, are bounded by
/// `2 sqrt(G) (A / (M j))^s` with `A = e pi sqrt(nu mu) / k`.
pub(super) fn rational_modulus_tail(s: u32, k: u32, norm_nu_mu: f64, gcd_norm: f64, level_norm: u64, j1: u64) -> f64 {
    let a = std::f64::consts::E * std::f64::consts::PI * norm_nu_mu.sqrt() / k as f64;
    let ratio = a / level_norm as f64;
    2.0 * gcd_norm.sqrt() * ratio.powi(s as i32) * zeta_tail(s as f64, (j1 + 1) as f64)
}

pub(super) struct QuadraticTail {
    pub s: u32,
    pub k: u32,
    pub amp: [f64; 2],
    pub norm_delta: f64,
    pub norm_nu_mu: f64,
    pub gcd_norm: f64,
    pub level_norm: u64,
    pub level_tau: u64,
    pub eps: f64,
    pub j1: u64,
}

/// Degree two: for a balanced `c` of norm `N`, the whole unit sum is at most
/// `(p0/N)^s + (p0/N)^{s/2} (b1^{s/2} + b2^{s/2}) N^{-s/4} rho`, from
/// `min(1, t) <= t^{1/2}` on the growing embedding. Ideals of norm `M j`
/// number at most `tau(j)` and each has at most `tau(M) tau(j)^2` divisors.
pub(super) fn quadratic_modulus_tail(t: QuadraticTail) -> f64 {
    let s = t.s as f64;
    let e = std::f64::consts::E;
    let pi = std::f64::consts::PI;
    let kk = 4.0 * t.k as f64;
    let p0 = (e / kk).powi(2) * 16.0 * pi * pi * t.norm_nu_mu.sqrt() / t.norm_delta;
    let b: f64 = t.amp.iter().map(|a| (e * a * t.eps.sqrt() / kk).powf(s / 2.0)).sum();
    let rho = t.eps.powf(-s / 2.0) / (1.0 - t.eps.powf(-s / 2.0));
    let m = t.level_norm as f64;
    let j0 = (t.j1 + 1) as f64;
    let first = p0.powf(s) * m.powf(-0.5 - s) * zeta_tail(s - 1.0, j0);
    let second = p0.powf(s / 2.0) * b * rho * m.powf(-0.5 - 0.75 * s) * zeta_tail(0.75 * s - 1.0, j0);
    t.level_tau as f64 * t.gcd_norm.sqrt() * 8.0 * (first + second)
}
