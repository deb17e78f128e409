//! Ground truth: the `q`-expansion of the discriminant form, dimension
//! formulas for `S_w(Gamma_0(N))`, and brute-force Bessel and Kloosterman
//! evaluators.

mod brute;
mod fixtures;

pub use brute::{bessel_series, kloosterman_brute, kloosterman_brute_batch};
pub use fixtures::{NEWDIM_LEVELS, NEWDIM_TABLE};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::factor;

/// Truncated power series `sum_{i < len} c_i q^i` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        QSeries { coeffs }
    }

    /// `prod_{m >= 1} (1 - q^m)` to `len` terms.
    pub fn euler_product(len: usize) -> Self {
        let mut s = QSeries::one(len);
        for m in 1..len {
            let mut f = vec![BigInt::zero(); len];
            f[0] = BigInt::one();
            f[m] = -BigInt::one();
            s = s.mul(&QSeries::from_coeffs(f));
        }
        s
    }

    pub fn one(len: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); len];
        if len > 0 {
            coeffs[0] = BigInt::one();
        }
        QSeries { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Product truncated to the shorter length.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let len = self.len().min(other.len());
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }

    pub fn pow(&self, mut e: u32) -> QSeries {
        let mut acc = QSeries::one(self.len());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// `tau(1..=n_max)`, the coefficients of `q prod (1 - q^m)^24`, as
/// `tau[n - 1]`.
///
/// Uses Jacobi's `prod (1 - q^m)^3 = sum_j (-1)^j (2j + 1) q^{j(j+1)/2}` and
/// seven sparse multiplications; the running coefficients stay far inside
/// `i128` for `n_max <= 10^5`, and every step is overflow-checked.
pub fn tau(n_max: usize) -> Result<Vec<BigInt>> {
    if n_max == 0 || n_max > 100_000 {
        return Err(Error::param("n_max", "must lie in [1, 100000]"));
    }
    let len = n_max;
    let mut sparse = Vec::new();
    let mut j = 0usize;
    while j * (j + 1) / 2 < len {
        let sign = if j % 2 == 0 { 1i128 } else { -1 };
        sparse.push((j * (j + 1) / 2, sign * (2 * j as i128 + 1)));
        j += 1;
    }
    let mut dense = vec![0i128; len];
    for &(i, c) in &sparse {
        dense[i] = c;
    }
    for _ in 0..7 {
        let mut next = vec![0i128; len];
        for &(i, c) in &sparse {
            for (t, d) in dense[..len - i].iter().enumerate() {
                let prod = c.checked_mul(*d).expect("tau coefficient overflow");
                next[i + t] = next[i + t].checked_add(prod).expect("tau coefficient overflow");
            }
        }
        dense = next;
    }
    Ok(dense.into_iter().map(BigInt::from).collect())
}

/// `tau(n) / n^{11/2}` for `n = 1..=n_max`.
pub fn tau_normalized(n_max: usize) -> Result<Vec<f64>> {
    Ok(tau(n_max)?
        .iter()
        .enumerate()
        .map(|(i, t)| t.to_f64().expect("finite") / ((i + 1) as f64).powf(5.5))
        .collect())
}

/// `dim S_w(SL_2(Z))` for even `w >= 4`.
pub fn level1_dim(w: u32) -> Result<u32> {
    if w % 2 == 1 || w < 4 {
        return Err(Error::param(
            "weight",
            format!("weight {w} must be even and at least 4"),
        ));
    }
    Ok(if w % 12 == 2 { w / 12 - 1 } else { w / 12 })
}

fn check_level(level: u64) -> Result<Vec<u64>> {
    if level == 0 {
        return Err(Error::param("level", "must be positive"));
    }
    let f = factor(level);
    if f.iter().any(|&(_, e)| e > 1) {
        return Err(Error::NotSquarefree(level));
    }
    Ok(f.into_iter().map(|(p, _)| p).collect())
}

/// `dim S_w(Gamma_0(N))` for squarefree `N` and even `w >= 2`.
pub fn gamma0_dim(w: u32, level: u64) -> Result<i64> {
    if w % 2 == 1 || w < 2 {
        return Err(Error::param(
            "weight",
            format!("weight {w} must be even and at least 2"),
        ));
    }
    let primes = check_level(level)?;
    let mu: i64 = primes.iter().map(|&p| p as i64 + 1).product();
    let nu2: i64 = primes
        .iter()
        .map(|&p| match p % 4 {
            1 => 2,
            3 => 0,
            _ => 1,
        })
        .product();
    let nu3: i64 = primes
        .iter()
        .map(|&p| match p % 3 {
            1 => 2,
            2 => 0,
            _ => 1,
        })
        .product();
    let cusps = 1i64 << primes.len();
    let twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
    debug_assert_eq!(twelve_g % 12, 0);
    let g = twelve_g / 12;
    if w == 2 {
        return Ok(g);
    }
    let w = w as i64;
    Ok((w - 1) * (g - 1) + (w / 2 - 1) * cusps + nu2 * (w / 4) + nu3 * (w / 3))
}

/// Dimension of the new subspace of `S_w(Gamma_0(N))`, `N` squarefree, by
/// Moebius inversion of `dim S_w(N) = sum_{M | N} d(N / M) newdim(M)`.
/// Supported for `N <= 50` and `w <= 24`.
pub fn gamma0_newdim(w: u32, level: u64) -> Result<i64> {
    if level > 50 || w > 24 {
        return Err(Error::param(
            "level/weight",
            format!("({w}, {level}) outside N <= 50, w <= 24"),
        ));
    }
    let primes = check_level(level)?;
    let mut total = 0i64;
    for mask in 0u32..(1 << primes.len()) {
        let mut m = 1u64;
        for (i, p) in primes.iter().enumerate() {
            if mask >> i & 1 == 0 {
                m *= p;
            }
        }
        let sign = (-2i64).pow(mask.count_ones());
        total += sign * gamma0_dim(w, m)?;
    }
    Ok(total)
}

/// Frozen fixture lookup; `None` outside the tabulated range.
pub fn newdim_fixture(w: u32, level: u64) -> Option<i64> {
    let row = NEWDIM_TABLE.iter().find(|(wt, _)| *wt == w)?;
    let col = NEWDIM_LEVELS.iter().position(|&n| n == level)?;
    Some(row.1[col])
}
