//! Values of the Dedekind zeta function at `s = 2`.

use serde::Serialize;

use super::primes::primes_up_to;
use super::TotallyRealField;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaValue {
    pub value: f64,
    pub error_bound: f64,
}

impl TotallyRealField {
    /// Euler product over prime ideals of norm at most `cutoff`.
    ///
    /// The tail over primes of larger norm is bounded by
    /// `2 n sum_{m > P0} m^-2 <= 2n / P0` in the logarithm.
    pub fn dedekind_zeta2(&self, cutoff: u64) -> Result<ZetaValue> {
        if cutoff < 100 {
            return Err(Error::param("cutoff", "prime cutoff must be at least 100"));
        }
        let mut log_value = 0.0f64;
        for q in self.prime_ideals_up_to(cutoff) {
            let x = (q.norm as f64).powi(-2);
            log_value -= (-x).ln_1p();
        }
        let value = log_value.exp();
        let tail = 2.0 * self.degree as f64 / cutoff as f64;
        Ok(ZetaValue {
            value,
            error_bound: value * tail.exp_m1(),
        })
    }

    /// Closed form `zeta(2) * L(2, chi_D)` with
    /// `L(2, chi_D) = pi^2 B_{2,chi} / D^{3/2}` for the even quadratic character.
    pub fn dedekind_zeta2_exact(&self) -> f64 {
        let pi2 = std::f64::consts::PI.powi(2);
        let zeta2 = pi2 / 6.0;
        if self.degree == 1 {
            return zeta2;
        }
        zeta2 * pi2 * self.bernoulli2_chi() / (self.disc as f64).powf(1.5)
    }

    /// Generalised Bernoulli number `B_{2,chi} = D sum_a chi(a) B_2(a/D)`.
    pub fn bernoulli2_chi(&self) -> f64 {
        let d = self.disc;
        // D^2 B_2(a/D) = a^2 - aD + D^2/6, so D * sum = (sum chi(a)(a^2 - aD)) / D
        // because sum chi(a) = 0.
        let mut s: i128 = 0;
        for a in 1..d {
            let chi = jacobi_like(d, a);
            s += chi as i128 * (a as i128 * a as i128 - a as i128 * d as i128);
        }
        s as f64 / d as f64
    }
}

/// `chi_D(a)` for prime `D ≡ 1 mod 4`, via multiplicativity over the primes of `a`.
fn jacobi_like(d: i64, a: i64) -> i32 {
    if a % d == 0 {
        return 0;
    }
    let mut chi = 1;
    let mut rest = a;
    for p in primes_up_to(a as u64) {
        let p = p as i64;
        while rest % p == 0 {
            rest /= p;
            chi *= super::primes::kronecker(d, p as u64);
        }
    }
    chi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKey;
    use approx::assert_relative_eq;

    #[test]
    fn zeta2_over_q() {
        let q = TotallyRealField::rationals();
        let z = q.dedekind_zeta2(1_000_000).unwrap();
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!((z.value - exact).abs() <= 1e-6);
        assert!((z.value - exact).abs() <= z.error_bound);
        assert!(q.dedekind_zeta2(10).is_err());
    }

    #[test]
    fn zeta2_sqrt5_closed_form() {
        let f = TotallyRealField::from_key(FieldKey::Sqrt5);
        assert_relative_eq!(f.bernoulli2_chi(), 0.8, epsilon = 1e-14);
        let exact = 2.0 * std::f64::consts::PI.powi(4) / (75.0 * 5f64.sqrt());
        assert_relative_eq!(f.dedekind_zeta2_exact(), exact, max_relative = 1e-14);
    }

    #[test]
    fn euler_product_brackets_ideal_sum() {
        for key in FieldKey::ALL {
            let f = TotallyRealField::from_key(key);
            let bound = 200_000u64;
            let counts = f.ideal_norm_counts(bound);
            let direct: f64 = counts
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, &c)| c as f64 / (m as f64).powi(2))
                .sum();
            let z = f.dedekind_zeta2(bound).unwrap();
            assert!(z.value > 1.0);
            assert!((z.value - direct).abs() <= z.error_bound, "{key}");
            assert!((z.value - f.dedekind_zeta2_exact()).abs() <= z.error_bound, "{key}");
        }
    }
}
