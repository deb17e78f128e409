//! Bessel functions of the first kind for nonnegative integer order.
//!
//! Three regimes: the ascending series near the origin, Miller's backward
//! recurrence normalised by `J_0 + 2 sum J_{2k} = 1` in the transition and
//! oscillatory region, and Hankel's asymptotic expansion for very large
//! arguments.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BesselEvalPolicy {
    /// Largest argument evaluated by the ascending series. `None` selects the
    /// series exactly when its cancellation stays below about three digits.
    pub x_switch: Option<f64>,
    pub accuracy: f64,
    pub max_order: u32,
}

impl Default for BesselEvalPolicy {
    fn default() -> Self {
        BesselEvalPolicy {
            x_switch: None,
            accuracy: 1e-12,
            max_order: 101,
        }
    }
}

impl BesselEvalPolicy {
    pub fn validate(&self) -> Result<()> {
        if let Some(s) = self.x_switch {
            if !(s > 0.0) {
                return Err(Error::param("x_switch", "must be positive"));
            }
        }
        if !(self.accuracy > 0.0 && self.accuracy <= 1e-6) {
            return Err(Error::param("accuracy", "must lie in (0, 1e-6]"));
        }
        Ok(())
    }

    fn use_series(&self, m: u32, x: f64) -> bool {
        match self.x_switch {
            Some(s) => x <= s,
            None => x * x <= SERIES_WINDOW * (m as f64 + 1.0),
        }
    }
}

/// The series loses roughly `exp(x^2 / (2(m+1)))` to cancellation.
const SERIES_WINDOW: f64 = 12.0;
const HANKEL_MIN_X: f64 = 2000.0;

/// `J_m(x)` for odd positive `m`, the orders that occur in the trace formula.
pub fn bessel_j(m: u32, x: f64, policy: &BesselEvalPolicy) -> Result<f64> {
    if m % 2 == 0 {
        return Err(Error::param("order", format!("order {m} must be odd and positive")));
    }
    if m > policy.max_order {
        return Err(Error::param(
            "order",
            format!("order {m} exceeds the policy maximum {}", policy.max_order),
        ));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::param(
            "x",
            format!("argument {x} must be finite and nonnegative"),
        ));
    }
    Ok(eval(m, x, policy))
}

/// `J_m(x)` for any integer order `m >= 0` and real `x`.
pub fn bessel_j_int(m: u32, x: f64) -> f64 {
    let v = eval(m, x.abs(), &BesselEvalPolicy::default());
    if x < 0.0 && m % 2 == 1 {
        -v
    } else {
        v
    }
}

fn eval(m: u32, x: f64, policy: &BesselEvalPolicy) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if policy.use_series(m, x) {
        series(m, x)
    } else if x >= HANKEL_MIN_X.max((m as f64).powi(2)) {
        hankel(m, x)
    } else {
        miller(m, x)
    }
}

fn series(m: u32, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut t = 1.0f64;
    for i in 1..=m {
        t *= h / i as f64;
    }
    if t == 0.0 {
        return 0.0;
    }
    let h2 = h * h;
    let mut sum = t;
    let mut j = 0.0f64;
    loop {
        j += 1.0;
        t *= -h2 / (j * (m as f64 + j));
        sum += t;
        if t.abs() <= 1e-17 * sum.abs() {
            return sum;
        }
    }
}

fn miller(m: u32, x: f64) -> f64 {
    let top = (m as f64).max(x.ceil());
    let mut n = (top + 15.0 * top.cbrt() + 30.0) as u32;
    if n % 2 == 1 {
        n += 1;
    }
    let mut next = 0.0f64; // j_{n+1}
    let mut cur = 1e-300f64; // j_n
    let mut even_sum = 0.0f64; // sum over even indices >= 2
    let mut saved = if n == m { cur } else { 0.0 };
    let two_over_x = 2.0 / x;
    while n > 0 {
        let prev = n as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        n -= 1;
        if n == m {
            saved = cur;
        }
        if n % 2 == 0 && n > 0 {
            even_sum += cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            even_sum *= 1e-250;
            saved *= 1e-250;
        }
    }
    saved / (cur + 2.0 * even_sum)
}

fn hankel(m: u32, x: f64) -> f64 {
    let mu = 4.0 * (m as f64).powi(2);
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 0..200u32 {
        let kk = k as f64;
        if k > 0 {
            term *= (mu - (2.0 * kk - 1.0).powi(2)) / (kk * 8.0 * x);
        }
        let a = term.abs();
        if a > last {
            break;
        }
        last = a;
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if a < 1e-17 {
            break;
        }
    }
    // chi = x - (2m+1) pi/4; the shift is reduced exactly modulo 2 pi.
    let c = std::f64::consts::FRAC_PI_4 * ((2 * m as u64 + 1) % 8) as f64;
    let (sx, cx) = x.sin_cos();
    let (sc, cc) = c.sin_cos();
    let cos_chi = cx * cc + sx * sc;
    let sin_chi = sx * cc - cx * sc;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BesselBoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// Compares `|J_{2k-1}(x)|` with `min(1, (e x / 4k)^{2k-1})`.
pub fn bessel_bound_check(m: u32, x: f64) -> Result<BesselBoundCheck> {
    let lhs = bessel_j(m, x, &BesselEvalPolicy::default())?.abs();
    let rhs = bessel_majorant(m, x);
    Ok(BesselBoundCheck {
        lhs,
        rhs,
        ok: lhs <= rhs * (1.0 + 1e-9),
    })
}

/// `min(1, (e x / (2(m+1)))^m)`, a bound for `|J_m(x)|` with constant one.
pub fn bessel_majorant(m: u32, x: f64) -> f64 {
    let base = std::f64::consts::E * x / (2.0 * (m as f64 + 1.0));
    base.powi(m as i32).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::bessel_series as oracle;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        let p = BesselEvalPolicy::default();
        assert_eq!(bessel_j(1, 0.0, &p).unwrap(), 0.0);
        assert!(bessel_j(2, 1.0, &p).is_err());
        assert!(bessel_j(103, 1.0, &p).is_err());
        assert!(bessel_j(3, -1.0, &p).is_err());
        let v = bessel_j(11, 4.0 * std::f64::consts::PI, &p).unwrap();
        let o = oracle(11, 4.0 * std::f64::consts::PI);
        assert!(((v - o) / o).abs() <= 1e-12, "{v} {o}");
        let j11 = bessel_j(11, 1.0, &p).unwrap();
        assert!(j11 <= (std::f64::consts::E / 24.0).powi(11));
        // reference values
        assert!((bessel_j_int(0, 1.0) - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j_int(1, 10.0) - 0.043_472_746_168_861_44).abs() < 1e-15);
    }

    #[test]
    fn matches_series_oracle() {
        let p = BesselEvalPolicy::default();
        let mut worst = 0.0f64;
        for m in (1..=51).step_by(2) {
            for i in 1..=100 {
                let x = 0.5 * i as f64;
                let v = bessel_j(m, x, &p).unwrap();
                let o = oracle(m, x);
                if o.abs() > 1e-300 {
                    worst = worst.max(((v - o) / o).abs());
                }
            }
        }
        assert!(worst <= 1e-12, "worst relative error {worst}");
    }

    #[test]
    fn hankel_agrees_with_miller() {
        for m in [1u32, 3, 11, 23, 41] {
            for &x in &[2000.5, 2718.28, 4000.0, 9999.9] {
                let a = hankel(m, x);
                let b = miller(m, x);
                assert!((a - b).abs() <= 1e-10 * (2.0 / x).sqrt(), "m={m} x={x} {a} {b}");
            }
        }
    }

    #[test]
    fn bound_examples_and_grid() {
        let c = bessel_bound_check(11, 0.5).unwrap();
        assert!(c.ok);
        let c = bessel_bound_check(11, 0.0).unwrap();
        assert!(c.ok && c.lhs == 0.0);
        for m in (3..=51).step_by(2) {
            for i in 1..=400 {
                let x = 0.25 * i as f64;
                assert!(bessel_bound_check(m, x).unwrap().ok, "m={m} x={x}");
            }
        }
    }

    proptest! {
        #[test]
        fn three_term_recurrence(m in 1u32..60, x in 0.1f64..50.0) {
            let a = bessel_j_int(m - 1, x);
            let b = bessel_j_int(m + 1, x);
            let c = bessel_j_int(m, x);
            let lhs = a + b;
            let rhs = 2.0 * m as f64 / x * c;
            let scale = a.abs().max(b.abs()).max(rhs.abs()).max(1e-300);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * scale, "{} vs {}", lhs, rhs);
        }

        #[test]
        fn bounded_by_one(m in 0u32..102, x in 0.0f64..500.0) {
            prop_assert!(bessel_j_int(m, x).abs() <= 1.0 + 1e-12);
        }
    }
}
