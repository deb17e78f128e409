use num_complex::Complex64;

/// `B_{2k} / (2k)` for `k = 1..=8`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Digamma function for `Re z >= 2`: upward recurrence to `Re z >= 12`
/// followed by the Stirling series.
pub fn digamma(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < 12.0 {
        acc -= z.inv();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    acc + z.ln() - 0.5 * inv - series
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    /// `-gamma + sum_{n>=0} (1/(n+1) - 1/(n+z))`, 10^6 terms plus an
    /// Euler-Maclaurin tail.
    fn oracle(z: Complex64) -> Complex64 {
        let n_terms = 1_000_000u32;
        let mut s = Complex64::new(0.0, 0.0);
        for n in (0..n_terms).rev() {
            let n = n as f64;
            s += 1.0 / (n + 1.0) - (z + n).inv();
        }
        let n = n_terms as f64;
        let f = |t: f64| 1.0 / (t + 1.0) - (z + t).inv();
        let df = |t: f64| -1.0 / (t + 1.0).powi(2) + (z + t).powi(-2);
        let integral = ((z + n) / (n + 1.0)).ln();
        s + integral + 0.5 * f(n) - df(n) / 12.0 - EULER_GAMMA
    }

    #[test]
    fn special_values() {
        let v = digamma(Complex64::new(2.0, 0.0));
        assert!((v.re - (1.0 - EULER_GAMMA)).abs() < 1e-14);
        assert!((v.re - 0.422_784_335_1).abs() < 1e-10);
        let z = Complex64::new(3.5, 2.25);
        assert_eq!(digamma(z.conj()), digamma(z).conj());
        let mut rec = digamma(Complex64::new(2.0, 0.0));
        for n in 2..12 {
            rec += 1.0 / n as f64;
        }
        assert!((rec - digamma(Complex64::new(12.0, 0.0))).norm() < 1e-12);
    }

    #[test]
    fn matches_series_oracle() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..20 {
            let z = Complex64::new(2.0 + 18.0 * next(), -5.0 + 10.0 * next());
            let d = (digamma(z) - oracle(z)).norm();
            assert!(d <= 1e-10, "z={z} diff={d}");
        }
    }

    proptest! {
        #[test]
        fn recurrence(re in 2.0f64..40.0, im in -50.0f64..50.0) {
            let z = Complex64::new(re, im);
            let d = digamma(z + 1.0) - digamma(z) - z.inv();
            prop_assert!(d.norm() <= 1e-12);
        }
    }
}
