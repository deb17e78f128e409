//! Slow reference evaluators that share no code with the production paths.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, TotallyRealField};
use crate::kloosterman::Twist;

/// `J_m(x)` from the ascending series summed in exact fixed point.
///
/// `x` is dyadic, so every term is a rational with a power-of-two
/// denominator; the working precision is chosen so that the cancellation at
/// `x <= 100` leaves well over 53 correct bits.
pub fn bessel_series(m: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    let x = x.abs();
    // x = mant * 2^exp exactly
    let bits = x.to_bits();
    let exp_raw = ((bits >> 52) & 0x7ff) as i64;
    let mant = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
    let exp = exp_raw - 1075;
    let log2_t0 = m as f64 * (x / 2.0).log2() - (1..=m).map(|i| (i as f64).log2()).sum::<f64>();
    let frac: i64 = 300 + (-log2_t0).max(0.0).ceil() as i64 + (3.0 * x) as i64;
    // t0 = (x/2)^m / m! scaled by 2^frac
    let mut t0 = BigInt::from(mant).pow(m);
    let shift = frac + m as i64 * exp - m as i64;
    t0 = if shift >= 0 {
        t0 << shift as usize
    } else {
        t0 >> (-shift) as usize
    };
    let mut fact = BigInt::one();
    for i in 1..=m {
        fact *= i;
    }
    let mut t = t0 / fact;
    let mant2 = BigInt::from(mant).pow(2);
    let sh2 = 2 * exp - 2;
    let mut sum = t.clone();
    let mut j: u64 = 0;
    while !t.is_zero() {
        j += 1;
        let mut u = &t * &mant2;
        u = if sh2 >= 0 {
            u << sh2 as usize
        } else {
            u >> (-sh2) as usize
        };
        t = -(u / BigInt::from(j * (m as u64 + j)));
        sum += &t;
    }
    let top = sum.bits() as i64;
    let drop = (top - 60).max(0);
    let v = (sum >> drop as usize).to_f64().unwrap_or(0.0);
    v * 2f64.powi((drop - frac) as i32)
}

/// Canonical key of `z mod c`: `c | z` iff both coordinates of `z c'` are
/// divisible by `N(c)`, where `c'` is the cofactor with `c c' = N(c)`.
fn class_key(field: &TotallyRealField, c_adj: FieldElement, n: i64, z: FieldElement) -> (i64, i64) {
    let w = field.mul(z, c_adj);
    (w.a.rem_euclid(n), w.b.rem_euclid(n))
}

/// `S(nu, mu; c)` by enumerating the box `[0, N)^n`, deduplicating residues
/// with [`class_key`] and finding each inverse as a power of the residue.
/// Quadratic in `|N(c)|`; meant for moduli of norm up to a few thousand.
pub fn kloosterman_brute(
    field: &TotallyRealField,
    nu: FieldElement,
    mu: FieldElement,
    c: FieldElement,
    twist: Twist,
) -> Result<Complex64> {
    Ok(kloosterman_brute_batch(field, &[(nu, mu)], c, twist)?[0])
}

/// [`kloosterman_brute`] for several `(nu, mu)` sharing one modulus.
pub fn kloosterman_brute_batch(
    field: &TotallyRealField,
    pairs: &[(FieldElement, FieldElement)],
    c: FieldElement,
    twist: Twist,
) -> Result<Vec<Complex64>> {
    if c.is_zero() {
        return Err(Error::ZeroElement(c));
    }
    let n = i64::try_from(field.norm(c).abs()).map_err(|_| Error::param("c", "modulus norm too large"))?;
    if n == 1 {
        return Ok(vec![Complex64::new(1.0, 0.0); pairs.len()]);
    }
    let c_adj = field.adjugate(c);
    let ys = if field.degree() == 1 { 1 } else { n };
    let slot = |key: (i64, i64)| (key.0 * ys + key.1) as usize;
    let mut reps: Vec<Option<FieldElement>> = vec![None; (n * ys) as usize];
    let mut found = 0;
    for x in 0..n {
        for y in 0..ys {
            let z = FieldElement::new(x, y);
            let s = slot(class_key(field, c_adj, n, z));
            if reps[s].is_none() {
                reps[s] = Some(z);
                found += 1;
            }
        }
    }
    if found != n {
        return Err(Error::param("c", format!("found {found} residues, expected {n}")));
    }
    let one = class_key(field, c_adj, n, FieldElement::ONE);
    let theta_c = match twist {
        Twist::Plain => c,
        Twist::Different => field.mul(field.different(), c),
    };
    let theta_adj = field.adjugate(theta_c);
    let den = field.norm(theta_c);
    let phase = |z: FieldElement| {
        let t = field.trace(field.mul(z, theta_adj)) * den.signum();
        let j = t.rem_euclid(den.abs());
        let angle = 2.0 * PI * j as f64 / den.abs() as f64;
        Complex64::new(angle.cos(), angle.sin())
    };
    let mut sums = vec![Complex64::new(0.0, 0.0); pairs.len()];
    for a in reps.iter().flatten().copied() {
        // a^k = 1 for some k <= n exactly when a is a unit
        let mut power = a;
        let mut prev = FieldElement::ONE;
        let mut inverse = None;
        for _ in 0..n {
            let key = class_key(field, c_adj, n, power);
            if key == one {
                inverse = Some(prev);
                break;
            }
            prev = reps[slot(key)].expect("every class has a representative");
            power = field.mul(prev, a);
        }
        if let Some(inv) = inverse {
            for (s, &(nu, mu)) in sums.iter_mut().zip(pairs) {
                *s += phase(field.add(field.mul(nu, a), field.mul(mu, inv)));
            }
        }
    }
    Ok(sums)
}
