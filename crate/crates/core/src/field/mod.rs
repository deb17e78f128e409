//! Arithmetic in the ring of integers of a totally real field of degree one
//! or two with narrow class number one.
//!
//! Elements are stored as integer coordinates `a + b*omega` where `omega`
//! is the second integral basis element (`(1 + sqrt D)/2` for the shipped
//! quadratic presets). Over `Q` the `b` coordinate is always zero.

mod ideal;
mod primes;
mod zeta;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ideal::{IdealRep, PrimeIdeal};
pub use primes::{factor, is_prime, primes_up_to};
pub use zeta::ZetaValue;

/// String keys of the shipped field presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKey {
    #[serde(rename = "q")]
    Rationals,
    #[serde(rename = "q-sqrt5")]
    Sqrt5,
    #[serde(rename = "q-sqrt13")]
    Sqrt13,
    #[serde(rename = "q-sqrt17")]
    Sqrt17,
}

impl FieldKey {
    pub const ALL: [FieldKey; 4] = [FieldKey::Rationals, FieldKey::Sqrt5, FieldKey::Sqrt13, FieldKey::Sqrt17];

    pub fn as_str(self) -> &'static str {
        match self {
            FieldKey::Rationals => "q",
            FieldKey::Sqrt5 => "q-sqrt5",
            FieldKey::Sqrt13 => "q-sqrt13",
            FieldKey::Sqrt17 => "q-sqrt17",
        }
    }
}

impl FromStr for FieldKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FieldKey::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownField(s.to_string()))
    }
}

impl fmt::Display for FieldKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An algebraic integer `a + b*omega`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    pub a: i64,
    pub b: i64,
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement { a: 0, b: 0 };
    pub const ONE: FieldElement = FieldElement { a: 1, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        FieldElement { a, b }
    }

    pub const fn rational(a: i64) -> Self {
        FieldElement { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> Self {
        FieldElement::new(-self.a, -self.b)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}{:+}w", self.a, self.b)
        }
    }
}

impl FromStr for FieldElement {
    type Err = Error;

    /// Parses `A` or `A,B`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::param("element", format!("`{s}`: {e}")))
        };
        match s.split_once(',') {
            Some((a, b)) => Ok(FieldElement::new(parse(a)?, parse(b)?)),
            None => Ok(FieldElement::rational(parse(s)?)),
        }
    }
}

pub(crate) fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("field element coordinate overflowed i64")
}

/// A totally real field of degree one or two with narrow class number one.
#[derive(Debug, Clone)]
pub struct TotallyRealField {
    key: FieldKey,
    degree: usize,
    disc: i64,
    /// `omega^2 = omega + q`.
    q: i64,
    fundamental_unit: FieldElement,
    regulator: f64,
    different: FieldElement,
    omega: [f64; 2],
}

impl TotallyRealField {
    pub fn rationals() -> Self {
        TotallyRealField {
            key: FieldKey::Rationals,
            degree: 1,
            disc: 1,
            q: 0,
            fundamental_unit: FieldElement::ONE,
            regulator: 0.0,
            different: FieldElement::ONE,
            omega: [0.0, 0.0],
        }
    }

    fn real_quadratic(key: FieldKey, disc: i64, unit: FieldElement) -> Self {
        debug_assert_eq!(disc % 4, 1);
        let sqrt_d = (disc as f64).sqrt();
        let mut field = TotallyRealField {
            key,
            degree: 2,
            disc,
            q: (disc - 1) / 4,
            fundamental_unit: unit,
            regulator: 0.0,
            different: FieldElement::ONE,
            omega: [(1.0 + sqrt_d) / 2.0, (1.0 - sqrt_d) / 2.0],
        };
        assert_eq!(field.norm(unit), -1, "preset unit must have norm -1");
        field.regulator = field.embed(unit)[0].abs().ln();
        // sqrt(D) = 2w - 1 has norm -D; the unit of norm -1 fixes the sign.
        let sqrt_disc = FieldElement::new(-1, 2);
        let delta = field.totally_positive_associate(field.mul(sqrt_disc, unit));
        field.different = field
            .canonical_generator(delta)
            .expect("different generator is totally positive");
        field
    }

    pub fn from_key(key: FieldKey) -> Self {
        match key {
            FieldKey::Rationals => Self::rationals(),
            FieldKey::Sqrt5 => Self::real_quadratic(key, 5, FieldElement::new(0, 1)),
            FieldKey::Sqrt13 => Self::real_quadratic(key, 13, FieldElement::new(1, 1)),
            FieldKey::Sqrt17 => Self::real_quadratic(key, 17, FieldElement::new(3, 2)),
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(Self::from_key(name.parse()?))
    }

    pub fn key(&self) -> FieldKey {
        self.key
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    /// Coefficients `(c1, c0)` of the minimal polynomial `t^2 - c1 t - c0` of omega.
    pub fn omega_min_poly(&self) -> (i64, i64) {
        (1, self.q)
    }

    pub fn fundamental_unit(&self) -> FieldElement {
        self.fundamental_unit
    }

    /// Logarithm of the larger embedding of the fundamental unit (0 over Q).
    pub fn regulator(&self) -> f64 {
        self.regulator
    }

    pub fn roots_of_unity(&self) -> u32 {
        2
    }

    /// Totally positive generator of the different ideal.
    pub fn different(&self) -> FieldElement {
        self.different
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement::new(x.a + y.a, x.b + y.b)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement::new(x.a - y.a, x.b - y.b)
    }

    pub fn scale(&self, x: FieldElement, s: i64) -> FieldElement {
        FieldElement::new(narrow(x.a as i128 * s as i128), narrow(x.b as i128 * s as i128))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let (a1, b1, a2, b2) = (x.a as i128, x.b as i128, y.a as i128, y.b as i128);
        let bb = b1 * b2;
        FieldElement::new(narrow(a1 * a2 + self.q as i128 * bb), narrow(a1 * b2 + a2 * b1 + bb))
    }

    /// Galois conjugate; the identity over Q.
    pub fn conj(&self, x: FieldElement) -> FieldElement {
        if self.degree == 1 {
            x
        } else {
            FieldElement::new(x.a + x.b, -x.b)
        }
    }

    /// The cofactor `x'` with `x * x' = N(x)`: the conjugate, or 1 over Q.
    pub fn adjugate(&self, x: FieldElement) -> FieldElement {
        if self.degree == 1 {
            FieldElement::ONE
        } else {
            self.conj(x)
        }
    }

    pub fn norm(&self, x: FieldElement) -> i128 {
        if self.degree == 1 {
            x.a as i128
        } else {
            let (a, b) = (x.a as i128, x.b as i128);
            a * a + a * b - self.q as i128 * b * b
        }
    }

    pub fn trace(&self, x: FieldElement) -> i128 {
        if self.degree == 1 {
            x.a as i128
        } else {
            2 * x.a as i128 + x.b as i128
        }
    }

    /// `(N(x), Tr(x))`, exact.
    pub fn norm_trace(&self, x: FieldElement) -> (i128, i128) {
        (self.norm(x), self.trace(x))
    }

    /// Real embeddings `(sigma_1(x), sigma_2(x))`; both equal `x` over Q.
    pub fn embed(&self, x: FieldElement) -> [f64; 2] {
        if self.degree == 1 {
            [x.a as f64, x.a as f64]
        } else {
            let s1 = x.a as f64 + x.b as f64 * self.omega[0];
            let s2 = x.a as f64 + x.b as f64 * self.omega[1];
            // Recover the smaller embedding from the exact norm to avoid cancellation.
            let n = self.norm(x) as f64;
            if s1.abs() >= s2.abs() {
                [s1, if s1 == 0.0 { 0.0 } else { n / s1 }]
            } else {
                [n / s2, s2]
            }
        }
    }

    pub fn is_totally_positive(&self, x: FieldElement) -> bool {
        if self.degree == 1 {
            return x.a > 0;
        }
        // Exact: N(x) > 0 and Tr(x) > 0.
        self.norm(x) > 0 && self.trace(x) > 0
    }

    /// `x / y` when the quotient is integral.
    pub fn div_exact(&self, x: FieldElement, y: FieldElement) -> Option<FieldElement> {
        let n = self.norm(y);
        if n == 0 {
            return None;
        }
        if self.degree == 1 {
            return (x.a % y.a == 0).then(|| FieldElement::rational(x.a / y.a));
        }
        let t = self.mul(x, self.conj(y));
        let (a, b) = (t.a as i128, t.b as i128);
        if a % n != 0 || b % n != 0 {
            return None;
        }
        Some(FieldElement::new(narrow(a / n), narrow(b / n)))
    }

    pub fn divides(&self, d: FieldElement, x: FieldElement) -> bool {
        self.div_exact(x, d).is_some()
    }

    pub fn pow(&self, x: FieldElement, e: u32) -> FieldElement {
        let mut acc = FieldElement::ONE;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Inverse of the fundamental unit (`-eps'` since `N(eps) = -1`).
    pub fn unit_inverse(&self) -> FieldElement {
        if self.degree == 1 {
            return FieldElement::ONE;
        }
        -self.conj(self.fundamental_unit)
    }

    /// `eps_0^m` for any integer `m`.
    pub fn unit_power(&self, m: i32) -> FieldElement {
        if self.degree == 1 {
            return FieldElement::ONE;
        }
        let base = if m >= 0 {
            self.fundamental_unit
        } else {
            self.unit_inverse()
        };
        self.pow(base, m.unsigned_abs())
    }

    /// Multiplies by a unit (or the inverse unit) to make the norm positive,
    /// then fixes the sign. Requires `x != 0`.
    pub fn totally_positive_associate(&self, x: FieldElement) -> FieldElement {
        if self.degree == 1 {
            return FieldElement::rational(x.a.abs());
        }
        let mut y = x;
        if self.norm(y) < 0 {
            y = self.mul(y, self.fundamental_unit);
        }
        if self.trace(y) < 0 {
            y = -y;
        }
        y
    }

    /// Unique totally positive generator of `(g0)` whose log-embedding ratio
    /// `log(sigma_1/sigma_2)` lies in `[0, 4 log eps_0)`.
    ///
    /// The window test is exact: `sigma_1 >= sigma_2` iff `b >= 0`.
    pub fn canonical_generator(&self, g0: FieldElement) -> Result<FieldElement> {
        if !self.is_totally_positive(g0) {
            return Err(Error::NotTotallyPositive(g0));
        }
        if self.degree == 1 {
            return Ok(g0);
        }
        let eps2 = self.unit_power(2);
        let eps2_inv = self.unit_power(-2);
        let [s1, s2] = self.embed(g0);
        let t = (s1 / s2).ln();
        let step = 4.0 * self.regulator;
        let shift = (t / step).floor() as i32;
        let mut g = self.mul(g0, self.unit_power(-2 * shift));
        loop {
            if g.b < 0 {
                g = self.mul(g, eps2);
            } else if self.mul(g, eps2_inv).b >= 0 {
                g = self.mul(g, eps2_inv);
            } else {
                return Ok(g);
            }
        }
    }

    /// `|sigma_1(x)| >= |sigma_2(x)|`, decided exactly.
    fn first_embedding_dominates(&self, x: FieldElement) -> bool {
        // sigma_1^2 - sigma_2^2 = b sqrt(D) (2a + b)
        (x.b as i128) * (2 * x.a as i128 + x.b as i128) >= 0
    }

    /// Generator of `(c)` minimising `max_i |c^(i)|` over the unit orbit,
    /// normalised so that `sigma_1(c) > 0`.
    ///
    /// The minimiser is characterised by `|c1/c2|` in `[eps^-1, eps)`, which
    /// is tested exactly on `y = c^2 eps`.
    pub fn balanced_representative(&self, c: FieldElement) -> Result<FieldElement> {
        if c.is_zero() {
            return Err(Error::ZeroElement(c));
        }
        if self.degree == 1 {
            return Ok(FieldElement::rational(c.a.abs()));
        }
        let eps = self.fundamental_unit;
        let eps_inv = self.unit_inverse();
        let eps2_inv = self.unit_power(-2);
        let [s1, s2] = self.embed(c);
        let r = (s1 / s2).abs().ln();
        let shift = (-r / (2.0 * self.regulator)).round() as i32;
        let mut x = self.mul(c, self.unit_power(shift));
        loop {
            let y = self.mul(self.mul(x, x), eps);
            if !self.first_embedding_dominates(y) {
                x = self.mul(x, eps);
            } else if self.first_embedding_dominates(self.mul(y, eps2_inv)) {
                x = self.mul(x, eps_inv);
            } else {
                break;
            }
        }
        if self.embed(x)[0] < 0.0 {
            x = -x;
        }
        Ok(x)
    }

    /// All units `±eps_0^m` with `max_i |eps^(i)| <= bound`, ordered by
    /// `|m|` then sign. Over Q this is `{1, -1}`.
    pub fn unit_representatives(&self, bound: f64) -> Vec<FieldElement> {
        if self.degree == 1 || bound < 1.0 {
            return vec![FieldElement::ONE, -FieldElement::ONE];
        }
        let max_m = (bound.ln() / self.regulator + 1e-12).floor() as i32;
        let mut out = Vec::new();
        for m in 0..=max_m {
            let exps: &[i32] = if m == 0 { &[0] } else { &[m, -m] };
            for &e in exps {
                let u = self.unit_power(e);
                out.push(u);
                out.push(-u);
            }
        }
        out
    }

    /// Kronecker symbol `(D | p)` for a rational prime `p`.
    pub fn kronecker(&self, p: u64) -> i32 {
        primes::kronecker(self.disc, p)
    }
}

impl PartialEq for TotallyRealField {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for TotallyRealField {}

pub(crate) fn cmp_norm_then_generator(n1: u64, g1: FieldElement, n2: u64, g2: FieldElement) -> Ordering {
    n1.cmp(&n2).then(g1.cmp(&g2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn sqrt5() -> TotallyRealField {
        TotallyRealField::from_key(FieldKey::Sqrt5)
    }

    #[test]
    fn embeddings() {
        let f = sqrt5();
        let [s1, s2] = f.embed(FieldElement::new(2, 1));
        assert_relative_eq!(s1, 2.0 + (1.0 + 5f64.sqrt()) / 2.0, max_relative = 1e-15);
        assert_relative_eq!(s2, 2.0 + (1.0 - 5f64.sqrt()) / 2.0, max_relative = 1e-15);
        assert_relative_eq!(s1, 3.6180339887, epsilon = 1e-9);
        assert_relative_eq!(s2, 1.3819660113, epsilon = 1e-9);
        for key in FieldKey::ALL {
            let f = TotallyRealField::from_key(key);
            assert_eq!(f.embed(FieldElement::ONE), [1.0, 1.0]);
        }
        let q = TotallyRealField::rationals();
        assert_eq!(q.embed(FieldElement::rational(7)), [7.0, 7.0]);
    }

    #[test]
    fn norm_and_trace() {
        let f = sqrt5();
        assert_eq!(f.norm_trace(FieldElement::new(2, 1)), (5, 5));
        assert_eq!(f.norm_trace(FieldElement::ZERO), (0, 0));
        assert_eq!(f.norm_trace(f.fundamental_unit()), (-1, 1));
        let q = TotallyRealField::rationals();
        assert_eq!(q.norm_trace(FieldElement::rational(-6)), (-6, -6));
    }

    #[test]
    fn presets() {
        for key in FieldKey::ALL {
            let f = TotallyRealField::from_key(key);
            assert_eq!(f.key().as_str().parse::<FieldKey>().unwrap(), key);
            if f.degree() == 2 {
                let [e1, e2] = f.embed(f.fundamental_unit());
                assert!(e1 > 1.0);
                assert_relative_eq!(e1 * e2, -1.0, epsilon = 1e-12);
                assert_relative_eq!(f.regulator(), e1.ln(), epsilon = 1e-15);
                let d = f.different();
                assert!(f.is_totally_positive(d));
                assert_eq!(f.norm(d), f.discriminant() as i128);
                // D is the discriminant of t^2 - t - q
                let (c1, c0) = f.omega_min_poly();
                assert_eq!(c1 * c1 + 4 * c0, f.discriminant());
            }
        }
        let err = TotallyRealField::from_name("q-sqrt6").unwrap_err();
        assert!(err.to_string().contains("narrow class number one"));
    }

    #[test]
    fn different_of_sqrt5_is_two_plus_omega() {
        let f = sqrt5();
        assert_eq!(f.different(), FieldElement::new(2, 1));
    }

    #[test]
    fn units() {
        let q = TotallyRealField::rationals();
        assert_eq!(q.unit_representatives(10.0).len(), 2);
        let f = sqrt5();
        let u = f.unit_representatives(1.7);
        assert_eq!(u.len(), 6);
        let w = f.fundamental_unit();
        for x in [FieldElement::ONE, w, f.unit_inverse()] {
            assert!(u.contains(&x) && u.contains(&-x));
        }
        assert_eq!(f.unit_representatives(1.0).len(), 2);
        for x in f.unit_representatives(50.0) {
            assert_eq!(f.norm(x).abs(), 1);
            let [a, b] = f.embed(x);
            assert!(a.abs().max(b.abs()) <= 50.0);
        }
        assert_eq!(f.mul(w, f.unit_inverse()), FieldElement::ONE);
    }

    #[test]
    fn canonical_generator_window() {
        let f = sqrt5();
        let g = f.canonical_generator(FieldElement::new(2, 1)).unwrap();
        let [s1, s2] = f.embed(g);
        let t = (s1 / s2).ln();
        assert!((0.0..4.0 * f.regulator()).contains(&t));
        let moved = f.mul(g, f.unit_power(2));
        assert_eq!(f.canonical_generator(moved).unwrap(), g);
        assert_eq!(f.canonical_generator(g).unwrap(), g);
        assert!(f.canonical_generator(FieldElement::new(-1, 2)).is_err());
        let q = TotallyRealField::rationals();
        assert_eq!(
            q.canonical_generator(FieldElement::rational(12)).unwrap(),
            FieldElement::rational(12)
        );
    }

    #[test]
    fn balanced_representative_window() {
        let f = sqrt5();
        let eps = f.embed(f.fundamental_unit())[0];
        let c = f.balanced_representative(FieldElement::new(2, 1)).unwrap();
        let [c1, c2] = f.embed(c);
        assert!(c1 > 0.0);
        let ratio = (c1 / c2).abs();
        assert!(ratio >= 1.0 / (eps * eps) && ratio <= eps * eps);
        assert_eq!(f.balanced_representative(c).unwrap(), c);
        let far = f.mul(c, f.unit_power(-7));
        assert_eq!(f.balanced_representative(far).unwrap(), c);
    }

    fn element() -> impl Strategy<Value = FieldElement> {
        (-1000i64..1000, -1000i64..1000).prop_map(|(a, b)| FieldElement::new(a, b))
    }

    proptest! {
        #[test]
        fn norm_multiplicative_trace_additive(x in element(), y in element()) {
            for key in [FieldKey::Sqrt5, FieldKey::Sqrt13, FieldKey::Sqrt17] {
                let f = TotallyRealField::from_key(key);
                prop_assert_eq!(f.norm(f.mul(x, y)), f.norm(x) * f.norm(y));
                prop_assert_eq!(f.trace(f.add(x, y)), f.trace(x) + f.trace(y));
                let [s1, s2] = f.embed(x);
                let n = f.norm(x) as f64;
                prop_assert!((s1 * s2 - n).abs() <= 1e-12 * (s1.abs() * s2.abs()).max(1.0) * 10.0);
            }
        }

        #[test]
        fn canonical_generator_orbit_invariant(x in element(), m in -6i32..6) {
            for key in [FieldKey::Sqrt5, FieldKey::Sqrt13, FieldKey::Sqrt17] {
                let f = TotallyRealField::from_key(key);
                prop_assume!(!x.is_zero());
                let g0 = f.totally_positive_associate(x);
                let g1 = f.mul(g0, f.unit_power(2 * m));
                let c0 = f.canonical_generator(g0).unwrap();
                prop_assert_eq!(c0, f.canonical_generator(g1).unwrap());
                prop_assert_eq!(c0, f.canonical_generator(c0).unwrap());
                let b0 = f.balanced_representative(x).unwrap();
                prop_assert_eq!(b0, f.balanced_representative(f.mul(x, f.unit_power(m))).unwrap());
            }
        }
    }
}
