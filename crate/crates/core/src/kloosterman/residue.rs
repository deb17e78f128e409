use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, TotallyRealField};

/// A complete residue system of `O / (c)` laid out as the box
/// `{x + y w : 0 <= x < d1, 0 <= y < d2}` from the Hermite normal form of `cO`.
#[derive(Debug, Clone, Serialize)]
pub struct ResidueSystem {
    pub modulus: FieldElement,
    pub d1: u64,
    pub d2: u64,
    /// The lattice `cO` contains `(d1, 0)` and `(shift, d2)`.
    shift: i64,
    #[serde(skip)]
    prime_generators: Vec<FieldElement>,
    phi: u64,
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i128, 0i128);
    let (mut y0, mut y1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Inverse of `r` modulo `n > 0` when `gcd(r, n) = 1`.
fn rational_inverse(r: i64, n: i64) -> Option<i64> {
    let (mut r0, mut r1) = (n, r.rem_euclid(n));
    let (mut x0, mut x1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
    }
    (r0 == 1).then(|| x0.rem_euclid(n))
}

impl ResidueSystem {
    pub fn new(field: &TotallyRealField, c: FieldElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroElement(c));
        }
        let ideal = field.ideal(c)?;
        let prime_generators = ideal.prime_factors().map(|p| p.generator).collect();
        let n = ideal.norm;
        let (d1, d2, shift) = if field.degree() == 1 {
            (n, 1, 0)
        } else {
            // Columns (a, b) and c*w = (b q, a + b).
            let cw = field.mul(c, FieldElement::new(0, 1));
            let (g, u, v) = ext_gcd(c.b as i128, cw.b as i128);
            let d2 = g as u64;
            let d1 = n / d2;
            let x = u * c.a as i128 + v * cw.a as i128;
            (d1, d2, x.rem_euclid(d1 as i128) as i64)
        };
        Ok(ResidueSystem {
            modulus: c,
            d1,
            d2,
            shift,
            prime_generators,
            phi: ideal.euler_phi(),
        })
    }

    /// `|N(c)|`, the number of residues.
    pub fn len(&self) -> u64 {
        self.d1 * self.d2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of invertible residues.
    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// Reduces `z` to its box representative.
    pub fn reduce(&self, z: FieldElement) -> FieldElement {
        let k = z.b.div_euclid(self.d2 as i64);
        let y = z.b - k * self.d2 as i64;
        let x = (z.a as i128 - k as i128 * self.shift as i128).rem_euclid(self.d1 as i128);
        FieldElement::new(x as i64, y)
    }

    /// Position of a reduced representative in lexicographic order.
    pub fn index(&self, r: FieldElement) -> usize {
        (r.a as u64 * self.d2 + r.b as u64) as usize
    }

    pub fn element(&self, index: usize) -> FieldElement {
        let i = index as u64;
        FieldElement::new((i / self.d2) as i64, (i % self.d2) as i64)
    }

    /// Representatives in lexicographic `(x, y)` order.
    pub fn iter(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.len() as usize).map(move |i| self.element(i))
    }

    pub fn mul(&self, field: &TotallyRealField, x: FieldElement, y: FieldElement) -> FieldElement {
        self.reduce(field.mul(x, y))
    }

    /// `r` is a unit modulo `c` iff no prime divisor of `c` contains it.
    pub fn is_invertible(&self, field: &TotallyRealField, r: FieldElement) -> bool {
        self.prime_generators.iter().all(|&p| !field.divides(p, r))
    }

    /// `r^{-1} mod c` as `r^{phi(c) - 1}`.
    pub fn inverse(&self, field: &TotallyRealField, r: FieldElement) -> Result<FieldElement> {
        if !self.is_invertible(field, r) {
            return Err(Error::NotInvertible {
                residue: r,
                modulus: self.modulus,
            });
        }
        if field.degree() == 1 {
            let (_, u, _) = ext_gcd(r.a as i128, self.d1 as i128);
            return Ok(self.reduce(FieldElement::rational(u.rem_euclid(self.d1 as i128) as i64)));
        }
        let mut e = self.phi.saturating_sub(1);
        let mut base = self.reduce(r);
        let mut acc = self.reduce(FieldElement::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(field, acc, base);
            }
            base = self.mul(field, base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Invertible representatives with their inverses, in lexicographic order.
    pub fn unit_pairs(&self, field: &TotallyRealField) -> Vec<(FieldElement, FieldElement)> {
        if field.degree() == 1 {
            let n = self.d1 as i64;
            if n == 1 {
                return vec![(FieldElement::ZERO, FieldElement::ZERO)];
            }
            return (1..n)
                .filter_map(|r| rational_inverse(r, n).map(|s| (FieldElement::rational(r), FieldElement::rational(s))))
                .collect();
        }
        let n = self.len() as usize;
        let mut inv: Vec<Option<FieldElement>> = vec![None; n];
        let mut out = Vec::with_capacity(self.phi as usize);
        for r in self.iter() {
            if !self.is_invertible(field, r) {
                continue;
            }
            let i = self.index(r);
            let s = match inv[i] {
                Some(s) => s,
                None => {
                    let s = self.inverse(field, r).expect("checked invertible");
                    inv[self.index(s)] = Some(r);
                    s
                }
            };
            out.push((r, s));
        }
        out
    }
}

/// `r^{-1}` modulo `c`.
pub fn inverse_mod(field: &TotallyRealField, a: FieldElement, c: FieldElement) -> Result<FieldElement> {
    ResidueSystem::new(field, c)?.inverse(field, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKey;
    use proptest::prelude::*;

    #[test]
    fn shapes() {
        for key in FieldKey::ALL {
            let f = TotallyRealField::from_key(key);
            for ideal in f.enumerate_ideals(300) {
                let c = f.balanced_representative(ideal.generator).unwrap();
                let rs = ResidueSystem::new(&f, c).unwrap();
                assert_eq!(rs.len(), ideal.norm);
                // the box is a complete system: differences are never in cO
                if rs.len() <= 60 {
                    let reps: Vec<_> = rs.iter().collect();
                    for (i, x) in reps.iter().enumerate() {
                        assert_eq!(rs.reduce(*x), *x);
                        for y in &reps[..i] {
                            assert!(!f.divides(c, f.sub(*x, *y)));
                        }
                    }
                }
                let units = rs.unit_pairs(&f);
                assert_eq!(units.len() as u64, rs.phi());
                for (a, b) in units {
                    assert_eq!(rs.mul(&f, a, b), rs.reduce(FieldElement::ONE));
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let q = TotallyRealField::rationals();
        let five = FieldElement::rational(5);
        assert_eq!(
            inverse_mod(&q, FieldElement::rational(2), five).unwrap(),
            FieldElement::rational(3)
        );
        assert_eq!(inverse_mod(&q, FieldElement::ONE, five).unwrap(), FieldElement::ONE);
        assert!(inverse_mod(&q, FieldElement::rational(10), five).is_err());
    }

    proptest! {
        #[test]
        fn inverses_over_sqrt5(a in -300i64..300, b in -300i64..300, ca in -40i64..40, cb in -40i64..40) {
            let f = TotallyRealField::from_key(FieldKey::Sqrt5);
            let c = FieldElement::new(ca, cb);
            prop_assume!(!c.is_zero());
            let rs = ResidueSystem::new(&f, c).unwrap();
            let x = FieldElement::new(a, b);
            prop_assert!(f.divides(c, f.sub(x, rs.reduce(x))));
            if rs.is_invertible(&f, x) {
                let inv = rs.inverse(&f, x).unwrap();
                prop_assert!(f.divides(c, f.sub(f.mul(x, inv), FieldElement::ONE)));
            } else {
                prop_assert!(rs.inverse(&f, x).is_err());
            }
        }
    }
}
