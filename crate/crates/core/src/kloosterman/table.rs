use std::collections::HashMap;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{PhaseMap, ResidueSystem, Twist};
use crate::error::Result;
use crate::field::{FieldElement, TotallyRealField};
use crate::special::e_rational;

/// Query count from which the full FFT table is built.
pub const FFT_MIN_QUERIES: usize = 24;

/// Per-modulus cache answering many `S(nu, mu; c)` queries.
///
/// If `nu` (or `mu`) is invertible then `S(nu, mu; c) = K(nu mu)` with
/// `K(t) = S(t, 1; c)`. Over `Q` the whole `K` table is one FFT; in degree
/// two the same holds whenever `O/(c)` is cyclic (`c` has no rational
/// integer factor); otherwise `K(t)` is filled lazily. The FFT is only used
/// when the caller expects enough queries to amortise it.
#[derive(Debug)]
pub struct KloostermanTable {
    rs: ResidueSystem,
    phase: PhaseMap,
    /// `(x_a, y_a, Tr(a^{-1} w) mod den)` for each invertible `a`.
    units: Vec<(i128, i128, i128)>,
    roots: Vec<Complex64>,
    full: Option<Vec<Complex64>>,
    cache: HashMap<FieldElement, Complex64>,
}

impl KloostermanTable {
    pub fn new(field: &TotallyRealField, c: FieldElement, twist: Twist) -> Result<Self> {
        Self::with_query_hint(field, c, twist, usize::MAX)
    }

    /// As [`KloostermanTable::new`], building the full FFT table only if
    /// `queries` reaches [`FFT_MIN_QUERIES`].
    pub fn with_query_hint(field: &TotallyRealField, c: FieldElement, twist: Twist, queries: usize) -> Result<Self> {
        let rs = ResidueSystem::new(field, c)?;
        let phase = PhaseMap::new(field, c, twist);
        let units: Vec<_> = rs
            .unit_pairs(field)
            .into_iter()
            .map(|(a, inv)| (a.a as i128, a.b as i128, phase.index(field, inv)))
            .collect();
        let den = phase.den;
        let roots = (0..den).map(|j| e_rational(j, den)).collect();
        let mut table = KloostermanTable {
            rs,
            phase,
            units,
            roots,
            full: None,
            cache: HashMap::new(),
        };
        if table.rs.d2 == 1 && table.rs.len() > 1 && queries >= FFT_MIN_QUERIES {
            table.full = Some(table.fft_table(field));
        }
        Ok(table)
    }

    pub fn residues(&self) -> &ResidueSystem {
        &self.rs
    }

    /// `K(r)` for every `r mod c` when the residues are the integers
    /// `0..N`. The phase of `r x` is `h r x / N` with `h = Tr(w) N / den`,
    /// so `K` is the unnormalised inverse DFT of `x -> e(x^{-1} / (theta c))`
    /// read at `h r`.
    fn fft_table(&self, field: &TotallyRealField) -> Vec<Complex64> {
        let n = self.rs.len() as usize;
        let (t0, _) = self.phase.coefficients(field, FieldElement::ONE);
        let scaled = t0 * n as i128;
        debug_assert_eq!(scaled % self.phase.den, 0);
        let h = (scaled / self.phase.den).rem_euclid(n as i128) as usize;
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for &(x, _, inv) in &self.units {
            buf[x as usize] = self.roots[inv as usize];
        }
        FftPlanner::<f64>::new().plan_fft_inverse(n).process(&mut buf);
        (0..n).map(|r| buf[(h * r) % n]).collect()
    }

    fn k_direct(&self, field: &TotallyRealField, t: FieldElement) -> Complex64 {
        let (t0, t1) = self.phase.coefficients(field, t);
        let den = self.phase.den;
        let mut s = Complex64::new(0.0, 0.0);
        for &(x, y, inv) in &self.units {
            let j = (t0 * x + t1 * y + inv).rem_euclid(den);
            s += self.roots[j as usize];
        }
        s
    }

    fn k(&mut self, field: &TotallyRealField, t: FieldElement) -> Complex64 {
        let t = self.rs.reduce(t);
        if let Some(full) = &self.full {
            return full[self.rs.index(t)];
        }
        if let Some(v) = self.cache.get(&t) {
            return *v;
        }
        let v = self.k_direct(field, t);
        self.cache.insert(t, v);
        v
    }

    pub fn sum(&mut self, field: &TotallyRealField, nu: FieldElement, mu: FieldElement) -> Complex64 {
        if self.rs.len() == 1 {
            return Complex64::new(1.0, 0.0);
        }
        if self.rs.is_invertible(field, nu) || self.rs.is_invertible(field, mu) {
            return self.k(field, field.mul(nu, mu));
        }
        let (n0, n1) = self.phase.coefficients(field, nu);
        let (m0, m1) = self.phase.coefficients(field, mu);
        let den = self.phase.den;
        let mut s = Complex64::new(0.0, 0.0);
        for &(x, y, _) in &self.units {
            let a = FieldElement::new(x as i64, y as i64);
            let inv = self.rs.inverse(field, a).expect("unit residue");
            let j = (n0 * x + n1 * y + m0 * inv.a as i128 + m1 * inv.b as i128).rem_euclid(den);
            s += self.roots[j as usize];
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKey;
    use crate::kloosterman::{kloosterman_sum, kloosterman_sum_twisted};

    #[test]
    fn table_matches_direct_sums() {
        for key in FieldKey::ALL {
            let f = TotallyRealField::from_key(key);
            for ideal in f.enumerate_ideals(120) {
                let c = f.balanced_representative(ideal.generator).unwrap();
                for twist in [Twist::Plain, Twist::Different] {
                    let mut t = KloostermanTable::new(&f, c, twist).unwrap();
                    for (nu, mu) in [
                        ((1, 0), (1, 0)),
                        ((2, 1), (3, 0)),
                        ((6, 0), (4, 2)),
                        ((0, 0), (5, 1)),
                        ((10, 0), (15, 5)),
                    ] {
                        let nu = FieldElement::new(nu.0, if f.degree() == 1 { 0 } else { nu.1 });
                        let mu = FieldElement::new(mu.0, if f.degree() == 1 { 0 } else { mu.1 });
                        let direct = match twist {
                            Twist::Plain => kloosterman_sum(&f, nu, mu, c),
                            Twist::Different => kloosterman_sum_twisted(&f, nu, mu, c),
                        }
                        .unwrap();
                        let v = t.sum(&f, nu, mu);
                        assert!((v - direct).norm() < 1e-9, "{key} c={c} {nu} {mu}: {v} vs {direct}");
                    }
                }
            }
        }
    }
}
