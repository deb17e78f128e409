//! Prime ideals, ideal factorisation and enumeration.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use super::primes::{factor, is_prime, is_square, primes_up_to};
use super::{FieldElement, TotallyRealField};
use crate::error::{Error, Result};

/// A nonzero prime ideal with an explicit totally positive generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeIdeal {
    pub p: u64,
    pub residue_degree: u32,
    pub generator: FieldElement,
    pub norm: u64,
    pub ramified: bool,
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        super::cmp_norm_then_generator(self.norm, self.generator, other.norm, other.generator)
    }
}

/// A nonzero integral ideal with its canonical generator and factorisation.
///
/// Equality, hashing and ordering only look at `(norm, generator)`.
#[derive(Debug, Clone, Serialize)]
pub struct IdealRep {
    pub generator: FieldElement,
    pub norm: u64,
    pub factors: Vec<(PrimeIdeal, u32)>,
}

impl PartialEq for IdealRep {
    fn eq(&self, other: &Self) -> bool {
        self.generator == other.generator
    }
}

impl Eq for IdealRep {}

impl Hash for IdealRep {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.generator.hash(state);
    }
}

impl PartialOrd for IdealRep {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IdealRep {
    fn cmp(&self, other: &Self) -> Ordering {
        super::cmp_norm_then_generator(self.norm, self.generator, other.norm, other.generator)
    }
}

impl fmt::Display for IdealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

impl IdealRep {
    pub fn unit() -> Self {
        IdealRep {
            generator: FieldElement::ONE,
            norm: 1,
            factors: Vec::new(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn moebius(&self) -> i32 {
        if self.is_squarefree() {
            if self.factors.len() % 2 == 0 {
                1
            } else {
                -1
            }
        } else {
            0
        }
    }

    /// Number of integral ideal divisors.
    pub fn divisor_tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    pub fn valuation(&self, p: &PrimeIdeal) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    pub fn is_coprime_to(&self, other: &IdealRep) -> bool {
        self.factors.iter().all(|(p, _)| other.valuation(p) == 0)
    }

    pub fn divides(&self, other: &IdealRep) -> bool {
        self.factors.iter().all(|(p, e)| other.valuation(p) >= *e)
    }

    pub fn prime_factors(&self) -> impl Iterator<Item = &PrimeIdeal> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// `N(a) * prod_{p | a} (1 - 1/N(p))`.
    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|(p, e)| (p.norm - 1) * p.norm.pow(e - 1))
            .product()
    }
}

impl TotallyRealField {
    /// The prime ideals above the rational prime `p`, sorted by generator.
    pub fn split_prime(&self, p: u64) -> Result<Vec<PrimeIdeal>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.degree == 1 {
            return Ok(vec![PrimeIdeal {
                p,
                residue_degree: 1,
                generator: FieldElement::rational(p as i64),
                norm: p,
                ramified: false,
            }]);
        }
        match self.kronecker(p) {
            -1 => Ok(vec![PrimeIdeal {
                p,
                residue_degree: 2,
                generator: FieldElement::rational(p as i64),
                norm: p * p,
                ramified: false,
            }]),
            k => {
                let pi = self.element_of_norm(p)?;
                let g1 = self.canonical_generator(self.totally_positive_associate(pi))?;
                let g2 = self.canonical_generator(self.totally_positive_associate(self.conj(pi)))?;
                let make = |generator| PrimeIdeal {
                    p,
                    residue_degree: 1,
                    generator,
                    norm: p,
                    ramified: k == 0,
                };
                if k == 0 {
                    Ok(vec![make(g1)])
                } else {
                    let mut v = vec![make(g1), make(g2)];
                    v.sort();
                    debug_assert_ne!(v[0], v[1]);
                    Ok(v)
                }
            }
        }
    }

    /// An element of norm `±p`, found by scanning `(2a+b)^2 = D b^2 ± 4p`.
    fn element_of_norm(&self, p: u64) -> Result<FieldElement> {
        let d = self.disc as i128;
        let four_p = 4 * p as i128;
        for b in 0i128..10_000_000 {
            for s in [four_p, -four_p] {
                if let Some(r) = is_square(d * b * b + s) {
                    let a = (r - b) / 2;
                    let x = FieldElement::new(a as i64, b as i64);
                    debug_assert_eq!(self.norm(x).abs(), p as i128);
                    return Ok(x);
                }
            }
        }
        Err(Error::param("prime", format!("no generator found above {p}")))
    }

    /// All prime ideals of norm at most `bound`, ordered by norm then generator.
    pub fn prime_ideals_up_to(&self, bound: u64) -> Vec<PrimeIdeal> {
        let mut out: Vec<PrimeIdeal> = primes_up_to(bound)
            .into_iter()
            .flat_map(|p| self.split_prime(p).expect("sieve yields primes"))
            .filter(|q| q.norm <= bound)
            .collect();
        out.sort();
        out
    }

    /// The ideal generated by a nonzero element.
    pub fn ideal(&self, x: FieldElement) -> Result<IdealRep> {
        if x.is_zero() {
            return Err(Error::ZeroElement(x));
        }
        let n = self.norm(x).unsigned_abs();
        let n = u64::try_from(n).map_err(|_| Error::param("element", "norm exceeds u64"))?;
        let mut factors = Vec::new();
        let mut rest = x;
        for (p, _) in factor(n) {
            for q in self.split_prime(p)? {
                let mut e = 0;
                while let Some(y) = self.div_exact(rest, q.generator) {
                    rest = y;
                    e += 1;
                }
                if e > 0 {
                    factors.push((q, e));
                }
            }
        }
        debug_assert_eq!(self.norm(rest).abs(), 1);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let generator = self.canonical_generator(self.totally_positive_associate(x))?;
        Ok(IdealRep {
            generator,
            norm: n,
            factors,
        })
    }

    /// Builds an ideal from its factorisation.
    pub fn ideal_from_factors(&self, factors: &[(PrimeIdeal, u32)]) -> IdealRep {
        let mut g = FieldElement::ONE;
        let mut norm = 1u64;
        let mut fs: Vec<(PrimeIdeal, u32)> = Vec::new();
        for (p, e) in factors.iter().filter(|(_, e)| *e > 0) {
            g = self.mul(g, self.pow(p.generator, *e));
            norm *= p.norm.pow(*e);
            match fs.iter_mut().find(|(q, _)| q == p) {
                Some(entry) => entry.1 += e,
                None => fs.push((p.clone(), *e)),
            }
        }
        fs.sort_by(|a, b| a.0.cmp(&b.0));
        IdealRep {
            generator: self
                .canonical_generator(g)
                .expect("product of totally positive elements"),
            norm,
            factors: fs,
        }
    }

    pub fn prime_ideal(&self, p: &PrimeIdeal) -> IdealRep {
        self.ideal_from_factors(&[(p.clone(), 1)])
    }

    pub fn ideal_pow(&self, a: &IdealRep, e: u32) -> IdealRep {
        let fs: Vec<_> = a.factors.iter().map(|(p, f)| (p.clone(), f * e)).collect();
        self.ideal_from_factors(&fs)
    }

    pub fn ideal_mul(&self, a: &IdealRep, b: &IdealRep) -> IdealRep {
        let fs: Vec<_> = a.factors.iter().chain(&b.factors).cloned().collect();
        self.ideal_from_factors(&fs)
    }

    pub fn ideal_gcd(&self, a: &IdealRep, b: &IdealRep) -> IdealRep {
        let fs: Vec<_> = a
            .factors
            .iter()
            .map(|(p, e)| (p.clone(), (*e).min(b.valuation(p))))
            .collect();
        self.ideal_from_factors(&fs)
    }

    /// `a / b` when `b | a`.
    pub fn ideal_div(&self, a: &IdealRep, b: &IdealRep) -> Option<IdealRep> {
        if !b.divides(a) {
            return None;
        }
        let fs: Vec<_> = a.factors.iter().map(|(p, e)| (p.clone(), e - b.valuation(p))).collect();
        Some(self.ideal_from_factors(&fs))
    }

    /// All integral divisors, ordered by norm then generator.
    pub fn divisors(&self, a: &IdealRep) -> Vec<IdealRep> {
        let mut acc: Vec<Vec<(PrimeIdeal, u32)>> = vec![Vec::new()];
        for (p, e) in &a.factors {
            let mut next = Vec::new();
            for base in &acc {
                for f in 0..=*e {
                    let mut v = base.clone();
                    v.push((p.clone(), f));
                    next.push(v);
                }
            }
            acc = next;
        }
        let mut out: Vec<IdealRep> = acc.iter().map(|fs| self.ideal_from_factors(fs)).collect();
        out.sort();
        out
    }

    /// Every nonzero integral ideal of norm at most `bound`, each exactly once,
    /// ordered by norm then canonical generator.
    pub fn enumerate_ideals(&self, bound: u64) -> Vec<IdealRep> {
        let primes = self.prime_ideals_up_to(bound);
        let mut out = Vec::new();
        let mut stack: Vec<(PrimeIdeal, u32)> = Vec::new();
        self.enumerate_rec(&primes, 0, 1, bound, &mut stack, &mut out);
        out.sort();
        out
    }

    fn enumerate_rec(
        &self,
        primes: &[PrimeIdeal],
        start: usize,
        norm: u64,
        bound: u64,
        stack: &mut Vec<(PrimeIdeal, u32)>,
        out: &mut Vec<IdealRep>,
    ) {
        out.push(self.ideal_from_factors(stack));
        for (i, p) in primes.iter().enumerate().skip(start) {
            if norm * p.norm > bound {
                break;
            }
            let mut n = norm;
            let mut e = 0;
            while n * p.norm <= bound {
                n *= p.norm;
                e += 1;
                stack.push((p.clone(), e));
                self.enumerate_rec(primes, i + 1, n, bound, stack, out);
                stack.pop();
            }
        }
    }

    /// Number of ideals of each norm `0..=bound` (index 0 unused), from the
    /// Euler product coefficients.
    pub fn ideal_norm_counts(&self, bound: u64) -> Vec<u64> {
        let n = bound as usize;
        let mut counts = vec![0u64; n + 1];
        if n >= 1 {
            counts[1] = 1;
        }
        for p in self.prime_ideals_up_to(bound) {
            // multiply the Dirichlet series by 1/(1 - Np^-s)
            let q = p.norm as usize;
            for m in (q..=n).step_by(q) {
                counts[m] += counts[m / q];
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKey;

    fn sqrt5() -> TotallyRealField {
        TotallyRealField::from_key(FieldKey::Sqrt5)
    }

    #[test]
    fn splitting_over_sqrt5() {
        let f = sqrt5();
        let p11 = f.split_prime(11).unwrap();
        assert_eq!(p11.len(), 2);
        assert!(p11.iter().all(|q| q.norm == 11 && q.residue_degree == 1));
        assert_ne!(p11[0].generator, p11[1].generator);
        let p2 = f.split_prime(2).unwrap();
        assert_eq!(p2.len(), 1);
        assert_eq!((p2[0].norm, p2[0].residue_degree), (4, 2));
        let p5 = f.split_prime(5).unwrap();
        assert_eq!(p5.len(), 1);
        assert!(p5[0].ramified);
        assert_eq!(p5[0].norm, 5);
        assert_eq!(p5[0].generator, f.different());
        assert!(f.split_prime(12).is_err());
    }

    #[test]
    fn split_norms_multiply_to_p_to_the_degree() {
        for key in FieldKey::ALL {
            let f = TotallyRealField::from_key(key);
            for p in primes_up_to(200) {
                let ps = f.split_prime(p).unwrap();
                let e = if ps.len() == 1 && ps[0].ramified { 2 } else { 1 };
                let prod: u64 = ps.iter().map(|q| q.norm.pow(e)).product();
                assert_eq!(prod, p.pow(f.degree() as u32), "{key} p={p}");
                for q in &ps {
                    assert!(f.is_totally_positive(q.generator));
                    assert_eq!(f.norm(q.generator), q.norm as i128);
                }
            }
        }
    }

    #[test]
    fn enumeration_small_cases() {
        let q = TotallyRealField::rationals();
        let ideals: Vec<i64> = q.enumerate_ideals(4).iter().map(|a| a.generator.a).collect();
        assert_eq!(ideals, vec![1, 2, 3, 4]);
        let f = sqrt5();
        let norms: Vec<u64> = f.enumerate_ideals(5).iter().map(|a| a.norm).collect();
        assert_eq!(norms, vec![1, 4, 5]);
        for key in FieldKey::ALL {
            let f = TotallyRealField::from_key(key);
            let one = f.enumerate_ideals(1);
            assert_eq!(one.len(), 1);
            assert!(one[0].is_unit());
        }
    }

    #[test]
    fn enumeration_matches_euler_product_counts() {
        for key in FieldKey::ALL {
            let f = TotallyRealField::from_key(key);
            let ideals = f.enumerate_ideals(200);
            let counts = f.ideal_norm_counts(200);
            assert_eq!(ideals.len() as u64, counts.iter().sum::<u64>());
            let mut by_norm = vec![0u64; 201];
            for a in &ideals {
                by_norm[a.norm as usize] += 1;
                assert_eq!(f.norm(a.generator), a.norm as i128);
                assert_eq!(f.ideal(a.generator).unwrap().factors, a.factors);
            }
            assert_eq!(by_norm, counts);
            let mut dedup = ideals.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), ideals.len());
        }
    }

    #[test]
    fn arithmetic_functions() {
        let q = TotallyRealField::rationals();
        let six = q.ideal(FieldElement::rational(6)).unwrap();
        assert_eq!((six.moebius(), six.divisor_tau()), (1, 4));
        assert_eq!(q.divisors(&six).len(), 4);
        let one = IdealRep::unit();
        assert_eq!((one.moebius(), one.divisor_tau()), (1, 1));
        let f = sqrt5();
        let p2 = f.prime_ideal(&f.split_prime(2).unwrap()[0]);
        let sq = f.ideal_pow(&p2, 2);
        assert_eq!((sq.moebius(), sq.divisor_tau()), (0, 3));
        assert_eq!(sq.norm, 16);
        let fe = f.ideal(FieldElement::rational(4)).unwrap();
        assert_eq!(fe, sq);
    }

    #[test]
    fn tau_matches_brute_force_divisor_count() {
        let f = sqrt5();
        let all = f.enumerate_ideals(300);
        for a in all.iter().filter(|a| a.norm <= 120) {
            let brute = all.iter().filter(|d| f.divides(d.generator, a.generator)).count();
            assert_eq!(brute as u64, a.divisor_tau(), "{a}");
        }
    }
}
