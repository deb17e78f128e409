use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, Schur};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HaarVariant {
    /// `SO(N)` with `N` even.
    SOeven,
    /// `SO(N)` with `N` odd; every matrix fixes a vector.
    SOodd,
    U,
}

#[derive(Debug, Clone, Serialize)]
pub struct HaarHistogram {
    pub variant: HaarVariant,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Bin edges on the scaled axis `x = theta N / (2 pi)`.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// `counts / (samples * bin width)`, an estimate of `W(x)`.
    pub density: Vec<f64>,
    /// Fraction of samples with an eigenvalue equal to 1 (to `1e-8`);
    /// those eigenvalues are excluded from the histogram.
    pub forced_unit_fraction: f64,
}

const UNIT_EIGENVALUE_TOL: f64 = 1e-8;

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Eigenangles in `[0, pi]` (orthogonal) or `[0, 2 pi)` (unitary) of one
/// Haar sample, plus whether it has the eigenvalue 1.
fn sample_angles(variant: HaarVariant, n: usize, rng: &mut ChaCha8Rng) -> (Vec<f64>, bool) {
    match variant {
        HaarVariant::U => {
            let g = DMatrix::from_fn(n, n, |_, _| Complex::new(gaussian(rng), gaussian(rng)));
            let qr = g.qr();
            let (mut q, r) = (qr.q(), qr.r());
            for j in 0..n {
                let d = r[(j, j)];
                let phase = d / d.norm();
                for i in 0..n {
                    q[(i, j)] *= phase;
                }
            }
            let eig = Schur::new(q).eigenvalues().expect("complex Schur form is triangular");
            let angles = eig.iter().map(|z| z.arg().rem_euclid(2.0 * PI)).collect();
            (angles, false)
        }
        HaarVariant::SOeven | HaarVariant::SOodd => {
            let g = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
            let qr = g.qr();
            let (mut q, r) = (qr.q(), qr.r());
            for j in 0..n {
                if r[(j, j)] < 0.0 {
                    q.column_mut(j).neg_mut();
                }
            }
            // Haar on O(N); a row swap moves between the two cosets
            if q.determinant() < 0.0 {
                q.swap_rows(0, 1);
            }
            let eig = q.complex_eigenvalues();
            let mut angles = Vec::with_capacity(n / 2);
            let mut unit = false;
            for z in eig.iter() {
                if (z - Complex::new(1.0, 0.0)).norm() < UNIT_EIGENVALUE_TOL && !unit {
                    unit = true;
                    continue;
                }
                // one angle per conjugate pair
                if z.im > 0.0 || (z.im == 0.0 && z.re < 0.0) {
                    angles.push(z.arg().abs());
                }
            }
            (angles, unit)
        }
    }
}

/// Normalised histogram of all scaled eigenangles `x = theta N / (2 pi)` in
/// `[0, range)`. Sample `i` draws from a ChaCha8 stream keyed by `(seed, i)`,
/// so the result does not depend on scheduling.
pub fn haar_sample_density(
    variant: HaarVariant,
    n: usize,
    samples: usize,
    bins: usize,
    range: f64,
    seed: u64,
) -> Result<HaarHistogram> {
    if !(2..=200).contains(&n) {
        return Err(Error::param("n", format!("matrix size {n} must lie in [2, 200]")));
    }
    if samples == 0 || samples > 100_000 {
        return Err(Error::param(
            "m",
            format!("sample count {samples} must lie in [1, 100000]"),
        ));
    }
    if bins == 0 || !(range > 0.0) {
        return Err(Error::param("bins", "need at least one bin and a positive range"));
    }
    match variant {
        HaarVariant::SOeven if n % 2 == 1 => return Err(Error::param("n", "SO(even) needs an even size")),
        HaarVariant::SOodd if n % 2 == 0 => return Err(Error::param("n", "SO(odd) needs an odd size")),
        _ => {}
    }
    let width = range / bins as f64;
    let scale = n as f64 / (2.0 * PI);
    let per_sample: Vec<(Vec<u64>, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let (angles, unit) = sample_angles(variant, n, &mut rng);
            let mut counts = vec![0u64; bins];
            for a in angles {
                let x = a * scale;
                if x < range {
                    counts[((x / width) as usize).min(bins - 1)] += 1;
                }
            }
            (counts, unit)
        })
        .collect();
    let mut counts = vec![0u64; bins];
    let mut units = 0usize;
    for (c, u) in per_sample {
        for (t, v) in counts.iter_mut().zip(c) {
            *t += v;
        }
        units += u as usize;
    }
    Ok(HaarHistogram {
        variant,
        n,
        samples,
        seed,
        edges: (0..=bins).map(|i| i as f64 * range / bins as f64).collect(),
        density: counts.iter().map(|&c| c as f64 / (samples as f64 * width)).collect(),
        counts,
        forced_unit_fraction: units as f64 / samples as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmt::{density_w, Group};

    #[test]
    fn unitary_is_flat() {
        let h = haar_sample_density(HaarVariant::U, 40, 1_500, 6, 3.0, 7).unwrap();
        for d in &h.density {
            assert!((d - 1.0).abs() < 0.05, "{:?}", h.density);
        }
        assert_eq!(h.forced_unit_fraction, 0.0);
    }

    #[test]
    fn special_orthogonal_shapes() {
        let even = haar_sample_density(HaarVariant::SOeven, 40, 3_000, 30, 3.0, 7).unwrap();
        let w = density_w(Group::SOeven);
        // the first three bins against W_SOeven, which starts at 2
        let got = even.density[..3].iter().sum::<f64>() / 3.0;
        let want = [0.05, 0.15, 0.25].iter().map(|&x| w.smooth(x)).sum::<f64>() / 3.0;
        assert!((got - want).abs() < 0.08, "{got} vs {want}: {:?}", even.density);
        assert_eq!(even.forced_unit_fraction, 0.0);
        let odd = haar_sample_density(HaarVariant::SOodd, 41, 1_000, 30, 3.0, 7).unwrap();
        assert_eq!(odd.forced_unit_fraction, 1.0);
        // repulsion from the forced eigenvalue: W_SOodd smooth part vanishes at 0
        assert!(odd.density[0] < 0.2, "{:?}", odd.density);
    }

    #[test]
    fn seeded_and_validated() {
        let a = haar_sample_density(HaarVariant::SOeven, 10, 200, 5, 2.0, 3).unwrap();
        let b = haar_sample_density(HaarVariant::SOeven, 10, 200, 5, 2.0, 3).unwrap();
        assert_eq!(a.counts, b.counts);
        assert!(haar_sample_density(HaarVariant::SOeven, 11, 10, 5, 2.0, 3).is_err());
        assert!(haar_sample_density(HaarVariant::U, 500, 10, 5, 2.0, 3).is_err());
    }
}
