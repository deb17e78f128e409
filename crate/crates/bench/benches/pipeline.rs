use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hmf_core::explicit::{avg_density, DensityParams, SupportCheck, TestFunction};
use hmf_core::kloosterman::{kloosterman_sum, KloostermanTable, Twist};
use hmf_core::petersson::{delta_batch, TraceParams};
use hmf_core::rmt::{haar_sample_density, HaarVariant};
use hmf_core::special::{bessel_j, BesselEvalPolicy};
use hmf_core::{FieldElement, FieldKey, IdealRep, TotallyRealField};

fn special(c: &mut Criterion) {
    let policy = BesselEvalPolicy::default();
    c.bench_function("bessel_j order 11 on 100 arguments", |b| {
        b.iter(|| {
            (1..=100)
                .map(|i| bessel_j(11, black_box(0.37 * i as f64), &policy).unwrap())
                .sum::<f64>()
        })
    });
}

fn kloosterman(c: &mut Criterion) {
    let f = TotallyRealField::from_key(FieldKey::Sqrt5);
    let modulus = FieldElement::new(15, 2);
    c.bench_function("kloosterman direct sum, Q(sqrt5), norm 251", |b| {
        b.iter(|| {
            kloosterman_sum(
                &f,
                black_box(FieldElement::new(3, 1)),
                FieldElement::new(7, -2),
                modulus,
            )
            .unwrap()
        })
    });
    c.bench_function("kloosterman table with FFT, Q(sqrt5), norm 251", |b| {
        b.iter(|| KloostermanTable::new(&f, black_box(modulus), Twist::Different).unwrap())
    });
}

fn petersson(c: &mut Criterion) {
    let q = TotallyRealField::rationals();
    let p = TraceParams::new(6, IdealRep::unit(), 2000, 1e-12, 1.0, 1.0).unwrap();
    let pairs: Vec<_> = (1..=20)
        .map(|n| (IdealRep::unit(), q.ideal(FieldElement::rational(n)).unwrap()))
        .collect();
    c.bench_function("petersson 20 traces over Q, C_max 2000", |b| {
        b.iter(|| delta_batch(&q, &p, black_box(&pairs)).unwrap())
    });
}

fn density(c: &mut Criterion) {
    let q = TotallyRealField::rationals();
    let params = DensityParams {
        trace: TraceParams::new(6, q.ideal(FieldElement::rational(101)).unwrap(), 5000, 1e-12, 1.0, 1.0).unwrap(),
        tf: TestFunction::fejer(1.0).unwrap(),
        support: SupportCheck::Skip,
    };
    let mut group = c.benchmark_group("density");
    group.sample_size(10);
    group.bench_function("avg_density Q level 101 sigma 1", |b| {
        b.iter(|| avg_density(&q, black_box(&params)).unwrap())
    });
    group.bench_function("haar SO(50) 200 samples", |b| {
        b.iter(|| haar_sample_density(HaarVariant::SOeven, 50, 200, 30, 3.0, black_box(7)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, special, kloosterman, petersson, density);
criterion_main!(benches);
