//! Parallel against sequential kernels on the same inputs.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fts_core::brown::hat;
use fts_core::exact::{PrimeField, RationalField, Rng};
use fts_core::fts::{is_invariance, InvarianceCheck};
use fts_core::groups::{gen_isometry, lie_dim, ConstraintMode, LieTarget};
use fts_core::par;

const MODES: [(&str, bool); 2] = [("parallel", true), ("sequential", false)];

fn lie(c: &mut Criterion) {
    let mut g = c.benchmark_group("lie_dim");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    let f = PrimeField::new(1_000_003).unwrap();
    for target in [LieTarget::AutOct, LieTarget::AutAlbert] {
        for (name, on) in MODES {
            g.bench_with_input(BenchmarkId::new(name, target), &target, |b, &t| {
                par::set_enabled(on);
                b.iter(|| black_box(lie_dim(t, f, ConstraintMode::Random, 0).unwrap().dim));
            });
        }
    }
    par::set_enabled(true);
    g.finish();
}

fn invariance(c: &mut Criterion) {
    let mut g = c.benchmark_group("is_invariance");
    g.sample_size(10);
    let f = RationalField;
    let mut rng = Rng::new(7);
    let rho = gen_isometry(f, &mut rng).unwrap();
    let m = hat(&rho, &mut rng).unwrap();
    let check = InvarianceCheck::default();
    for (name, on) in MODES {
        g.bench_function(name, |b| {
            par::set_enabled(on);
            b.iter(|| {
                let mut r = Rng::new(1);
                black_box(is_invariance(&m, check, &mut r))
            });
        });
    }
    par::set_enabled(true);
    g.finish();
}

criterion_group!(benches, lie, invariance);
criterion_main!(benches);
