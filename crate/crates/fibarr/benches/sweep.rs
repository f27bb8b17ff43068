//! Compare the rayon sweep against the sequential fallback on a batch of
//! random rational points of the hexagon arrangement R(12).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fibarr::charvar;
use fibarr::polygon;
use fibarr::sweep;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bench_sweeps(c: &mut Criterion) {
    let model = polygon::build_r2n(6).expect("R(12) builds");
    let a = &model.arrangement;
    let op = charvar::boundary_operator(a).expect("boundary operator");
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    let mut group = c.benchmark_group("h1_sweep");
    for &batch in &[8usize, 32] {
        let pts: Vec<_> = (0..batch)
            .map(|_| sweep::random_rational_point(a.n(), a.m(), &mut rng))
            .collect();
        group.bench_with_input(BenchmarkId::new("seq", batch), &pts, |b, pts| {
            b.iter(|| sweep::h1_sweep_seq(&op, a, pts).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", batch), &pts, |b, pts| {
            b.iter(|| sweep::h1_sweep_par(&op, a, pts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweeps);
criterion_main!(benches);
