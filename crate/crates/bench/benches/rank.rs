use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use novikov_bench::low_rank;
use novikov_core::{bareiss_rank, grid_rank, modular_rank, DEFAULT_GRID_BUDGET};

fn rank_engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(10);
    // (n, k, nvars): rank-deficient products, the hard case for elimination
    for (n, k, nvars) in [(6, 4, 1), (4, 2, 2), (5, 3, 2), (4, 2, 3)] {
        let m = low_rank(7, n, k, nvars);
        let label = format!("{n}x{n}_r{k}_v{nvars}");
        group.bench_with_input(BenchmarkId::new("bareiss", &label), &m, |b, m| {
            b.iter(|| bareiss_rank(m))
        });
        group.bench_with_input(BenchmarkId::new("grid", &label), &m, |b, m| {
            b.iter(|| grid_rank(m, DEFAULT_GRID_BUDGET))
        });
        group.bench_with_input(BenchmarkId::new("modular", &label), &m, |b, m| {
            b.iter(|| modular_rank(m, 0))
        });
    }
    group.finish();
}

criterion_group!(benches, rank_engines);
criterion_main!(benches);
