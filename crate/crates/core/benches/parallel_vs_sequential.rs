use cayley_runs::bijections::{count_valid_pairs, VALID_PAIRS_BOUND};
use cayley_runs::exact::{brute_force_tables, ExhaustiveBound};
use cayley_runs::montecarlo::{run_statistics, SampleKind};
use cayley_runs::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn strategies() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel { workers: None }),
    ]
}

fn exhaustive_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_tables");
    group.sample_size(10);
    for n in [6usize, 7] {
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| {
                    brute_force_tables(black_box(n), ExhaustiveBound::default(), exec).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn valid_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_valid_pairs");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::new(name, "n6_m4"), |b| {
            b.iter(|| count_valid_pairs(black_box(6), 4, VALID_PAIRS_BOUND, exec).unwrap())
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_statistics");
    group.sample_size(10);
    for kind in [SampleKind::Mappings, SampleKind::Trees] {
        for (name, exec) in strategies() {
            let id = BenchmarkId::new(name, format!("{kind:?}_n1000_s20000"));
            group.bench_function(id, |b| {
                b.iter(|| run_statistics(1000, black_box(20_000), 1, kind, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, exhaustive_tables, valid_pairs, monte_carlo);
criterion_main!(benches);
