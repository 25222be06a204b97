use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fracduff_bench::{limit_cycle_problem, manufactured_problem};
use fracduff_core::{abm_solve, abm_weights, efds_solve, gl_coefficients, GridSpec};

fn bench_solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(20);
    for n in [128u32, 512] {
        let (params, order, forcing) = limit_cycle_problem(2.0);
        let grid = GridSpec::new(2.0, n).unwrap();
        group.bench_with_input(BenchmarkId::new("efds", n), &n, |b, _| {
            b.iter(|| efds_solve(black_box(&params), &order, &forcing, &grid).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("abm", n), &n, |b, _| {
            b.iter(|| abm_solve(black_box(&params), &order, &forcing, &grid).unwrap())
        });
    }
    group.finish();
}

fn bench_manufactured(c: &mut Criterion) {
    let (params, order, forcing) = manufactured_problem(0.1);
    let grid = GridSpec::new(1.0, 256).unwrap();
    c.bench_function("solve/abm-manufactured-256", |b| {
        b.iter(|| abm_solve(black_box(&params), &order, &forcing, &grid).unwrap())
    });
}

fn bench_weights(c: &mut Criterion) {
    c.bench_function("weights/gl-4096", |b| {
        b.iter(|| gl_coefficients(black_box(0.5), 4096))
    });
    c.bench_function("weights/abm-1024", |b| {
        b.iter(|| abm_weights(black_box(1024), 0.5))
    });
}

criterion_group!(benches, bench_solvers, bench_manufactured, bench_weights);
criterion_main!(benches);
