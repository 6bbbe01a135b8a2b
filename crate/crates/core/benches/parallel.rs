use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use lpvoronoi::convergence::{converge_sweep, converge_sweep_sequential, default_p_list, default_x_grid};
use lpvoronoi::{render_owners, render_owners_sequential, Exponent, Grid, Vec2};

fn owners(c: &mut Criterion) {
    let grid = Grid::new(256, 256, -6.0, -3.0, 6.0, 3.0).unwrap();
    let sites = [
        Vec2::new(-2.0, -1.0),
        Vec2::new(2.0, 1.0),
        Vec2::new(0.5, 2.5),
        Vec2::new(-3.0, 1.5),
    ];
    let e = Exponent::finite(0.05).unwrap();
    let mut g = c.benchmark_group("render_owners");
    g.bench_function("parallel", |b| {
        b.iter(|| render_owners(black_box(&sites), e, &grid).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| render_owners_sequential(black_box(&sites), e, &grid).unwrap())
    });
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let xs = default_x_grid(2.0);
    let ps = default_p_list();
    let mut g = c.benchmark_group("converge_sweep");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| converge_sweep(2.0, black_box(&xs), &ps, 1e-12).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| converge_sweep_sequential(2.0, black_box(&xs), &ps, 1e-12).unwrap())
    });
    g.finish();
}

criterion_group!(benches, owners, sweep);
criterion_main!(benches);
