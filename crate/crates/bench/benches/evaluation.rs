use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tscale_core::exponential::{exp_cayley, exp_evaluate_grid};
use tscale_core::{Coefficient, Complex64, ExpFamily, TimeScale};

fn grid_evaluation(c: &mut Criterion) {
    let ts = TimeScale::uniform(0.0, 0.01, 10_000).unwrap();
    let grid = ts.make_grid(ts.min(), ts.max(), 0.1).unwrap();
    let alpha = Coefficient::constant(Complex64::new(0.3, 1.1));
    c.bench_function("cayley grid, 10k points", |b| {
        b.iter(|| exp_evaluate_grid(ExpFamily::Cayley, &ts, &alpha, 0.0, black_box(&grid), 1e-12).unwrap())
    });
}

fn mixed_scale_integral(c: &mut Criterion) {
    let ts = tscale_cli::parse_scale("interval(0,1) + points(1.5,2,2.25) + interval(3,5)").unwrap();
    let alpha = Coefficient::tabulated(
        vec![0.0, 1.0, 1.5, 2.0, 2.25, 3.0, 5.0],
        [0.1, 0.4, -0.2, 0.3, 0.0, 0.5, 0.2].iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        false,
    )
    .unwrap();
    c.bench_function("cayley exponential, mixed scale", |b| {
        b.iter(|| exp_cayley(&ts, &alpha, black_box(5.0), 0.0, 1e-12).unwrap())
    });
}

fn parse(c: &mut Criterion) {
    let spec: String = (0..500).map(|k| format!("points({k}) + ")).collect::<String>() + "interval(600,700)";
    c.bench_function("parse 500 components", |b| b.iter(|| tscale_cli::parse_scale(black_box(&spec)).unwrap()));
}

criterion_group!(benches, grid_evaluation, mixed_scale_integral, parse);
criterion_main!(benches);
