//! Size sweeps on the default worker pool versus a single worker.
//!
//! Build with `--no-default-features` to time the sequential fallback, where
//! both variants run the same plain iterators.

use creutz::noise::{noisy_qsl_vs_size, NoiseConfig};
use creutz::qsl::{qsl_points, qsl_sweep_stats, sweep_sizes};
use creutz::{par, Normalization, Which};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::f64::consts::PI;
use std::hint::black_box;

const THETA1: f64 = 0.25 * PI;

fn workers(c: &mut Criterion, name: &str, run: impl Fn() + Send + Sync) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("pool", "default"), |b| b.iter(&run));
    group.bench_function(BenchmarkId::new("pool", "single"), |b| {
        b.iter(|| par::single_threaded(&run))
    });
    group.finish();
}

fn qsl_size_sweep(c: &mut Criterion) {
    let sizes = sweep_sizes(50, 1001, 3).unwrap();
    workers(c, "qsl_points_max", || {
        black_box(qsl_points(1.0, 1.0, THETA1, Which::Max, &sizes).unwrap());
    });
}

fn theta_sweep_stats(c: &mut Criterion) {
    workers(c, "qsl_sweep_stats_min", || {
        for i in [-7, -3, 2, 6] {
            let theta1 = (i as f64 + 0.5) * 0.05 * PI;
            black_box(
                qsl_sweep_stats(
                    1.0,
                    1.0,
                    theta1,
                    Which::Min,
                    50,
                    1001,
                    3,
                    Normalization::Paper,
                )
                .unwrap(),
            );
        }
    });
}

fn noise_ensemble(c: &mut Criterion) {
    let sizes = sweep_sizes(50, 400, 3).unwrap();
    let cfg = NoiseConfig {
        fraction: 0.1,
        count: 200,
        seed: 7,
        t_eval: None,
    };
    workers(c, "noisy_qsl_vs_size", || {
        black_box(noisy_qsl_vs_size(1.0, 1.0, THETA1, Which::Max, &sizes, &cfg).unwrap());
    });
}

criterion_group!(benches, qsl_size_sweep, theta_sweep_stats, noise_ensemble);
criterion_main!(benches);
