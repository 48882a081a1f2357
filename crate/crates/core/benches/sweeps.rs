use std::hint::black_box;

use absorbing::exactalg::rat;
use absorbing::simulate::{estimate_gamma, PlayoutConfig};
use absorbing::solver::{lambda_sweep, stationary_guarantee_with, LimitOptions};
use absorbing::{Builtin, Execution, Player, StationaryStrategy};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sweep(c: &mut Criterion) {
    let game = Builtin::CubicLimit.game();
    let lambdas = LimitOptions::decades(7);
    let width = rat(1, 1_000_000_000_000);
    let mut group = c.benchmark_group("lambda_sweep");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("cubic", name), |b| {
            b.iter(|| lambda_sweep(black_box(&game), &lambdas, &width, exec).unwrap())
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let game = Builtin::SqrtK(3).game();
    let x = StationaryStrategy::uniform(Player::One, 2);
    let y = StationaryStrategy::uniform(Player::Two, 2);
    let mut group = c.benchmark_group("estimate_gamma");
    for (name, exec) in MODES {
        let mut cfg = PlayoutConfig::new(rat(1, 50), 20_000, 7);
        cfg.exec = exec;
        group.bench_function(BenchmarkId::new("sqrt-3", name), |b| {
            b.iter(|| estimate_gamma(black_box(&game), &x, &y, &cfg).unwrap())
        });
    }
    group.finish();
}

fn guarantee(c: &mut Criterion) {
    let game = Builtin::CubicLimit.game();
    let width = rat(1, 1_000_000);
    let mut group = c.benchmark_group("stationary_guarantee");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("cubic", name), |b| {
            b.iter(|| stationary_guarantee_with(black_box(&game), Player::One, &width, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, monte_carlo, guarantee);
criterion_main!(benches);
