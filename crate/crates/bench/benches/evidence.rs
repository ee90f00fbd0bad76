use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use evscale_core::evidence::{log_bf, p_value_two_sided};
use evscale_core::scale::{outcome_grid, rank_order_agreement};
use evscale_core::trp::trp_composite;
use evscale_core::{BinomialOutcome, CompositeHypothesis, HypothesisPair, PointHypothesis, StatisticKind};

fn bench_log_bf(c: &mut Criterion) {
    let h1 = CompositeHypothesis::uniform(0.0, 0.5).unwrap();
    let h2 = PointHypothesis::new(0.5).unwrap();
    let mut group = c.benchmark_group("log_bf");
    for n in [10u64, 100, 1000] {
        let d = BinomialOutcome::exact(n, n / 3).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| log_bf(black_box(d), &h1, &h2).unwrap())
        });
    }
    group.finish();
}

fn bench_p_value(c: &mut Criterion) {
    let null = PointHypothesis::new(0.5).unwrap();
    let d = BinomialOutcome::exact(1000, 470).unwrap();
    c.bench_function("p_value_two_sided/1000", |b| {
        b.iter(|| p_value_two_sided(black_box(&d), &null).unwrap())
    });
}

fn bench_trp(c: &mut Criterion) {
    let h1 = CompositeHypothesis::uniform(0.0, 0.5).unwrap();
    let h2 = PointHypothesis::new(0.5).unwrap();
    let mut group = c.benchmark_group("trp_composite");
    for n in [10.0, 1000.0] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| trp_composite(black_box(n), &h1, &h2, 1e-13).unwrap())
        });
    }
    group.finish();
}

fn bench_agreement(c: &mut Criterion) {
    let grid = outcome_grid(2, 30);
    let pair = HypothesisPair::fair_coin_vs_uniform();
    let kinds = [StatisticKind::NegLogP, StatisticKind::AbsLogBf];
    c.bench_function("rank_order_agreement/2..30", |b| {
        b.iter(|| rank_order_agreement(black_box(&grid), &kinds, &pair).unwrap())
    });
}

criterion_group!(benches, bench_log_bf, bench_p_value, bench_trp, bench_agreement);
criterion_main!(benches);
