use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rirkit::config::{AnalysisConfig, PlantConfig, RepressilatorConfig};
use rirkit::models::{cyclic_network, repressilator, CyclicSpec, RepressilatorSpec};
use rirkit::peaks::local_peaks;
use rirkit::rir::rir_verdict;
use rirkit::sweep::run_sweep;

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("roots");
    for m in [1, 8, 20] {
        let g = cyclic_network(&CyclicSpec { m, k: 20.0 }).unwrap();
        let den = g.den().clone();
        group.bench_with_input(
            BenchmarkId::from_parameter(den.degree().unwrap()),
            &den,
            |b, p| b.iter(|| black_box(p).roots().unwrap()),
        );
    }
    group.finish();
}

fn peaks(c: &mut Criterion) {
    let mut group = c.benchmark_group("local_peaks");
    for m in [5, 20] {
        let g = cyclic_network(&CyclicSpec { m, k: 20.0 }).unwrap();
        group.bench_with_input(BenchmarkId::new("cyclic", m), &g, |b, g| {
            b.iter(|| local_peaks(black_box(g)).unwrap())
        });
    }
    let g = repressilator(&RepressilatorSpec::default().with_tau(3.4)).unwrap();
    group.bench_function("repressilator", |b| {
        b.iter(|| local_peaks(black_box(&g)).unwrap())
    });
    group.finish();
}

fn verdict(c: &mut Criterion) {
    let mut group = c.benchmark_group("rir_verdict");
    for m in [5, 6, 8] {
        let g = cyclic_network(&CyclicSpec { m, k: 20.0 }).unwrap();
        group.bench_with_input(BenchmarkId::new("cyclic", m), &g, |b, g| {
            b.iter(|| rir_verdict(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let cfg = AnalysisConfig::new(PlantConfig::Repressilator(RepressilatorConfig::default()));
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("repressilator_tau_21", |b| {
        b.iter(|| run_sweep(black_box(&cfg), "tau", 0.0, 6.0, 21, false).unwrap())
    });
    group.bench_function("repressilator_tau_refined", |b| {
        b.iter(|| run_sweep(black_box(&cfg), "tau", 4.7, 4.9, 11, true).unwrap())
    });
    group.finish();
}

criterion_group!(benches, roots, peaks, verdict, sweep);
criterion_main!(benches);
