use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cremona_bench::corpus_map;
use cremona_core::analysis::{analyze, f_function, AnalysisConfig};
use cremona_core::biratio::{inverse_representative, is_birational};
use cremona_core::rees::rees_ideal;

fn rees(c: &mut Criterion) {
    let mut g = c.benchmark_group("rees_ideal");
    for name in ["std-quadratic", "gabber-n3-d3", "quintic-dejonquieres", "terai"] {
        let f = corpus_map(name);
        g.bench_with_input(BenchmarkId::from_parameter(name), &f, |b, f| b.iter(|| rees_ideal(f).unwrap()));
    }
    g.finish();
}

fn criterion_and_inverse(c: &mut Criterion) {
    let mut g = c.benchmark_group("birationality");
    for name in ["gabber-n3-d3", "quartic", "terai"] {
        let f = corpus_map(name);
        g.bench_with_input(BenchmarkId::new("is_birational", name), &f, |b, f| b.iter(|| is_birational(f).unwrap()));
        g.bench_with_input(BenchmarkId::new("inverse", name), &f, |b, f| b.iter(|| inverse_representative(f).unwrap()));
    }
    g.finish();
}

fn powers(c: &mut Criterion) {
    let mut g = c.benchmark_group("f_function");
    g.sample_size(10);
    for name in ["cubic-dejonquieres", "terai"] {
        let f = corpus_map(name);
        g.bench_with_input(BenchmarkId::from_parameter(name), &f, |b, f| b.iter(|| f_function(f, 2).unwrap()));
    }
    g.finish();
}

fn full(c: &mut Criterion) {
    let cfg = AnalysisConfig { r_max: 2, ..AnalysisConfig::default() };
    let f = corpus_map("quartic");
    c.bench_function("analyze/quartic", |b| b.iter(|| analyze(&f, &cfg).unwrap()));
}

criterion_group!(benches, rees, criterion_and_inverse, powers, full);
criterion_main!(benches);
