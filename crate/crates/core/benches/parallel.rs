use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ffgalois::bipoly::disc_x;
use ffgalois::fields::{Field, Tower};
use ffgalois::model::{content_report, sample_f, ModelParams};
use ffgalois::par::{map_indices, map_indices_seq};
use ffgalois::rng::substream;

fn content(c: &mut Criterion) {
    let field = Field::prime(3).unwrap();
    let model = ModelParams::new(field, 1, 25);
    let work = |i: u64| content_report(&sample_f(&model, &mut substream(1, i))).unwrap().k;
    let mut g = c.benchmark_group("content_report_2000");
    g.bench_function("sequential", |b| b.iter(|| black_box(map_indices_seq(2000, work))));
    g.bench_function("parallel", |b| b.iter(|| black_box(map_indices(2000, work))));
    g.finish();
}

fn discriminants(c: &mut Criterion) {
    let field = Field::prime(3).unwrap();
    let tower = Tower::new(field.clone(), 1);
    let mut g = c.benchmark_group("disc_x_64");
    g.sample_size(10);
    for n in [10usize, 40] {
        let model = ModelParams::new(field.clone(), 1, n);
        let work = |i: u64| disc_x(&sample_f(&model, &mut substream(2, i)), &tower).unwrap().deg();
        g.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, _| {
            b.iter(|| black_box(map_indices_seq(64, work)))
        });
        g.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, _| {
            b.iter(|| black_box(map_indices(64, work)))
        });
    }
    g.finish();
}

criterion_group!(benches, content, discriminants);
criterion_main!(benches);
