use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use knotkit::invariants::{alexander, alexander_burau, alexander_from_seifert, cover_from_presentation, signature, wirtinger_presentation};
use knotkit::seifert::seifert_matrix;
use knotkit_bench::{fixtures, long_braid};

fn alexander_paths(c: &mut Criterion) {
    let mut g = c.benchmark_group("alexander");
    for (name, d) in fixtures() {
        g.bench_with_input(BenchmarkId::new("wirtinger", name), &d, |b, d| b.iter(|| alexander(d).unwrap()));
        g.bench_with_input(BenchmarkId::new("seifert", name), &d, |b, d| {
            b.iter(|| alexander_from_seifert(&seifert_matrix(d).unwrap()).unwrap())
        });
    }
    let braid = long_braid();
    g.bench_function("burau/long", |b| b.iter(|| alexander_burau(&braid)));
    g.finish();
}

fn signatures(c: &mut Criterion) {
    let mut g = c.benchmark_group("signature");
    for (name, d) in fixtures() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| b.iter(|| signature(d).unwrap()));
    }
    g.finish();
}

fn branched_covers(c: &mut Criterion) {
    let mut g = c.benchmark_group("branched_cover");
    for (name, d) in fixtures() {
        let p = wirtinger_presentation(&d).unwrap();
        for n in [2u64, 5] {
            g.bench_with_input(BenchmarkId::new(name, n), &p, |b, p| b.iter(|| cover_from_presentation(p, n).unwrap()));
        }
    }
    g.finish();
}

criterion_group!(benches, alexander_paths, signatures, branched_covers);
criterion_main!(benches);
