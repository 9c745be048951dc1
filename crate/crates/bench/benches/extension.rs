use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use specsemi::factory::random_spec_semilattice;
use specsemi::verifier::check_universal_property;
use specsemi::{
    build_free_extension, build_free_extension_with, enumerate_homs, BuildOptions, HomKind,
    PairSpace,
};

fn extension(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_free_extension");
    for n in [2, 4, 6, 8] {
        let s = random_spec_semilattice(7, n).unwrap();
        group.bench_with_input(BenchmarkId::new("plain", n), &s, |b, s| {
            b.iter(|| build_free_extension(black_box(s)).unwrap())
        });
        let opts = BuildOptions {
            normalize: true,
            ..BuildOptions::default()
        };
        group.bench_with_input(BenchmarkId::new("normalized", n), &s, |b, s| {
            b.iter(|| build_free_extension_with(black_box(s), &opts).unwrap())
        });
    }
    group.finish();
}

fn relation_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("preceq_matrix");
    for n in [3, 5, 7] {
        let s = random_spec_semilattice(11, n).unwrap();
        let space = PairSpace::new(&s, &[]).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &space, |b, space| {
            b.iter(|| {
                let mut count = 0usize;
                for p in space.pairs() {
                    for q in space.pairs() {
                        count += space.preceq(&p, &q) as usize;
                    }
                }
                count
            })
        });
    }
    group.finish();
}

fn homs(c: &mut Criterion) {
    let s = random_spec_semilattice(3, 3).unwrap();
    let t = random_spec_semilattice(5, 4).unwrap();
    let e = build_free_extension(&s).unwrap();
    c.bench_function("enumerate_homs/khom", |b| {
        b.iter(|| enumerate_homs(black_box(e.result()), &t, HomKind::KHom).unwrap())
    });
    c.bench_function("universal_property", |b| {
        b.iter(|| check_universal_property(&s, &e, &t).unwrap())
    });
}

criterion_group!(benches, extension, relation_matrix, homs);
criterion_main!(benches);
