use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ringprob::{parse_ring, structure, Enumerator, Execution};

const RINGS: [&str; 3] = ["M3(GF2)", "Z2 x M2(GF2) x Z3", "triv(3,3)"];

fn engines() -> [(&'static str, Enumerator); 2] {
    [
        ("sequential", Enumerator::new(4096, Execution::Sequential)),
        ("parallel", Enumerator::new(4096, Execution::Parallel)),
    ]
}

fn pair_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("pair_counts");
    for spec in RINGS {
        let ring = parse_ring(spec).unwrap();
        for (name, e) in engines() {
            group.bench_with_input(BenchmarkId::new(name, spec), &ring, |b, ring| {
                b.iter(|| black_box(e.pair_counts(ring).unwrap()))
            });
        }
    }
    group.finish();
}

fn annsum_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("annsum_counts");
    for spec in RINGS {
        let ring = parse_ring(spec).unwrap();
        for (name, e) in engines() {
            group.bench_with_input(BenchmarkId::new(name, spec), &ring, |b, ring| {
                b.iter(|| black_box(e.annsum_counts(ring).unwrap()))
            });
        }
    }
    group.finish();
}

fn prob_brute_zero(c: &mut Criterion) {
    let mut group = c.benchmark_group("prob_brute_zero");
    for spec in RINGS {
        let ring = parse_ring(spec).unwrap();
        for (name, e) in engines() {
            group.bench_with_input(BenchmarkId::new(name, spec), &ring, |b, ring| {
                b.iter(|| black_box(e.prob_brute(ring, 0).unwrap()))
            });
        }
    }
    group.finish();
}

fn structure_analysis(c: &mut Criterion) {
    let mut group = c.benchmark_group("structure");
    let ring = parse_ring("M3(GF2)").unwrap();
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_function(format!("{exec:?}"), |b| {
            b.iter(|| black_box(structure::analyze(&ring, exec)))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    pair_counts,
    annsum_counts,
    prob_brute_zero,
    structure_analysis
);
criterion_main!(benches);
