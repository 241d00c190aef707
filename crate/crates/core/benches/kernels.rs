//! Sequential vs. parallel execution of the brute-force kernels.
//!
//! Run with `cargo bench -p anisogauge`; build with
//! `--no-default-features` to see both arms fall back to one thread.

use std::hint::black_box;

use anisogauge::ffield::make_field;
use anisogauge::fusionring::group::drinfeld_double_rank_with;
use anisogauge::fusionring::FiniteGroup;
use anisogauge::fusionring::{build_extension_ring, drinfeld_double_rank, verify_axioms_with};
use anisogauge::gtcheck::nongt_sweep;
use anisogauge::orthogroup::enumerate_orth_with;
use anisogauge::quadspace::build_anisotropic;
use anisogauge::Exec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn fusion_axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_axioms");
    group.sample_size(10);
    for (p, q) in [(3u64, 11u64), (7, 13), (3, 17)] {
        let ring = build_extension_ring(p, q).unwrap();
        for (name, exec) in STRATEGIES {
            group.bench_with_input(
                BenchmarkId::new(name, format!("{p},{q}")),
                &ring,
                |b, ring| b.iter(|| black_box(verify_axioms_with(ring, exec))),
            );
        }
    }
    group.finish();
}

fn orthogonal_groups(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_orth");
    group.sample_size(10);
    for q in [7u64, 13, 19] {
        let space = build_anisotropic(&make_field(q).unwrap());
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, q), &space, |b, space| {
                b.iter(|| black_box(enumerate_orth_with(space, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn criterion_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("nongt_sweep");
    group.sample_size(10);
    for qmax in [50u64, 150] {
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, qmax), &qmax, |b, &qmax| {
                b.iter(|| black_box(nongt_sweep(qmax, exec)))
            });
        }
    }
    group.finish();
}

fn double_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("drinfeld_double_rank");
    let g = FiniteGroup::symmetric(5);
    black_box(drinfeld_double_rank(&g).unwrap());
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, "S5"), &g, |b, g| {
            b.iter(|| black_box(drinfeld_double_rank_with(g, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    fusion_axioms,
    orthogonal_groups,
    criterion_sweep,
    double_rank
);
criterion_main!(benches);
