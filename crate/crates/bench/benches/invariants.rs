use std::hint::black_box;

use chibound::invariants::{chi_local, chromatic_number, clique_number};
use chibound_bench::coloring_hosts;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn chromatic(c: &mut Criterion) {
    let mut group = c.benchmark_group("chromatic_number");
    for (name, g) in coloring_hosts() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| chromatic_number(black_box(g)).color_count())
        });
    }
    group.finish();
}

fn clique(c: &mut Criterion) {
    let mut group = c.benchmark_group("clique_number");
    for (name, g) in coloring_hosts() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| clique_number(black_box(g)).0)
        });
    }
    group.finish();
}

fn local(c: &mut Criterion) {
    let (_, g) = coloring_hosts().swap_remove(0);
    c.bench_function("chi_local/grotzsch/r=2", |b| b.iter(|| chi_local(black_box(&g), 2)));
}

criterion_group!(benches, chromatic, clique, local);
criterion_main!(benches);
