use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use starconfig::code::hierarchy_bruteforce;
use starconfig::{examples, tutte_deletion_contraction, tutte_subset_sum, DeletionContraction, VectorMatroid};
use starconfig_bench::ladder;

fn engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("tutte");
    group.sample_size(20);
    let mut inputs = ladder();
    inputs.push(("b3".into(), examples::b3()));
    for (name, code) in &inputs {
        group.bench_with_input(BenchmarkId::new("subset_sum", name), code, |b, code| {
            // fresh matroid each time so the rank table is rebuilt
            b.iter(|| tutte_subset_sum(&VectorMatroid::new(code.matrix().clone()).unwrap()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("deletion_contraction", name), code, |b, code| {
            b.iter(|| tutte_deletion_contraction(code.matroid()))
        });
        group.bench_with_input(BenchmarkId::new("deletion_contraction_parallel", name), code, |b, code| {
            b.iter(|| DeletionContraction::parallel().compute(code.matroid()))
        });
    }
    group.finish();
}

fn ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("ranks");
    group.sample_size(20);
    for (name, code) in ladder() {
        group.bench_function(BenchmarkId::new("precompute", &name), |b| {
            b.iter(|| VectorMatroid::new(code.matrix().clone()).unwrap().precompute_ranks())
        });
        group.bench_function(BenchmarkId::new("ghw_bruteforce", &name), |b| {
            b.iter(|| hierarchy_bruteforce(&code).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, engines, ranks);
criterion_main!(benches);
