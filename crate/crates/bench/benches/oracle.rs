use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use starconfig::hilbert::{colon_graded_dims, fit_hilbert_polynomial, mu_oracle};
use starconfig::star::full_profile;
use starconfig::examples;
use starconfig_bench::random_code;

fn hilbert(c: &mut Criterion) {
    let b3 = examples::b3();
    let mut group = c.benchmark_group("hilbert");
    group.sample_size(20);
    for a in [3, 6, 9] {
        group.bench_with_input(BenchmarkId::new("fit_b3", a), &a, |b, &a| {
            b.iter(|| fit_hilbert_polynomial(&b3, a, None).unwrap())
        });
    }
    group.bench_function("mu_b3_all_a", |b| b.iter(|| (1..=9).map(|a| mu_oracle(&b3, a).unwrap()).sum::<u64>()));
    group.bench_function("colon_b3_a7", |b| b.iter(|| colon_graded_dims(&b3, 1, 7, 10).unwrap()));
    let k4 = random_code(9, 5, 4, 9);
    group.bench_function("fit_k4_n9_all_a", |b| {
        b.iter(|| (1..=9).map(|a| fit_hilbert_polynomial(&k4, a, None).unwrap().stable_from).sum::<usize>())
    });
    group.finish();
}

fn profile(c: &mut Criterion) {
    let b3 = examples::b3();
    c.bench_function("full_profile_b3", |b| b.iter(|| full_profile(&b3).unwrap()));
}

criterion_group!(benches, hilbert, profile);
criterion_main!(benches);
