use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use signet_bench::fixture_graph;
use signet_core::cycle_oracle::signed_cycle_bruteforce;
use signet_core::graph_models::sample_er;
use signet_core::spectral::{center_known, chebyshev_lss, eigenvalues};
use signet_core::statistics::{mu_npt, stat_la, MuMode, SignMode};

fn bench_sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_er");
    for n in [500usize, 1000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let mut seed = 0u64;
            b.iter(|| {
                seed += 1;
                sample_er(n, 0.1, seed).unwrap()
            });
        });
    }
    group.finish();
}

fn bench_eigendecomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigenvalues");
    group.sample_size(10);
    for n in [250usize, 500, 1000] {
        let graph = fixture_graph(n, 0.1);
        let m = center_known(&graph, 0.1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| eigenvalues(&m).unwrap());
        });
    }
    group.finish();
}

fn bench_lss_evaluation(c: &mut Criterion) {
    let graph = fixture_graph(1000, 0.1);
    let spec = eigenvalues(&center_known(&graph, 0.1).unwrap()).unwrap();
    c.bench_function("chebyshev_lss_m41_n1000", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            let mut m = 3;
            while m <= 41 {
                acc += chebyshev_lss(&spec, m);
                m += 2;
            }
            acc
        });
    });
    c.bench_function("stat_la_k9", |b| {
        let mu = mu_npt(1000, 0.1, 0.8, &MuMode::ClosedForm).unwrap();
        b.iter(|| stat_la(&spec, 0.8, 9, mu, SignMode::Assortative).unwrap());
    });
}

fn bench_cycle_bruteforce(c: &mut Criterion) {
    let mut group = c.benchmark_group("signed_cycle_bruteforce");
    group.sample_size(10);
    let graph = fixture_graph(25, 0.6);
    for k in [3usize, 4, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| signed_cycle_bruteforce(&graph, 0.6, k).unwrap());
        });
    }
    group.finish();
}

fn bench_mu_series(c: &mut Criterion) {
    c.bench_function("mu_npt_closed_form", |b| {
        b.iter(|| mu_npt(500, 0.1, 0.8, &MuMode::ClosedForm).unwrap());
    });
}

criterion_group!(
    benches,
    bench_sampling,
    bench_eigendecomposition,
    bench_lss_evaluation,
    bench_cycle_bruteforce,
    bench_mu_series
);
criterion_main!(benches);
