//! Data-parallel kernels on a single-thread pool versus the global pool.
//! Built without the `parallel` feature, both arms run the sequential code.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use shortcut_forge::generators::{generate_unweighted, generate_weighted, Family, GenSpec};
use shortcut_forge::graph::{apsp, hop_limited_dist, transitive_closure};
use shortcut_forge::oracles::verify_shortcut;
use shortcut_forge::shortcut::shortcut_small_diam;

#[cfg(feature = "parallel")]
fn on_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
fn on_pool<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

/// `(label, threads)`; zero means the global pool.
const ARMS: [(&str, usize); 2] = [("sequential", 1), ("global", 0)];

fn closure(c: &mut Criterion) {
    let g = generate_unweighted(&GenSpec::new(Family::RandomDag, 1024, 1).with_density(4.0)).unwrap();
    let mut group = c.benchmark_group("transitive_closure_n1024");
    for (label, t) in ARMS {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| on_pool(t, || transitive_closure(&g)))
        });
    }
    group.finish();
}

fn distances(c: &mut Criterion) {
    let g = generate_weighted(
        &GenSpec::new(Family::WeightedRandom, 400, 2)
            .with_p(0.01)
            .with_max_weight(20),
    )
    .unwrap();
    let mut group = c.benchmark_group("distances_n400");
    for (label, t) in ARMS {
        group.bench_function(BenchmarkId::new("apsp", label), |b| {
            b.iter(|| on_pool(t, || apsp(&g)))
        });
        group.bench_function(BenchmarkId::new("hop_limited_80", label), |b| {
            b.iter(|| on_pool(t, || hop_limited_dist(&g, 80)))
        });
    }
    group.finish();
}

fn shortcut_and_verify(c: &mut Criterion) {
    let g = generate_unweighted(&GenSpec::new(Family::RandomDag, 216, 3).with_p(0.05)).unwrap();
    let mut group = c.benchmark_group("small_diam_n216");
    group.sample_size(20);
    for (label, t) in ARMS {
        group.bench_function(BenchmarkId::new("construct", label), |b| {
            b.iter(|| on_pool(t, || shortcut_small_diam(&g, 6, 3.0, 0).unwrap()))
        });
        let h = shortcut_small_diam(&g, 6, 3.0, 0).unwrap();
        group.bench_function(BenchmarkId::new("verify", label), |b| {
            b.iter(|| on_pool(t, || verify_shortcut(&g, &h, 6)))
        });
    }
    group.finish();
}

criterion_group!(benches, closure, distances, shortcut_and_verify);
criterion_main!(benches);
