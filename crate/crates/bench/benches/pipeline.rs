use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gentle_core::decide::decide;
use gentle_core::minimality::find_minimal_band;
use gentle_core::modrep::{hom_dim, m_lambda, q};
use gentle_core::surface::build_surface;
use gentle_core::words::band_exists;
use gentle_core::{random_gentle, Presentation, RandomOptions};

fn inputs(size: usize) -> Vec<Presentation> {
    (0..16)
        .map(|seed| {
            let options = RandomOptions {
                skew: seed % 2 == 1,
                graded: false,
            };
            random_gentle(seed, size, options).unwrap()
        })
        .collect()
}

fn words(c: &mut Criterion) {
    let mut g = c.benchmark_group("words");
    for size in [4, 8, 16] {
        let ps = inputs(size);
        g.bench_with_input(BenchmarkId::new("band_exists", size), &ps, |b, ps| {
            b.iter(|| {
                ps.iter()
                    .filter(|p| band_exists(black_box(p)).unwrap().is_some())
                    .count()
            })
        });
        g.bench_with_input(BenchmarkId::new("find_minimal_band", size), &ps, |b, ps| {
            b.iter(|| {
                ps.iter()
                    .filter(|p| find_minimal_band(black_box(p)).unwrap().is_some())
                    .count()
            })
        });
    }
    g.finish();
}

fn surface(c: &mut Criterion) {
    let mut g = c.benchmark_group("surface");
    for size in [4, 8, 16, 32] {
        let ps = inputs(size);
        g.bench_with_input(BenchmarkId::new("build_surface", size), &ps, |b, ps| {
            b.iter(|| {
                ps.iter()
                    .map(|p| build_surface(black_box(p)).unwrap().genus)
                    .sum::<usize>()
            })
        });
        g.bench_with_input(BenchmarkId::new("decide", size), &ps, |b, ps| {
            b.iter(|| {
                ps.iter()
                    .map(|p| decide(black_box(p), None).unwrap().notes.len())
                    .sum::<usize>()
            })
        });
    }
    g.finish();
}

fn modrep(c: &mut Criterion) {
    let mut g = c.benchmark_group("modrep");
    for n in [2, 3, 4] {
        let a = m_lambda(n, &q(2)).unwrap();
        let b = m_lambda(n, &q(3)).unwrap();
        g.bench_function(BenchmarkId::new("m_lambda_hom_dim", n), |bench| {
            bench.iter(|| hom_dim(black_box(&a), black_box(&b)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, words, surface, modrep);
criterion_main!(benches);
