use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qsym_bench::{random_elements, random_words};
use qsym_core::{EnumerateOptions, GradedAlgebra};

fn normal_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_form");
    for (n_flux, n) in [(3, 1), (4, 2), (6, 3)] {
        let ctx = GradedAlgebra::new_flux_algebra(n_flux, n).unwrap();
        let words = random_words(&ctx, 256, 12, 1);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("N{n_flux}_n{n}")),
            &words,
            |b, words| {
                b.iter(|| {
                    for w in words {
                        black_box(ctx.normal_form_phase(w).unwrap());
                    }
                })
            },
        );
    }
    group.finish();
}

fn multiply(c: &mut Criterion) {
    let ctx = GradedAlgebra::new_flux_algebra(4, 2).unwrap();
    let xs = random_elements(&ctx, 64, 6, 2);
    let ys = random_elements(&ctx, 64, 6, 3);
    c.bench_function("multiply/N4_n2", |b| {
        b.iter(|| {
            for (x, y) in xs.iter().zip(&ys) {
                black_box(ctx.multiply(x, y).unwrap());
            }
        })
    });
}

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_partitions");
    group.sample_size(20);
    for (n_flux, n) in [(3, 2), (4, 3), (6, 2)] {
        let ctx = GradedAlgebra::new_flux_algebra(n_flux, n).unwrap();
        group.bench_function(format!("N{n_flux}_n{n}"), |b| {
            b.iter(|| {
                black_box(
                    ctx.enumerate_partitions(EnumerateOptions::default())
                        .unwrap(),
                )
            })
        });
    }
    group.finish();
}

criterion_group!(benches, normal_form, multiply, enumerate);
criterion_main!(benches);
