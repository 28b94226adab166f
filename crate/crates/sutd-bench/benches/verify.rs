//! Band-order verifier vs the quadratic pairwise verifier.
//!
//! The pairwise check is O(segments^2), so it only appears at sizes where an
//! iteration stays in milliseconds; the band verifier runs on the large
//! strengthened drawings as well.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use sutd_bench::{generated_drawing, strengthened_drawing, toy_drawing};
use sutd_core::{verify_drawing, verify_drawing_naive, EdgeMode};

fn bench_verify(c: &mut Criterion) {
    let toy = toy_drawing();
    let medium = generated_drawing(6, 40);
    let large = strengthened_drawing(2, 3);
    let huge = strengthened_drawing(3, 3);

    let mut band = c.benchmark_group("verify_band");
    for (name, (tree, d)) in [
        ("toy_53", &toy),
        ("generated_k6", &medium),
        ("strengthened_k2", &large),
        ("strengthened_k3", &huge),
    ] {
        band.bench_function(name, |bench| {
            bench.iter(|| {
                let report = verify_drawing(black_box(tree), black_box(d), EdgeMode::Poly)
                    .unwrap();
                assert!(report.ok);
                report
            })
        });
    }
    band.finish();

    let mut naive = c.benchmark_group("verify_pairwise");
    naive.sample_size(20);
    for (name, (tree, d)) in [("toy_53", &toy), ("generated_k6", &medium)] {
        naive.bench_function(name, |bench| {
            bench.iter(|| {
                let report =
                    verify_drawing_naive(black_box(tree), black_box(d), EdgeMode::Poly)
                        .unwrap();
                assert!(report.ok);
                report
            })
        });
    }
    naive.finish();
}

criterion_group!(benches, bench_verify);
criterion_main!(benches);
