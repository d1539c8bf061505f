use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qfock::canonical::{bar_matrix, decompose, Sign};
use qfock::{normal_order, Ambient, LaurentPoly};
use qfock_bench::bench_blocks;

fn straighten(c: &mut Criterion) {
    let mut group = c.benchmark_group("straighten");
    for (n, l, word) in [
        (2, 2, vec![-2, 4, 1, 7]),
        (2, 3, vec![-5, 3, -1, 6, 2, 8]),
        (3, 2, vec![-6, 5, -3, 9, 0, 4, 11]),
    ] {
        let a = Ambient::new(n, l).unwrap();
        let id = format!("n{n}-l{l}-len{}", word.len());
        group.bench_with_input(BenchmarkId::from_parameter(id), &word, |b, w| {
            b.iter(|| normal_order([(black_box(w.clone()), LaurentPoly::one())], &a))
        });
    }
    group.finish();
}

fn blocks(c: &mut Criterion) {
    let mut bar = c.benchmark_group("bar_matrix");
    bar.sample_size(10);
    for spec in bench_blocks() {
        bar.bench_with_input(BenchmarkId::from_parameter(spec.key()), &spec, |b, s| {
            b.iter(|| bar_matrix(black_box(s), None).unwrap())
        });
    }
    bar.finish();

    let mut solve = c.benchmark_group("decompose");
    for spec in bench_blocks() {
        let m = bar_matrix(&spec, None).unwrap();
        solve.bench_with_input(BenchmarkId::from_parameter(spec.key()), &m, |b, m| {
            b.iter(|| decompose(black_box(m), Sign::Minus).unwrap())
        });
    }
    solve.finish();
}

criterion_group!(benches, straighten, blocks);
criterion_main!(benches);
