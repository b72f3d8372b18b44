use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use clutterlab::decompose::decompose_with;
use clutterlab::lattice::smith_normal_form;
use clutterlab::properties::has_packing_property;
use clutterlab::qpq::{generate_qpq_f, FSpec};
use clutterlab::random::{random_clutter, random_matrix, random_weights, rng};
use clutterlab::IntegerMatrix;

fn blocker(c: &mut Criterion) {
    let mut g = c.benchmark_group("blocker");
    for (p, q) in [(2, 2), (3, 2), (3, 3)] {
        let h = generate_qpq_f(p, q, &FSpec::case_i_all()).unwrap().clutter;
        g.bench_with_input(BenchmarkId::new("qpq_fstar", format!("{p}x{q}")), &h, |b, h| {
            b.iter(|| black_box(h.blocker().unwrap()))
        });
    }
    let mut r = rng(1);
    let randoms: Vec<_> = (0..32).map(|_| random_clutter(&mut r, 14, 12)).collect();
    g.bench_function("random_n14", |b| {
        b.iter(|| {
            for h in &randoms {
                black_box(h.blocker().unwrap());
            }
        })
    });
    g.finish();
}

fn packing(c: &mut Criterion) {
    let mut g = c.benchmark_group("packing");
    g.sample_size(10);
    for (p, q) in [(1, 1), (2, 1), (2, 2)] {
        let h = generate_qpq_f(p, q, &FSpec::case_i_all()).unwrap().clutter;
        g.bench_with_input(BenchmarkId::new("qpq_fstar", format!("{p}x{q}")), &h, |b, h| {
            b.iter(|| black_box(has_packing_property(h).unwrap()))
        });
    }
    g.finish();
}

fn smith(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith");
    for n in [4, 8, 16] {
        let m = IntegerMatrix::from_rows(&random_matrix(&mut rng(n as u64), n, n, -9, 9));
        g.bench_with_input(BenchmarkId::new("random", n), &m, |b, m| b.iter(|| black_box(smith_normal_form(m))));
    }
    let h = generate_qpq_f(3, 3, &FSpec::case_i_all()).unwrap().clutter;
    let bm = h.augmented_incidence();
    g.bench_function("augmented_qpq_3x3", |b| b.iter(|| black_box(smith_normal_form(&bm))));
    g.finish();
}

fn decompose(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose");
    for (p, q) in [(1, 1), (2, 2), (3, 2)] {
        let qc = generate_qpq_f(p, q, &FSpec::case_i_all()).unwrap();
        let mut r = rng(7);
        let ws: Vec<Vec<u64>> = (0..64).map(|_| random_weights(&mut r, qc.clutter.n(), 3)).collect();
        g.bench_function(BenchmarkId::new("random_w3", format!("{p}x{q}")), |b| {
            let mut cache = None;
            b.iter(|| {
                for w in &ws {
                    black_box(decompose_with(&qc, w, &mut cache).unwrap());
                }
            })
        });
    }
    g.finish();
}

criterion_group!(benches, blocker, packing, smith, decompose);
criterion_main!(benches);
