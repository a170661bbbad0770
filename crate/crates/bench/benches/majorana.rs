use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use majorana::canonical::canonical_4;
use majorana::symstate::{apply_symmetric, majorana_roots};
use majorana::{slocc_equivalent, Complex64, MoebiusMap, DEFAULT_TOL};
use majorana_bench::generic_state;

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("majorana_roots");
    for n in [4, 8, 16, 32] {
        let s = generic_state(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| {
            b.iter(|| majorana_roots(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn equivalence(c: &mut Criterion) {
    let m = MoebiusMap::from_entries([
        Complex64::new(1.2, 0.3),
        Complex64::new(-0.4, 0.1),
        Complex64::new(0.2, -0.7),
        Complex64::new(0.9, 0.0),
    ])
    .unwrap();
    let mut group = c.benchmark_group("slocc_equivalent");
    for n in [4, 6, 8] {
        let s = generic_state(n);
        let t = apply_symmetric(&m, &s).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &(s, t), |b, (s, t)| {
            b.iter(|| slocc_equivalent(black_box(s), black_box(t), DEFAULT_TOL).unwrap())
        });
    }
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let s = generic_state(4);
    c.bench_function("canonical_4", |b| b.iter(|| canonical_4(black_box(&s), DEFAULT_TOL).unwrap()));
}

criterion_group!(benches, roots, equivalence, canonical);
criterion_main!(benches);
