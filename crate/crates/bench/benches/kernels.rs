use criterion::{criterion_group, criterion_main, Criterion};
use hopfkit_bench::{d4_pipeline, dense_matrix, falling_factorial, k_mu2, witt_twist};
use hopfkit_core::commutative::{enumerate_twists, DEFAULT_BUDGET};
use hopfkit_core::degeneracy::radical;
use hopfkit_core::fixtures::frobenius_gl3;
use hopfkit_core::isocat::run_pipeline;
use hopfkit_core::twist::{apply_twist, check_twist, minimality_rank, r_matrix, Twist};

fn twists(c: &mut Criterion) {
    let ex = falling_factorial(5);
    c.bench_function("check_twist u(nonabelian2) p=5", |b| b.iter(|| check_twist(&ex.parent, &ex.twist)));
    c.bench_function("apply_twist u(nonabelian2) p=5", |b| b.iter(|| apply_twist(&ex.parent, &ex.twist).unwrap()));
    let w = witt_twist();
    c.bench_function("check_twist u(witt) p=3", |b| b.iter(|| check_twist(&w.parent, &w.twist)));
    let r = r_matrix(&Twist::new(&w.parent, w.twist.clone()).unwrap()).unwrap();
    c.bench_function("minimality_rank u(witt) p=3", |b| b.iter(|| minimality_rank(r.parent(), r.element()).unwrap()));
}

fn linear_algebra(c: &mut Criterion) {
    let m = dense_matrix(3, 64);
    c.bench_function("rank 64x64 over F_3", |b| b.iter(|| m.rank()));
    let ex = frobenius_gl3(2).unwrap();
    c.bench_function("radical u_xi(gl3 parabolic) p=2", |b| b.iter(|| radical(&ex.reduced)));
}

fn enumeration(c: &mut Criterion) {
    let h = k_mu2();
    c.bench_function("enumerate k[mu_2] over F_2", |b| b.iter(|| enumerate_twists(&h, DEFAULT_BUDGET).unwrap()));
}

fn isocat(c: &mut Criterion) {
    let input = d4_pipeline();
    let mut group = c.benchmark_group("isocat");
    group.sample_size(10);
    group.bench_function("D4 pipeline over F_3", |b| b.iter(|| run_pipeline(&input).unwrap()));
    group.finish();
}

criterion_group!(benches, twists, linear_algebra, enumeration, isocat);
criterion_main!(benches);
