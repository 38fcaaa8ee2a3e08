//! Field primitives and the three permutation testers on representative
//! inputs: GF(2^10), i = 187 (the f1 instance at q = 32, index 11).

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use permbin_core::field::{build_field, FieldElement};
use permbin_core::index::is_pp_via_agw;
use permbin_core::perm::{is_pp_hermite, BinomialSpec, DirectTester};

fn bench_field_ops(c: &mut Criterion) {
    let f = build_field(12).unwrap();
    let g = f.generator();
    c.bench_function("field/mul_gf4096", |b| {
        b.iter(|| {
            let mut acc = FieldElement::ONE;
            for x in 1..=1000u32 {
                acc = f.mul(acc, black_box(FieldElement(x)));
            }
            acc
        })
    });
    c.bench_function("field/pow_gf4096", |b| {
        b.iter(|| f.pow(black_box(g), black_box(2276)).unwrap())
    });
    c.bench_function("field/build_gf4096", |b| {
        b.iter(|| build_field(12).unwrap())
    });
}

fn bench_testers(c: &mut Criterion) {
    let f = build_field(10).unwrap();
    let i = 187u32;
    // a in mu_33 \ mu_11: a valid f1 coefficient (order divides 33, not 11)
    let a = f.pow(f.generator(), (f.qm1() / 33) as i64).unwrap();
    assert_eq!(f.order(a).unwrap(), 33);

    let mut direct = DirectTester::new(&f);
    assert!(direct.is_pp(&f, i, a));
    c.bench_function("tester/direct_gf1024_i187", |b| {
        b.iter(|| direct.is_pp(&f, black_box(i), black_box(a)))
    });
    c.bench_function("tester/agw_gf1024_i187", |b| {
        b.iter(|| is_pp_via_agw(&f, black_box(i), black_box(a)).unwrap())
    });
    c.bench_function("tester/hermite_gf1024_i187", |b| {
        let spec = BinomialSpec::new(&f, i, a).unwrap();
        b.iter(|| is_pp_hermite(black_box(&spec)))
    });
}

criterion_group!(benches, bench_field_ops, bench_testers);
criterion_main!(benches);
