use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use unischeme::chartable::{char_table_closed, verify_homomorphism, verify_orthogonality, verify_reconstruction};
use unischeme::scheme::{closed_tensor, BuildMode, SchemeDescriptor};
use unischeme::{FieldElem, FieldTables, UnitarySpace};

fn field_ops(c: &mut Criterion) {
    let f = FieldTables::new(9).unwrap();
    let xs: Vec<FieldElem> = f.elements().collect();
    c.bench_function("field/mul-add F81", |b| {
        b.iter(|| {
            let mut acc = FieldElem::ZERO;
            for &x in &xs {
                for &y in &xs {
                    acc = f.add(acc, f.mul(x, y));
                }
            }
            black_box(acc)
        })
    });
    c.bench_function("field/hermitian n=6 q=2", |b| {
        let us = UnitarySpace::new(6, 2).unwrap();
        b.iter(|| black_box(us.field().hermitian(us.vector(17), us.vector(1000))))
    });
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for (n, q) in [(6, 2), (4, 3), (8, 2)] {
        g.bench_function(format!("({n},{q})"), |b| b.iter(|| black_box(UnitarySpace::new(n, q).unwrap().len())));
    }
    g.finish();
}

fn tensors(c: &mut Criterion) {
    let mut g = c.benchmark_group("tensor");
    g.sample_size(10);
    for (n, q) in [(5, 2), (3, 3)] {
        g.bench_function(format!("bruteforce ({n},{q})"), |b| {
            b.iter_batched(
                || UnitarySpace::new(n, q).unwrap(),
                |us| black_box(SchemeDescriptor::from_space(&us, BuildMode::Bruteforce).unwrap()),
                BatchSize::LargeInput,
            )
        });
    }
    g.bench_function("closed (12,3)", |b| b.iter(|| black_box(closed_tensor(12, 3).unwrap())));
    g.finish();
}

fn char_tables(c: &mut Criterion) {
    let sd = SchemeDescriptor::build(6, 2, BuildMode::Closed).unwrap();
    let ct = char_table_closed(6).unwrap();
    c.bench_function("chartable/identities n=6", |b| {
        b.iter(|| {
            verify_orthogonality(&ct).unwrap();
            verify_homomorphism(&ct, sd.tensor()).unwrap();
            verify_reconstruction(&ct, sd.tensor()).unwrap();
        })
    });
}

criterion_group!(benches, field_ops, enumeration, tensors, char_tables);
criterion_main!(benches);
