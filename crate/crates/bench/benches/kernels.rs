use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use exotic_core::conormal::{conormal_fiber, rsk_table, RskConfig};
use exotic_core::linalg::jordan_type;
use exotic_core::orbit::enumerate_r_prime;
use exotic_core::rng::seeded;
use exotic_core::symplectic::representative;
use exotic_core::{Matrix, PrimeField, SymplecticSpace};
use rand::Rng;

fn random_matrix(field: PrimeField, d: usize, seed: u64) -> Matrix {
    let mut rng = seeded(seed);
    let rows: Vec<Vec<u64>> = (0..d)
        .map(|_| (0..d).map(|_| field.reduce(rng.gen())).collect())
        .collect();
    Matrix::from_rows(field, d, &rows)
}

fn kernels(c: &mut Criterion) {
    let field = PrimeField::default();
    for d in [6, 12, 24] {
        let m = random_matrix(field, d, 3);
        c.bench_function(&format!("rank/{d}x{d}"), |b| b.iter(|| black_box(&m).rank()));
    }

    let space = SymplecticSpace::standard(field, 3);
    let p = &enumerate_r_prime(3)[100];
    let point = representative(p, &space, 1).unwrap();
    c.bench_function("conormal_fiber/n3", |b| b.iter(|| conormal_fiber(black_box(&point))));

    let x = conormal_fiber(&point).sample(&mut seeded(2)).x;
    c.bench_function("jordan_type/6x6", |b| b.iter(|| jordan_type(black_box(&x)).unwrap()));

    c.bench_function("rsk_table/n2", |b| {
        b.iter(|| rsk_table(2, &RskConfig::default()).unwrap())
    });
}

criterion_group!(benches, kernels);
criterion_main!(benches);
