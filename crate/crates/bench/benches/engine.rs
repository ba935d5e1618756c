use criterion::{criterion_group, criterion_main, Criterion};
use nilfract_core::actions::{alpha_lower_central_series, structure_to_tower, GroupAction};
use nilfract_core::fracture::{fracture_square_abelian, FractureFamilies, DEFAULT_SEED};
use nilfract_core::localization::{localize_abelian, localize_finite_nilpotent, NumSet};
use nilfract_core::matrix::smith_normal_form;
use nilfract_core::{FgAbelianGroup, FiniteGroup, IntMatrix};
use num_bigint::BigInt;
use std::hint::black_box;

fn bench_snf(c: &mut Criterion) {
    let m = IntMatrix::from_i64_rows(&[
        &[-20, -7, -27, 2, 29, 4],
        &[17, 8, 14, -4, -10, 11],
        &[13, 8, 10, -4, -6, -9],
        &[-9, -2, -14, 0, 16, 3],
        &[5, 0, 5, -1, -4, 12],
        &[7, -3, 2, 8, -5, 1],
    ]);
    c.bench_function("snf_6x6", |b| {
        b.iter(|| smith_normal_form(black_box(&m)))
    });
}

fn bench_localization(c: &mut Criterion) {
    let a = FgAbelianGroup::from_torsion_list(
        nilfract_core::LocalizedRing::integers(),
        &[BigInt::from(8), BigInt::from(36), BigInt::from(180)],
    )
    .unwrap();
    let s = NumSet::from_u64(&[2, 5]).unwrap();
    c.bench_function("localize_abelian", |b| {
        b.iter(|| localize_abelian(black_box(&a), black_box(&s)))
    });

    let g = FiniteGroup::direct_product(
        &FiniteGroup::quaternion8(),
        &FiniteGroup::cyclic(3).unwrap(),
    );
    c.bench_function("localize_finite_nilpotent_24", |b| {
        b.iter(|| localize_finite_nilpotent(black_box(&g), black_box(&s)).unwrap())
    });
}

fn bench_fracture(c: &mut Criterion) {
    let a = FgAbelianGroup::cyclic(105).unwrap();
    let fams = FractureFamilies::from_u64(&[3], &[5, 7], 4).unwrap();
    c.bench_function("fracture_square_z105", |b| {
        b.iter(|| fracture_square_abelian(black_box(&a), black_box(&fams), DEFAULT_SEED).unwrap())
    });
}

fn bench_towers(c: &mut Criterion) {
    let q8 = FiniteGroup::quaternion8();
    let conj = GroupAction::conjugation(&q8);
    let structure = alpha_lower_central_series(&conj).unwrap();
    c.bench_function("structure_to_tower_q8", |b| {
        b.iter(|| structure_to_tower(black_box(&structure)).unwrap())
    });
}

criterion_group!(benches, bench_snf, bench_localization, bench_fracture, bench_towers);
criterion_main!(benches);
