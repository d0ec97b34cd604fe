use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use f4core::chevalley::{commutator_formula, normal_form, product};
use f4core::linalg::q;
use f4core::orbits::OrbitLabel;
use f4core::rootsys::{weyl_element, weyl_enumerate, CocharWeight, Root, WeylWord};
use f4core::stabilizers::{f4a3_stab, Mat3J};
use f4core::tori::{match_to_orbit, torus_closed_form};

fn root(s: &str) -> Root {
    s.parse().unwrap()
}

fn weyl(c: &mut Criterion) {
    let _ = weyl_enumerate();
    let w: WeylWord = "w[1234213432]".parse().unwrap();
    c.bench_function("weyl_element/len10", |b| b.iter(|| weyl_element(black_box(&w))));
    c.bench_function("weyl/compose_all", |b| {
        let x = &weyl_enumerate()[700];
        b.iter(|| weyl_enumerate().iter().map(|y| x.compose(y).length()).sum::<usize>())
    });
}

fn chevalley(c: &mut Criterion) {
    let (a, d) = (root("-1100"), root("1221"));
    c.bench_function("commutator/-1100,1221", |b| b.iter(|| commutator_formula(black_box(&a), black_box(&d))));
    let g = product(&[(root("1000"), q(2)), (root("0121"), q(-1)), (root("0010"), q(3))]);
    c.bench_function("normal_form/3 factors", |b| b.iter(|| normal_form(black_box(&g))));
}

fn tori(c: &mut Criterion) {
    c.bench_function("torus_closed_form/all", |b| {
        b.iter(|| OrbitLabel::ALL.map(|l| torus_closed_form(&l.diagram()).unwrap()))
    });
    let w = CocharWeight([10, 18, 12, 4]);
    c.bench_function("match_to_orbit/(10,18,12,4)", |b| b.iter(|| match_to_orbit(black_box(&w))));
}

fn stabilizers(c: &mut Criterion) {
    let a = Mat3J::from_i64([[0, 1, 0], [0, 0, 1], [3, 0, 0]]).unwrap();
    let m = Mat3J::from_i64([[1, 0, 0], [1, 0, 0], [0, 1, 1]]).unwrap();
    c.bench_function("f4a3_stab", |b| b.iter(|| f4a3_stab(black_box(&a), black_box(&m)).dim));
}

criterion_group!(benches, weyl, chevalley, tori, stabilizers);
criterion_main!(benches);
