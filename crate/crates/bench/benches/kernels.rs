use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use stabilitylab::fieldrank::field_report;
use stabilitylab::grouptrace::{induce_trace, FiniteGroup, Subgroup, TraceFn};
use stabilitylab::intlinalg::{char_poly, mat_pow, smith_normal_form};
use stabilitylab::polyclass::{classify_automorphism, factor_over_integers};
use stabilitylab::tordyn::{fixed_subgroup, weakstar_report, WeakStarTarget};
use stabilitylab::{IntMatrix, IntPoly};
use stabilitylab_bench::shifted_companion;

fn intlinalg(c: &mut Criterion) {
    let a = mat_pow(&shifted_companion(6), 9).unwrap().checked_sub(&IntMatrix::identity(6)).unwrap();
    c.bench_function("snf 6x6", |b| b.iter(|| smith_normal_form(black_box(&a)).unwrap()));
    c.bench_function("char_poly 6x6", |b| b.iter(|| char_poly(black_box(&a)).unwrap()));
}

fn polyclass(c: &mut Criterion) {
    let p: IntPoly = "x^8-x^7+x^5-x^4+x^3-x+1".parse().unwrap();
    let q = &p * &IntPoly::from_i64(&[-1, -1, 0, 1]);
    c.bench_function("factor degree 11", |b| b.iter(|| factor_over_integers(black_box(&q)).unwrap()));
    let a = shifted_companion(5);
    c.bench_function("classify 5x5", |b| b.iter(|| classify_automorphism(black_box(&a)).unwrap()));
}

fn tordyn(c: &mut Criterion) {
    let cat: IntMatrix = "2,1;1,1".parse().unwrap();
    c.bench_function("fixed subgroup cat map n=10 enumerated", |b| b.iter(|| fixed_subgroup(black_box(&cat), 10, true).unwrap()));
    c.bench_function("weakstar cat map n<=12", |b| {
        b.iter(|| weakstar_report(black_box(&cat), &WeakStarTarget::Haar, 1, 12, 3).unwrap())
    });
}

fn grouptrace(c: &mut Criterion) {
    let g = Arc::new(FiniteGroup::preset("C2xS4").unwrap());
    let h = Subgroup::generated(g.clone(), &[g.find("(a, (1 2 3 4))").unwrap()]).unwrap();
    let phi = TraceFn::regular(h);
    c.bench_function("induce regular trace into C2xS4", |b| b.iter(|| induce_trace(black_box(&phi), &Subgroup::whole(g.clone())).unwrap()));
}

fn fieldrank(c: &mut Criterion) {
    let f: IntPoly = "x^4-x-1".parse().unwrap();
    c.bench_function("field_report quartic", |b| b.iter(|| field_report(black_box(&f)).unwrap()));
}

criterion_group!(benches, intlinalg, polyclass, tordyn, grouptrace, fieldrank);
criterion_main!(benches);
