use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use susp_core::classgroup::{class_group, smith_normal_form, IntMatrix};
use susp_core::expr::parse_poly;
use susp_core::factor::factor_multivariate;
use susp_core::geometry::{groebner, hypersurface_smooth};
use susp_core::susp::factor_susp;
use susp_core::{RingSpec, SuspTower};

fn factoring(c: &mut Criterion) {
    let r = RingSpec::new(["x", "y", "z"]).unwrap();
    let uni = parse_poly("(x^4 - 2)*(x^3 + x + 1)*(x^2 - 3)^2", &r).unwrap();
    let multi = parse_poly("(x^2 + y*z - 1)*(x*y - z^2 + 2)*(x + y + z)", &r).unwrap();
    c.bench_function("factor/univariate", |b| {
        b.iter(|| factor_multivariate(black_box(&uni)).unwrap())
    });
    c.bench_function("factor/trivariate", |b| {
        b.iter(|| factor_multivariate(black_box(&multi)).unwrap())
    });

    let t = SuspTower::new(RingSpec::new(["x", "y"]).unwrap(), &["(x-1)*x*y + 1"]).unwrap();
    let g = t.parse("(x + u)*(y*u + 1)*(1 + v)", 1).unwrap();
    c.bench_function("factor/suspension", |b| {
        b.iter(|| factor_susp(black_box(&g)).unwrap())
    });
}

fn groebner_bases(c: &mut Criterion) {
    let r = RingSpec::new(["x", "y", "z"]).unwrap();
    let gens: Vec<_> = ["x^2 + y^2 + z^2 - 1", "x*y - z", "x - y + z^2"]
        .iter()
        .map(|s| parse_poly(s, &r).unwrap())
        .collect();
    c.bench_function("groebner/three_quadrics", |b| {
        b.iter(|| groebner(black_box(&gens)).unwrap())
    });

    let r2 = RingSpec::new(["x", "y"]).unwrap();
    let f = parse_poly("(x-1)*x*y + 1", &r2).unwrap();
    c.bench_function("groebner/jacobian_threefold", |b| {
        b.iter(|| hypersurface_smooth(black_box(&f)).unwrap())
    });
}

fn smith_forms(c: &mut Criterion) {
    let rows: Vec<Vec<i64>> = (0..8)
        .map(|i| {
            (0..8)
                .map(|j| ((i * 7 + j * 13) % 19) - 9 + i64::from(i == j) * 3)
                .collect()
        })
        .collect();
    let m = IntMatrix::from_rows(&rows).unwrap();
    c.bench_function("snf/8x8", |b| b.iter(|| smith_normal_form(black_box(&m))));

    let t = SuspTower::new(RingSpec::new(["x", "y"]).unwrap(), &["x^2*y^3*(x + y)^4"]).unwrap();
    c.bench_function("class_group/three_primes", |b| {
        b.iter(|| class_group(black_box(&t)).unwrap())
    });
}

criterion_group!(benches, factoring, groebner_bases, smith_forms);
criterion_main!(benches);
