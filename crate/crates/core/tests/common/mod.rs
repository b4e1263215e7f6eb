#![allow(dead_code)]

pub mod lattice;

use num_bigint::BigInt;
use proptest::prelude::*;
use susp_core::expr::parse_poly;
use susp_core::poly::Monomial;
use susp_core::{MultiPoly, Rational, RingSpec, SuspElem, SuspTower};

pub fn ring(vars: &[&str]) -> RingSpec {
    RingSpec::new(vars.iter().copied()).unwrap()
}

pub fn poly(r: &RingSpec, src: &str) -> MultiPoly {
    parse_poly(src, r).unwrap()
}

pub fn tower(vars: &[&str], fs: &[&str]) -> SuspTower {
    SuspTower::new(ring(vars), fs).unwrap()
}

/// Builds `Σ c * x^e` from `(exponents, coefficient)` pairs.
pub fn from_terms(r: &RingSpec, terms: &[(Vec<u32>, i64)]) -> MultiPoly {
    MultiPoly::from_terms(
        r,
        terms.iter().map(|(e, c)| {
            (
                Monomial::new(e.clone()),
                Rational::from_integer(BigInt::from(*c)),
            )
        }),
    )
}

/// Dense coefficients over all monomials of total degree `<= deg` in two variables.
pub fn bivariate(r: &RingSpec, deg: u32, coeffs: &[i64]) -> MultiPoly {
    let mut terms = Vec::new();
    let mut k = 0;
    for d in 0..=deg {
        for i in 0..=d {
            terms.push((vec![i, d - i], coeffs[k]));
            k += 1;
        }
    }
    from_terms(r, &terms)
}

pub fn monomials_up_to(deg: u32) -> usize {
    ((deg + 1) * (deg + 2) / 2) as usize
}

/// Random sparse polynomial strategy in the given number of variables.
pub fn arb_poly(
    r: RingSpec,
    max_terms: usize,
    max_exp: u32,
    coeff: i64,
) -> impl Strategy<Value = MultiPoly> {
    let n = r.nvars();
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_exp, n),
            (-coeff..=coeff),
            1i64..=3,
        ),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        MultiPoly::from_terms(
            &r,
            terms.into_iter().map(|(e, num, den)| {
                (
                    Monomial::new(e),
                    Rational::new(BigInt::from(num), BigInt::from(den)),
                )
            }),
        )
    })
}

/// Level-1 element `Σ_i c_i * gen^i` with the given base coefficients.
pub fn susp_elem(t: &SuspTower, comps: &[(i64, MultiPoly)]) -> SuspElem {
    let u = t.u(1, 1);
    let v = t.v(1, 1);
    let mut acc = t.zero(1);
    for (i, c) in comps {
        let c = t.from_base(c, 1).unwrap();
        let gen = if *i >= 0 {
            u.pow(*i as u32)
        } else {
            v.pow((-*i) as u32)
        };
        acc = &acc + &(&c * &gen);
    }
    acc
}

pub fn arb_susp_comps(
    r: RingSpec,
    max_deg: i64,
    max_comps: usize,
) -> impl Strategy<Value = Vec<(i64, MultiPoly)>> {
    prop::collection::vec((-max_deg..=max_deg, arb_poly(r, 3, 2, 3)), 0..=max_comps)
}
