mod common;

use common::ring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use susp_core::geometry::groebner;
use susp_core::modulecheck::{can_be_generated_by, fitting_ideal, PresentationMatrix};
use susp_core::poly::{rat, Monomial};
use susp_core::{MultiPoly, RingSpec};

fn random_entry(r: &RingSpec, rng: &mut ChaCha8Rng) -> MultiPoly {
    if rng.gen_bool(0.3) {
        return MultiPoly::zero(r);
    }
    MultiPoly::from_terms(
        r,
        (0..rng.gen_range(1..=2)).map(|_| {
            (
                Monomial::new(vec![rng.gen_range(0..=1), rng.gen_range(0..=1)]),
                rat(rng.gen_range(-2..=2)),
            )
        }),
    )
}

fn random_presentation(rng: &mut ChaCha8Rng) -> PresentationMatrix {
    let r = ring(&["y1", "y2"]);
    let cols = rng.gen_range(1..=3);
    let rows = (0..rng.gen_range(0..=3))
        .map(|_| (0..cols).map(|_| random_entry(&r, rng)).collect())
        .collect();
    PresentationMatrix::new(&r, cols, rows).unwrap()
}

fn ideal_le(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    let gb = groebner(b).unwrap();
    a.iter().all(|p| gb.contains(p).unwrap())
}

#[test]
fn fitting_ideals_increase() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..60 {
        let p = random_presentation(&mut rng);
        for k in 0..p.cols() {
            assert!(
                ideal_le(&fitting_ideal(&p, k), &fitting_ideal(&p, k + 1)),
                "{p} at {k}"
            );
        }
    }
}

#[test]
fn redundant_rows_leave_fitting_ideals_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let r = ring(&["y1", "y2"]);
    for _ in 0..60 {
        let p = random_presentation(&mut rng);
        if p.rows().is_empty() {
            continue;
        }
        let weights: Vec<MultiPoly> = p
            .rows()
            .iter()
            .map(|_| random_entry(&r, &mut rng))
            .collect();
        let combo: Vec<MultiPoly> = (0..p.cols())
            .map(|j| {
                p.rows()
                    .iter()
                    .zip(&weights)
                    .fold(MultiPoly::zero(&r), |acc, (row, w)| &acc + &(w * &row[j]))
            })
            .collect();
        let q = p.with_row(combo).unwrap();
        for k in 0..=p.cols() {
            let a = groebner(&fitting_ideal(&p, k)).unwrap();
            let b = groebner(&fitting_ideal(&q, k)).unwrap();
            assert_eq!(a.generators(), b.generators(), "{p} vs {q} at {k}");
        }
    }
}

#[test]
fn generation_bound_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..60 {
        let p = random_presentation(&mut rng);
        let verdicts: Vec<bool> = (0..=p.cols())
            .map(|k| can_be_generated_by(&p, k).unwrap())
            .collect();
        assert!(
            verdicts.windows(2).all(|w| !w[0] || w[1]),
            "{p}: {verdicts:?}"
        );
        assert!(verdicts[p.cols()]);
    }
}
