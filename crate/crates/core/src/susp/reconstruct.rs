//! Recovering `φ ∈ S` from `g = u^d φ ∈ R[u]` and `h = v^d φ ∈ R[v]`.
//!
//! Writing `φ = Σ c_i u^i` (negative `i` meaning `v^{-i}`), the top
//! coefficients of `g` and `h` are `c_d` and `c_{-d}`. Removing those two terms
//! and one factor of `u` (resp. `v`) leaves the same problem for `d - 1`, so
//! no division by `f` is ever needed.

use super::SuspElem;
use crate::error::{Error, Result};

/// The unique `φ` with `u^d φ = g` and `v^d φ = h`, given `v^d g = u^d h`.
pub fn reconstruct_from_fractions(g: &SuspElem, h: &SuspElem, d: u32) -> Result<SuspElem> {
    if g.tower() != h.tower() || g.level() != h.level() {
        return Err(Error::TowerMismatch);
    }
    let level = g.level();
    if level == 0 {
        return Err(Error::Precondition(
            "reconstruction needs level >= 1".into(),
        ));
    }
    if g.degrees().first().is_some_and(|&i| i < 0) {
        return Err(Error::Precondition(format!("`{g}` involves v")));
    }
    if h.degrees().last().is_some_and(|&i| i > 0) {
        return Err(Error::Precondition(format!("`{h}` involves u")));
    }
    let t = g.tower();
    let u = t.u(level, level);
    let v = t.v(level, level);
    let ud = u.pow(d);
    let vd = v.pow(d);
    if &vd * g != &ud * h {
        return Err(Error::Consistency(format!(
            "v^{d} * ({g}) differs from u^{d} * ({h})"
        )));
    }
    let phi = peel(g, h, d, &u, &v)?;
    if &ud * &phi != *g || &vd * &phi != *h {
        return Err(Error::Consistency(
            "reconstruction did not multiply back".into(),
        ));
    }
    Ok(phi)
}

/// Component `c * gen^k` at the element's level, with `c` of the level below.
fn term(c: &SuspElem, gen: &SuspElem, k: u32) -> Result<SuspElem> {
    Ok(&c.inject(gen.level())? * &gen.pow(k))
}

/// Drops the degree-zero and top components and lowers every remaining
/// degree by one towards zero.
fn shrink(x: &SuspElem, top: i64) -> SuspElem {
    let mut out = x.tower().zero(x.level());
    for (i, comp) in x.components() {
        if i == 0 || i == top {
            continue;
        }
        let lowered = if i > 0 {
            comp.divides_u()
        } else {
            comp.divides_v()
        };
        out = &out + &lowered.expect("nonzero degree is divisible");
    }
    out
}

fn peel(g: &SuspElem, h: &SuspElem, d: u32, u: &SuspElem, v: &SuspElem) -> Result<SuspElem> {
    if d == 0 {
        return Ok(g.clone());
    }
    let top = 2 * i64::from(d);
    let c_pos = g.coefficient(top);
    let c_neg = h.coefficient(-top);
    let rest = peel(&shrink(g, top), &shrink(h, -top), d - 1, u, v)?;
    Ok(&(&term(&c_pos, u, d)? + &term(&c_neg, v, d)?) + &rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingSpec;
    use crate::susp::SuspTower;

    #[test]
    fn recovers_v_from_f_and_v_squared() {
        let t = SuspTower::new(RingSpec::new(["x"]).unwrap(), &["x"]).unwrap();
        let g = t.parse("x", 1).unwrap();
        let h = t.parse("v^2", 1).unwrap();
        assert_eq!(reconstruct_from_fractions(&g, &h, 1).unwrap(), t.v(1, 1));
    }

    #[test]
    fn depth_zero_is_identity() {
        let t = SuspTower::new(RingSpec::new(["x"]).unwrap(), &["x"]).unwrap();
        let g = t.parse("x^2 + 3", 1).unwrap();
        assert_eq!(reconstruct_from_fractions(&g, &g, 0).unwrap(), g);
    }

    #[test]
    fn round_trip() {
        let t = SuspTower::new(RingSpec::new(["x", "y"]).unwrap(), &["(x-1)*x*y + 1"]).unwrap();
        for (src, d) in [("u + x", 2), ("x*v^2 - u + y", 2), ("v^3 + u^3 + 1", 4)] {
            let phi = t.parse(src, 1).unwrap();
            let g = &t.u(1, 1).pow(d) * &phi;
            let h = &t.v(1, 1).pow(d) * &phi;
            assert_eq!(reconstruct_from_fractions(&g, &h, d).unwrap(), phi, "{src}");
        }
    }

    #[test]
    fn inconsistent_pair_is_rejected() {
        let t = SuspTower::new(RingSpec::new(["x"]).unwrap(), &["x"]).unwrap();
        let g = t.parse("u", 1).unwrap();
        let h = t.parse("v^2", 1).unwrap();
        assert!(matches!(
            reconstruct_from_fractions(&g, &h, 1),
            Err(Error::Consistency(_))
        ));
        let h = t.parse("v", 1).unwrap();
        assert_eq!(reconstruct_from_fractions(&g, &h, 1).unwrap(), t.one(1));
        assert!(matches!(
            reconstruct_from_fractions(&h, &g, 1),
            Err(Error::Precondition(_))
        ));
    }
}
