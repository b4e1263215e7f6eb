//! Primality and factorization in a suspension `S = R[u,v]/(uv - f)`.
//!
//! An element `g` with `u ∤ g` is prime in `S` exactly when `u^l g` is
//! irreducible in `R[u]`, where `l` is the largest power of `v` occurring in
//! `g`. Factorization runs a worklist: strip powers of `u` and `v`, factor
//! the shifted element in `R[u]`, and feed every factor back in.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::{SuspElem, SuspTower};
use crate::error::{Error, Result};
use crate::factor::{factor_multivariate, is_irreducible, Factorization};
use crate::poly::{MultiPoly, Rational};

/// `unit * prod(factor^multiplicity)` with prime factors: `u` and `v` first,
/// then the remaining primes in canonical order, each normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspFactorization {
    pub unit: Rational,
    pub factors: Vec<(SuspElem, u32)>,
}

impl SuspFactorization {
    pub fn expand(&self, tower: &SuspTower) -> SuspElem {
        self.factors
            .iter()
            .fold(tower.constant(1, self.unit.clone()), |acc, (p, m)| {
                &acc * &p.pow(*m)
            })
    }

    pub fn count(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

impl fmt::Display for SuspFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !num_traits::One::is_one(&self.unit) || self.factors.is_empty() {
            parts.push(self.unit.to_string());
        }
        for (p, m) in &self.factors {
            let s = p.to_string();
            let base = if s.contains(' ') { format!("({s})") } else { s };
            parts.push(if *m == 1 { base } else { format!("{base}^{m}") });
        }
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Serialize)]
struct Entry<'a> {
    factor: &'a SuspElem,
    multiplicity: u32,
}

impl Serialize for SuspFactorization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let entries: Vec<Entry<'_>> = self
            .factors
            .iter()
            .map(|(factor, m)| Entry {
                factor,
                multiplicity: *m,
            })
            .collect();
        let mut st = s.serialize_struct("SuspFactorization", 2)?;
        st.serialize_field("unit", &self.unit.to_string())?;
        st.serialize_field("factors", &entries)?;
        st.end()
    }
}

/// A nontrivial factorization showing that `f` is not prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Base(Factorization),
    Susp(SuspFactorization),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Base(w) => w.fmt(f),
            Witness::Susp(w) => w.fmt(f),
        }
    }
}

/// Primality of `u_k`, `v_k` and `f_k` for one level of a tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimalityReport {
    pub level: usize,
    pub u_prime: bool,
    pub v_prime: bool,
    pub f_prime: bool,
    pub witness: Option<Witness>,
}

fn is_prime_factorization(fac: &Factorization) -> bool {
    fac.factors.len() == 1 && fac.factors[0].1 == 1
}

fn check_level_one(g: &SuspElem) -> Result<()> {
    if g.level() != 1 {
        return Err(Error::Unsupported(format!(
            "prime decomposition is only available at level 1, got level {}",
            g.level()
        )));
    }
    Ok(())
}

fn require_nonzero_nonunit(g: &SuspElem) -> Result<()> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if g.is_unit() {
        return Err(Error::UnitInput);
    }
    Ok(())
}

/// Decides primality of `u_k`, `v_k` and `f_k`. The three verdicts agree; the
/// `u` and `v` verdicts are obtained independently by exhibiting `a, b` with
/// `u | ab` but `u ∤ a`, `u ∤ b` whenever `f = ab` is a nontrivial split.
pub fn is_prime_uvf(t: &SuspTower, level: usize) -> Result<PrimalityReport> {
    if level == 0 || level > t.height() {
        return Err(Error::Precondition(format!(
            "level {level} is not in 1..={}",
            t.height()
        )));
    }
    match level {
        1 => {
            let f = t.f_base();
            let fac = factor_multivariate(&f)?;
            if is_prime_factorization(&fac) {
                return Ok(PrimalityReport {
                    level,
                    u_prime: true,
                    v_prime: true,
                    f_prime: true,
                    witness: None,
                });
            }
            let a = fac.factors[0].0.clone();
            let b = f.exact_div(&a)?.expect("factor divides f");
            let a = t.from_base(&a, 1)?;
            let b = t.from_base(&b, 1)?;
            let (u_prime, v_prime) = split_verdicts(&a, &b);
            Ok(PrimalityReport {
                level,
                u_prime,
                v_prime,
                f_prime: false,
                witness: Some(Witness::Base(fac)),
            })
        }
        2 => {
            let f1 = factor_multivariate(&t.f_base())?;
            if !is_prime_factorization(&f1) {
                return Err(Error::Unsupported(
                    "primality of f_2 needs f_1 prime so that the first level is factorial".into(),
                ));
            }
            let f2 = t.f(2);
            if certify_prime(&f2)? {
                return Ok(PrimalityReport {
                    level,
                    u_prime: true,
                    v_prime: true,
                    f_prime: true,
                    witness: None,
                });
            }
            let fac = factor_susp(&f2)?;
            let a = fac.factors[0].0.clone();
            let b = f2.exact_div(&a)?.expect("factor divides f_2");
            let (u_prime, v_prime) = split_verdicts(&a.inject(2)?, &b.inject(2)?);
            Ok(PrimalityReport {
                level,
                u_prime,
                v_prime,
                f_prime: false,
                witness: Some(Witness::Susp(fac)),
            })
        }
        _ => Err(Error::Unsupported(format!(
            "primality at tower level {level} (only levels 1 and 2 are supported)"
        ))),
    }
}

/// With `ab = f`, `u | ab` always; `u` is prime only if it divides `a` or `b`.
fn split_verdicts(a: &SuspElem, b: &SuspElem) -> (bool, bool) {
    let u_prime = a.divides_u().is_ok() || b.divides_u().is_ok();
    let v_prime = a.divides_v().is_ok() || b.divides_v().is_ok();
    (u_prime, v_prime)
}

/// Irreducibility of a base element in `S`: `a` is irreducible in `S` iff it
/// is irreducible in `R` and not associated to `f` (which splits as `u v`).
pub fn is_irreducible_base_elem(a: &MultiPoly, t: &SuspTower) -> Result<bool> {
    if t.height() == 0 {
        return Err(Error::Precondition("tower has no suspension level".into()));
    }
    if a.ring() != t.base_ring() {
        return Err(Error::RingMismatch(format!(
            "{} vs {}",
            a.ring(),
            t.base_ring()
        )));
    }
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if a.is_constant() {
        return Err(Error::UnitInput);
    }
    if a.is_associate(&t.f_base()) {
        return Ok(false);
    }
    is_irreducible(a)
}

fn base_prime(t: &SuspTower) -> Result<()> {
    let f = t.f_base();
    let fac = factor_multivariate(&f)?;
    if !is_prime_factorization(&fac) {
        return Err(Error::Precondition(format!("f = {f} is not prime")));
    }
    Ok(())
}

/// Primality of a level-1 element, assuming `f` is prime in `R`.
pub fn certify_prime(q: &SuspElem) -> Result<bool> {
    check_level_one(q)?;
    require_nonzero_nonunit(q)?;
    let t = q.tower();
    base_prime(t)?;
    certify_unchecked(q)
}

fn certify_unchecked(q: &SuspElem) -> Result<bool> {
    let t = q.tower();
    if q.is_associate(&t.u(1, 1)) || q.is_associate(&t.v(1, 1)) {
        return Ok(true);
    }
    if q.divides_u().is_ok() || q.divides_v().is_ok() {
        return Ok(false);
    }
    if q.degrees() == [0] {
        let p = q.as_base().expect("degree-zero element");
        return Ok(!p.is_associate(&t.f_base()) && is_irreducible(&p)?);
    }
    let (_, g) = q.shifted_ru()?;
    is_irreducible(&g)
}

/// Prime factorization of a level-1 element. Fails with `NotUfd` when `f` is
/// not prime in `R`, since then `S` is not factorial.
pub fn factor_susp(g: &SuspElem) -> Result<SuspFactorization> {
    check_level_one(g)?;
    let t = g.tower().clone();
    let fac = factor_multivariate(&t.f_base())?;
    if !is_prime_factorization(&fac) {
        return Err(Error::NotUfd { witness: fac });
    }
    require_nonzero_nonunit(g)?;

    let mut acc = Accumulator {
        tower: &t,
        nu_u: 0,
        nu_v: 0,
        primes: Vec::new(),
    };
    acc.process(g.clone(), 1)?;
    if acc.nu_u < 0 || acc.nu_v < 0 {
        return Err(Error::Consistency(format!(
            "negative valuation while factoring {g}"
        )));
    }

    let mut primes = acc.primes;
    primes.sort_by(|a, b| a.0.value().cmp(b.0.value()));
    let mut factors = Vec::new();
    if acc.nu_u > 0 {
        factors.push((t.u(1, 1), acc.nu_u as u32));
    }
    if acc.nu_v > 0 {
        factors.push((t.v(1, 1), acc.nu_v as u32));
    }
    factors.extend(primes);

    let product = factors.iter().fold(t.one(1), |a, (p, m)| &a * &p.pow(*m));
    let unit = g.leading_rational() / product.leading_rational();
    if unit.is_zero() || product.scale(&unit) != *g {
        return Err(Error::Consistency(format!(
            "factors of {g} do not multiply back"
        )));
    }
    Ok(SuspFactorization { unit, factors })
}

struct Accumulator<'a> {
    tower: &'a SuspTower,
    nu_u: i64,
    nu_v: i64,
    primes: Vec<(SuspElem, u32)>,
}

impl Accumulator<'_> {
    fn push(&mut self, q: SuspElem, m: u32) {
        let q = q.normalized();
        match self.primes.iter_mut().find(|(p, _)| *p == q) {
            Some((_, e)) => *e += m,
            None => self.primes.push((q, m)),
        }
    }

    fn process(&mut self, mut q: SuspElem, m: u32) -> Result<()> {
        while let Ok(next) = q.divides_u() {
            q = next;
            self.nu_u += i64::from(m);
        }
        while let Ok(next) = q.divides_v() {
            q = next;
            self.nu_v += i64::from(m);
        }
        if q.is_unit() {
            return Ok(());
        }

        if q.degrees() == [0] {
            let p = q.as_base().expect("degree-zero element");
            let f = self.tower.f_base();
            for (r, e) in factor_multivariate(&p)?.factors {
                if r.is_associate(&f) {
                    self.nu_u += i64::from(m * e);
                    self.nu_v += i64::from(m * e);
                } else {
                    self.push(self.tower.from_base(&r, 1)?, m * e);
                }
            }
            return Ok(());
        }

        let (l, shifted) = q.shifted_ru()?;
        let fac = factor_multivariate(&shifted)?;
        if is_prime_factorization(&fac) {
            self.push(q, m);
            return Ok(());
        }
        let uvar = MultiPoly::var_index(shifted.ring(), shifted.ring().nvars() - 1);
        for (p, e) in fac.factors {
            if p == uvar {
                self.nu_u += i64::from(m * e);
            } else {
                self.process(SuspElem::from_ru(self.tower, &p)?, m * e)?;
            }
        }
        self.nu_u -= i64::from(m * l);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingSpec;

    fn tower(vars: &[&str], fs: &[&str]) -> SuspTower {
        SuspTower::new(RingSpec::new(vars.iter().copied()).unwrap(), fs).unwrap()
    }

    fn rendered(fac: &SuspFactorization) -> Vec<(String, u32)> {
        fac.factors
            .iter()
            .map(|(p, m)| (p.to_string(), *m))
            .collect()
    }

    #[test]
    fn primality_of_u_v_f() {
        let r = is_prime_uvf(&tower(&["x"], &["x"]), 1).unwrap();
        assert!(r.u_prime && r.v_prime && r.f_prime);
        assert!(r.witness.is_none());

        let r = is_prime_uvf(&tower(&["x"], &["x^2"]), 1).unwrap();
        assert!(!r.u_prime && !r.v_prime && !r.f_prime);
        assert_eq!(r.witness.unwrap().to_string(), "x^2");

        let r = is_prime_uvf(&tower(&["x", "y"], &["(x-1)*x*y + 1"]), 1).unwrap();
        assert!(r.u_prime && r.v_prime && r.f_prime);
    }

    #[test]
    fn primality_at_level_two() {
        let base = RingSpec::new(["x"]).unwrap();
        let t = SuspTower::new(base.clone(), &["x", "u1 + x"]).unwrap();
        let r = is_prime_uvf(&t, 2).unwrap();
        assert!(!r.f_prime && !r.u_prime && !r.v_prime);

        let t = SuspTower::new(base.clone(), &["x", "u1 + 1"]).unwrap();
        let r = is_prime_uvf(&t, 2).unwrap();
        assert!(r.f_prime && r.u_prime && r.v_prime);

        let t = SuspTower::new(base, &["x", "u1", "u2"]).unwrap();
        assert!(matches!(is_prime_uvf(&t, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn irreducible_base_elements() {
        let t = tower(&["x"], &["x"]);
        let ring = t.base_ring().clone();
        let p = |s: &str| crate::expr::parse_poly(s, &ring).unwrap();
        assert!(is_irreducible_base_elem(&p("x + 1"), &t).unwrap());
        assert!(!is_irreducible_base_elem(&p("x"), &t).unwrap());
        assert!(!is_irreducible_base_elem(&p("x^2"), &t).unwrap());
        assert!(matches!(
            is_irreducible_base_elem(&p("3"), &t),
            Err(Error::UnitInput)
        ));
        assert!(matches!(
            is_irreducible_base_elem(&p("0"), &t),
            Err(Error::ZeroInput)
        ));
    }

    #[test]
    fn factor_examples() {
        let t = tower(&["x"], &["x"]);
        let fac = factor_susp(&t.parse("x", 1).unwrap()).unwrap();
        assert_eq!(rendered(&fac), vec![("u".into(), 1), ("v".into(), 1)]);

        let g = t.parse("x + u", 1).unwrap();
        let fac = factor_susp(&g).unwrap();
        assert_eq!(rendered(&fac), vec![("u".into(), 1), ("1 + v".into(), 1)]);
        assert!(certify_prime(&fac.factors[1].0).unwrap());
        assert_eq!(fac.expand(&t), g);

        let g = t.parse("x*u", 1).unwrap();
        let fac = factor_susp(&g).unwrap();
        assert_eq!(rendered(&fac), vec![("u".into(), 2), ("v".into(), 1)]);
    }

    #[test]
    fn factor_reports_non_ufd() {
        let t = tower(&["x", "y"], &["x*y"]);
        match factor_susp(&t.parse("u + x", 1).unwrap()) {
            Err(Error::NotUfd { witness }) => assert_eq!(witness.to_string(), "y * x"),
            other => panic!("expected NotUfd, got {other:?}"),
        }
    }

    #[test]
    fn factor_mixed_products() {
        let t = tower(&["x"], &["x"]);
        let g = t
            .parse("-3*(v + 1)^2*(u^2 + x + 2)*(x + 1)*u*v^3", 1)
            .unwrap();
        let fac = factor_susp(&g).unwrap();
        assert_eq!(fac.expand(&t), g);
        for (p, _) in &fac.factors {
            assert!(certify_prime(p).unwrap(), "{p}");
        }
        assert_eq!(fac.count(), 1 + 3 + 2 + 1 + 1);
    }

    #[test]
    fn certify_examples() {
        let t = tower(&["x"], &["x"]);
        assert!(certify_prime(&t.u(1, 1)).unwrap());
        assert!(!certify_prime(&t.parse("x + u", 1).unwrap()).unwrap());
        assert!(certify_prime(&t.parse("v + 1", 1).unwrap()).unwrap());
        assert!(!certify_prime(&t.parse("x", 1).unwrap()).unwrap());
        assert!(certify_prime(&t.parse("x + 1", 1).unwrap()).unwrap());
        assert!(matches!(certify_prime(&t.one(1)), Err(Error::UnitInput)));
    }
}
