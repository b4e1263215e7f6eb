//! Factorization of polynomials over Q into irreducibles.
//!
//! Univariate inputs go through squarefree decomposition and Zassenhaus
//! (mod-p factorization, Hensel lifting, subset recombination). Multivariate
//! inputs are reduced to the univariate case by Kronecker substitution and
//! the candidate factors are certified by trial division.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, Rational, RingSpec};
use crate::upoly::{self, ZPoly};

/// Tuning knobs for multivariate factorization.
#[derive(Clone, Debug)]
pub struct FactorConfig {
    /// Largest admissible `prod(deg_i + 1)` for the Kronecker substitution.
    pub kronecker_cap: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            kronecker_cap: 1_000_000,
        }
    }
}

/// `unit * prod(factor^multiplicity)`, factors irreducible, primitive with
/// positive leading coefficient, pairwise non-associated and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(MultiPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, ring: &RingSpec) -> MultiPoly {
        self.factors.iter().fold(
            MultiPoly::constant(ring, self.unit.clone()),
            |acc, (f, m)| &acc * &f.pow(*m),
        )
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.factors.iter().map(|(_, m)| *m).collect()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(self.unit.to_string());
        }
        for (p, m) in &self.factors {
            let base = if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            };
            parts.push(if *m == 1 { base } else { format!("{base}^{m}") });
        }
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Serialize)]
struct FactorEntry<'a> {
    factor: &'a MultiPoly,
    multiplicity: u32,
}

impl Serialize for Factorization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let entries: Vec<FactorEntry<'_>> = self
            .factors
            .iter()
            .map(|(factor, multiplicity)| FactorEntry {
                factor,
                multiplicity: *multiplicity,
            })
            .collect();
        let mut st = s.serialize_struct("Factorization", 2)?;
        st.serialize_field("unit", &self.unit.to_string())?;
        st.serialize_field("factors", &entries)?;
        st.end()
    }
}

/// Factors a polynomial in which at most one variable occurs.
pub fn factor_univariate(p: &MultiPoly) -> Result<Factorization> {
    if p.vars_used().len() > 1 {
        return Err(Error::Precondition(format!("`{p}` is not univariate")));
    }
    factor_multivariate(p)
}

pub fn factor_multivariate(p: &MultiPoly) -> Result<Factorization> {
    factor_multivariate_with(p, &FactorConfig::default())
}

pub fn factor_multivariate_with(p: &MultiPoly, cfg: &FactorConfig) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let ring = p.ring().clone();
    let (_, prim) = p.normalize();
    let mono = prim.monomial_content();
    let rest = prim.div_monomial(&mono);

    let mut acc: BTreeMap<MultiPoly, u32> = BTreeMap::new();
    for (i, &e) in mono.exps().iter().enumerate() {
        if e > 0 {
            *acc.entry(MultiPoly::var_index(&ring, i)).or_default() += e;
        }
    }
    if !rest.is_constant() {
        for (g, m) in factor_primitive(&rest, cfg)? {
            *acc.entry(g).or_default() += m;
        }
    }
    let factors: Vec<(MultiPoly, u32)> = acc.into_iter().collect();
    let product = factors
        .iter()
        .fold(MultiPoly::one(&ring), |a, (f, m)| &a * &f.pow(*m));
    let unit = p.leading_coeff() / product.leading_coeff();
    debug_assert_eq!(product.scale(&unit), *p);
    Ok(Factorization { unit, factors })
}

/// Irreducibility over Q; units and zero are rejected.
pub fn is_irreducible(p: &MultiPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    if p.is_constant() {
        return Err(Error::UnitInput);
    }
    let f = factor_multivariate(p)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}

/// Factors a primitive integral polynomial with positive leading coefficient
/// and no monomial content.
fn factor_primitive(p: &MultiPoly, cfg: &FactorConfig) -> Result<Vec<(MultiPoly, u32)>> {
    let used = p.vars_used();
    if used.len() == 1 {
        let var = used[0];
        let z = to_dense(p, var);
        return Ok(factor_z_complete(&z)
            .into_iter()
            .map(|(q, m)| (from_dense(p.ring(), var, &q).normalized(), m))
            .collect());
    }
    let mut out = Vec::new();
    for (part, m) in squarefree_parts(p)? {
        if part.is_constant() {
            continue;
        }
        let used = part.vars_used();
        let pieces = if used.len() == 1 {
            factor_primitive(&part, cfg)?
        } else {
            kronecker_factor(&part, &used, cfg)?
        };
        out.extend(pieces.into_iter().map(|(q, k)| (q, k * m)));
    }
    out.sort();
    Ok(out)
}

/// `p = prod(s_k^k)` with squarefree, pairwise coprime `s_k`. Over Q,
/// `gcd(p, ∂p/∂x_1, ..., ∂p/∂x_n)` removes one copy of every prime factor.
fn squarefree_parts(p: &MultiPoly) -> Result<Vec<(MultiPoly, u32)>> {
    let mut out = Vec::new();
    let mut cur = p.normalized();
    let mut radical = radical_of(&cur)?;
    let mut k = 1;
    while !cur.is_constant() {
        let next = cur
            .exact_div(&radical)?
            .expect("radical divides")
            .normalized();
        let next_radical = if next.is_constant() {
            MultiPoly::one(p.ring())
        } else {
            radical_of(&next)?
        };
        let exact = radical
            .exact_div(&next_radical)?
            .expect("radicals are nested")
            .normalized();
        if !exact.is_constant() {
            out.push((exact, k));
        }
        cur = next;
        radical = next_radical;
        k += 1;
    }
    Ok(out)
}

fn radical_of(p: &MultiPoly) -> Result<MultiPoly> {
    let mut g = p.clone();
    for i in p.vars_used() {
        g = g.gcd(&p.derivative_index(i))?;
    }
    Ok(p.exact_div(&g)?.expect("gcd divides").normalized())
}

fn to_dense(p: &MultiPoly, var: usize) -> ZPoly {
    let mut out = vec![BigInt::zero(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        out[m.exps()[var] as usize] = c.to_integer();
    }
    out
}

fn from_dense(ring: &RingSpec, var: usize, z: &[BigInt]) -> MultiPoly {
    MultiPoly::from_terms(
        ring,
        z.iter().enumerate().map(|(e, c)| {
            (
                Monomial::var(ring.nvars(), var, e as u32),
                Rational::from_integer(c.clone()),
            )
        }),
    )
}

/// Complete factorization of a primitive integer polynomial of positive
/// degree with positive leading coefficient.
fn factor_z_complete(f: &[BigInt]) -> Vec<(ZPoly, u32)> {
    let mut out = Vec::new();
    let zeros = f.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push((vec![BigInt::zero(), BigInt::one()], zeros as u32));
    }
    let rest: ZPoly = f[zeros..].to_vec();
    if rest.len() > 1 {
        for (part, m) in upoly::squarefree_decomposition(&rest) {
            for q in upoly::factor_squarefree_z(&part) {
                out.push((q, m));
            }
        }
    }
    out
}

fn kronecker_factor(
    p: &MultiPoly,
    used: &[usize],
    cfg: &FactorConfig,
) -> Result<Vec<(MultiPoly, u32)>> {
    let ring = p.ring();
    let bases: Vec<u64> = used
        .iter()
        .map(|&v| u64::from(p.degree_in(v)) + 1)
        .collect();
    let span = bases.iter().try_fold(1u64, |acc, b| acc.checked_mul(*b));
    let span = match span {
        Some(s) if s <= cfg.kronecker_cap => s,
        _ => {
            return Err(Error::ResourceLimit(format!(
                "Kronecker substitution needs {} > {} coefficients",
                bases.iter().map(ToString::to_string).join(" * "),
                cfg.kronecker_cap
            )))
        }
    };

    let mut image = vec![BigInt::zero(); span as usize];
    for (m, c) in p.terms() {
        let e = used
            .iter()
            .zip(&bases)
            .rev()
            .fold(0u64, |acc, (&v, b)| acc * b + m.exps()[v] as u64);
        image[e as usize] = c.to_integer();
    }
    upoly::z_trim(&mut image);

    let mut pieces: Vec<ZPoly> = Vec::new();
    for (q, m) in factor_z_complete(&image) {
        for _ in 0..m {
            pieces.push(q.clone());
        }
    }

    let inverse = |z: &[BigInt]| -> Option<MultiPoly> {
        if z.len() as u64 > span {
            return None;
        }
        let terms = z
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let mut exps = vec![0u32; ring.nvars()];
                let mut e = e as u64;
                for (&v, b) in used.iter().zip(&bases) {
                    exps[v] = (e % b) as u32;
                    e /= b;
                }
                (Monomial::new(exps), Rational::from_integer(c.clone()))
            });
        Some(MultiPoly::from_terms(ring, terms).normalized())
    };

    let mut cur = p.clone();
    let mut found: Vec<MultiPoly> = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= pieces.len() {
        for subset in (0..pieces.len()).combinations(size) {
            let prod = subset.iter().fold(vec![BigInt::one()], |acc, &i| {
                upoly::z_mul(&acc, &pieces[i])
            });
            let Some(cand) = inverse(&prod) else { continue };
            if cand.is_constant() {
                continue;
            }
            if let Some(q) = cur.exact_div(&cand)? {
                found.push(cand);
                cur = q.normalized();
                let chosen: BTreeSet<usize> = subset.into_iter().collect();
                pieces = pieces
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !chosen.contains(i))
                    .map(|(_, q)| q)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if !cur.is_constant() {
        found.push(cur);
    }
    let mut acc: BTreeMap<MultiPoly, u32> = BTreeMap::new();
    for g in found {
        *acc.entry(g).or_default() += 1;
    }
    Ok(acc.into_iter().collect())
}

/// Outcome of the Newton-polygon absolute irreducibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AbsoluteVerdict {
    AbsolutelyIrreducible,
    Unknown,
}

impl fmt::Display for AbsoluteVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsoluteVerdict::AbsolutelyIrreducible => write!(f, "absolutely irreducible"),
            AbsoluteVerdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Sufficient test for irreducibility over an algebraically closed field:
/// a polynomial in at most two variables without monomial factors whose
/// Newton polygon is integrally indecomposable is absolutely irreducible.
/// Never claims reducibility.
pub fn newton_indecomposable(p: &MultiPoly) -> AbsoluteVerdict {
    let used = p.vars_used();
    if p.is_zero() || used.is_empty() || used.len() > 2 {
        return AbsoluteVerdict::Unknown;
    }
    if p.num_terms() == 1 {
        let (m, _) = p.leading_term().expect("nonzero");
        return if m.degree() == 1 {
            AbsoluteVerdict::AbsolutelyIrreducible
        } else {
            AbsoluteVerdict::Unknown
        };
    }
    if !p.monomial_content().is_one() {
        return AbsoluteVerdict::Unknown;
    }
    let points: Vec<(i64, i64)> = p
        .terms()
        .map(|(m, _)| {
            let e = m.exps();
            let x = e[used[0]] as i64;
            let y = used.get(1).map_or(0, |&j| e[j] as i64);
            (x, y)
        })
        .collect();
    let hull = convex_hull(points);
    let n = hull.len();
    let edges: Vec<((i64, i64), i64)> = (0..n)
        .map(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % n]);
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let g = dx.gcd(&dy);
            ((dx / g, dy / g), g)
        })
        .collect();
    if has_proper_zero_subsum(&edges) {
        AbsoluteVerdict::Unknown
    } else {
        AbsoluteVerdict::AbsolutelyIrreducible
    }
}

/// Counter-clockwise hull vertices; a segment yields its two endpoints.
fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Whether some choice `0 <= m_i <= n_i`, neither all zero nor all full,
/// makes `sum m_i v_i` vanish.
fn has_proper_zero_subsum(edges: &[((i64, i64), i64)]) -> bool {
    // state: partial sum, some m_i > 0, some m_i < n_i
    let mut states: BTreeSet<(i64, i64, bool, bool)> = BTreeSet::new();
    states.insert((0, 0, false, false));
    for &((vx, vy), count) in edges {
        let mut next = BTreeSet::new();
        for &(sx, sy, pos, less) in &states {
            for m in 0..=count {
                next.insert((sx + m * vx, sy + m * vy, pos || m > 0, less || m < count));
            }
        }
        states = next;
    }
    states.contains(&(0, 0, true, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;

    fn ring2() -> RingSpec {
        RingSpec::new(["x", "y"]).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &ring2()).unwrap()
    }

    fn factor_strings(f: &Factorization) -> Vec<(String, u32)> {
        f.factors.iter().map(|(q, m)| (q.to_string(), *m)).collect()
    }

    #[test]
    fn univariate_examples() {
        let f = factor_univariate(&p("x^2 - 1")).unwrap();
        assert_eq!(
            factor_strings(&f),
            vec![("x - 1".into(), 1), ("x + 1".into(), 1)]
        );
        let f = factor_univariate(&p("x^2 + 1")).unwrap();
        assert_eq!(factor_strings(&f), vec![("x^2 + 1".into(), 1)]);
        let f = factor_univariate(&p("x^4 - 1")).unwrap();
        assert_eq!(
            factor_strings(&f),
            vec![
                ("x - 1".into(), 1),
                ("x + 1".into(), 1),
                ("x^2 + 1".into(), 1)
            ]
        );
        assert!(matches!(factor_univariate(&p("0")), Err(Error::ZeroInput)));
        assert!(factor_univariate(&p("x*y")).is_err());
    }

    #[test]
    fn multivariate_examples() {
        let f = factor_multivariate(&p("x^2*y^3")).unwrap();
        assert_eq!(factor_strings(&f), vec![("y".into(), 3), ("x".into(), 2)]);
        let f = factor_multivariate(&p("(x-1)*x*y + 1")).unwrap();
        assert_eq!(factor_strings(&f), vec![("x^2*y - x*y + 1".into(), 1)]);
        let f = factor_multivariate(&p("x^2*y - x*y")).unwrap();
        assert_eq!(
            factor_strings(&f),
            vec![("y".into(), 1), ("x".into(), 1), ("x - 1".into(), 1)]
        );
    }

    #[test]
    fn unit_and_multiplicities_reconstruct() {
        let q = p("-3/2*(x + y)^2*(x - 2*y)*(x*y + 1)^3");
        let f = factor_multivariate(&q).unwrap();
        assert_eq!(f.expand(&ring2()), q);
        assert_eq!(f.count(), 6);
        assert_eq!(f.unit, crate::poly::ratio(-3, 2));
    }

    #[test]
    fn kronecker_cap_is_enforced() {
        let cfg = FactorConfig { kronecker_cap: 5 };
        assert!(matches!(
            factor_multivariate_with(&p("x^2*y + y + 1"), &cfg),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&p("x")).unwrap());
        assert!(!is_irreducible(&p("x^2")).unwrap());
        assert!(is_irreducible(&p("(x-1)*x*y + 1")).unwrap());
        assert!(matches!(is_irreducible(&p("5")), Err(Error::UnitInput)));
        assert!(matches!(is_irreducible(&p("0")), Err(Error::ZeroInput)));
    }

    #[test]
    fn newton_polygon_examples() {
        use AbsoluteVerdict::*;
        assert_eq!(newton_indecomposable(&p("x*y + 1")), AbsolutelyIrreducible);
        assert_eq!(newton_indecomposable(&p("x^2 + y^2")), Unknown);
        assert_eq!(newton_indecomposable(&p("x")), AbsolutelyIrreducible);
        assert_eq!(newton_indecomposable(&p("x^2 + x")), Unknown);
        assert_eq!(
            newton_indecomposable(&p("(x-1)*x*y + 1")),
            AbsolutelyIrreducible
        );
        // triangle (0,0),(2,0),(0,3): edge gcds 2,1,3 admit no zero subsum
        assert_eq!(
            newton_indecomposable(&p("x^2 + y^3 + 1")),
            AbsolutelyIrreducible
        );
    }
}
