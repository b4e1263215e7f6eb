//! Gröbner bases and Jacobian smoothness checks.
//!
//! Bases are computed by Buchberger's algorithm under the graded reverse
//! lexicographic order, pruning pairs with the coprime and chain criteria.
//! A basis over Q is also a basis over C, so `1 ∈ I` decided here certifies
//! that the complex zero set is empty.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::classgroup::{class_group, ClassGroup};
use crate::error::{Error, Result};
use crate::factor::AbsoluteVerdict;
use crate::poly::{Monomial, MultiPoly, Rational, RingSpec};
use crate::susp::{is_prime_uvf, PrimalityReport, SuspTower};

/// Limits for Buchberger's algorithm.
#[derive(Clone, Debug)]
pub struct GroebnerConfig {
    /// Maximum number of S-pairs reduced before giving up.
    pub pair_budget: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            pair_budget: 100_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    GrevLex,
}

/// Monomial under the graded reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Grev(Monomial);

impl Ord for Grev {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.degree().cmp(&other.0.degree()).then_with(|| {
            let (a, b) = (self.0.exps(), other.0.exps());
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Grev {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with terms keyed in grevlex order; the last entry leads.
#[derive(Clone, PartialEq, Eq, Debug)]
struct GPoly(BTreeMap<Grev, Rational>);

impl GPoly {
    fn from_poly(p: &MultiPoly) -> Self {
        GPoly(
            p.terms()
                .map(|(m, c)| (Grev(m.clone()), c.clone()))
                .collect(),
        )
    }

    fn to_poly(&self, ring: &RingSpec) -> MultiPoly {
        MultiPoly::from_terms(ring, self.0.iter().map(|(m, c)| (m.0.clone(), c.clone())))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> (&Monomial, &Rational) {
        let (m, c) = self.0.iter().next_back().expect("nonzero polynomial");
        (&m.0, c)
    }

    fn monic(mut self) -> Self {
        let inv = self.lead().1.recip();
        for c in self.0.values_mut() {
            *c = &*c * &inv;
        }
        self
    }

    /// `self -= c * m * g`.
    fn sub_mul(&mut self, c: &Rational, m: &Monomial, g: &GPoly) {
        for (gm, gc) in &g.0 {
            let key = Grev(m.mul(&gm.0));
            let delta = c * gc;
            match self.0.get_mut(&key) {
                Some(v) => {
                    *v -= delta;
                    if v.is_zero() {
                        self.0.remove(&key);
                    }
                }
                None => {
                    self.0.insert(key, -delta);
                }
            }
        }
    }
}

/// Full reduction of `p` modulo `basis`.
fn normal_form(p: &GPoly, basis: &[GPoly]) -> GPoly {
    let mut rem = p.clone();
    let mut out = BTreeMap::new();
    while let Some((m, c)) = rem
        .0
        .iter()
        .next_back()
        .map(|(m, c)| (m.0.clone(), c.clone()))
    {
        match basis.iter().find(|g| g.lead().0.divides(&m)) {
            Some(g) => {
                let (gm, gc) = g.lead();
                let q = gm.quotient_of(&m);
                rem.sub_mul(&(&c / gc), &q, g);
            }
            None => {
                rem.0.remove(&Grev(m.clone()));
                out.insert(Grev(m), c);
            }
        }
    }
    GPoly(out)
}

fn s_polynomial(f: &GPoly, g: &GPoly) -> GPoly {
    let (fm, fc) = f.lead();
    let (gm, gc) = g.lead();
    let l = fm.lcm(gm);
    let mut s = GPoly(BTreeMap::new());
    s.sub_mul(&-fc.recip(), &fm.quotient_of(&l), f);
    s.sub_mul(&gc.recip(), &gm.quotient_of(&l), g);
    s
}

/// Reduced Gröbner basis: monic, tail-reduced, sorted by decreasing leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: RingSpec,
    generators: Vec<MultiPoly>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn contains_one(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }

    fn gpolys(&self) -> Vec<GPoly> {
        self.generators.iter().map(GPoly::from_poly).collect()
    }

    /// Normal form of `p` modulo the ideal.
    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                p.ring(),
                self.ring
            )));
        }
        Ok(normal_form(&GPoly::from_poly(p), &self.gpolys()).to_poly(&self.ring))
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// Checks that every S-polynomial reduces to zero, without pair pruning.
    pub fn certify(&self) -> bool {
        let g = self.gpolys();
        (0..g.len()).all(|i| {
            (i + 1..g.len()).all(|j| normal_form(&s_polynomial(&g[i], &g[j]), &g).is_zero())
        })
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", gens.join(", "))
    }
}

impl Serialize for GroebnerBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GroebnerBasis", 3)?;
        st.serialize_field("ring", &self.ring.to_string())?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("generators", &self.generators)?;
        st.end()
    }
}

fn common_ring(gens: &[MultiPoly]) -> Result<RingSpec> {
    let ring = gens
        .first()
        .ok_or_else(|| Error::Precondition("empty generator list".into()))?
        .ring()
        .clone();
    if let Some(p) = gens.iter().find(|p| p.ring() != &ring) {
        return Err(Error::RingMismatch(format!("{} vs {}", p.ring(), ring)));
    }
    Ok(ring)
}

pub fn groebner(gens: &[MultiPoly]) -> Result<GroebnerBasis> {
    groebner_with(gens, &GroebnerConfig::default())
}

pub fn groebner_with(gens: &[MultiPoly], cfg: &GroebnerConfig) -> Result<GroebnerBasis> {
    let ring = common_ring(gens)?;
    let mut basis: Vec<GPoly> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for p in gens.iter().filter(|p| !p.is_zero()) {
        let g = GPoly::from_poly(p).monic();
        pairs.extend((0..basis.len()).map(|i| (i, basis.len())));
        basis.push(g);
    }

    let mut done = std::collections::HashSet::new();
    let mut budget = cfg.pair_budget;
    while !pairs.is_empty() {
        let idx = (0..pairs.len())
            .min_by_key(|&k| {
                let (i, j) = pairs[k];
                (basis[i].lead().0.lcm(basis[j].lead().0).degree(), i, j)
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(idx);
        done.insert((i, j));
        let (mi, mj) = (basis[i].lead().0.clone(), basis[j].lead().0.clone());
        if mi.is_coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().0.divides(&l)
                && done.contains(&key(i, k))
                && done.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        if budget == 0 {
            return Err(Error::ResourceLimit(format!(
                "Gröbner pair budget of {} exhausted",
                cfg.pair_budget
            )));
        }
        budget -= 1;
        let h = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let n = basis.len();
        pairs.extend((0..n).map(|k| (k, n)));
        basis.push(h);
    }

    Ok(GroebnerBasis {
        generators: reduce_basis(basis)
            .iter()
            .map(|g| g.to_poly(&ring))
            .collect(),
        ring,
        order: MonomialOrder::GrevLex,
    })
}

/// Minimal, tail-reduced, monic basis sorted by decreasing leading term.
fn reduce_basis(mut basis: Vec<GPoly>) -> Vec<GPoly> {
    basis.sort_by_key(|g| Grev(g.lead().0.clone()));
    let mut minimal: Vec<GPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lead().0.divides(g.lead().0)) {
            minimal.push(g);
        }
    }
    let mut out: Vec<GPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<GPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            normal_form(&minimal[i], &others).monic()
        })
        .collect();
    out.sort_by_key(|g| std::cmp::Reverse(Grev(g.lead().0.clone())));
    out
}

/// Whether `1` lies in the ideal; the empty and the zero ideal give `false`.
pub fn ideal_contains_one(gens: &[MultiPoly]) -> Result<bool> {
    ideal_contains_one_with(gens, &GroebnerConfig::default())
}

pub fn ideal_contains_one_with(gens: &[MultiPoly], cfg: &GroebnerConfig) -> Result<bool> {
    if gens.is_empty() {
        return Ok(false);
    }
    common_ring(gens)?;
    if gens.iter().all(MultiPoly::is_zero) {
        return Ok(false);
    }
    Ok(groebner_with(gens, cfg)?.contains_one())
}

/// Outcome of the Jacobian criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    /// Basis of the singular-locus ideal, which does not contain `1`.
    Singular(GroebnerBasis),
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth)
    }
}

impl Serialize for Smoothness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Smoothness", 2)?;
        st.serialize_field("smooth", &self.is_smooth())?;
        match self {
            Smoothness::Smooth => st.serialize_field("singular_locus", &Option::<()>::None)?,
            Smoothness::Singular(gb) => st.serialize_field("singular_locus", gb)?,
        }
        st.end()
    }
}

/// `f` together with all its partial derivatives.
fn jacobian_ideal(f: &MultiPoly) -> Vec<MultiPoly> {
    std::iter::once(f.clone())
        .chain((0..f.ring().nvars()).map(|i| f.derivative_index(i)))
        .collect()
}

fn check_smooth(gens: &[MultiPoly], cfg: &GroebnerConfig) -> Result<(Smoothness, GroebnerBasis)> {
    let gb = groebner_with(gens, cfg)?;
    let verdict = if gb.contains_one() {
        Smoothness::Smooth
    } else {
        Smoothness::Singular(gb.clone())
    };
    Ok((verdict, gb))
}

/// Jacobian criterion for `{f = 0}`: smooth iff `1 ∈ (f, ∂f/∂x_1, ..., ∂f/∂x_n)`.
pub fn hypersurface_smooth(f: &MultiPoly) -> Result<Smoothness> {
    hypersurface_smooth_with(f, &GroebnerConfig::default())
}

pub fn hypersurface_smooth_with(f: &MultiPoly, cfg: &GroebnerConfig) -> Result<Smoothness> {
    if f.is_constant() {
        return Err(Error::Precondition(format!("`{f}` is constant")));
    }
    Ok(check_smooth(&jacobian_ideal(f), cfg)?.0)
}

/// Combined primality, smoothness and class-group report for a one-level
/// suspension over a polynomial ring.
#[derive(Clone, Debug)]
pub struct SuspensionReport {
    pub tower: SuspTower,
    pub primality: PrimalityReport,
    pub hypersurface: Smoothness,
    pub suspension: Smoothness,
    pub class_group: ClassGroup,
    /// Every Gröbner basis computed for the report.
    pub bases: Vec<GroebnerBasis>,
}

pub const SMOOTHNESS_NOTE: &str =
    "smoothness is decided by Gröbner bases over Q, which remain bases over C";

impl SuspensionReport {
    pub fn f_prime(&self) -> bool {
        self.primality.f_prime
    }

    pub fn factorial(&self) -> bool {
        self.primality.f_prime && self.class_group.group.is_trivial()
    }

    pub fn absolutely_irreducible(&self) -> bool {
        self.class_group
            .absolute_irreducibility
            .iter()
            .all(|v| *v == AbsoluteVerdict::AbsolutelyIrreducible)
    }

    pub fn verdict(&self) -> String {
        let smooth = self.hypersurface.is_smooth() && self.suspension.is_smooth();
        match (self.factorial(), smooth) {
            (true, true) => {
                "smooth factorial suspension (flexibility not checked computationally)".into()
            }
            (true, false) => "factorial but singular suspension".into(),
            (false, true) => format!(
                "smooth suspension, not factorial: Cl(X) = {}",
                self.class_group.group
            ),
            (false, false) => format!(
                "singular suspension, not factorial: Cl(X) = {}",
                self.class_group.group
            ),
        }
    }
}

impl fmt::Display for SuspensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tower: {}", self.tower)?;
        writeln!(f, "f prime: {}", self.f_prime())?;
        if let Some(w) = &self.primality.witness {
            writeln!(f, "  witness: f = {w}")?;
        }
        if self.f_prime() && !self.absolutely_irreducible() {
            writeln!(f, "  absolute irreducibility: unknown (Q-irreducible only)")?;
        }
        writeln!(
            f,
            "hypersurface {{f = 0}} smooth: {}",
            self.hypersurface.is_smooth()
        )?;
        writeln!(f, "suspension smooth: {}", self.suspension.is_smooth())?;
        writeln!(f, "factorial: {}", self.factorial())?;
        writeln!(f, "Cl(X): {}", self.class_group.group)?;
        writeln!(f, "note: {SMOOTHNESS_NOTE}")?;
        write!(f, "verdict: {}", self.verdict())
    }
}

impl Serialize for SuspensionReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SuspensionReport", 9)?;
        st.serialize_field("f_prime", &self.f_prime())?;
        st.serialize_field("hypersurface_smooth", &self.hypersurface.is_smooth())?;
        st.serialize_field("suspension_smooth", &self.suspension.is_smooth())?;
        st.serialize_field("factorial", &self.factorial())?;
        st.serialize_field("class_group", &self.class_group)?;
        st.serialize_field("absolutely_irreducible", &self.absolutely_irreducible())?;
        st.serialize_field("witness", &self.primality.witness)?;
        st.serialize_field("note", SMOOTHNESS_NOTE)?;
        st.serialize_field("verdict", &self.verdict())?;
        st.end()
    }
}

pub fn suspension_report(t: &SuspTower, cfg: &GroebnerConfig) -> Result<SuspensionReport> {
    if t.height() != 1 {
        return Err(Error::Unsupported(format!(
            "reports cover one-level towers, got height {}",
            t.height()
        )));
    }
    let f = t.f_base();
    let primality = is_prime_uvf(t, 1)?;
    let (hypersurface, gb1) = check_smooth(&jacobian_ideal(&f), cfg)?;

    let ring = t.base_ring().extend(&[t.u_name(1), t.v_name(1)])?;
    let n = t.base_ring().nvars();
    let u = MultiPoly::var_index(&ring, n);
    let v = MultiPoly::var_index(&ring, n + 1);
    let big_f = &(&u * &v) - &f.embed(&ring)?;
    let mut gens = vec![big_f.clone()];
    gens.extend((0..ring.nvars()).map(|i| big_f.derivative_index(i)));
    let (suspension, gb2) = check_smooth(&gens, cfg)?;

    Ok(SuspensionReport {
        tower: t.clone(),
        primality,
        hypersurface,
        suspension,
        class_group: class_group(t)?,
        bases: vec![gb1, gb2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;

    fn polys(ring: &RingSpec, srcs: &[&str]) -> Vec<MultiPoly> {
        srcs.iter().map(|s| parse_poly(s, ring).unwrap()).collect()
    }

    fn xy() -> RingSpec {
        RingSpec::new(["x", "y"]).unwrap()
    }

    #[test]
    fn groebner_examples() {
        let r = xy();
        let gb = groebner(&polys(&r, &["x", "y"])).unwrap();
        assert_eq!(gb.to_string(), "{x, y}");
        let gb = groebner(&polys(&r, &["x^2 - 1", "x - 1"])).unwrap();
        assert_eq!(gb.to_string(), "{x - 1}");
        let gb = groebner(&polys(&r, &["x*y - 1", "x"])).unwrap();
        assert!(gb.contains_one());
        assert!(gb.certify());
    }

    #[test]
    fn grevlex_order() {
        let r = RingSpec::new(["x", "y", "z"]).unwrap();
        let gb = groebner(&polys(&r, &["x*z + y^2"])).unwrap();
        assert_eq!(gb.generators()[0].to_string(), "x*z + y^2");
        let lead = GPoly::from_poly(&gb.generators()[0]);
        assert_eq!(lead.lead().0.exps(), &[0, 2, 0]);
    }

    #[test]
    fn membership() {
        let r = xy();
        assert!(ideal_contains_one(&polys(&r, &["x", "x + 1"])).unwrap());
        assert!(!ideal_contains_one(&polys(&r, &["x", "y"])).unwrap());
        assert!(
            ideal_contains_one(&polys(&r, &["(x-1)*x*y + 1", "(2*x-1)*y", "(x-1)*x"])).unwrap()
        );
        assert!(!ideal_contains_one(&polys(&r, &["0"])).unwrap());
        let gb = groebner(&polys(&r, &["x^2 + y^2 - 1", "x - y"])).unwrap();
        assert!(gb.certify());
        assert!(gb.contains(&parse_poly("2*y^2 - 1", &r).unwrap()).unwrap());
        assert!(!gb.contains(&parse_poly("y", &r).unwrap()).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let r = RingSpec::new(["x", "y", "z"]).unwrap();
        let gens = polys(&r, &["x^2 + y*z", "y^2 + x*z", "z^2 + x*y"]);
        let cfg = GroebnerConfig { pair_budget: 1 };
        assert!(matches!(
            groebner_with(&gens, &cfg),
            Err(Error::ResourceLimit(_))
        ));
        assert!(groebner(&gens).unwrap().certify());
    }

    #[test]
    fn smoothness_examples() {
        let r = RingSpec::new(["x"]).unwrap();
        assert!(hypersurface_smooth(&parse_poly("x", &r).unwrap())
            .unwrap()
            .is_smooth());
        let r = xy();
        match hypersurface_smooth(&parse_poly("x*y", &r).unwrap()).unwrap() {
            Smoothness::Singular(gb) => assert_eq!(gb.to_string(), "{x, y}"),
            Smoothness::Smooth => panic!("x*y is singular at the origin"),
        }
        assert!(
            hypersurface_smooth(&parse_poly("(x-1)*x*y + 1", &r).unwrap())
                .unwrap()
                .is_smooth()
        );
    }

    #[test]
    fn report_for_three_fold() {
        let t = SuspTower::new(xy(), &["(x-1)*x*y + 1"]).unwrap();
        let rep = suspension_report(&t, &GroebnerConfig::default()).unwrap();
        assert!(rep.f_prime() && rep.factorial());
        assert!(rep.hypersurface.is_smooth() && rep.suspension.is_smooth());
        assert!(rep.class_group.group.is_trivial());
        assert!(rep.bases.iter().all(GroebnerBasis::certify));

        let t = SuspTower::new(xy(), &["x*y"]).unwrap();
        let rep = suspension_report(&t, &GroebnerConfig::default()).unwrap();
        assert!(!rep.factorial() && !rep.hypersurface.is_smooth() && !rep.suspension.is_smooth());
        assert_eq!(rep.class_group.group.to_string(), "Z");
    }
}
