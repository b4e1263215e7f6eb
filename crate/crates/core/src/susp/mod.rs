//! Suspension rings `S = R[u,v]/(uv - f)` and towers of them.
//!
//! An element of level `k` is stored in graded normal form: a finite map from
//! degree `i` to a coefficient of level `k - 1`, where a positive degree
//! stands for `c * u^i`, a negative degree for `c * v^(-i)` and degree zero
//! for the base part. No monomial ever contains both `u` and `v` of the same
//! level; products contract `u * v` to `f` as they are formed.

mod primality;
mod reconstruct;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr::{self, ExprAlgebra};
use crate::poly::{join_terms, MultiPoly, Rational, RingSpec};

pub use primality::{
    certify_prime, factor_susp, is_irreducible_base_elem, is_prime_uvf, PrimalityReport,
    SuspFactorization, Witness,
};
pub use reconstruct::reconstruct_from_fractions;

/// Graded normal form of a tower element, detached from its tower.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) enum Value {
    Base(MultiPoly),
    Graded(BTreeMap<i64, Value>),
}

impl Value {
    fn is_zero(&self) -> bool {
        match self {
            Value::Base(p) => p.is_zero(),
            Value::Graded(m) => m.is_empty(),
        }
    }

    fn graded(&self) -> &BTreeMap<i64, Value> {
        match self {
            Value::Graded(m) => m,
            Value::Base(_) => panic!("level-0 value has no grading"),
        }
    }

    /// Rational coefficient of the leading term, following the top degree
    /// down to the base ring.
    fn leading_rational(&self) -> Rational {
        match self {
            Value::Base(p) => p.leading_coeff(),
            Value::Graded(m) => m
                .values()
                .next_back()
                .map(Value::leading_rational)
                .unwrap_or_else(Rational::zero),
        }
    }

    fn for_each_coeff(&self, f: &mut impl FnMut(&Rational)) {
        match self {
            Value::Base(p) => p.terms().for_each(|(_, c)| f(c)),
            Value::Graded(m) => m.values().for_each(|v| v.for_each_coeff(f)),
        }
    }

    fn scale(&self, c: &Rational) -> Value {
        match self {
            Value::Base(p) => Value::Base(p.scale(c)),
            Value::Graded(m) => {
                if c.is_zero() {
                    return Value::Graded(BTreeMap::new());
                }
                Value::Graded(m.iter().map(|(i, v)| (*i, v.scale(c))).collect())
            }
        }
    }

    fn as_constant(&self) -> Option<Rational> {
        match self {
            Value::Base(p) => p.constant_value(),
            Value::Graded(m) => match m.len() {
                0 => Some(Rational::zero()),
                1 => m.get(&0).and_then(Value::as_constant),
                _ => None,
            },
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Level {
    f: Value,
    u: String,
    v: String,
}

#[derive(PartialEq, Eq, Debug)]
struct TowerData {
    base: RingSpec,
    levels: Vec<Level>,
}

/// Iterated suspension `R = S_0 ⊂ S_1 ⊂ ... ⊂ S_h` over a polynomial ring,
/// where `S_k = S_{k-1}[u_k, v_k]/(u_k v_k - f_k)`.
#[derive(Clone)]
pub struct SuspTower(Arc<TowerData>);

impl PartialEq for SuspTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for SuspTower {}

impl fmt::Debug for SuspTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SuspTower {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.0.base)?;
        for k in 1..=self.height() {
            let lvl = &self.0.levels[k - 1];
            write!(
                out,
                "[{},{}]/({}*{} - ({}))",
                lvl.u,
                lvl.v,
                lvl.u,
                lvl.v,
                self.f(k)
            )?;
        }
        Ok(())
    }
}

impl SuspTower {
    /// The height-zero tower consisting of the base ring alone.
    pub fn base(ring: RingSpec) -> Self {
        SuspTower(Arc::new(TowerData {
            base: ring,
            levels: Vec::new(),
        }))
    }

    /// Builds a tower from expressions for `f_1, f_2, ...`, each parsed in
    /// the ring below it. One level uses the names `u`, `v`; several levels
    /// use `u1`, `v1`, `u2`, `v2`, ...
    pub fn new<S: AsRef<str>>(base: RingSpec, fs: &[S]) -> Result<Self> {
        let names: Vec<(String, String)> = if fs.len() == 1 {
            vec![("u".into(), "v".into())]
        } else {
            (1..=fs.len())
                .map(|k| (format!("u{k}"), format!("v{k}")))
                .collect()
        };
        let mut tower = SuspTower::base(base);
        for (src, (u, v)) in fs.iter().zip(names) {
            let f = tower.parse(src.as_ref(), tower.height())?;
            tower = tower.extend(&f, &u, &v)?;
        }
        Ok(tower)
    }

    /// Adds a level `uv = f` on top, where `f` lives at the current top level.
    pub fn extend(&self, f: &SuspElem, u: &str, v: &str) -> Result<Self> {
        if f.tower != *self || f.level != self.height() {
            return Err(Error::TowerMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroF);
        }
        if f.is_unit() {
            return Err(Error::UnitF(f.to_string()));
        }
        let taken: Vec<&str> = self
            .0
            .base
            .vars()
            .iter()
            .map(String::as_str)
            .chain(
                self.0
                    .levels
                    .iter()
                    .flat_map(|l| [l.u.as_str(), l.v.as_str()]),
            )
            .collect();
        for name in [u, v] {
            RingSpec::new([name])?;
            if taken.contains(&name) || u == v {
                return Err(Error::InvalidRing(format!(
                    "variable name `{name}` is already in use"
                )));
            }
        }
        let mut levels = self.0.levels.clone();
        levels.push(Level {
            f: f.value.clone(),
            u: u.to_string(),
            v: v.to_string(),
        });
        Ok(SuspTower(Arc::new(TowerData {
            base: self.0.base.clone(),
            levels,
        })))
    }

    pub fn height(&self) -> usize {
        self.0.levels.len()
    }

    pub fn base_ring(&self) -> &RingSpec {
        &self.0.base
    }

    pub fn u_name(&self, k: usize) -> &str {
        &self.0.levels[k - 1].u
    }

    pub fn v_name(&self, k: usize) -> &str {
        &self.0.levels[k - 1].v
    }

    /// `f_k` as an element of level `k - 1`.
    pub fn f(&self, k: usize) -> SuspElem {
        self.wrap(k - 1, self.0.levels[k - 1].f.clone())
    }

    /// `f_1` as a base polynomial.
    pub fn f_base(&self) -> MultiPoly {
        match &self.0.levels[0].f {
            Value::Base(p) => p.clone(),
            Value::Graded(_) => unreachable!("f_1 lives in the base ring"),
        }
    }

    /// Every valid tower is a domain: the base is, and each `f_k` is nonzero.
    pub fn validate_domain(&self) -> bool {
        self.0.levels.iter().all(|l| !l.f.is_zero())
    }

    fn wrap(&self, level: usize, value: Value) -> SuspElem {
        SuspElem {
            tower: self.clone(),
            level,
            value,
        }
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level > self.height() {
            return Err(Error::Precondition(format!(
                "level {level} exceeds tower height {}",
                self.height()
            )));
        }
        Ok(())
    }

    pub fn zero(&self, level: usize) -> SuspElem {
        self.wrap(level, self.0.zero(level))
    }

    pub fn one(&self, level: usize) -> SuspElem {
        self.constant(level, Rational::one())
    }

    pub fn constant(&self, level: usize, c: Rational) -> SuspElem {
        self.wrap(
            level,
            self.0
                .inject(0, level, Value::Base(MultiPoly::constant(&self.0.base, c))),
        )
    }

    /// A base-ring polynomial viewed at `level`.
    pub fn from_base(&self, p: &MultiPoly, level: usize) -> Result<SuspElem> {
        self.check_level(level)?;
        if p.ring() != &self.0.base {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                p.ring(),
                self.0.base
            )));
        }
        Ok(self.wrap(level, self.0.inject(0, level, Value::Base(p.clone()))))
    }

    /// `u_k` viewed at `level >= k`.
    pub fn u(&self, k: usize, level: usize) -> SuspElem {
        self.generator(k, level, 1)
    }

    /// `v_k` viewed at `level >= k`.
    pub fn v(&self, k: usize, level: usize) -> SuspElem {
        self.generator(k, level, -1)
    }

    fn generator(&self, k: usize, level: usize, deg: i64) -> SuspElem {
        assert!(
            k >= 1 && k <= level && level <= self.height(),
            "generator level"
        );
        let one = self
            .0
            .inject(0, k - 1, Value::Base(MultiPoly::one(&self.0.base)));
        let g = Value::Graded(BTreeMap::from([(deg, one)]));
        self.wrap(level, self.0.inject(k, level, g))
    }

    /// Parses an expression in the ring of the given level.
    pub fn parse(&self, src: &str, level: usize) -> Result<SuspElem> {
        self.check_level(level)?;
        expr::parse_with(src, &TowerAlgebra { tower: self, level })
    }

    /// Re-tags an element of a prefix of this tower.
    pub fn lift(&self, e: &SuspElem) -> Result<SuspElem> {
        let h = e.tower.height();
        if e.tower.0.base != self.0.base
            || h > self.height()
            || e.tower.0.levels[..] != self.0.levels[..h]
        {
            return Err(Error::TowerMismatch);
        }
        Ok(self.wrap(e.level, e.value.clone()))
    }

    /// Polynomial ring `R[u_1]` used to read level-1 elements shifted into
    /// non-negative degrees.
    pub fn ru_ring(&self) -> Result<RingSpec> {
        self.0.base.extend(&[self.u_name(1)])
    }
}

// --- arithmetic on detached values ---------------------------------------

impl TowerData {
    fn zero(&self, level: usize) -> Value {
        if level == 0 {
            Value::Base(MultiPoly::zero(&self.base))
        } else {
            Value::Graded(BTreeMap::new())
        }
    }

    fn inject(&self, from: usize, to: usize, v: Value) -> Value {
        let mut v = v;
        for _ in from..to {
            v = if v.is_zero() {
                Value::Graded(BTreeMap::new())
            } else {
                Value::Graded(BTreeMap::from([(0, v)]))
            };
        }
        v
    }

    fn add(&self, level: usize, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Base(p), Value::Base(q)) => Value::Base(p + q),
            (Value::Graded(x), Value::Graded(y)) => {
                let mut out = x.clone();
                for (i, c) in y {
                    self.add_component(level, &mut out, *i, c);
                }
                Value::Graded(out)
            }
            _ => unreachable!("level mismatch"),
        }
    }

    fn add_component(&self, level: usize, map: &mut BTreeMap<i64, Value>, i: i64, c: &Value) {
        match map.get(&i) {
            Some(old) => {
                let s = self.add(level - 1, old, c);
                if s.is_zero() {
                    map.remove(&i);
                } else {
                    map.insert(i, s);
                }
            }
            None => {
                if !c.is_zero() {
                    map.insert(i, c.clone());
                }
            }
        }
    }

    fn neg(&self, a: &Value) -> Value {
        a.scale(&-Rational::one())
    }

    fn sub(&self, level: usize, a: &Value, b: &Value) -> Value {
        self.add(level, a, &self.neg(b))
    }

    fn mul(&self, level: usize, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Base(p), Value::Base(q)) => Value::Base(p * q),
            (Value::Graded(x), Value::Graded(y)) => {
                let mut powers = PowerCache::new(self, level);
                let mut out = BTreeMap::new();
                for (i, c) in x {
                    for (j, d) in y {
                        let mut prod = self.mul(level - 1, c, d);
                        if i * j < 0 {
                            let m = i.abs().min(j.abs()) as usize;
                            prod = self.mul(level - 1, &prod, powers.get(m));
                        }
                        self.add_component(level, &mut out, i + j, &prod);
                    }
                }
                Value::Graded(out)
            }
            _ => unreachable!("level mismatch"),
        }
    }

    fn f_value(&self, level: usize) -> &Value {
        &self.levels[level - 1].f
    }

    /// Exact quotient `a / b` in the level ring, `None` if `b` does not
    /// divide `a`. Graded long division: the top component of the quotient
    /// is forced by the top components of `a` and `b`.
    fn exact_div(&self, level: usize, a: &Value, b: &Value) -> Option<Value> {
        match (a, b) {
            (Value::Base(p), Value::Base(q)) => p.exact_div(q).expect("same ring").map(Value::Base),
            (Value::Graded(x), Value::Graded(y)) => {
                let (&top_b, lead_b) = y.iter().next_back().expect("nonzero divisor");
                let &bot_b = y.keys().next().expect("nonzero divisor");
                let Some(&bot_a) = x.keys().next() else {
                    return Some(Value::Graded(BTreeMap::new()));
                };
                let lowest = bot_a - bot_b;
                let mut powers = PowerCache::new(self, level);
                let mut rem = a.clone();
                let mut quot = BTreeMap::new();
                while let Some((&j, lead_r)) = rem.graded().iter().next_back() {
                    let qdeg = j - top_b;
                    if qdeg < lowest {
                        return None;
                    }
                    let divisor = if top_b * qdeg < 0 {
                        let m = top_b.abs().min(qdeg.abs()) as usize;
                        self.mul(level - 1, lead_b, powers.get(m))
                    } else {
                        lead_b.clone()
                    };
                    let e = self.exact_div(level - 1, lead_r, &divisor)?;
                    let term = Value::Graded(BTreeMap::from([(qdeg, e.clone())]));
                    rem = self.sub(level, &rem, &self.mul(level, b, &term));
                    quot.insert(qdeg, e);
                }
                Some(Value::Graded(quot))
            }
            _ => unreachable!("level mismatch"),
        }
    }
}

/// Powers of `f_level`, computed on demand within one operation.
struct PowerCache<'a> {
    data: &'a TowerData,
    level: usize,
    powers: Vec<Value>,
}

impl<'a> PowerCache<'a> {
    fn new(data: &'a TowerData, level: usize) -> Self {
        let one = data.inject(0, level - 1, Value::Base(MultiPoly::one(&data.base)));
        PowerCache {
            data,
            level,
            powers: vec![one],
        }
    }

    fn get(&mut self, m: usize) -> &Value {
        while self.powers.len() <= m {
            let next = self.data.mul(
                self.level - 1,
                self.powers.last().expect("nonempty"),
                self.data.f_value(self.level),
            );
            self.powers.push(next);
        }
        &self.powers[m]
    }
}

// --- public element type -------------------------------------------------

/// An element of the level-`level` ring of a [`SuspTower`].
#[derive(Clone, PartialEq, Eq)]
pub struct SuspElem {
    tower: SuspTower,
    level: usize,
    value: Value,
}

/// `u` (or `v`) does not divide the element: the coefficient of `v^j`
/// (or `u^j`) at the first offending `j` is not divisible by `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotDivisible {
    pub j: u64,
    pub coefficient: SuspElem,
}

impl SuspElem {
    pub fn tower(&self) -> &SuspTower {
        &self.tower
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub(crate) fn value(&self) -> &Value {
        &self.value
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.tower != other.tower || self.level != other.level {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    fn with(&self, value: Value) -> SuspElem {
        SuspElem {
            tower: self.tower.clone(),
            level: self.level,
            value,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.tower.0.add(self.level, &self.value, &other.value)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.tower.0.sub(self.level, &self.value, &other.value)))
    }

    /// Normal form of the product, contracting `u v -> f` across degrees of
    /// opposite sign.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.tower.0.mul(self.level, &self.value, &other.value)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.with(self.value.scale(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = self.tower.one(self.level);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Units are exactly the degree-zero elements with a unit coefficient,
    /// recursively down to nonzero rational constants.
    pub fn is_unit(&self) -> bool {
        value_is_unit(&self.value)
    }

    /// The value of a constant element.
    pub fn as_constant(&self) -> Option<Rational> {
        self.value.as_constant()
    }

    /// The base polynomial, if the element lies in `R`.
    pub fn as_base(&self) -> Option<MultiPoly> {
        let mut v = &self.value;
        loop {
            match v {
                Value::Base(p) => return Some(p.clone()),
                Value::Graded(m) => {
                    if m.is_empty() {
                        return Some(MultiPoly::zero(&self.tower.0.base));
                    }
                    if m.len() != 1 {
                        return None;
                    }
                    v = m.get(&0)?;
                }
            }
        }
    }

    /// Homogeneous decomposition: degree -> component at this level.
    pub fn components(&self) -> BTreeMap<i64, SuspElem> {
        if self.level == 0 {
            return if self.is_zero() {
                BTreeMap::new()
            } else {
                BTreeMap::from([(0, self.clone())])
            };
        }
        self.value
            .graded()
            .iter()
            .map(|(i, c)| {
                (
                    *i,
                    self.with(Value::Graded(BTreeMap::from([(*i, c.clone())]))),
                )
            })
            .collect()
    }

    /// The coefficient `c_i` (an element of level `level - 1`) of degree `i`.
    pub fn coefficient(&self, i: i64) -> SuspElem {
        assert!(self.level >= 1, "level-0 elements have no grading");
        let value = self
            .value
            .graded()
            .get(&i)
            .cloned()
            .unwrap_or_else(|| self.tower.0.zero(self.level - 1));
        SuspElem {
            tower: self.tower.clone(),
            level: self.level - 1,
            value,
        }
    }

    /// Degrees carrying a nonzero component.
    pub fn degrees(&self) -> Vec<i64> {
        if self.level == 0 {
            return if self.is_zero() { vec![] } else { vec![0] };
        }
        self.value.graded().keys().copied().collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Largest power of `v` occurring, i.e. the least `l >= 0` with
    /// `u^l * self` free of `v`.
    pub fn v_depth(&self) -> u32 {
        self.degrees().first().map_or(0, |&d| (-d).max(0) as u32)
    }

    /// Largest power of `u` occurring.
    pub fn u_height(&self) -> u32 {
        self.degrees().last().map_or(0, |&d| d.max(0) as u32)
    }

    /// Embeds into a higher level of the same tower.
    pub fn inject(&self, level: usize) -> Result<SuspElem> {
        if level < self.level || level > self.tower.height() {
            return Err(Error::Precondition(format!(
                "cannot inject level {} into level {level}",
                self.level
            )));
        }
        Ok(SuspElem {
            tower: self.tower.clone(),
            level,
            value: self.tower.0.inject(self.level, level, self.value.clone()),
        })
    }

    /// Exact quotient in the ring of this level.
    pub fn exact_div(&self, other: &Self) -> Result<Option<Self>> {
        self.same(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self
            .tower
            .0
            .exact_div(self.level, &self.value, &other.value)
            .map(|v| self.with(v)))
    }

    fn f_divides(&self, c: &Value) -> Option<Value> {
        let data = &self.tower.0;
        data.exact_div(self.level - 1, c, data.f_value(self.level))
    }

    /// Divides by `u`: writing `self = sum_{i>=1} a_i u^i + sum_{j>=0} b_j v^j`,
    /// `u` divides iff `f | b_j` for every `j`, and then
    /// `self / u = sum a_i u^(i-1) + sum (b_j / f) v^(j+1)`.
    pub fn divides_u(&self) -> Result<SuspElem, NotDivisible> {
        assert!(self.level >= 1, "divides_u needs level >= 1");
        let m = self.value.graded();
        let mut out = BTreeMap::new();
        for (&deg, c) in m.iter().rev() {
            if deg > 0 {
                out.insert(deg - 1, c.clone());
            } else {
                match self.f_divides(c) {
                    Some(q) => {
                        out.insert(deg - 1, q);
                    }
                    None => {
                        return Err(NotDivisible {
                            j: (-deg) as u64,
                            coefficient: self.coefficient(deg),
                        })
                    }
                }
            }
        }
        Ok(self.with(Value::Graded(out)))
    }

    /// Mirror of [`SuspElem::divides_u`] with the roles of `u` and `v` swapped.
    pub fn divides_v(&self) -> Result<SuspElem, NotDivisible> {
        assert!(self.level >= 1, "divides_v needs level >= 1");
        let m = self.value.graded();
        let mut out = BTreeMap::new();
        for (&deg, c) in m.iter() {
            if deg < 0 {
                out.insert(deg + 1, c.clone());
            } else {
                match self.f_divides(c) {
                    Some(q) => {
                        out.insert(deg + 1, q);
                    }
                    None => {
                        return Err(NotDivisible {
                            j: deg as u64,
                            coefficient: self.coefficient(deg),
                        })
                    }
                }
            }
        }
        Ok(self.with(Value::Graded(out)))
    }

    /// Rational `c` and normalized `n` with `self = c * n`: the coefficients of
    /// `n` are coprime integers and its leading coefficient (top degree, then
    /// leading base term) is positive.
    pub fn normalize(&self) -> (Rational, SuspElem) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        self.value.for_each_coeff(&mut |c| {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        });
        let mut scalar = Rational::new(num, den);
        if self.value.leading_rational().is_negative() {
            scalar = -scalar;
        }
        let n = self.scale(&scalar.recip());
        (scalar, n)
    }

    pub fn normalized(&self) -> SuspElem {
        self.normalize().1
    }

    pub fn is_associate(&self, other: &SuspElem) -> bool {
        self.tower == other.tower
            && self.level == other.level
            && !self.is_zero()
            && self.normalized() == other.normalized()
    }

    pub(crate) fn leading_rational(&self) -> Rational {
        self.value.leading_rational()
    }

    /// For a level-1 element with only non-negative degrees, the polynomial
    /// `sum c_i u^i` in `R[u]`.
    pub fn to_ru(&self) -> Result<MultiPoly> {
        if self.level != 1 {
            return Err(Error::Unsupported(
                "R[u] view needs a level-1 element".into(),
            ));
        }
        if self.degrees().first().is_some_and(|&d| d < 0) {
            return Err(Error::Precondition(format!("`{self}` involves v")));
        }
        let ring = self.tower.ru_ring()?;
        let uvar = ring.nvars() - 1;
        let coeffs: Vec<MultiPoly> = (0..=self.u_height() as i64)
            .map(|i| match self.value.graded().get(&i) {
                Some(Value::Base(p)) => p.embed(&ring).expect("base embeds"),
                Some(Value::Graded(_)) => unreachable!("level-1 coefficients are base polynomials"),
                None => MultiPoly::zero(&ring),
            })
            .collect();
        Ok(MultiPoly::from_coeffs_in(&ring, uvar, &coeffs))
    }

    /// `u^l * self` in `R[u]` with `l = v_depth`.
    pub fn shifted_ru(&self) -> Result<(u32, MultiPoly)> {
        let l = self.v_depth();
        let shifted = &self.tower.u(1, 1).pow(l) * self;
        Ok((l, shifted.to_ru()?))
    }

    /// Reads a polynomial of `R[u]` as a level-1 element.
    pub fn from_ru(tower: &SuspTower, p: &MultiPoly) -> Result<SuspElem> {
        let ring = tower.ru_ring()?;
        if p.ring() != &ring {
            return Err(Error::RingMismatch(format!("{} vs {}", p.ring(), ring)));
        }
        let uvar = ring.nvars() - 1;
        let mut out = BTreeMap::new();
        for (i, c) in p.coeffs_in(uvar).into_iter().enumerate() {
            if !c.is_zero() {
                out.insert(i as i64, Value::Base(c.restrict(tower.base_ring())?));
            }
        }
        Ok(tower.wrap(1, Value::Graded(out)))
    }
}

impl fmt::Display for SuspElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(&self.tower, self.level, &self.value))
    }
}

impl fmt::Debug for SuspElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (level {})", self, self.level)
    }
}

impl Serialize for SuspElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn render(tower: &SuspTower, level: usize, v: &Value) -> String {
    match v {
        Value::Base(p) => p.to_string(),
        Value::Graded(m) => {
            if m.is_empty() {
                return "0".into();
            }
            let mut terms = Vec::new();
            for (&deg, c) in m.iter().rev() {
                let body = render(tower, level - 1, c);
                if deg == 0 {
                    terms.push(body);
                    continue;
                }
                let (name, e) = if deg > 0 {
                    (tower.u_name(level), deg)
                } else {
                    (tower.v_name(level), -deg)
                };
                let gen = if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                };
                let coeff_const = c.as_constant();
                let term = match coeff_const {
                    Some(k) if k.is_one() => gen,
                    Some(k) if (-k.clone()).is_one() => format!("-{gen}"),
                    _ if !body.contains(' ') => format!("{body}*{gen}"),
                    _ => format!("({body})*{gen}"),
                };
                terms.push(term);
            }
            join_terms(&terms)
        }
    }
}

impl Add for &SuspElem {
    type Output = SuspElem;
    fn add(self, rhs: &SuspElem) -> SuspElem {
        self.checked_add(rhs).expect("tower mismatch")
    }
}

impl Sub for &SuspElem {
    type Output = SuspElem;
    fn sub(self, rhs: &SuspElem) -> SuspElem {
        self.checked_sub(rhs).expect("tower mismatch")
    }
}

impl Mul for &SuspElem {
    type Output = SuspElem;
    fn mul(self, rhs: &SuspElem) -> SuspElem {
        self.checked_mul(rhs).expect("tower mismatch")
    }
}

impl Neg for &SuspElem {
    type Output = SuspElem;
    fn neg(self) -> SuspElem {
        self.with(self.tower.0.neg(&self.value))
    }
}

/// Expression evaluation context for one level of a tower.
pub struct TowerAlgebra<'a> {
    pub tower: &'a SuspTower,
    pub level: usize,
}

impl ExprAlgebra for TowerAlgebra<'_> {
    type Value = SuspElem;
    fn constant(&self, c: Rational) -> SuspElem {
        self.tower.constant(self.level, c)
    }
    fn variable(&self, name: &str) -> Option<SuspElem> {
        if let Ok(p) = MultiPoly::var(self.tower.base_ring(), name) {
            return self.tower.from_base(&p, self.level).ok();
        }
        (1..=self.level).find_map(|k| {
            if self.tower.u_name(k) == name {
                Some(self.tower.u(k, self.level))
            } else if self.tower.v_name(k) == name {
                Some(self.tower.v(k, self.level))
            } else {
                None
            }
        })
    }
    fn add(&self, a: &SuspElem, b: &SuspElem) -> SuspElem {
        a + b
    }
    fn sub(&self, a: &SuspElem, b: &SuspElem) -> SuspElem {
        a - b
    }
    fn mul(&self, a: &SuspElem, b: &SuspElem) -> SuspElem {
        a * b
    }
    fn neg(&self, a: &SuspElem) -> SuspElem {
        -a
    }
    fn as_constant(&self, a: &SuspElem) -> Option<Rational> {
        a.as_constant()
    }
}

/// Units of a graded level are exactly the units of the base placed in degree 0.
fn value_is_unit(a: &Value) -> bool {
    match a {
        Value::Base(p) => p.constant_value().is_some_and(|c| !c.is_zero()),
        Value::Graded(m) => m.len() == 1 && m.get(&0).is_some_and(value_is_unit),
    }
}
