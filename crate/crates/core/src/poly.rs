//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector under the graded
//! lexicographic order, so the last entry is always the leading term. Zero
//! coefficients are never stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Ordered list of distinct variable names naming a polynomial ring over Q.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSpec {
    vars: Arc<[String]>,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSpec {
    pub fn new<I, S>(vars: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::InvalidRing("no variables".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not an identifier")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(RingSpec { vars: vars.into() })
    }

    /// Parses `QQ[x,y,z]`.
    pub fn parse(src: &str) -> Result<Self> {
        let s = src.trim();
        let inner = s
            .strip_prefix("QQ[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidRing(format!("expected QQ[...], got `{s}`")))?;
        RingSpec::new(inner.split(',').map(|v| v.trim().to_string()))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A new ring with `extra` variables appended.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self> {
        RingSpec::new(
            self.vars
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}]", self.vars.join(","))
    }
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n].into_boxed_slice())
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial::new(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which arithmetic operation [`poly_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial over Q in the variables of a [`RingSpec`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    ring: RingSpec,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(ring: &RingSpec) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingSpec) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &RingSpec, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &RingSpec, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.exps().len(), ring.nvars(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &RingSpec, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_index(ring, i))
    }

    pub fn var_index(ring: &RingSpec, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), Rational::one())
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I>(ring: &RingSpec, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.exps().len(), ring.nvars(), "exponent vector length");
            add_term(&mut map, m, c);
        }
        MultiPoly {
            ring: ring.clone(),
            terms: map,
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(
                self.terms
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.ring.nvars()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exps()[i]).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Indices of variables that actually occur.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exps()[i] > 0))
            .collect()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(MultiPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), -c.clone());
        }
        Ok(MultiPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                add_term(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        Ok(MultiPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / q`, or `None` when `q` does not divide `self`.
    pub fn exact_div(&self, q: &Self) -> Result<Option<Self>> {
        self.check_ring(q)?;
        let (lm_q, lc_q) = match q.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((lm, lc)) = rem.leading_term() {
            if !lm_q.divides(lm) {
                return Ok(None);
            }
            let m = lm_q.quotient_of(lm);
            let c = lc / &lc_q;
            rem = &rem - &q.mul_monomial(&m, &c);
            quot.insert(m, c);
        }
        Ok(Some(MultiPoly {
            ring: self.ring.clone(),
            terms: quot,
        }))
    }

    /// Exact division that must succeed; panics otherwise.
    pub(crate) fn div_exact(&self, q: &Self) -> Self {
        self.exact_div(q)
            .expect("ring checked")
            .expect("exact division")
    }

    pub fn divides(&self, p: &Self) -> Result<bool> {
        Ok(p.exact_div(self)?.is_some())
    }

    pub fn derivative(&self, var: &str) -> Result<Self> {
        let i = self
            .ring
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(self.derivative_index(i))
    }

    pub fn derivative_index(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exps()[i];
            if e == 0 {
                return None;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            Some((Monomial::new(exps), c * rat(e as i64)))
        });
        Self::from_terms(&self.ring, terms)
    }

    pub fn eval(&self, point: &HashMap<String, Rational>) -> Result<Rational> {
        let values = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                point
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::MissingAssignment(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval_slice(&values))
    }

    pub fn eval_slice(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in values.iter().zip(m.exps()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficients with respect to variable `i`, indexed by power.
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(i) as usize;
        let mut out: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut exps = m.exps().to_vec();
            let e = exps[i] as usize;
            exps[i] = 0;
            out[e].insert(Monomial::new(exps), c.clone());
        }
        if self.is_zero() {
            return Vec::new();
        }
        out.into_iter()
            .map(|terms| MultiPoly {
                ring: self.ring.clone(),
                terms,
            })
            .collect()
    }

    pub fn from_coeffs_in(ring: &RingSpec, i: usize, coeffs: &[MultiPoly]) -> Self {
        let n = ring.nvars();
        let terms = coeffs.iter().enumerate().flat_map(|(e, c)| {
            let shift = Monomial::var(n, i, e as u32);
            c.terms.iter().map(move |(m, a)| (m.mul(&shift), a.clone()))
        });
        Self::from_terms(ring, terms)
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Divides every term by `m`; requires `m` to divide every term.
    pub fn div_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (m.quotient_of(k), c.clone()))
                .collect(),
        }
    }

    /// Splits `self = scalar * prim` where `prim` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn normalize(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut scalar = Rational::new(num_gcd, den_lcm);
        if self.leading_coeff().is_negative() {
            scalar = -scalar;
        }
        let inv = scalar.recip();
        (scalar, self.scale(&inv))
    }

    pub fn normalized(&self) -> MultiPoly {
        self.normalize().1
    }

    /// True if `self = c * other` for a nonzero rational `c`.
    pub fn is_associate(&self, other: &MultiPoly) -> bool {
        !self.is_zero() && self.normalized() == other.normalized()
    }

    /// Greatest common divisor, normalized (primitive, positive leading coefficient).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(gcd_rec(self, other).normalized())
    }

    /// Re-expresses the polynomial in a ring containing all of its variables.
    pub fn embed(&self, target: &RingSpec) -> Result<Self> {
        let map = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                target
                    .index_of(v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.remap(target, &map)
    }

    /// Re-expresses the polynomial in `target`, dropping variables of `self`
    /// that do not occur; fails if a used variable is missing from `target`.
    pub fn restrict(&self, target: &RingSpec) -> Result<Self> {
        let used = self.vars_used();
        let mut map = vec![usize::MAX; self.ring.nvars()];
        for i in used {
            let name = &self.ring.vars()[i];
            map[i] = target
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        }
        self.remap(target, &map)
    }

    fn remap(&self, target: &RingSpec, map: &[usize]) -> Result<Self> {
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; n];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    exps[map[i]] += e;
                }
            }
            (Monomial::new(exps), c.clone())
        });
        Ok(Self::from_terms(target, terms))
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

/// Canonical order: ring, then terms compared from the leading term down.
impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring
            .cmp(&other.ring)
            .then_with(|| self.terms.iter().rev().cmp(other.terms.iter().rev()))
    }
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_term(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Add, subtract or multiply two polynomials over the same ring.
pub fn poly_arith(p: &MultiPoly, q: &MultiPoly, op: ArithOp) -> Result<MultiPoly> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
    }
}

// Operator impls assume matching rings and panic otherwise; the checked_*
// methods are the fallible surface.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

// --- gcd -----------------------------------------------------------------

/// Polynomial in one distinguished variable with multivariate coefficients.
type Dense = Vec<MultiPoly>;

fn dense_trim(a: &mut Dense) {
    while a.last().is_some_and(MultiPoly::is_zero) {
        a.pop();
    }
}

fn dense_deg(a: &Dense) -> usize {
    a.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn dense_prem(a: &Dense, b: &Dense) -> Dense {
    let db = dense_deg(b);
    let lb = &b[db];
    let mut r = a.clone();
    let mut e = dense_deg(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let dr = dense_deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&lr * bk);
        }
        dense_trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn content_in(p: &MultiPoly, i: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.ring());
    for c in p.coeffs_in(i) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c);
        if acc.is_constant() {
            return MultiPoly::one(p.ring());
        }
    }
    acc
}

pub(crate) fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.ring());
    }
    let var = a
        .vars_used()
        .into_iter()
        .chain(b.vars_used())
        .max()
        .expect("nonconstant");
    if a.degree_in(var) == 0 {
        return gcd_rec(a, &content_in(b, var));
    }
    if b.degree_in(var) == 0 {
        return gcd_rec(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let pa = a.div_exact(&ca);
    let pb = b.div_exact(&cb);
    let c = gcd_rec(&ca, &cb);
    let g = subresultant_gcd(&pa, &pb, var);
    (&c * &g).normalized()
}

/// Gcd of two polynomials primitive in `var`, via the subresultant PRS.
fn subresultant_gcd(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let ring = a.ring().clone();
    let mut a: Dense = a.coeffs_in(var);
    let mut b: Dense = b.coeffs_in(var);
    if dense_deg(&a) < dense_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MultiPoly::one(&ring);
    let mut h = MultiPoly::one(&ring);
    loop {
        let delta = dense_deg(&a) - dense_deg(&b);
        let r = dense_prem(&a, &b);
        if r.is_empty() {
            let last = MultiPoly::from_coeffs_in(&ring, var, &b);
            let c = content_in(&last, var);
            return last.div_exact(&c);
        }
        if dense_deg(&r) == 0 {
            return MultiPoly::one(&ring);
        }
        let denom = &g * &h.pow(delta as u32);
        a = b;
        b = r.iter().map(|c| c.div_exact(&denom)).collect();
        g = a[dense_deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32).div_exact(&h.pow(delta as u32 - 1))
        };
    }
}

// --- display -------------------------------------------------------------

pub(crate) fn fmt_monomial(ring: &RingSpec, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                ring.vars()[i].clone()
            } else {
                format!("{}^{}", ring.vars()[i], e)
            }
        })
        .collect();
    parts.join("*")
}

/// Joins signed term strings into `a + b - c` form.
pub(crate) fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        if k == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if m.is_one() {
                    c.to_string()
                } else {
                    let mono = fmt_monomial(&self.ring, m);
                    if c.is_one() {
                        mono
                    } else if (-c).is_one() {
                        format!("-{mono}")
                    } else {
                        format!("{c}*{mono}")
                    }
                }
            })
            .collect();
        write!(f, "{}", join_terms(&terms))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring)
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> RingSpec {
        RingSpec::new(vars.iter().copied()).unwrap()
    }

    fn x_y() -> (RingSpec, MultiPoly, MultiPoly) {
        let r = ring(&["x", "y"]);
        let x = MultiPoly::var(&r, "x").unwrap();
        let y = MultiPoly::var(&r, "y").unwrap();
        (r, x, y)
    }

    #[test]
    fn difference_of_squares() {
        let (r, x, _) = x_y();
        let one = MultiPoly::one(&r);
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p, &x.pow(2) - &one);
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn adding_zero_is_identity() {
        let (r, x, y) = x_y();
        let p = &(&x * &y) + &x;
        assert_eq!(
            poly_arith(&p, &MultiPoly::zero(&r), ArithOp::Add).unwrap(),
            p
        );
    }

    #[test]
    fn three_fold_function() {
        let (r, x, y) = x_y();
        let one = MultiPoly::one(&r);
        let f = &(&(&(&x - &one) * &x) * &y) + &one;
        assert_eq!(f.to_string(), "x^2*y - x*y + 1");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let (_, x, _) = x_y();
        let other = MultiPoly::var(&ring(&["x"]), "x").unwrap();
        assert!(matches!(
            poly_arith(&x, &other, ArithOp::Mul),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn exact_division_examples() {
        let (r, x, y) = x_y();
        let one = MultiPoly::one(&r);
        let p = &x.pow(2) - &y.pow(2);
        assert_eq!(p.exact_div(&(&x - &y)).unwrap(), Some(&x + &y));
        assert_eq!((&x + &one).exact_div(&x).unwrap(), None);
        let p = &(&x.pow(2) * &y) - &(&x * &y);
        let q = &(&x - &one) * &x;
        assert_eq!(p.exact_div(&q).unwrap(), Some(y.clone()));
        assert!(matches!(
            x.exact_div(&MultiPoly::zero(&r)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn gcd_examples() {
        let (r, x, y) = x_y();
        let one = MultiPoly::one(&r);
        let p = &x.pow(2) - &y.pow(2);
        assert_eq!(p.gcd(&(&x - &y)).unwrap(), &x - &y);
        let q = (&x * &y).scale(&rat(-4));
        assert_eq!(q.gcd(&MultiPoly::zero(&r)).unwrap(), &x * &y);
        let f = &(&(&(&x - &one) * &x) * &y) + &one;
        let fx = &(&x.scale(&rat(2)) - &one) * &y;
        assert!(f.gcd(&fx).unwrap().is_one());
        assert!(MultiPoly::zero(&r).gcd(&MultiPoly::zero(&r)).is_err());
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        let (_, x, y) = x_y();
        let a = (&x + &y).scale(&ratio(1, 3));
        let b = (&(&x + &y) * &(&x - &y)).scale(&ratio(-5, 2));
        assert_eq!(a.gcd(&b).unwrap(), &x + &y);
    }

    #[test]
    fn derivatives() {
        let (r, x, y) = x_y();
        let one = MultiPoly::one(&r);
        let f = &(&(&(&x - &one) * &x) * &y) + &one;
        assert_eq!(f.derivative("x").unwrap(), &(&x.scale(&rat(2)) - &one) * &y);
        assert_eq!(f.derivative("y").unwrap(), &(&x - &one) * &x);
        assert!(MultiPoly::constant(&r, rat(7))
            .derivative("x")
            .unwrap()
            .is_zero());
        assert!(matches!(f.derivative("z"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn evaluation() {
        let (r, x, y) = x_y();
        let one = MultiPoly::one(&r);
        let f = &(&(&(&x - &one) * &x) * &y) + &one;
        let pt =
            |a: Rational, b: Rational| HashMap::from([("x".to_string(), a), ("y".to_string(), b)]);
        assert_eq!(f.eval(&pt(rat(0), rat(0))).unwrap(), rat(1));
        assert_eq!(f.eval(&pt(rat(2), ratio(-1, 2))).unwrap(), rat(0));
        assert_eq!((&x * &y).eval(&pt(rat(0), rat(5))).unwrap(), rat(0));
        let partial = HashMap::from([("x".to_string(), rat(1))]);
        assert!(matches!(f.eval(&partial), Err(Error::MissingAssignment(_))));
    }

    #[test]
    fn ring_spec_parsing() {
        let r = RingSpec::parse("QQ[x, y]").unwrap();
        assert_eq!(r.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(r.to_string(), "QQ[x,y]");
        assert!(RingSpec::parse("QQ[x,x]").is_err());
        assert!(RingSpec::parse("ZZ[x]").is_err());
        assert!(RingSpec::parse("QQ[]").is_err());
    }

    #[test]
    fn normalization() {
        let (_, x, y) = x_y();
        let p = &x.scale(&ratio(-2, 3)) + &y.scale(&ratio(4, 9));
        let (s, q) = p.normalize();
        assert_eq!(q.scale(&s), p);
        assert_eq!(q.to_string(), "3*x - 2*y");
    }
}
