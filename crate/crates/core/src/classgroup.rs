//! Divisor class groups of suspensions over polynomial rings.
//!
//! With `f = p_1^{a_1} ... p_s^{a_s}`, the class group of `uv = f` is the
//! cokernel of the column `ω = (a_1, ..., a_s)`, read off from its Smith
//! normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factor::{factor_multivariate, newton_indecomposable, AbsoluteVerdict};
use crate::poly::MultiPoly;
use crate::susp::SuspTower;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Precondition("rows have different lengths".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().map(Into::into).collect(),
        })
    }

    /// A single column.
    pub fn column<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        IntMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries.iter().cloned().map(Into::into).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Precondition(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    *out.at(i, j) += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Precondition(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    *a.at(i, j) = v;
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * prev)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// `row_i += q * row_j`.
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(j, c) * q;
            *self.at(i, c) += v;
        }
    }

    /// `col_i += q * col_j`.
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, j) * q;
            *self.at(r, i) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.get(i, c);
            *self.at(i, c) = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Serializes as a JSON number when it fits in 64 bits, else as a string.
struct BigNum<'a>(&'a BigInt);

impl Serialize for BigNum<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(self.0) {
            Ok(n) => s.serialize_i64(n),
            Err(_) => s.collect_str(self.0),
        }
    }
}

fn big_nums(xs: &[BigInt]) -> Vec<BigNum<'_>> {
    xs.iter().map(BigNum).collect()
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<BigNum<'_>>> = self
            .data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(big_nums)
            .collect();
        rows.serialize(s)
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal with
/// non-negative entries `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form by row and column reduction, pivoting on the entry of
/// least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let pivot = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| !d.get(i, j).is_zero())
                .min_by_key(|&(i, j)| d.get(i, j).abs());
            let Some((pi, pj)) = pivot else { break };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = d.get(i, t).div_floor(&p);
                if !q.is_zero() {
                    d.add_row(i, t, &-&q);
                    u.add_row(i, t, &-&q);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..c {
                let q = d.get(t, j).div_floor(&p);
                if !q.is_zero() {
                    d.add_col(j, t, &-&q);
                    v.add_col(j, t, &-&q);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&p));
            match offender {
                Some((i, _)) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_i | d_{i+1}` and `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl Serialize for AbelianGroupPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AbelianGroupPresentation", 3)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("invariant_factors", &big_nums(&self.invariant_factors))?;
        st.serialize_field("group", &self.to_string())?;
        st.end()
    }
}

impl AbelianGroupPresentation {
    /// The cokernel of `M : Z^cols -> Z^rows`.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        let diag = snf.diagonal();
        let rank = snf.rank();
        AbelianGroupPresentation {
            free_rank: m.rows - rank,
            invariant_factors: diag.into_iter().filter(|x| *x > BigInt::one()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Number of elements, `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Formal integer combination of prime divisors, each named by the
/// polynomial cutting it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalDivisor {
    pub symbol: String,
    pub terms: Vec<(MultiPoly, i64)>,
}

impl fmt::Display for FormalDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, (_, c))| format!("{c}*{}{}", self.symbol, i + 1))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for FormalDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            divisor: String,
            prime: &'a MultiPoly,
            coefficient: i64,
        }
        let terms: Vec<Term<'_>> = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, (p, c))| Term {
                divisor: format!("{}{}", self.symbol, i + 1),
                prime: p,
                coefficient: *c,
            })
            .collect();
        terms.serialize(s)
    }
}

/// Class group of a one-level suspension together with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    pub group: AbelianGroupPresentation,
    pub primes: Vec<MultiPoly>,
    pub omega: Vec<u32>,
    /// `div_X(u) = Σ a_i D_i`, where `D_i` lies over `{p_i = 0}`.
    pub div_u: FormalDivisor,
    /// `div_Y(f) = Σ a_i E_i`.
    pub div_f: FormalDivisor,
    pub torsion_free: bool,
    pub absolute_irreducibility: Vec<AbsoluteVerdict>,
}

impl Serialize for ClassGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ClassGroup", 8)?;
        st.serialize_field("free_rank", &self.group.free_rank)?;
        st.serialize_field(
            "invariant_factors",
            &big_nums(&self.group.invariant_factors),
        )?;
        st.serialize_field("omega", &self.omega)?;
        st.serialize_field("torsion_free", &self.torsion_free)?;
        st.serialize_field("absolute_irreducibility", &self.absolute_irreducibility)?;
        st.serialize_field("group", &self.group.to_string())?;
        st.serialize_field("primes", &self.primes)?;
        st.serialize_field("div_u", &self.div_u)?;
        st.end()
    }
}

/// `Cl(X) = Z^s / <ω>` for `X = {uv = f}` over a polynomial ring.
pub fn class_group(t: &SuspTower) -> Result<ClassGroup> {
    if t.height() == 0 {
        return Err(Error::Precondition("tower has no suspension level".into()));
    }
    let fac = factor_multivariate(&t.f_base())?;
    let primes: Vec<MultiPoly> = fac.factors.iter().map(|(p, _)| p.clone()).collect();
    let omega: Vec<u32> = fac.multiplicities();
    let group = AbelianGroupPresentation::cokernel(&IntMatrix::column(&omega));
    let g = omega.iter().fold(0u32, |acc, a| acc.gcd(a));
    let terms: Vec<(MultiPoly, i64)> = primes
        .iter()
        .zip(&omega)
        .map(|(p, a)| (p.clone(), i64::from(*a)))
        .collect();
    Ok(ClassGroup {
        group,
        absolute_irreducibility: primes.iter().map(newton_indecomposable).collect(),
        primes,
        omega,
        div_u: FormalDivisor {
            symbol: "D".into(),
            terms: terms.clone(),
        },
        div_f: FormalDivisor {
            symbol: "E".into(),
            terms,
        },
        torsion_free: g == 1,
    })
}

/// `0 → Z →ξ Z^s →ψ Cl(X) →φ′ Cl(Y) → 0` with `ξ(1) = ω` and `Cl(Y) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequence {
    pub s: usize,
    pub xi: Vec<u32>,
    pub cl_x: String,
    pub cl_y: String,
    pub rendered: String,
}

impl fmt::Display for ExactSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rendered)
    }
}

pub fn exact_sequence_report(t: &SuspTower) -> Result<ExactSequence> {
    let cg = class_group(t)?;
    let s = cg.omega.len();
    let zs = if s == 1 {
        "Z".to_string()
    } else {
        format!("Z^{s}")
    };
    let xi = cg
        .omega
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    let cl_x = cg.group.to_string();
    let rendered = format!("0 → Z →ξ {zs} →ψ {cl_x} →φ′ 0 → 0   with ξ(1) = ({xi})");
    Ok(ExactSequence {
        s,
        xi: cg.omega,
        cl_x,
        cl_y: "0".into(),
        rendered,
    })
}
