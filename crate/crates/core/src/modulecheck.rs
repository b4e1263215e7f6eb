//! Fitting ideals and the minimal number of generators of a finitely
//! presented module over a polynomial ring.
//!
//! A module with `n` generators is generated by `k` elements iff its Fitting
//! ideal `Fitt_k`, generated by the `(n - k)`-minors of a presentation matrix,
//! is the unit ideal.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::parse_poly;
use crate::geometry::{ideal_contains_one_with, GroebnerConfig};
use crate::poly::{MultiPoly, RingSpec};

/// Presents `coker(R^rows -> R^cols)`: each row is one relation among the
/// `cols` generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationMatrix {
    #[serde(serialize_with = "ser_ring")]
    ring: RingSpec,
    cols: usize,
    rows: Vec<Vec<MultiPoly>>,
}

fn ser_ring<S: serde::Serializer>(r: &RingSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl PresentationMatrix {
    pub fn new(ring: &RingSpec, cols: usize, rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        for row in &rows {
            if row.len() != cols {
                return Err(Error::Precondition(format!(
                    "relation has {} entries, expected {cols}",
                    row.len()
                )));
            }
            if let Some(p) = row.iter().find(|p| p.ring() != ring) {
                return Err(Error::RingMismatch(format!("{} vs {ring}", p.ring())));
            }
        }
        Ok(PresentationMatrix {
            ring: ring.clone(),
            cols,
            rows,
        })
    }

    /// Parses every entry as an expression over `ring`.
    pub fn parse<S: AsRef<str>>(ring: &RingSpec, cols: usize, rows: &[Vec<S>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(s.as_ref(), ring)).collect())
            .collect::<Result<Vec<Vec<MultiPoly>>>>()?;
        Self::new(ring, cols, rows)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<MultiPoly>] {
        &self.rows
    }

    /// Adds a relation.
    pub fn with_row(&self, row: Vec<MultiPoly>) -> Result<Self> {
        let mut rows = self.rows.clone();
        rows.push(row);
        Self::new(&self.ring, self.cols, rows)
    }
}

impl fmt::Display for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("({})", r.iter().map(ToString::to_string).join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Determinant by cofactor expansion along the first row.
fn det(m: &[Vec<MultiPoly>], ring: &RingSpec) -> MultiPoly {
    match m.len() {
        0 => MultiPoly::one(ring),
        1 => m[0][0].clone(),
        n => {
            let mut acc = MultiPoly::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &det(&minor, ring);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Generators of `Fitt_k`: the normalized nonzero `(cols - k)`-minors, `{1}`
/// when `k >= cols` and `{0}` when there are too few relations.
pub fn fitting_ideal(p: &PresentationMatrix, k: usize) -> Vec<MultiPoly> {
    let ring = &p.ring;
    if k >= p.cols {
        return vec![MultiPoly::one(ring)];
    }
    let size = p.cols - k;
    if size > p.rows.len() {
        return vec![MultiPoly::zero(ring)];
    }
    let mut out: Vec<MultiPoly> = Vec::new();
    for rows in (0..p.rows.len()).combinations(size) {
        for cols in (0..p.cols).combinations(size) {
            let sub: Vec<Vec<MultiPoly>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| p.rows[i][j].clone()).collect())
                .collect();
            let d = det(&sub, ring);
            if !d.is_zero() {
                let d = d.normalized();
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
    }
    if out.is_empty() {
        out.push(MultiPoly::zero(ring));
    }
    out
}

/// Fitting criterion `Fitt_k = (1)`. A negative answer proves the module
/// needs more than `k` generators; a positive one means it is generated by
/// `k` elements locally at every prime, which is global generation over a
/// local ring but not over a polynomial ring in general.
pub fn can_be_generated_by(p: &PresentationMatrix, k: usize) -> Result<bool> {
    can_be_generated_by_with(p, k, &GroebnerConfig::default())
}

pub fn can_be_generated_by_with(
    p: &PresentationMatrix,
    k: usize,
    cfg: &GroebnerConfig,
) -> Result<bool> {
    ideal_contains_one_with(&fitting_ideal(p, k), cfg)
}

/// Cyclicity verdict for the degree-one component `A_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicityVerdict {
    Cyclic,
    NotCyclic,
    Inconclusive,
}

impl fmt::Display for CyclicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CyclicityVerdict::Cyclic => "cyclic",
            CyclicityVerdict::NotCyclic => "not cyclic",
            CyclicityVerdict::Inconclusive => "inconclusive: presentation possibly incomplete",
        })
    }
}

/// The 3-fold `X ⊂ A^5` with a `G_m`-action whose quotient has the fibre
/// structure of a suspension, and the cyclicity test for `A_1`.
#[derive(Clone, Debug, Serialize)]
pub struct CyclicityReport {
    pub ambient_ring: String,
    pub equations: Vec<String>,
    pub weights: Vec<(String, i32)>,
    pub module_ring: String,
    pub generators: Vec<String>,
    pub known_relation: PresentationMatrix,
    /// `Fitt_1` of the module presented by the known relation alone.
    pub known_relation_fitt1: Vec<MultiPoly>,
    pub known_relation_fitt1_is_unit: bool,
    pub supplied_presentation: Option<PresentationMatrix>,
    pub verdict: CyclicityVerdict,
    pub note: String,
}

impl fmt::Display for CyclicityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "X = V({}) in A^5 over {}",
            self.equations.join(", "),
            self.ambient_ring
        )?;
        let w = self
            .weights
            .iter()
            .map(|(n, d)| format!("{n}:{d}"))
            .join(", ");
        writeln!(f, "G_m weights: {w}")?;
        writeln!(
            f,
            "A_1 = {} K[Y] over {}",
            self.generators.join(" K[Y] + "),
            self.module_ring
        )?;
        writeln!(
            f,
            "known relation (rows over u1, u2): {}",
            self.known_relation
        )?;
        writeln!(
            f,
            "Fitt_1 of the known relation alone: ({})",
            self.known_relation_fitt1.iter().join(", ")
        )?;
        if let Some(p) = &self.supplied_presentation {
            writeln!(f, "supplied presentation: {p}")?;
        }
        writeln!(f, "note: {}", self.note)?;
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Builds the report. `presentation` is a complete presentation of `A_1` on
/// the generators `u1, u2` over `QQ[y1,y2]`; without one the verdict is
/// inconclusive.
pub fn cyclicity_report(presentation: Option<&PresentationMatrix>) -> Result<CyclicityReport> {
    cyclicity_report_with(presentation, &GroebnerConfig::default())
}

pub fn cyclicity_report_with(
    presentation: Option<&PresentationMatrix>,
    cfg: &GroebnerConfig,
) -> Result<CyclicityReport> {
    let ambient = RingSpec::new(["u1", "u2", "v", "y1", "y2"])?;
    let equations = ["u1*v - y1*y2", "u2*v - (y1 + 1)*y2", "u1*(y1 + 1) - u2*y1"]
        .iter()
        .map(|s| Ok(parse_poly(s, &ambient)?.to_string()))
        .collect::<Result<Vec<String>>>()?;
    let ring = RingSpec::new(["y1", "y2"])?;
    let known = PresentationMatrix::parse(&ring, 2, &[vec!["y1 + 1", "-y1"]])?;
    let fitt1 = fitting_ideal(&known, 1);
    let fitt1_unit = ideal_contains_one_with(&fitt1, cfg)?;

    let verdict = match presentation {
        None => CyclicityVerdict::Inconclusive,
        Some(p) => {
            if p.ring() != &ring {
                return Err(Error::RingMismatch(format!("{} vs {ring}", p.ring())));
            }
            if p.cols() != 2 {
                return Err(Error::Precondition(format!(
                    "A_1 has the two generators u1, u2, got {} columns",
                    p.cols()
                )));
            }
            if can_be_generated_by_with(p, 1, cfg)? {
                CyclicityVerdict::Cyclic
            } else {
                CyclicityVerdict::NotCyclic
            }
        }
    };
    let note = if fitt1_unit {
        "Fitting ideals only grow as relations are added, so a unit Fitt_1 for the known \
         relation alone bounds the true Fitt_1 from below: it is the unit ideal too, \
         provided u1 and u2 generate A_1. No complete presentation was derived here."
    } else {
        "no complete presentation of A_1 was derived"
    };
    Ok(CyclicityReport {
        ambient_ring: ambient.to_string(),
        equations,
        weights: [("u1", 1), ("u2", 1), ("v", -1), ("y1", 0), ("y2", 0)]
            .iter()
            .map(|(n, w)| (n.to_string(), *w))
            .collect(),
        module_ring: ring.to_string(),
        generators: vec!["u1".into(), "u2".into()],
        known_relation: known,
        known_relation_fitt1: fitt1,
        known_relation_fitt1_is_unit: fitt1_unit,
        supplied_presentation: presentation.cloned(),
        verdict,
        note: note.into(),
    })
}
