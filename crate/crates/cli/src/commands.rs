use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};
use susp_core::classgroup::{
    class_group, exact_sequence_report, smith_normal_form, AbelianGroupPresentation, IntMatrix,
};
use susp_core::factor::{factor_multivariate, is_irreducible};
use susp_core::geometry::{
    hypersurface_smooth_with, suspension_report, GroebnerConfig, Smoothness,
};
use susp_core::modulecheck::{
    can_be_generated_by_with, cyclicity_report_with, fitting_ideal, PresentationMatrix,
};
use susp_core::susp::{certify_prime, factor_susp, is_prime_uvf};
use susp_core::{MultiPoly, RingSpec, SuspElem, SuspTower};

use crate::error::CliError;

pub const PAIR_BUDGET_VAR: &str = "SUSP_PAIR_BUDGET";

/// Rendered result of one command.
pub struct Output {
    pub text: String,
    pub json: Value,
    /// A predicate verb answered "no".
    pub negative: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            negative: false,
        }
    }

    fn predicate(answer: bool, text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            negative: !answer,
        }
    }
}

/// Ring and tower flags shared by every verb.
pub struct Context {
    pub ring: Option<String>,
    pub fs: Vec<String>,
}

impl Context {
    fn ring(&self) -> Result<RingSpec, CliError> {
        match &self.ring {
            Some(s) => Ok(RingSpec::parse(s)?),
            None => Err(CliError::Usage("--ring is required for this verb".into())),
        }
    }

    fn tower(&self) -> Result<SuspTower, CliError> {
        Ok(SuspTower::new(self.ring()?, &self.fs)?)
    }

    /// A tower with at least one level.
    fn suspension(&self) -> Result<SuspTower, CliError> {
        let t = self.tower()?;
        if t.height() == 0 {
            return Err(CliError::Usage("this verb needs at least one --f".into()));
        }
        Ok(t)
    }

    fn parse(&self, t: &SuspTower, src: &str) -> Result<SuspElem, CliError> {
        Ok(t.parse(src, t.height())?)
    }
}

pub fn groebner_config() -> Result<GroebnerConfig, CliError> {
    let mut cfg = GroebnerConfig::default();
    if let Ok(raw) = std::env::var(PAIR_BUDGET_VAR) {
        cfg.pair_budget = raw.trim().parse().map_err(|_| CliError::Env {
            name: PAIR_BUDGET_VAR,
            message: format!("expected a non-negative integer, got `{raw}`"),
        })?;
    }
    Ok(cfg)
}

fn components_json(e: &SuspElem) -> Value {
    Value::Object(
        e.components()
            .iter()
            .map(|(d, c)| (d.to_string(), json!(c.to_string())))
            .collect(),
    )
}

pub fn nf(ctx: &Context, expr: &str) -> Result<Output, CliError> {
    let t = ctx.tower()?;
    let e = ctx.parse(&t, expr)?;
    let json = json!({
        "ring": t.to_string(),
        "level": e.level(),
        "normal_form": e.to_string(),
        "components": components_json(&e),
    });
    Ok(Output::new(e.to_string(), json))
}

pub fn mul(ctx: &Context, a: &str, b: &str) -> Result<Output, CliError> {
    let t = ctx.tower()?;
    let p = ctx.parse(&t, a)?.checked_mul(&ctx.parse(&t, b)?)?;
    let json = json!({
        "ring": t.to_string(),
        "product": p.to_string(),
        "components": components_json(&p),
    });
    Ok(Output::new(p.to_string(), json))
}

fn base_of(e: &SuspElem) -> MultiPoly {
    e.as_base().expect("level-0 elements are base polynomials")
}

pub fn factor(ctx: &Context, expr: &str) -> Result<Output, CliError> {
    let t = ctx.tower()?;
    let e = ctx.parse(&t, expr)?;
    match t.height() {
        0 => {
            let fac = factor_multivariate(&base_of(&e))?;
            Ok(Output::new(fac.to_string(), json!(fac)))
        }
        1 => {
            let fac = factor_susp(&e)?;
            Ok(Output::new(fac.to_string(), json!(fac)))
        }
        h => Err(susp_core::Error::Unsupported(format!(
            "factorization needs a one-level tower, got height {h}"
        ))
        .into()),
    }
}

pub fn is_prime(ctx: &Context, expr: Option<&str>) -> Result<Output, CliError> {
    let Some(expr) = expr else {
        let t = ctx.suspension()?;
        let rep = is_prime_uvf(&t, t.height())?;
        let k = rep.level;
        let mut text = format!(
            "{} prime: {}\n{} prime: {}\nf{} prime: {}",
            t.u_name(k),
            rep.u_prime,
            t.v_name(k),
            rep.v_prime,
            if t.height() > 1 {
                k.to_string()
            } else {
                String::new()
            },
            rep.f_prime
        );
        if let Some(w) = &rep.witness {
            let _ = write!(text, "\nwitness: f = {w}");
        }
        return Ok(Output::predicate(rep.f_prime, text, json!(rep)));
    };
    let t = ctx.tower()?;
    let e = ctx.parse(&t, expr)?;
    let prime = match t.height() {
        0 => is_irreducible(&base_of(&e))?,
        1 => certify_prime(&e)?,
        h => {
            return Err(susp_core::Error::Unsupported(format!(
                "primality of elements needs a tower of height at most 1, got {h}"
            ))
            .into())
        }
    };
    let json = json!({ "expression": e.to_string(), "prime": prime });
    Ok(Output::predicate(prime, prime.to_string(), json))
}

pub fn is_unit(ctx: &Context, expr: &str) -> Result<Output, CliError> {
    let t = ctx.tower()?;
    let e = ctx.parse(&t, expr)?;
    let unit = e.is_unit();
    let json = json!({ "expression": e.to_string(), "unit": unit });
    Ok(Output::predicate(unit, unit.to_string(), json))
}

pub fn class_group_cmd(ctx: &Context) -> Result<Output, CliError> {
    let t = ctx.suspension()?;
    let cg = class_group(&t)?;
    let seq = exact_sequence_report(&t)?;
    let primes: Vec<String> = cg.primes.iter().map(ToString::to_string).collect();
    let omega: Vec<String> = cg.omega.iter().map(ToString::to_string).collect();
    let verdicts: Vec<String> = cg
        .absolute_irreducibility
        .iter()
        .map(ToString::to_string)
        .collect();
    let text = format!(
        "Cl(X) = {}\nprimes of f: {}\nomega: ({})\ndiv_X(u) = {}\ntorsion-free: {}\n\
         absolute irreducibility: {}\nsequence: {}",
        cg.group,
        primes.join(", "),
        omega.join(", "),
        cg.div_u,
        cg.torsion_free,
        verdicts.join(", "),
        seq
    );
    Ok(Output::new(text, json!(cg)))
}

pub fn smooth(ctx: &Context, expr: Option<&str>) -> Result<Output, CliError> {
    let f = match expr {
        Some(src) => susp_core::expr::parse_poly(src, &ctx.ring()?)?,
        None => ctx.suspension()?.f_base(),
    };
    let verdict = hypersurface_smooth_with(&f, &groebner_config()?)?;
    let text = match &verdict {
        Smoothness::Smooth => format!("{{{f} = 0}} is smooth"),
        Smoothness::Singular(gb) => {
            format!("{{{f} = 0}} is singular; singular locus ideal basis {gb}")
        }
    };
    Ok(Output::predicate(verdict.is_smooth(), text, json!(verdict)))
}

pub fn report(ctx: &Context) -> Result<Output, CliError> {
    let t = ctx.suspension()?;
    let rep = suspension_report(&t, &groebner_config()?)?;
    Ok(Output::new(rep.to_string(), json!(rep)))
}

fn parse_json(src: &str) -> Result<Value, CliError> {
    serde_json::from_str(src).map_err(|e| CliError::Matrix(e.to_string()))
}

fn rows_of(v: &Value) -> Result<&Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::Matrix("expected a JSON array of rows".into()))
}

fn integer_entry(v: &Value) -> Result<BigInt, CliError> {
    let text = match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(CliError::Matrix(format!("`{other}` is not an integer"))),
    };
    text.parse()
        .map_err(|_| CliError::Matrix(format!("`{text}` is not an integer")))
}

fn int_matrix(src: &str) -> Result<IntMatrix, CliError> {
    let rows = rows_of(&parse_json(src)?)?
        .iter()
        .map(|row| {
            rows_of(row)?
                .iter()
                .map(integer_entry)
                .collect::<Result<Vec<BigInt>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(CliError::Matrix("rows have different lengths".into()));
    }
    Ok(IntMatrix::from_rows(&rows)?)
}

/// A number when it fits in `i64`, a decimal string otherwise.
fn big_json(n: &BigInt) -> Value {
    i64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

pub fn snf(matrix: &str) -> Result<Output, CliError> {
    let m = int_matrix(matrix)?;
    let s = smith_normal_form(&m);
    let coker = AbelianGroupPresentation::cokernel(&m);
    let diag: Vec<String> = s.diagonal().iter().map(ToString::to_string).collect();
    let text = format!(
        "D = {}\nU = {}\nV = {}\ndiagonal: ({})\ncokernel: {}",
        s.d,
        s.u,
        s.v,
        diag.join(", "),
        coker
    );
    let json = json!({
        "u": s.u,
        "d": s.d,
        "v": s.v,
        "diagonal": s.diagonal().iter().map(big_json).collect::<Vec<_>>(),
        "cokernel": coker,
    });
    Ok(Output::new(text, json))
}

fn presentation(
    ring: &RingSpec,
    src: &str,
    cols: Option<usize>,
) -> Result<PresentationMatrix, CliError> {
    let rows: Vec<Vec<String>> = rows_of(&parse_json(src)?)?
        .iter()
        .map(|row| {
            rows_of(row)?
                .iter()
                .map(|e| match e {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    other => Err(CliError::Matrix(format!("`{other}` is not a polynomial"))),
                })
                .collect()
        })
        .collect::<Result<_, CliError>>()?;
    let cols = match (cols, rows.first()) {
        (Some(c), _) => c,
        (None, Some(r)) => r.len(),
        (None, None) => {
            return Err(CliError::Usage(
                "an empty relation list needs --cols".into(),
            ))
        }
    };
    Ok(PresentationMatrix::parse(ring, cols, &rows)?)
}

pub struct FittingArgs<'a> {
    pub matrix: Option<&'a str>,
    pub k: Option<usize>,
    pub cols: Option<usize>,
    pub cyclicity: bool,
}

pub fn fitting(ctx: &Context, args: &FittingArgs<'_>) -> Result<Output, CliError> {
    let cfg = groebner_config()?;
    let ring = match &ctx.ring {
        Some(s) => RingSpec::parse(s)?,
        None => RingSpec::new(["y1", "y2"])?,
    };
    let matrix = args
        .matrix
        .map(|m| presentation(&ring, m, args.cols))
        .transpose()?;
    if args.cyclicity || matrix.is_none() {
        let rep = cyclicity_report_with(matrix.as_ref(), &cfg)?;
        return Ok(Output::new(rep.to_string(), json!(rep)));
    }
    let p = matrix.expect("checked above");
    let ks: Vec<usize> = match args.k {
        Some(k) => vec![k],
        None => (0..=p.cols()).collect(),
    };
    let mut text = format!("presentation: {p}");
    let mut ideals = Vec::new();
    for k in ks {
        let gens = fitting_ideal(&p, k);
        let unit = can_be_generated_by_with(&p, k, &cfg)?;
        let shown: Vec<String> = gens.iter().map(ToString::to_string).collect();
        let _ = write!(
            text,
            "\nFitt_{k} = ({}){}",
            shown.join(", "),
            if unit && shown.as_slice() != ["1"] {
                " = (1)"
            } else {
                ""
            }
        );
        ideals.push(json!({ "k": k, "generators": shown, "unit": unit }));
    }
    let min = (0..=p.cols())
        .map(|k| can_be_generated_by_with(&p, k, &cfg).map(|b| (k, b)))
        .find(|r| !matches!(r, Ok((_, false))))
        .transpose()?
        .map(|(k, _)| k)
        .unwrap_or(p.cols());
    let _ = write!(text, "\nsmallest k with Fitt_k = (1): {min}");
    let json = json!({
        "presentation": p,
        "fitting_ideals": ideals,
        "smallest_unit_fitting_index": min,
    });
    Ok(Output::new(text, json))
}
