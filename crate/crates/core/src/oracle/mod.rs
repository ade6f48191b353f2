//! Independent checks used to validate certified counts: a sign scan on a
//! grid, exact elimination, and a numeric solver.

mod newton;
mod resultant;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Dyadic, DyadicInterval, IntervalCtx, Rat, Rounding};
use crate::reduce::GenPoly;

pub use newton::{numeric_solve, NumericSolution};
pub use resultant::{resultant_count_positive, resultant_y, subresultant_coeff, PolyXY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exponents must be integers")]
    NonIntegerExponents,
    #[error("coefficients must be rational")]
    NonRationalCoefficient,
    #[error("resultant vanishes identically; the equations share a component")]
    CommonComponent,
    #[error("back-substitution cannot be certified: {0}")]
    NonSimple(String),
    #[error("degrees too large for elimination")]
    DegreeTooLarge,
    #[error("grid needs at least 2 points")]
    TooFewPoints,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn ser_dyadics<S: serde::Serializer>(v: &[Dyadic], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Dyadic::to_f64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridScan {
    pub samples: usize,
    /// Midpoints between consecutive samples of opposite certified sign.
    #[serde(serialize_with = "ser_dyadics")]
    pub sign_changes: Vec<Dyadic>,
    /// Samples whose sign stayed undecided.
    #[serde(serialize_with = "ser_dyadics")]
    pub skipped: Vec<Dyadic>,
}

impl GridScan {
    pub fn count(&self) -> usize {
        self.sign_changes.len()
    }
}

/// Signs of `F` at `n` (nearly) equispaced dyadic points of (0,1).
fn coeff_enclosures(f: &GenPoly, ctx: &IntervalCtx) -> Result<Vec<DyadicInterval>, OracleError> {
    Ok(f.terms().iter().map(|t| t.coeff.eval_ctx(ctx)).collect::<Result<_, _>>()?)
}

fn eval_with(f: &GenPoly, c: &[DyadicInterval], ctx: &IntervalCtx, x: &DyadicInterval) -> Option<DyadicInterval> {
    let one_minus = ctx.sub(&DyadicInterval::one(), x);
    let mut acc = DyadicInterval::zero();
    for (t, c) in f.terms().iter().zip(c) {
        let v = ctx.mul(&ctx.pow_rat(x, &t.k).ok()?, &ctx.pow_rat(&one_minus, &t.l).ok()?);
        acc = ctx.add(&acc, &ctx.mul(c, &v));
    }
    Some(acc)
}

pub fn grid_scan(f: &GenPoly, n: usize) -> Result<GridScan, OracleError> {
    if n < 2 {
        return Err(OracleError::TooFewPoints);
    }
    let ctx = IntervalCtx::new(64);
    let fine = IntervalCtx::new(256);
    let coarse_c = coeff_enclosures(f, &ctx)?;
    let fine_c = coeff_enclosures(f, &fine)?;
    let mut last: Option<(Dyadic, i32)> = None;
    let mut sign_changes = Vec::new();
    let mut skipped = Vec::new();
    for i in 1..=n {
        let t = Rat::new((i as i64).into(), ((n + 1) as i64).into());
        let x = Dyadic::from_rat(&t, 64, Rounding::Down);
        let p = DyadicInterval::point(x.clone());
        let s = eval_with(f, &coarse_c, &ctx, &p)
            .and_then(|v| v.sign())
            .or_else(|| eval_with(f, &fine_c, &fine, &p).and_then(|v| v.sign()));
        match s {
            None => skipped.push(x),
            Some(s) => {
                if let Some((px, ps)) = &last {
                    if *ps != s {
                        sign_changes.push(Dyadic::midpoint(px, &x));
                    }
                }
                last = Some((x, s));
            }
        }
    }
    Ok(GridScan {
        samples: n,
        sign_changes,
        skipped,
    })
}
