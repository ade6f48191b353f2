//! Sparse bivariate signomials with symbolic coefficients, monomial changes
//! of coordinates and Newton polygons.

mod map;
mod polygon;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{sign_of, AlgebraError, DyadicInterval, IntervalCtx, RealExpr, Rat, Sign};

pub use map::{
    normalize_trinomial_lattice, normalize_trinomial_unit, LatticeNormalization, MonomialMap,
    PowerProduct, UnitNormalization,
};
pub use polygon::{newton_polygon, Degeneracy, LatticePolygon};

/// Precision cap used when certifying coefficient signs at construction.
pub const SIGN_PREC: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BivarError {
    #[error("coefficient sign could not be certified: {0}")]
    UndecidedCoefficient(String),
    #[error("all coefficients have the same sign; no positive solutions")]
    AllSameSign,
    #[error("support is degenerate (collinear exponents)")]
    DegenerateSupport,
    #[error("lattice normalization needs integer exponents")]
    NonIntegerExponents,
    #[error("monomial map is not invertible")]
    NonInvertibleMap,
    #[error("expected {expected} terms, found {found}")]
    WrongTermCount { expected: usize, found: usize },
    #[error("polynomial has no terms")]
    Empty,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Exponent = (Rat, Rat);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Term {
    pub coeff: RealExpr,
    #[serde(serialize_with = "ser_exp")]
    pub exp: Exponent,
    /// Certified sign of the coefficient, `+1` or `-1`.
    pub sign: i32,
}

fn ser_exp<S: serde::Serializer>(e: &Exponent, s: S) -> Result<S::Ok, S::Error> {
    [e.0.to_string(), e.1.to_string()].serialize(s)
}

/// Sum of `coeff * u^a v^b` over canonical (lexicographically sorted,
/// pairwise distinct) exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SparsePolyQ2 {
    terms: Vec<Term>,
}

impl SparsePolyQ2 {
    /// Builds a canonical polynomial, merging equal exponents and dropping
    /// exact zeros. Fails when a surviving coefficient has no certified sign.
    pub fn new(raw: Vec<(RealExpr, Exponent)>) -> Result<Self, BivarError> {
        let mut raw = raw;
        raw.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(RealExpr, Exponent)> = Vec::with_capacity(raw.len());
        for (c, e) in raw {
            match merged.last_mut() {
                Some((pc, pe)) if *pe == e => *pc = pc.add(&c),
                _ => merged.push((c, e)),
            }
        }
        let mut terms = Vec::with_capacity(merged.len());
        for (coeff, exp) in merged {
            if coeff.is_exact_zero() {
                continue;
            }
            let sign = match sign_of(&coeff, SIGN_PREC) {
                Sign::Positive => 1,
                Sign::Negative => -1,
                Sign::Undecided => {
                    return Err(BivarError::UndecidedCoefficient(coeff.to_string()));
                }
            };
            terms.push(Term { coeff, exp, sign });
        }
        Ok(SparsePolyQ2 { terms })
    }

    /// Rational coefficients with integer exponents.
    pub fn from_rat_terms(raw: &[(Rat, i64, i64)]) -> Result<Self, BivarError> {
        Self::new(
            raw.iter()
                .map(|(c, a, b)| {
                    (
                        RealExpr::from_rat(c.clone()),
                        (Rat::from_integer((*a).into()), Rat::from_integer((*b).into())),
                    )
                })
                .collect(),
        )
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.iter().map(|t| &t.exp)
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.exponents().all(|(a, b)| a.is_integer() && b.is_integer())
    }

    /// Term-wise product with `c * u^a v^b`; `c` must have a certified sign.
    pub fn mul_monomial(&self, c: &RealExpr, exp: &Exponent) -> Result<Self, BivarError> {
        Self::new(
            self.terms
                .iter()
                .map(|t| (t.coeff.mul(c), (&t.exp.0 + &exp.0, &t.exp.1 + &exp.1)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        SparsePolyQ2 {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.neg(),
                    exp: t.exp.clone(),
                    sign: -t.sign,
                })
                .collect(),
        }
    }

    /// Enclosure of the value at a point of the positive orthant.
    pub fn eval_iv(
        &self,
        ctx: &IntervalCtx,
        u: &DyadicInterval,
        v: &DyadicInterval,
    ) -> Result<DyadicInterval, AlgebraError> {
        let mut acc = DyadicInterval::zero();
        for t in &self.terms {
            let c = t.coeff.eval_ctx(ctx)?;
            let pu = ctx.pow_rat(u, &t.exp.0)?;
            let pv = ctx.pow_rat(v, &t.exp.1)?;
            acc = ctx.add(&acc, &ctx.mul(&c, &ctx.mul(&pu, &pv)));
        }
        Ok(acc)
    }

    /// Number of sign changes between positive and negative coefficients.
    pub fn sign_pattern(&self) -> (usize, usize) {
        let pos = self.terms.iter().filter(|t| t.sign > 0).count();
        (pos, self.terms.len() - pos)
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({r})")
    }
}

impl fmt::Display for SparsePolyQ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let (neg, mag) = match t.coeff.as_rat() {
                Some(r) if r.is_negative() => (true, RealExpr::from_rat(-r)),
                _ => (false, t.coeff.clone()),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut parts = Vec::new();
            let unit = mag.as_rat().is_some_and(|r| r.is_one());
            let constant = t.exp.0.is_zero() && t.exp.1.is_zero();
            if !unit || constant {
                parts.push(mag.to_string());
            }
            for (name, e) in [("x", &t.exp.0), ("y", &t.exp.1)] {
                if e.is_zero() {
                } else if e.is_one() {
                    parts.push(name.to_string());
                } else {
                    parts.push(format!("{name}^{}", fmt_rat(e)));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
