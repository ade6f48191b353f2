//! Exact rationals, certified real intervals, symbolic real constants and
//! univariate polynomials.

pub mod dyadic;
pub mod expr;
pub mod interval;
pub mod poly;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dyadic::{Dyadic, Rounding};
pub use expr::{eval_interval, sign_of, RealExpr};
pub use interval::{DyadicInterval, IntervalCtx};
pub use poly::{isolate_roots, sturm_count, UniPoly, UniPolyR};

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("power of an operand not certified positive")]
    PowOfNonpositive,
    #[error("exponent or magnitude out of supported range")]
    Overflow,
    #[error("polynomial is not squarefree on the interval")]
    NotSquarefree,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("empty interval: a = {a}, b = {b}")]
    EmptyInterval { a: String, b: String },
    #[error("degree ambiguous: leading coefficient sign undecided")]
    DegreeAmbiguous,
}

/// Outcome of a certified sign determination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Positive,
    Undecided,
}

impl Sign {
    pub fn from_i32(s: i32) -> Self {
        match s.signum() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Undecided,
        }
    }

    /// `+1`, `-1`, or `None` when undecided.
    pub fn to_i32(self) -> Option<i32> {
        match self {
            Sign::Positive => Some(1),
            Sign::Negative => Some(-1),
            Sign::Undecided => None,
        }
    }

    pub fn is_decided(self) -> bool {
        self != Sign::Undecided
    }
}

/// Geometric precision schedule `start, 2*start, ...` capped at `max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionLadder {
    pub start: u32,
    pub max: u32,
}

impl Default for PrecisionLadder {
    fn default() -> Self {
        PrecisionLadder {
            start: 32,
            max: 4096,
        }
    }
}

impl PrecisionLadder {
    pub fn new(start: u32, max: u32) -> Self {
        let start = start.max(8);
        PrecisionLadder {
            start,
            max: max.max(start),
        }
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> {
        let max = self.max;
        let mut next = Some(self.start);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur >= max {
                None
            } else {
                Some(cur.saturating_mul(2).min(max))
            };
            Some(cur)
        })
    }
}

/// Serializes a rational as its `n/d` string.
pub fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn ser_rat_pair<S: serde::Serializer>(r: &(Rat, Rat), s: S) -> Result<S::Ok, S::Error> {
    [r.0.to_string(), r.1.to_string()].serialize(s)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_doubles_and_caps() {
        let l: Vec<u32> = PrecisionLadder::new(32, 200).levels().collect();
        assert_eq!(l, vec![32, 64, 128, 200]);
        let d: Vec<u32> = PrecisionLadder::default().levels().collect();
        assert_eq!(d.first(), Some(&32));
        assert_eq!(d.last(), Some(&4096));
    }
}
