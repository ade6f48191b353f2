//! The orderings of `p~ = a1/(a1+b1)` and `q~ = a2/(a2+b2)` forced on
//! trinomial systems with five positive solutions.

use num_traits::{One, Zero};
use serde::Serialize;

use super::PhiError;
use crate::algebra::{ser_rat, Rat};
use crate::reduce::T3Phi;
use crate::rootcount::CertifiedCount;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    /// `b1 > b2` and `p~ < q~ < 0`.
    BothNegative,
    /// `b1 > b2` and `1 < q~ < p~`.
    BothAboveOne,
    /// `b1 < b2` and `0 < q~ < 1 < p~`.
    SplitAtOne,
    /// `b1 < b2` and `q~ < 0 < p~ < 1`.
    SplitAtZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    #[serde(serialize_with = "ser_rat")]
    pub p_tilde: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub q_tilde: Rat,
    pub beta1_greater: bool,
    pub ordering: Option<Ordering>,
    pub solutions: usize,
    pub exact: bool,
    /// For a certified count of five, exactly one ordering must hold.
    pub consistent: bool,
}

pub fn t3_landmark_case(t3: &T3Phi, count: &CertifiedCount) -> Result<CaseReport, PhiError> {
    if !t3.is_nondegenerate() {
        return Err(PhiError::NondegeneracyViolated(format!("{:?}", t3.violations)));
    }
    let (p, q) = match (t3.p_tilde(), t3.q_tilde()) {
        (Some(p), Some(q)) => (p, q),
        _ => return Err(PhiError::NondegeneracyViolated("vanishing exponent sum".into())),
    };
    let (zero, one) = (Rat::zero(), Rat::one());
    let beta1_greater = t3.beta[0] > t3.beta[1];
    let ordering = if beta1_greater {
        if p < q && q < zero {
            Some(Ordering::BothNegative)
        } else if one < q && q < p {
            Some(Ordering::BothAboveOne)
        } else {
            None
        }
    } else if zero < q && q < one && one < p {
        Some(Ordering::SplitAtOne)
    } else if q < zero && zero < p && p < one {
        Some(Ordering::SplitAtZero)
    } else {
        None
    };
    let five = count.is_exact() && count.count == 5;
    Ok(CaseReport {
        p_tilde: p,
        q_tilde: q,
        beta1_greater,
        ordering,
        solutions: count.count,
        exact: count.is_exact(),
        consistent: !five || ordering.is_some(),
    })
}
