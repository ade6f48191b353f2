//! Reduction of a system to a univariate function on (0,1): the function
//! `F`, the derivative recursion and the rational map `phi`.

mod chain;
mod phi;
mod t3;

use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    ser_rat, sign_of, AlgebraError, DyadicInterval, IntervalCtx, RealExpr, Rat, Sign,
};
use crate::bivar::{normalize_trinomial_unit, BivarError, SparsePolyQ2, UnitNormalization, SIGN_PREC};

pub use chain::{
    build_phi, derivative_layer, recursion_chain, recursion_chain_ordered, Chain, Layer,
    LayeredRep,
};
pub use phi::PhiMap;
pub use t3::{t3_phi, Nondegeneracy, T3Phi};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Bivar(#[from] BivarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("F vanishes identically; the solution set is not finite")]
    NonFiniteSolutionSet,
    #[error("recursion needs at least 2 terms, found {found}")]
    TooFewTerms { found: usize },
    #[error("last stage must have two layers with distinct prefactors, found {found}")]
    LayerCountMismatch { found: usize },
    #[error("coefficient sign could not be certified: {0}")]
    UndecidedCoefficient(String),
    #[error("term order is not a permutation of the terms")]
    InvalidOrder,
    #[error("expected {expected} terms, found {found}")]
    WrongTermCount { expected: usize, found: usize },
    #[error("polynomial in a rational map is zero")]
    ZeroPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GenTerm {
    pub coeff: RealExpr,
    #[serde(serialize_with = "ser_rat")]
    pub k: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub l: Rat,
    pub sign: i32,
}

/// `sum c x^k (1-x)^l` with pairwise distinct `(k, l)` sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GenPoly {
    terms: Vec<GenTerm>,
}

impl GenPoly {
    pub fn new(raw: Vec<(RealExpr, Rat, Rat)>) -> Result<Self, ReduceError> {
        let mut raw = raw;
        raw.sort_by(|a, b| (&a.1, &a.2).cmp(&(&b.1, &b.2)));
        let mut merged: Vec<(RealExpr, Rat, Rat)> = Vec::with_capacity(raw.len());
        for (c, k, l) in raw {
            match merged.last_mut() {
                Some((pc, pk, pl)) if *pk == k && *pl == l => *pc = pc.add(&c),
                _ => merged.push((c, k, l)),
            }
        }
        let mut terms = Vec::with_capacity(merged.len());
        for (coeff, k, l) in merged {
            if coeff.is_exact_zero() {
                continue;
            }
            let sign = match sign_of(&coeff, SIGN_PREC) {
                Sign::Positive => 1,
                Sign::Negative => -1,
                Sign::Undecided => return Err(ReduceError::UndecidedCoefficient(coeff.to_string())),
            };
            terms.push(GenTerm { coeff, k, l, sign });
        }
        Ok(GenPoly { terms })
    }

    pub fn from_rat_terms(raw: &[(Rat, Rat, Rat)]) -> Result<Self, ReduceError> {
        Self::new(
            raw.iter()
                .map(|(c, k, l)| (RealExpr::from_rat(c.clone()), k.clone(), l.clone()))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[GenTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Index of the term with exponents `(k, l)`.
    pub fn position(&self, k: &Rat, l: &Rat) -> Option<usize> {
        self.terms.iter().position(|t| t.k == *k && t.l == *l)
    }

    pub fn eval_iv(&self, ctx: &IntervalCtx, x: &DyadicInterval) -> Result<DyadicInterval, AlgebraError> {
        let one_minus = ctx.sub(&DyadicInterval::one(), x);
        let mut acc = DyadicInterval::zero();
        for t in &self.terms {
            let c = t.coeff.eval_ctx(ctx)?;
            let v = ctx.mul(&ctx.pow_rat(x, &t.k)?, &ctx.pow_rat(&one_minus, &t.l)?);
            acc = ctx.add(&acc, &ctx.mul(&c, &v));
        }
        Ok(acc)
    }

    /// One layer per term with constant polynomial part.
    pub fn to_layered(&self) -> LayeredRep {
        LayeredRep::new(
            self.terms
                .iter()
                .map(|t| Layer::constant(t.k.clone(), t.l.clone(), t.coeff.clone()))
                .collect(),
            0,
        )
    }

    /// True when the terms cancel as functions. Terms whose exponents differ
    /// by integers are grouped, and each group is expanded to a polynomial
    /// times a common monomial; symbolic coefficients whose sign stays
    /// undecided at the maximal precision count as zero.
    pub fn vanishes_identically(&self) -> bool {
        const MAX_EXPANSION: i64 = 4096;
        if self.terms.is_empty() {
            return true;
        }
        let frac = |r: &Rat| r - r.floor();
        let mut classes: Vec<((Rat, Rat), Vec<&GenTerm>)> = Vec::new();
        for t in &self.terms {
            let key = (frac(&t.k), frac(&t.l));
            match classes.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(t),
                None => classes.push((key, vec![t])),
            }
        }
        for (_, members) in classes {
            if members.len() == 1 {
                return false;
            }
            let k0 = members.iter().map(|t| t.k.clone()).min().unwrap();
            let l0 = members.iter().map(|t| t.l.clone()).min().unwrap();
            let shifts: Vec<(i64, i64)> = members
                .iter()
                .map(|t| {
                    (
                        (&t.k - &k0).to_integer().to_i64().unwrap_or(i64::MAX),
                        (&t.l - &l0).to_integer().to_i64().unwrap_or(i64::MAX),
                    )
                })
                .collect();
            let deg = shifts.iter().map(|(a, b)| a.saturating_add(*b)).max().unwrap();
            if deg > MAX_EXPANSION {
                return false;
            }
            let deg = deg as usize;
            let mut coeffs = vec![RealExpr::zero(); deg + 1];
            for (t, (a, b)) in members.iter().zip(&shifts) {
                // x^a (1-x)^b = sum_j C(b,j) (-1)^j x^(a+j)
                let mut binom = Rat::one();
                for j in 0..=*b {
                    let c = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
                    let slot = &mut coeffs[(*a + j) as usize];
                    *slot = slot.add(&t.coeff.mul_rat(&c));
                    binom = binom * Rat::from_integer((*b - j).into()) / Rat::from_integer((j + 1).into());
                }
            }
            let all_zero = coeffs
                .iter()
                .all(|c| c.is_exact_zero() || sign_of(c, SIGN_PREC) == Sign::Undecided);
            if !all_zero {
                return false;
            }
        }
        true
    }
}

/// Output of [`to_f`]: the function `F` and the normalization producing it.
#[derive(Clone, Debug, Serialize)]
pub struct ReducedSystem {
    pub normalization: UnitNormalization,
    /// `f` in coordinates where `g = -1 + x + y`.
    pub f_normalized: SparsePolyQ2,
    #[serde(rename = "F")]
    pub big_f: GenPoly,
}

impl ReducedSystem {
    /// Index in `F` of the term coming from the term of `f` with exponent `e`.
    pub fn term_of(&self, e: &(Rat, Rat)) -> Option<usize> {
        let (k, l) = self.normalization.map_exponent(e);
        self.big_f.position(&k, &l)
    }
}

/// `F(x) = sum c_i x^k_i (1-x)^l_i`, whose roots in (0,1) correspond to the
/// positive solutions of `f = g = 0`.
#[allow(non_snake_case)]
pub fn to_F(f: &SparsePolyQ2, g: &SparsePolyQ2) -> Result<ReducedSystem, ReduceError> {
    let normalization = normalize_trinomial_unit(g)?;
    let f_normalized = normalization.transform(f)?;
    let big_f = GenPoly::new(
        f_normalized
            .terms()
            .iter()
            .map(|t| (t.coeff.clone(), t.exp.0.clone(), t.exp.1.clone()))
            .collect(),
    )?;
    if big_f.vanishes_identically() {
        return Err(ReduceError::NonFiniteSolutionSet);
    }
    Ok(ReducedSystem {
        normalization,
        f_normalized,
        big_f,
    })
}

pub use to_F as to_f;

fn lcm_denoms(a: &Rat, b: &Rat) -> u64 {
    use num_integer::Integer;
    a.denom().lcm(b.denom()).to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn sys(f: &[(Rat, i64, i64)], g: &[(Rat, i64, i64)]) -> (SparsePolyQ2, SparsePolyQ2) {
        (
            SparsePolyQ2::from_rat_terms(f).unwrap(),
            SparsePolyQ2::from_rat_terms(g).unwrap(),
        )
    }

    fn unit_g() -> Vec<(Rat, i64, i64)> {
        vec![(rat(-1, 1), 0, 0), (rat(1, 1), 1, 0), (rat(1, 1), 0, 1)]
    }

    #[test]
    fn shared_component_detected() {
        let (f, g) = sys(&unit_g(), &unit_g());
        assert_eq!(to_F(&f, &g).unwrap_err(), ReduceError::NonFiniteSolutionSet);
        let (f, g) = sys(
            &[(rat(-3, 1), 1, 2), (rat(3, 1), 2, 2), (rat(3, 1), 1, 3)],
            &unit_g(),
        );
        assert_eq!(to_F(&f, &g).unwrap_err(), ReduceError::NonFiniteSolutionSet);
    }

    #[test]
    fn x_minus_y() {
        let (f, g) = sys(&[(rat(1, 1), 1, 0), (rat(-1, 1), 0, 1)], &unit_g());
        let r = to_F(&f, &g).unwrap();
        let t = r.big_f.terms();
        assert_eq!(t.len(), 2);
        assert_eq!((&t[0].k, &t[0].l), (&rat(0, 1), &rat(1, 1)));
        assert_eq!(t[0].coeff.as_rat(), Some(&rat(-1, 1)));
        assert_eq!((&t[1].k, &t[1].l), (&rat(1, 1), &rat(0, 1)));
        let ctx = IntervalCtx::new(64);
        let half = DyadicInterval::from_rat(&rat(1, 2), 64);
        assert!(r.big_f.eval_iv(&ctx, &half).unwrap().contains_zero());
    }

    #[test]
    fn sextic_exponents() {
        let (f, g) = sys(
            &[(rat(1, 1), 6, 0), (rat(44, 31), 0, 3), (rat(-1, 1), 0, 1)],
            &[(rat(1, 1), 0, 6), (rat(44, 31), 3, 0), (rat(-1, 1), 1, 0)],
        );
        let r = to_F(&f, &g).unwrap();
        let kl: Vec<_> = r.big_f.terms().iter().map(|t| (t.k.clone(), t.l.clone())).collect();
        assert_eq!(
            kl,
            vec![
                (rat(-5, 12), rat(1, 6)),
                (rat(-1, 4), rat(1, 2)),
                (rat(5, 2), rat(0, 1)),
            ]
        );
        assert_eq!(r.term_of(&(rat(0, 1), rat(3, 1))), Some(1));
    }

    #[test]
    fn merge_cancellation_dropped() {
        let p = GenPoly::from_rat_terms(&[
            (rat(1, 1), rat(1, 2), rat(0, 1)),
            (rat(-1, 1), rat(1, 2), rat(0, 1)),
            (rat(2, 1), rat(0, 1), rat(0, 1)),
        ])
        .unwrap();
        assert_eq!(p.len(), 1);
        assert!(!p.vanishes_identically());
    }
}
