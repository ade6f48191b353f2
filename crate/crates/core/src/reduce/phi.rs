use num_traits::Zero;
use serde::Serialize;

use super::{lcm_denoms, Layer, LayeredRep, ReduceError};
use crate::algebra::{
    ser_rat, sign_of, AlgebraError, DyadicInterval, IntervalCtx, RealExpr, Rat, Sign, UniPoly,
    UniPolyR,
};
use crate::bivar::SIGN_PREC;

/// `phi(x) = x^alpha (1-x)^beta P(x) / Q(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PhiMap {
    #[serde(serialize_with = "ser_rat")]
    alpha: Rat,
    #[serde(serialize_with = "ser_rat")]
    beta: Rat,
    p: UniPolyR,
    q: UniPolyR,
    /// Least common multiple of the denominators of alpha and beta.
    m: u64,
    /// Sign of the ratio of the scales of P and Q.
    prefactor_sign: i32,
}

fn scale_sign(u: &UniPolyR) -> Result<i32, ReduceError> {
    if u.shape().is_zero() {
        return Err(ReduceError::ZeroPolynomial);
    }
    match sign_of(u.scale(), SIGN_PREC) {
        Sign::Positive => Ok(1),
        Sign::Negative => Ok(-1),
        Sign::Undecided => Err(ReduceError::Algebra(AlgebraError::DegreeAmbiguous)),
    }
}

impl PhiMap {
    pub fn new(alpha: Rat, beta: Rat, p: UniPolyR, q: UniPolyR) -> Result<Self, ReduceError> {
        let prefactor_sign = scale_sign(&p)? * scale_sign(&q)?;
        let m = lcm_denoms(&alpha, &beta);
        Ok(PhiMap {
            alpha,
            beta,
            p,
            q,
            m,
            prefactor_sign,
        })
    }

    /// Map with rational polynomials and unit scales.
    pub fn rational(alpha: Rat, beta: Rat, p: UniPoly, q: UniPoly) -> Result<Self, ReduceError> {
        Self::new(alpha, beta, UniPolyR::from_rational(p), UniPolyR::from_rational(q))
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn beta(&self) -> &Rat {
        &self.beta
    }

    pub fn p(&self) -> &UniPolyR {
        &self.p
    }

    pub fn q(&self) -> &UniPolyR {
        &self.q
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn prefactor_sign(&self) -> i32 {
        self.prefactor_sign
    }

    pub fn deg_p(&self) -> usize {
        self.p.shape().degree().unwrap_or(0)
    }

    pub fn deg_q(&self) -> usize {
        self.q.shape().degree().unwrap_or(0)
    }

    /// Exponent of `x` in the behaviour of phi at infinity:
    /// `alpha + beta + deg P - deg Q`.
    pub fn exponent_at_infinity(&self) -> Rat {
        &self.alpha + &self.beta + Rat::from_integer((self.deg_p() as i64 - self.deg_q() as i64).into())
    }

    /// `1 / phi`, written with exchanged polynomials and negated exponents.
    pub fn inverse(&self) -> PhiMap {
        PhiMap {
            alpha: -&self.alpha,
            beta: -&self.beta,
            p: self.q.clone(),
            q: self.p.clone(),
            m: self.m,
            prefactor_sign: self.prefactor_sign,
        }
    }

    /// Ratio of the scales of P and Q.
    pub fn scale_ratio(&self) -> Result<RealExpr, AlgebraError> {
        self.p.scale().div(self.q.scale())
    }

    /// `x^alpha (1-x)^beta P - s Q`, whose roots in (0,1) solve `phi = s`.
    pub fn level_set(&self, s: i32) -> LayeredRep {
        let qs = UniPolyR::new(self.q.scale().mul_rat(&Rat::from_integer((-s).into())), self.q.shape().clone());
        LayeredRep::new(
            vec![
                Layer::new(Rat::zero(), Rat::zero(), qs),
                Layer::new(self.alpha.clone(), self.beta.clone(), self.p.clone()),
            ],
            0,
        )
    }

    pub fn eval_iv(&self, ctx: &IntervalCtx, x: &DyadicInterval) -> Result<DyadicInterval, AlgebraError> {
        let one_minus = ctx.sub(&DyadicInterval::one(), x);
        let pre = ctx.mul(&ctx.pow_rat(x, &self.alpha)?, &ctx.pow_rat(&one_minus, &self.beta)?);
        let num = ctx.mul(&pre, &self.p.eval_iv(ctx, x)?);
        ctx.div(&num, &self.q.eval_iv(ctx, x)?)
    }

    /// Exact sign of phi at a rational point of (0,1) that is not a root of
    /// P or Q.
    pub fn sign_at(&self, x: &Rat) -> i32 {
        self.prefactor_sign * self.p.shape().sign_at(x) * self.q.shape().sign_at(x)
    }
}
