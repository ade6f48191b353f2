//! Symbolic real constants built from rationals by field operations and
//! rational powers of positive subexpressions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::interval::{DyadicInterval, IntervalCtx};
use super::{AlgebraError, PrecisionLadder, Rat, Sign};

#[derive(Debug, PartialEq, Eq, Hash)]
enum Node {
    Const(Rat),
    Add(RealExpr, RealExpr),
    Sub(RealExpr, RealExpr),
    Mul(RealExpr, RealExpr),
    Div(RealExpr, RealExpr),
    Pow(RealExpr, Rat),
}

/// Immutable, cheaply clonable expression DAG node.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealExpr(Arc<Node>);

/// First working precision of the [`eval_interval`] schedule.
const LADDER_BASE: u32 = 16;

impl RealExpr {
    pub fn from_rat(r: Rat) -> Self {
        RealExpr(Arc::new(Node::Const(r)))
    }

    pub fn int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match &*self.0 {
            Node::Const(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.as_rat().is_some_and(|r| r.is_zero())
    }

    pub fn is_exact_one(&self) -> bool {
        self.as_rat().is_some_and(|r| r.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self.as_rat(), other.as_rat()) {
            (Some(a), Some(b)) => Self::from_rat(a + b),
            (Some(a), _) if a.is_zero() => other.clone(),
            (_, Some(b)) if b.is_zero() => self.clone(),
            _ => RealExpr(Arc::new(Node::Add(self.clone(), other.clone()))),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match (self.as_rat(), other.as_rat()) {
            (Some(a), Some(b)) => Self::from_rat(a - b),
            (_, Some(b)) if b.is_zero() => self.clone(),
            _ => RealExpr(Arc::new(Node::Sub(self.clone(), other.clone()))),
        }
    }

    pub fn neg(&self) -> Self {
        match self.as_rat() {
            Some(a) => Self::from_rat(-a),
            None => Self::zero().sub(self),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self.as_rat(), other.as_rat()) {
            (Some(a), Some(b)) => Self::from_rat(a * b),
            (Some(a), _) if a.is_zero() => Self::zero(),
            (_, Some(b)) if b.is_zero() => Self::zero(),
            (Some(a), _) if a.is_one() => other.clone(),
            (_, Some(b)) if b.is_one() => self.clone(),
            _ => RealExpr(Arc::new(Node::Mul(self.clone(), other.clone()))),
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        self.mul(&Self::from_rat(r.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        match (self.as_rat(), other.as_rat()) {
            (_, Some(b)) if b.is_zero() => Err(AlgebraError::DivisionByZero),
            (Some(a), Some(b)) => Ok(Self::from_rat(a / b)),
            (Some(a), _) if a.is_zero() => Ok(Self::zero()),
            (_, Some(b)) if b.is_one() => Ok(self.clone()),
            _ => Ok(RealExpr(Arc::new(Node::Div(self.clone(), other.clone())))),
        }
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::one().div(self)
    }

    /// Integer power; any sign of the base is allowed.
    pub fn powi(&self, n: i64) -> Result<Self, AlgebraError> {
        self.pow_unchecked(Rat::from_integer(n.into()))
    }

    /// Rational power. Non-integer exponents require the base to be
    /// certified positive, checked here with the default ladder.
    pub fn pow(&self, k: &Rat) -> Result<Self, AlgebraError> {
        if !k.is_integer() && sign_of(self, PrecisionLadder::default().max) != Sign::Positive {
            return Err(AlgebraError::PowOfNonpositive);
        }
        self.pow_unchecked(k.clone())
    }

    fn pow_unchecked(&self, k: Rat) -> Result<Self, AlgebraError> {
        if k.is_zero() {
            return Ok(Self::one());
        }
        if k.is_one() {
            return Ok(self.clone());
        }
        if let Some(r) = self.as_rat() {
            if r.is_zero() {
                return if k.is_negative() {
                    Err(AlgebraError::DivisionByZero)
                } else {
                    Ok(Self::zero())
                };
            }
            if let Some(v) = exact_pow(r, &k) {
                return Ok(Self::from_rat(v));
            }
        }
        if let Node::Pow(inner, k1) = &*self.0 {
            // (x^k1)^k = x^(k1 k) whenever x^k1 was defined through a positive base
            let inner_positive = !k1.is_integer();
            if inner_positive || k.is_integer() {
                return inner.pow_unchecked(k1 * &k);
            }
        }
        Ok(RealExpr(Arc::new(Node::Pow(self.clone(), k))))
    }

    /// Single-shot enclosure with every operation rounded at `prec` bits.
    pub fn eval_at(&self, prec: u32) -> Result<DyadicInterval, AlgebraError> {
        let ctx = IntervalCtx::new(prec);
        self.eval_ctx(&ctx)
    }

    pub fn eval_ctx(&self, ctx: &IntervalCtx) -> Result<DyadicInterval, AlgebraError> {
        let mut memo = HashMap::new();
        eval_node(self, ctx, &mut memo)
    }

    /// Non-certified floating approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        match self.eval_at(64) {
            Ok(iv) => iv.mid().to_f64(),
            Err(_) => f64::NAN,
        }
    }

    /// Number of distinct nodes in the DAG.
    pub fn node_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(Arc::as_ptr(&e.0)) {
                continue;
            }
            match &*e.0 {
                Node::Const(_) => {}
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                Node::Pow(a, _) => stack.push(a.clone()),
            }
        }
        seen.len()
    }
}

fn exact_root(n: &BigInt, d: u32) -> Option<BigInt> {
    if n.is_negative() {
        if d % 2 == 0 {
            return None;
        }
        return exact_root(&-n, d).map(|r| -r);
    }
    let r = n.nth_root(d);
    (r.pow(d) == *n).then_some(r)
}

fn exact_pow(r: &Rat, k: &Rat) -> Option<Rat> {
    let d = k.denom().to_u32()?;
    let n = k.numer().to_i32()?;
    if n.unsigned_abs() > 512 {
        return None;
    }
    if d > 1 && r.is_negative() {
        return None;
    }
    let num = exact_root(r.numer(), d)?;
    let den = exact_root(r.denom(), d)?;
    let base = Rat::new(num, den);
    Some(num_traits::pow::Pow::pow(&base, n))
}

fn eval_node(
    e: &RealExpr,
    ctx: &IntervalCtx,
    memo: &mut HashMap<*const Node, DyadicInterval>,
) -> Result<DyadicInterval, AlgebraError> {
    let key = Arc::as_ptr(&e.0);
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let v = match &*e.0 {
        Node::Const(r) => ctx.rat(r),
        Node::Add(a, b) => {
            let x = eval_node(a, ctx, memo)?;
            let y = eval_node(b, ctx, memo)?;
            ctx.add(&x, &y)
        }
        Node::Sub(a, b) => {
            let x = eval_node(a, ctx, memo)?;
            let y = eval_node(b, ctx, memo)?;
            ctx.sub(&x, &y)
        }
        Node::Mul(a, b) => {
            let x = eval_node(a, ctx, memo)?;
            let y = eval_node(b, ctx, memo)?;
            ctx.mul(&x, &y)
        }
        Node::Div(a, b) => {
            let x = eval_node(a, ctx, memo)?;
            let y = eval_node(b, ctx, memo)?;
            ctx.div(&x, &y)?
        }
        Node::Pow(a, k) => {
            let x = eval_node(a, ctx, memo)?;
            if !k.is_integer() && !x.is_positive() {
                return Err(AlgebraError::PowOfNonpositive);
            }
            ctx.pow_rat(&x, k)?
        }
    };
    memo.insert(key, v.clone());
    Ok(v)
}

/// Certified enclosure of `e` with width at most `2^(4-p) * max(1, |mid|)`.
///
/// Working precisions follow the fixed schedule `16 * 2^i` and results are
/// intersected, so a larger `p` always returns a subset of a smaller one.
pub fn eval_interval(e: &RealExpr, precision_bits: u32) -> Result<DyadicInterval, AlgebraError> {
    let p = precision_bits.max(4);
    let target = 4i64 - p as i64;
    let hard_cap = p.saturating_mul(8).max(1024);
    let mut level = LADDER_BASE;
    let mut acc: Option<DyadicInterval> = None;
    loop {
        match e.eval_at(level) {
            Ok(iv) => {
                acc = Some(match acc {
                    None => iv,
                    // both contain the true value, so the intersection is nonempty
                    Some(prev) => prev.intersect(&iv).unwrap_or(iv),
                });
            }
            Err(err) => {
                if level >= p {
                    return Err(err);
                }
            }
        }
        if let Some(iv) = &acc {
            if level >= p && iv.is_tight(-target) {
                return Ok(iv.clone());
            }
        }
        if level >= hard_cap {
            return acc.ok_or(AlgebraError::PowOfNonpositive);
        }
        level = level.saturating_mul(2);
    }
}

/// Sign of `e`, refining along the default ladder up to `max_precision_bits`.
pub fn sign_of(e: &RealExpr, max_precision_bits: u32) -> Sign {
    if let Some(r) = e.as_rat() {
        return match r.numer().sign() {
            num_bigint::Sign::Plus => Sign::Positive,
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Undecided,
        };
    }
    let ladder = PrecisionLadder::new(32, max_precision_bits.max(32));
    for prec in ladder.levels() {
        if let Ok(iv) = e.eval_at(prec) {
            if let Some(s) = iv.sign() {
                return Sign::from_i32(s);
            }
        }
    }
    Sign::Undecided
}

impl fmt::Debug for RealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Const(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "({r})")
                }
            }
            Node::Add(a, b) => write!(f, "({a} + {b})"),
            Node::Sub(a, b) => write!(f, "({a} - {b})"),
            Node::Mul(a, b) => write!(f, "{a}*{b}"),
            Node::Div(a, b) => write!(f, "{a}/{b}"),
            Node::Pow(a, k) => {
                if k.is_integer() {
                    write!(f, "{a}^{}", k.numer())
                } else {
                    write!(f, "{a}^({k})")
                }
            }
        }
    }
}

impl Serialize for RealExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RealExpr", 2)?;
        st.serialize_field("expr", &self.to_string())?;
        st.serialize_field("approx", &self.to_f64())?;
        st.end()
    }
}

impl From<Rat> for RealExpr {
    fn from(r: Rat) -> Self {
        RealExpr::from_rat(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::interval::isqrt_enclosure;
    use crate::algebra::rat;

    fn c(n: i64, d: i64) -> RealExpr {
        RealExpr::from_rat(rat(n, d))
    }

    #[test]
    fn rational_leaf_is_tight() {
        let e = c(44, 31);
        let iv = eval_interval(&e, 16).unwrap();
        assert!(iv.contains_rat(&rat(44, 31)));
        assert!(iv.is_tight(12 - 1));
    }

    #[test]
    fn sqrt_two_matches_isqrt_oracle() {
        let e = RealExpr::int(2).pow(&rat(1, 2)).unwrap();
        let iv = eval_interval(&e, 30).unwrap();
        let oracle = isqrt_enclosure(&BigInt::from(2), 40);
        assert!(iv.intersect(&oracle).is_some());
        assert!(iv.width() <= crate::algebra::Dyadic::pow2(-26));
    }

    #[test]
    fn product_folds_to_one() {
        let e = c(3, 2).mul(&c(2, 3));
        assert!(e.is_exact_one());
        let iv = eval_interval(&e, 20).unwrap();
        assert!(iv.contains_rat(&rat(1, 1)));
    }

    #[test]
    fn signs() {
        assert_eq!(sign_of(&c(44, 31).sub(&RealExpr::one()), 256), Sign::Positive);
        let s = RealExpr::int(2).pow(&rat(1, 2)).unwrap();
        assert_eq!(sign_of(&RealExpr::one().sub(&s), 256), Sign::Negative);
        let z = s.mul(&s).sub(&RealExpr::int(2));
        assert_eq!(sign_of(&z, 512), Sign::Undecided);
    }

    #[test]
    fn pow_of_negative_rejected() {
        let e = c(-1, 2);
        assert_eq!(e.pow(&rat(1, 3)), Err(AlgebraError::PowOfNonpositive));
        let s = RealExpr::int(2).pow(&rat(1, 2)).unwrap();
        let neg = RealExpr::one().sub(&s);
        assert_eq!(neg.pow(&rat(1, 2)), Err(AlgebraError::PowOfNonpositive));
        assert!(neg.powi(3).is_ok());
    }

    #[test]
    fn perfect_powers_fold() {
        assert_eq!(c(8, 27).pow(&rat(2, 3)).unwrap().as_rat(), Some(&rat(4, 9)));
        assert!(c(2, 1).pow(&rat(1, 2)).unwrap().as_rat().is_none());
    }

    #[test]
    fn shared_subexpressions_are_counted_once() {
        let s = RealExpr::int(3).pow(&rat(1, 5)).unwrap();
        let t = s.add(&s).mul(&s);
        assert_eq!(t.node_count(), 4);
    }

    #[test]
    fn higher_precision_is_nested() {
        let s = RealExpr::int(5).pow(&rat(2, 7)).unwrap();
        let e = s.sub(&c(1, 3)).div(&s.add(&c(2, 1))).unwrap();
        let a = eval_interval(&e, 16).unwrap();
        let b = eval_interval(&e, 32).unwrap();
        let d = eval_interval(&e, 64).unwrap();
        assert!(b.subset_of(&a) && d.subset_of(&b));
    }
}
