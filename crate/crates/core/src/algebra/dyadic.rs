//! Dyadic rationals `m * 2^e` with directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;

/// Rounding direction for inexact dyadic operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

impl Rounding {
    pub fn flip(self) -> Self {
        match self {
            Rounding::Down => Rounding::Up,
            Rounding::Up => Rounding::Down,
        }
    }
}

/// A dyadic rational `mant * 2^exp`, kept with an odd mantissa (or zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn floor_shr(m: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    if !m.is_negative() {
        m >> shift
    } else {
        let t: BigInt = (-m - BigInt::one()) >> shift;
        -t - BigInt::one()
    }
}

fn round_shr(m: &BigInt, shift: u64, dir: Rounding) -> BigInt {
    match dir {
        Rounding::Down => floor_shr(m, shift),
        Rounding::Up => -floor_shr(&-m, shift),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> i32 {
        if self.mant.is_zero() {
            0
        } else if self.mant.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Smallest `t` with `|self| < 2^t`. Meaningless for zero.
    pub fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Multiply by `2^k`, exactly.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn round(&self, prec: u32, dir: Rounding) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        Self::new(round_shr(&self.mant, shift, dir), self.exp + shift as i64)
    }

    /// Round to a multiple of `2^e`.
    pub fn round_to_exp(&self, e: i64, dir: Rounding) -> Self {
        if self.is_zero() || self.exp >= e {
            return self.clone();
        }
        let shift = (e - self.exp) as u64;
        Self::new(round_shr(&self.mant, shift, dir), e)
    }

    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = if self.exp <= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let shifted: BigInt = &b.mant << ((b.exp - a.exp) as u64);
        Self::new(&a.mant + shifted, a.exp)
    }

    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_exact(&other.neg())
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        Self::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// `self + other` rounded to `prec` bits.
    pub fn add(&self, other: &Self, prec: u32, dir: Rounding) -> Self {
        if self.is_zero() {
            return other.round(prec, dir);
        }
        if other.is_zero() {
            return self.round(prec, dir);
        }
        // A summand far below the rounding position only acts as a sticky bit.
        let (big, small) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        let guard = prec as i64 + 4;
        if small.top() < big.top() - guard && small.top() < big.exp {
            let sticky_exp = big.exp.min(big.top() - guard) - 2;
            let sticky = Dyadic {
                mant: BigInt::from(small.signum()),
                exp: sticky_exp,
            };
            return big.add_exact(&sticky).round(prec, dir);
        }
        self.add_exact(other).round(prec, dir)
    }

    pub fn sub(&self, other: &Self, prec: u32, dir: Rounding) -> Self {
        self.add(&other.neg(), prec, dir)
    }

    pub fn mul(&self, other: &Self, prec: u32, dir: Rounding) -> Self {
        self.mul_exact(other).round(prec, dir)
    }

    /// `self / other` rounded to `prec` bits. Panics on division by zero.
    pub fn div(&self, other: &Self, prec: u32, dir: Rounding) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let want = prec as i64 + 2 + other.bits() as i64 - self.bits() as i64;
        let s = want.max(0) as u64;
        let num: BigInt = &self.mant << s;
        let (q, r) = num.div_mod_floor(&other.mant);
        let q = if r.is_zero() || dir == Rounding::Down {
            q
        } else {
            q + BigInt::one()
        };
        Self::new(q, self.exp - other.exp - s as i64).round(prec, dir)
    }

    pub fn from_rat(r: &Rat, prec: u32, dir: Rounding) -> Self {
        let n = Dyadic::new(r.numer().clone(), 0);
        let d = Dyadic::new(r.denom().clone(), 0);
        n.div(&d, prec, dir)
    }

    /// Exact conversion when the rational is dyadic.
    pub fn try_from_rat(r: &Rat) -> Option<Self> {
        let d = r.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        if (d >> tz).is_one() {
            Some(Self::new(r.numer().clone(), -(tz as i64)))
        } else {
            None
        }
    }

    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << (self.exp as u64))
        } else {
            Rat::new(self.mant.clone(), BigInt::one() << ((-self.exp) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 60 {
            let shift = bits - 60;
            (floor_shr(&self.mant, shift), self.exp + shift as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        mf * 2f64.powi(e as i32)
    }

    /// Midpoint `(a + b) / 2`, exact.
    pub fn midpoint(a: &Self, b: &Self) -> Self {
        a.add_exact(b).ldexp(-1)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare magnitudes via top position first.
        let ta = self.top();
        let tb = other.top();
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let e = self.exp.min(other.exp);
            let ma: BigInt = self.mant.abs() << ((self.exp - e) as u64);
            let mb: BigInt = other.mant.abs() << ((other.exp - e) as u64);
            ma.cmp(&mb)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(d(8, 0), d(1, 3));
        assert_eq!(d(0, 17), Dyadic::zero());
    }

    #[test]
    fn rounding_is_directed() {
        let x = d(0b1011_0111, 0);
        assert_eq!(x.round(4, Rounding::Down), d(0b1011, 4));
        assert_eq!(x.round(4, Rounding::Up), d(0b1100, 4));
        let y = x.neg();
        assert_eq!(y.round(4, Rounding::Down), d(-0b1100, 4));
        assert_eq!(y.round(4, Rounding::Up), d(-0b1011, 4));
    }

    #[test]
    fn division_brackets_one_third() {
        let one = Dyadic::one();
        let three = Dyadic::from_int(3);
        let lo = one.div(&three, 40, Rounding::Down);
        let hi = one.div(&three, 40, Rounding::Up);
        let third = Rat::new(1.into(), 3.into());
        assert!(lo.to_rat() < third && third < hi.to_rat());
        assert!(hi.sub_exact(&lo) <= Dyadic::pow2(-40));
    }

    #[test]
    fn sticky_add_keeps_direction() {
        let big = Dyadic::one();
        let tiny = Dyadic::pow2(-10_000);
        assert_eq!(big.add(&tiny, 53, Rounding::Down), big);
        assert!(big.add(&tiny, 53, Rounding::Up) > big);
        assert!(big.add(&tiny.neg(), 53, Rounding::Down) < big);
        assert_eq!(big.add(&tiny.neg(), 53, Rounding::Up), big);
    }

    #[test]
    fn ordering_matches_rationals() {
        let vals = [d(-7, -3), d(1, 0), d(3, -1), d(-1, 4), d(5, -10), Dyadic::zero()];
        for a in &vals {
            for b in &vals {
                assert_eq!(a.cmp(b), a.to_rat().cmp(&b.to_rat()), "{a:?} vs {b:?}");
            }
        }
    }
}
