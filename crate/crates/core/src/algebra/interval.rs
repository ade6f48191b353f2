//! Closed intervals with dyadic endpoints and outward-rounded operations,
//! including certified `exp` and `ln`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::dyadic::{Dyadic, Rounding};
use super::{AlgebraError, Rat};

use Rounding::{Down, Up};

#[derive(Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyadicInterval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "inverted interval {lo:?} > {hi:?}");
        DyadicInterval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        DyadicInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::point(Dyadic::one())
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        match Dyadic::try_from_rat(r) {
            Some(d) => Self::point(d),
            None => DyadicInterval {
                lo: Dyadic::from_rat(r, prec, Down),
                hi: Dyadic::from_rat(r, prec, Up),
            },
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub_exact(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    pub fn mag(&self) -> Dyadic {
        std::cmp::max(self.lo.abs(), self.hi.abs())
    }

    /// Smallest absolute value over the interval.
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            std::cmp::min(self.lo.abs(), self.hi.abs())
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Sign if the interval excludes zero.
    pub fn sign(&self) -> Option<i32> {
        if self.is_positive() {
            Some(1)
        } else if self.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rat(&self, x: &Rat) -> bool {
        &self.lo.to_rat() <= x && x <= &self.hi.to_rat()
    }

    pub fn subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = std::cmp::max(&self.lo, &other.lo).clone();
        let hi = std::cmp::min(&self.hi, &other.hi).clone();
        (lo <= hi).then_some(DyadicInterval { lo, hi })
    }

    pub fn hull(&self, other: &Self) -> Self {
        DyadicInterval {
            lo: std::cmp::min(&self.lo, &other.lo).clone(),
            hi: std::cmp::max(&self.hi, &other.hi).clone(),
        }
    }

    pub fn neg(&self) -> Self {
        DyadicInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn ldexp(&self, k: i64) -> Self {
        DyadicInterval {
            lo: self.lo.ldexp(k),
            hi: self.hi.ldexp(k),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }

    /// Relative width test used for precision contracts:
    /// `width <= 2^(-bits) * max(1, |mid|)`.
    pub fn is_tight(&self, bits: i64) -> bool {
        let w = self.width();
        if w.is_zero() {
            return true;
        }
        let scale = std::cmp::max(Dyadic::one(), self.mid().abs());
        // compare w <= 2^-bits * scale  <=>  w * 2^bits <= scale
        w.ldexp(bits) <= scale
    }
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for DyadicInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo.to_f64(), self.hi.to_f64()].serialize(s)
    }
}

const LN2_GUARD: u32 = 128;

/// Working-precision context for interval operations.
#[derive(Clone, Debug)]
pub struct IntervalCtx {
    prec: u32,
    ln2: DyadicInterval,
}

impl IntervalCtx {
    pub fn new(prec: u32) -> Self {
        let prec = prec.max(8);
        let ln2 = compute_ln2(prec + LN2_GUARD);
        IntervalCtx { prec, ln2 }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn ln2(&self) -> &DyadicInterval {
        &self.ln2
    }

    pub fn rat(&self, r: &Rat) -> DyadicInterval {
        DyadicInterval::from_rat(r, self.prec)
    }

    pub fn add(&self, a: &DyadicInterval, b: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: a.lo.add(&b.lo, self.prec, Down),
            hi: a.hi.add(&b.hi, self.prec, Up),
        }
    }

    pub fn sub(&self, a: &DyadicInterval, b: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: a.lo.sub(&b.hi, self.prec, Down),
            hi: a.hi.sub(&b.lo, self.prec, Up),
        }
    }

    pub fn mul(&self, a: &DyadicInterval, b: &DyadicInterval) -> DyadicInterval {
        let p = [
            a.lo.mul_exact(&b.lo),
            a.lo.mul_exact(&b.hi),
            a.hi.mul_exact(&b.lo),
            a.hi.mul_exact(&b.hi),
        ];
        let lo = p.iter().min().unwrap().round(self.prec, Down);
        let hi = p.iter().max().unwrap().round(self.prec, Up);
        DyadicInterval { lo, hi }
    }

    pub fn div(
        &self,
        a: &DyadicInterval,
        b: &DyadicInterval,
    ) -> Result<DyadicInterval, AlgebraError> {
        if b.contains_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        // x/y is monotone in each argument on the box, so corners suffice.
        let cands = [
            (&a.lo, &b.lo),
            (&a.lo, &b.hi),
            (&a.hi, &b.lo),
            (&a.hi, &b.hi),
        ];
        let lo = cands
            .iter()
            .map(|(x, y)| x.div(y, self.prec, Down))
            .min()
            .unwrap();
        let hi = cands
            .iter()
            .map(|(x, y)| x.div(y, self.prec, Up))
            .max()
            .unwrap();
        Ok(DyadicInterval { lo, hi })
    }

    pub fn powi(&self, a: &DyadicInterval, n: i64) -> Result<DyadicInterval, AlgebraError> {
        if n == 0 {
            return Ok(DyadicInterval::one());
        }
        if n < 0 {
            let p = self.powi(a, -n)?;
            return self.div(&DyadicInterval::one(), &p);
        }
        let n = n as u64;
        let up = |x: &Dyadic, dir: Rounding| pow_abs(x, n, self.prec, dir);
        let out = if n % 2 == 1 {
            let lo = signed_pow(&a.lo, n, self.prec, Down);
            let hi = signed_pow(&a.hi, n, self.prec, Up);
            DyadicInterval { lo, hi }
        } else if !a.lo.is_negative() {
            DyadicInterval {
                lo: up(&a.lo, Down),
                hi: up(&a.hi, Up),
            }
        } else if !a.hi.is_positive() {
            DyadicInterval {
                lo: up(&a.hi, Down),
                hi: up(&a.lo, Up),
            }
        } else {
            DyadicInterval {
                lo: Dyadic::zero(),
                hi: up(&a.mag(), Up),
            }
        };
        Ok(out)
    }

    /// Enclosure of `ln x` for a positive dyadic point.
    pub fn ln_point(&self, x: &Dyadic) -> Result<DyadicInterval, AlgebraError> {
        if !x.is_positive() {
            return Err(AlgebraError::PowOfNonpositive);
        }
        let w = self.prec + 24;
        let wctx = IntervalCtx {
            prec: w,
            ln2: self.ln2.clone(),
        };
        // x = m * 2^e with m in [2/3, 4/3)
        let mut e = x.top() - 1;
        let mut m = x.ldexp(-e);
        if m.mul_exact(&Dyadic::from_int(3)) < Dyadic::from_int(2) {
            e -= 1;
            m = m.ldexp(1);
        }
        let ln_m = atanh_series_ln(&m, w);
        let ln2 = self.ln2.clone();
        let e_iv = DyadicInterval::point(Dyadic::from_int(e));
        let out = wctx.add(&ln_m, &wctx.mul(&e_iv, &ln2));
        Ok(self.round_out(&out))
    }

    /// Enclosure of `exp y` for a dyadic point.
    pub fn exp_point(&self, y: &Dyadic) -> Result<DyadicInterval, AlgebraError> {
        if y.is_zero() {
            return Ok(DyadicInterval::one());
        }
        // Bail out on absurd magnitudes.
        if y.top() > 62 {
            return Err(AlgebraError::Overflow);
        }
        let approx_n = (y.to_f64() / std::f64::consts::LN_2).round();
        let n = approx_n as i64;
        let w = self.prec + 24 + (64 - (n.unsigned_abs().leading_zeros())) as u32;
        let wctx = IntervalCtx {
            prec: w,
            ln2: self.ln2.clone(),
        };
        let n_iv = DyadicInterval::point(Dyadic::from_int(n));
        let r = wctx.sub(&DyadicInterval::point(y.clone()), &wctx.mul(&n_iv, &wctx.ln2));
        // r lies in about [-0.35, 0.35]; scale down further and square back.
        let s: u32 = 8;
        let lo = taylor_exp(&r.lo.ldexp(-(s as i64)), w + s, Down);
        let hi = taylor_exp(&r.hi.ldexp(-(s as i64)), w + s, Up);
        let mut lo = lo;
        let mut hi = hi;
        for _ in 0..s {
            lo = lo.mul(&lo, w + s, Down);
            hi = hi.mul(&hi, w + s, Up);
        }
        let out = DyadicInterval {
            lo: lo.ldexp(n),
            hi: hi.ldexp(n),
        };
        Ok(self.round_out(&out))
    }

    pub fn ln(&self, a: &DyadicInterval) -> Result<DyadicInterval, AlgebraError> {
        if !a.is_positive() {
            return Err(AlgebraError::PowOfNonpositive);
        }
        let lo = self.ln_point(&a.lo)?;
        if a.lo == a.hi {
            return Ok(lo);
        }
        let hi = self.ln_point(&a.hi)?;
        Ok(DyadicInterval {
            lo: lo.lo,
            hi: hi.hi,
        })
    }

    pub fn exp(&self, a: &DyadicInterval) -> Result<DyadicInterval, AlgebraError> {
        let lo = self.exp_point(&a.lo)?;
        if a.lo == a.hi {
            return Ok(lo);
        }
        let hi = self.exp_point(&a.hi)?;
        Ok(DyadicInterval {
            lo: lo.lo,
            hi: hi.hi,
        })
    }

    /// `a^k` for rational `k`. Integer `k` allows any sign of `a`; otherwise
    /// `a` must be positive (or nonnegative with `k > 0`).
    pub fn pow_rat(&self, a: &DyadicInterval, k: &Rat) -> Result<DyadicInterval, AlgebraError> {
        if k.is_integer() {
            let n = k
                .to_integer()
                .to_i64()
                .ok_or(AlgebraError::Overflow)?;
            return self.powi(a, n);
        }
        if a.hi.is_negative() || (a.lo.is_negative()) {
            return Err(AlgebraError::PowOfNonpositive);
        }
        if a.lo.is_zero() {
            if k.is_negative() {
                return Err(AlgebraError::PowOfNonpositive);
            }
            if a.hi.is_zero() {
                return Ok(DyadicInterval::zero());
            }
            let hi = self.pow_rat_point(&a.hi, k)?;
            return Ok(DyadicInterval {
                lo: Dyadic::zero(),
                hi: hi.hi,
            });
        }
        let pl = self.pow_rat_point(&a.lo, k)?;
        if a.lo == a.hi {
            return Ok(pl);
        }
        let ph = self.pow_rat_point(&a.hi, k)?;
        Ok(if k.is_positive() {
            DyadicInterval {
                lo: pl.lo,
                hi: ph.hi,
            }
        } else {
            DyadicInterval {
                lo: ph.lo,
                hi: pl.hi,
            }
        })
    }

    fn pow_rat_point(&self, x: &Dyadic, k: &Rat) -> Result<DyadicInterval, AlgebraError> {
        // Perfect powers of the mantissa are common (e.g. 4^(1/2)); try exact first.
        if let Some(exact) = exact_rat_pow(x, k) {
            return Ok(DyadicInterval::point(exact));
        }
        if let Some(r) = self.pow_rat_by_root(x, k) {
            return Ok(r);
        }
        let extra = 16 + k.numer().bits().min(48) as u32 + bit_len_i64(x.top());
        let wctx = IntervalCtx {
            prec: self.prec + extra,
            ln2: self.ln2.clone(),
        };
        let l = wctx.ln_point(x)?;
        let kk = wctx.rat(k);
        let y = wctx.mul(&l, &kk);
        let e = wctx.exp(&y)?;
        Ok(self.round_out(&e))
    }

    /// `x^(n/d)` for small `d` via integer `d`-th roots of `x^|n|`.
    fn pow_rat_by_root(&self, x: &Dyadic, k: &Rat) -> Option<DyadicInterval> {
        let d = k.denom().to_u32()?;
        let n = k.numer().to_i64()?;
        if d > 128 || n.unsigned_abs() > 8192 || !x.is_positive() {
            return None;
        }
        let wp = self.prec + 16;
        let lo = pow_abs(x, n.unsigned_abs(), wp, Down);
        let hi = pow_abs(x, n.unsigned_abs(), wp, Up);
        let root = |y: &Dyadic, up: bool| -> Dyadic {
            let want = (wp as i64 + 2) * d as i64;
            let mut s = (want - y.bits() as i64).max(0);
            s += (y.exp() - s).rem_euclid(d as i64);
            let m: BigInt = y.mant() << (s as usize);
            let mut r = m.nth_root(d);
            if up && r.pow(d) != m {
                r += 1;
            }
            Dyadic::new(r, (y.exp() - s) / d as i64)
        };
        let iv = DyadicInterval {
            lo: root(&lo, false),
            hi: root(&hi, true),
        };
        if n < 0 {
            let c = IntervalCtx {
                prec: wp,
                ln2: self.ln2.clone(),
            };
            c.div(&DyadicInterval::one(), &iv).ok().map(|r| self.round_out(&r))
        } else {
            Some(self.round_out(&iv))
        }
    }

    fn round_out(&self, a: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: a.lo.round(self.prec, Down),
            hi: a.hi.round(self.prec, Up),
        }
    }
}

fn bit_len_i64(v: i64) -> u32 {
    64 - v.unsigned_abs().leading_zeros()
}

fn pow_abs(x: &Dyadic, n: u64, prec: u32, dir: Rounding) -> Dyadic {
    let base = x.abs();
    let p = prec + 2 * (64 - n.leading_zeros());
    let mut acc = Dyadic::one();
    let mut b = base;
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&b, p, dir);
        }
        k >>= 1;
        if k > 0 {
            b = b.mul(&b, p, dir);
        }
    }
    acc.round(prec, dir)
}

fn signed_pow(x: &Dyadic, n: u64, prec: u32, dir: Rounding) -> Dyadic {
    if x.is_negative() {
        pow_abs(x, n, prec, dir.flip()).neg()
    } else {
        pow_abs(x, n, prec, dir)
    }
}

/// Exact `x^k` when `x` is a dyadic whose value is a perfect power.
fn exact_rat_pow(x: &Dyadic, k: &Rat) -> Option<Dyadic> {
    let d = k.denom().to_u32()?;
    if d > 64 {
        return None;
    }
    let n = k.numer().to_i64()?;
    if x.exp() % d as i64 != 0 {
        return None;
    }
    let m = x.mant();
    if m.is_negative() {
        return None;
    }
    let root = m.nth_root(d);
    if &root.pow(d) != m {
        return None;
    }
    let base = Dyadic::new(root, x.exp() / d as i64);
    if n >= 0 {
        let mut acc = Dyadic::one();
        for _ in 0..n.min(4096) {
            acc = acc.mul_exact(&base);
        }
        if n > 4096 {
            return None;
        }
        Some(acc)
    } else if base.bits() == 1 {
        // only powers of two stay dyadic under inversion
        Some(Dyadic::pow2(base.exp() * n))
    } else {
        None
    }
}

/// ln(m) for m in [2/3, 4/3) via 2*atanh((m-1)/(m+1)).
fn atanh_series_ln(m: &Dyadic, w: u32) -> DyadicInterval {
    let ctx = IntervalCtx {
        prec: w,
        ln2: DyadicInterval::zero(),
    };
    let one = Dyadic::one();
    if m == &one {
        return DyadicInterval::zero();
    }
    let num = DyadicInterval::point(m.sub_exact(&one));
    let den = DyadicInterval::point(m.add_exact(&one));
    let z = ctx.div(&num, &den).expect("positive denominator");
    let z2 = ctx.mul(&z, &z);
    let mut pow = z.clone();
    let mut sum = z.clone();
    let tol = Dyadic::pow2(-(w as i64) - 8);
    let mut k: i64 = 1;
    loop {
        pow = ctx.mul(&pow, &z2);
        let term = ctx
            .div(&pow, &DyadicInterval::point(Dyadic::from_int(2 * k + 1)))
            .expect("odd denominator");
        sum = ctx.add(&sum, &term);
        k += 1;
        if pow.mag() < tol {
            break;
        }
    }
    // Tail: sum_{j>=k} |z|^(2j+1)/(2j+1) <= |pow*z^2| / (1 - z^2) <= 2*|pow|*|z2|
    let tail = pow.mag().mul(&z2.mag(), w, Up).ldexp(1);
    let tail_iv = DyadicInterval {
        lo: tail.neg(),
        hi: tail,
    };
    ctx.add(&sum, &tail_iv).ldexp(1)
}

/// Point Taylor series of exp at small |r| (≤ 1/256), directed rounding.
fn taylor_exp(r: &Dyadic, w: u32, dir: Rounding) -> Dyadic {
    let ctx = IntervalCtx {
        prec: w,
        ln2: DyadicInterval::zero(),
    };
    let x = DyadicInterval::point(r.clone());
    let mut term = DyadicInterval::one();
    let mut sum = DyadicInterval::one();
    let tol = Dyadic::pow2(-(w as i64) - 8);
    let mut k: i64 = 1;
    loop {
        term = ctx.mul(&term, &x);
        term = ctx
            .div(&term, &DyadicInterval::point(Dyadic::from_int(k)))
            .expect("nonzero");
        sum = ctx.add(&sum, &term);
        k += 1;
        if term.mag() < tol {
            break;
        }
    }
    // Remainder bounded by twice the last term magnitude for |r| < 1/2.
    let rem = term.mag().ldexp(1);
    match dir {
        Down => sum.lo.sub(&rem, w, Down),
        Up => sum.hi.add(&rem, w, Up),
    }
}

fn compute_ln2(prec: u32) -> DyadicInterval {
    // ln 2 = 2 atanh(1/3)
    let w = prec + 16;
    let ctx = IntervalCtx {
        prec: w,
        ln2: DyadicInterval::zero(),
    };
    let z = ctx
        .div(&DyadicInterval::one(), &DyadicInterval::point(Dyadic::from_int(3)))
        .unwrap();
    let z2 = ctx
        .div(&DyadicInterval::one(), &DyadicInterval::point(Dyadic::from_int(9)))
        .unwrap();
    let mut pow = z.clone();
    let mut sum = z;
    let tol = Dyadic::pow2(-(w as i64) - 8);
    let mut k: i64 = 1;
    while pow.mag() >= tol {
        pow = ctx.mul(&pow, &z2);
        let term = ctx
            .div(&pow, &DyadicInterval::point(Dyadic::from_int(2 * k + 1)))
            .unwrap();
        sum = ctx.add(&sum, &term);
        k += 1;
    }
    let tail = pow.mag().ldexp(1);
    let out = ctx
        .add(
            &sum,
            &DyadicInterval {
                lo: tail.neg(),
                hi: tail,
            },
        )
        .ldexp(1);
    DyadicInterval {
        lo: out.lo.round(prec, Down),
        hi: out.hi.round(prec, Up),
    }
}

/// Integer square root based enclosure of sqrt(n), used as an independent check.
pub fn isqrt_enclosure(n: &BigInt, frac_bits: u32) -> DyadicInterval {
    let scaled: BigInt = n << (2 * frac_bits as u64);
    let r = scaled.sqrt();
    let lo = Dyadic::new(r.clone(), -(frac_bits as i64));
    let hi_m = if &r * &r == scaled { r } else { r + BigInt::one() };
    let hi = Dyadic::new(hi_m, -(frac_bits as i64));
    let _ = BigInt::zero();
    DyadicInterval::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn ln2_matches_constant() {
        let l = compute_ln2(80);
        assert!(l.contains(&Dyadic::from_rat(&rat(0, 1), 10, Down)) == false);
        let (lo, hi) = l.to_f64_pair();
        assert!((lo - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((hi - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(l.width() <= Dyadic::pow2(-78));
    }

    #[test]
    fn exp_ln_roundtrip_contains_argument() {
        let ctx = IntervalCtx::new(100);
        for v in [rat(1, 3), rat(7, 2), rat(1000, 7), rat(1, 1000)] {
            let x = ctx.rat(&v);
            let l = ctx.ln(&x).unwrap();
            let back = ctx.exp(&l).unwrap();
            assert!(back.contains_rat(&v), "{v} not in {back:?}");
            assert!(back.is_tight(90));
        }
    }

    #[test]
    fn exp_of_one_is_e() {
        let ctx = IntervalCtx::new(64);
        let e = ctx.exp_point(&Dyadic::one()).unwrap();
        let (lo, hi) = e.to_f64_pair();
        assert!(lo <= std::f64::consts::E + 1e-15 && hi >= std::f64::consts::E - 1e-15);
        assert!(e.is_tight(60));
    }

    #[test]
    fn sqrt_two_against_isqrt() {
        let ctx = IntervalCtx::new(200);
        let s = ctx
            .pow_rat(&DyadicInterval::point(Dyadic::from_int(2)), &rat(1, 2))
            .unwrap();
        let oracle = isqrt_enclosure(&BigInt::from(2), 190);
        assert!(s.intersect(&oracle).is_some());
        assert!(s.is_tight(195));
    }

    #[test]
    fn perfect_powers_are_exact() {
        let ctx = IntervalCtx::new(40);
        let s = ctx
            .pow_rat(&DyadicInterval::point(Dyadic::from_int(8)), &rat(2, 3))
            .unwrap();
        assert_eq!(s, DyadicInterval::point(Dyadic::from_int(4)));
    }

    #[test]
    fn powi_even_over_zero() {
        let ctx = IntervalCtx::new(32);
        let a = DyadicInterval::new(Dyadic::from_int(-2), Dyadic::from_int(1));
        let p = ctx.powi(&a, 2).unwrap();
        assert_eq!(p, DyadicInterval::new(Dyadic::zero(), Dyadic::from_int(4)));
        let q = ctx.powi(&a, 3).unwrap();
        assert_eq!(q, DyadicInterval::new(Dyadic::from_int(-8), Dyadic::from_int(1)));
    }

    #[test]
    fn division_by_interval_with_zero_fails() {
        let ctx = IntervalCtx::new(32);
        let a = DyadicInterval::new(Dyadic::from_int(-1), Dyadic::from_int(1));
        assert!(ctx.div(&DyadicInterval::one(), &a).is_err());
    }
}
