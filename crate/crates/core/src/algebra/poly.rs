//! Dense univariate polynomials over Q, Sturm counting and Descartes-based
//! real root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::expr::{sign_of, RealExpr};
use super::interval::{DyadicInterval, IntervalCtx};
use super::{AlgebraError, Rat, Sign};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rat::from_integer(v.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// `a + b x`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        Self::new(vec![a, b])
    }

    pub fn x() -> Self {
        Self::linear(Rat::zero(), Rat::one())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_iv(&self, ctx: &IntervalCtx, x: &DyadicInterval) -> DyadicInterval {
        horner_iv(ctx, &self.coeff_intervals(ctx), x)
    }

    pub fn coeff_intervals(&self, ctx: &IntervalCtx) -> Vec<DyadicInterval> {
        self.coeffs.iter().map(|c| ctx.rat(c)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] / &lc;
            for (j, c) in d.coeffs.iter().enumerate() {
                let t = &f * c;
                r[i - dd + j] -= t;
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let g = int_gcd(&to_primitive_int(self), &to_primitive_int(other));
        from_int(&g).monic()
    }

    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Yun's squarefree decomposition: `self = lc * prod f_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// `x^k * self`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rat::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    /// Largest `k` with `x^k | self`.
    pub fn x_adic_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Multiplicity of `1` as a root.
    pub fn one_adic_valuation(&self) -> usize {
        let mut k = 0;
        let mut p = self.clone();
        let lin = Self::linear(-Rat::one(), Rat::one());
        while !p.is_zero() && p.eval(&Rat::one()).is_zero() {
            p = p.div_rem(&lin).0;
            k += 1;
        }
        k
    }

    /// `self(a + b t)` as a polynomial in `t`.
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> Self {
        let lin = Self::linear(a.clone(), b.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(&lin).add(&Self::constant(c.clone())))
    }

    /// Coefficients reversed: `x^deg * self(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// Cauchy bound: every complex root has modulus below the result.
    pub fn cauchy_bound(&self) -> Rat {
        let lc = match self.lc() {
            Some(c) => c.abs(),
            None => return Rat::one(),
        };
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero);
        Rat::one() + m / lc
    }

    pub fn sign_at(&self, x: &Rat) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }
}

pub fn horner_iv(ctx: &IntervalCtx, coeffs: &[DyadicInterval], x: &DyadicInterval) -> DyadicInterval {
    let mut acc = DyadicInterval::zero();
    for c in coeffs.iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, x), c);
    }
    acc
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

// ---- integer polynomial helpers ----

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn trim_int(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Primitive integer polynomial with the same roots and a positive multiple
/// of `p` (so signs are preserved).
pub(crate) fn to_primitive_int(p: &UniPoly) -> Vec<BigInt> {
    let l = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    primitive(ints)
}

fn primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let a = trim_int(a);
    let g = content(&a);
    if g.is_zero() || g.is_one() {
        return a;
    }
    a.into_iter().map(|c| c / &g).collect()
}

fn from_int(a: &[BigInt]) -> UniPoly {
    UniPoly::new(a.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let top = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, c) in b.iter().enumerate() {
            r[dr - db + j] -= &top * c;
        }
        r = trim_int(r);
    }
    r
}

fn int_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = if a.len() >= b.len() {
        (primitive(a.to_vec()), primitive(b.to_vec()))
    } else {
        (primitive(b.to_vec()), primitive(a.to_vec()))
    };
    while !b.is_empty() {
        let r = primitive(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        a = a.into_iter().map(|c| -c).collect();
    }
    a
}

/// Integer coefficients proportional to `a((c + d t)/e) * e^n`.
fn affine_int(a: &[BigInt], c: &BigInt, d: &BigInt, e: &BigInt) -> Vec<BigInt> {
    let n = match a.len().checked_sub(1) {
        Some(n) => n,
        None => return Vec::new(),
    };
    let mut epow = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        epow[i] = &epow[i - 1] * e;
    }
    let mut acc: Vec<BigInt> = vec![a[n].clone()];
    for i in (0..n).rev() {
        // acc = acc * (c + d t) + a_i e^(n-i)
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (j, v) in acc.iter().enumerate() {
            next[j] += v * c;
            next[j + 1] += v * d;
        }
        next[0] += &a[i] * &epow[n - i];
        acc = next;
    }
    primitive(acc)
}

fn sign_variations(a: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for c in a {
        let s = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Descartes bound for the number of roots of `a` in the open unit interval.
fn descartes_unit(a: &[BigInt]) -> usize {
    let mut rev = a.to_vec();
    rev.reverse();
    let shifted = affine_int(&rev, &BigInt::one(), &BigInt::one(), &BigInt::one());
    sign_variations(&shifted)
}

fn int_eval_at_ratio(a: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    // sum a_i p^i q^(n-i)
    let n = a.len().saturating_sub(1);
    let mut s = BigInt::zero();
    let mut pp = BigInt::one();
    let mut qp: Vec<BigInt> = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        qp[i] = &qp[i - 1] * q;
    }
    for (i, c) in a.iter().enumerate() {
        s += c * &pp * &qp[n - i];
        pp *= p;
    }
    s
}

// ---- Sturm ----

pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // positive rescaling keeps the sign pattern
        let prim = from_int(&to_primitive_int(&r));
        seq.push(prim.neg());
    }
    seq
}

fn sturm_variations(seq: &[UniPoly], x: &Rat) -> usize {
    let mut last = 0;
    let mut v = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &UniPoly, a: &Rat, b: &Rat) -> Result<usize, AlgebraError> {
    if a >= b {
        return Err(AlgebraError::EmptyInterval {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let sf = p.squarefree_part();
    let seq = sturm_sequence(&sf);
    let va = sturm_variations(&seq, a);
    let vb = sturm_variations(&seq, b);
    Ok(va.saturating_sub(vb))
}

// ---- Descartes isolation ----

/// Isolating open intervals for the real roots of `p` in `(a, b)`, each of
/// width at most `max_width`.
pub fn isolate_roots(
    p: &UniPoly,
    a: &Rat,
    b: &Rat,
    max_width: &Rat,
) -> Result<Vec<(Rat, Rat)>, AlgebraError> {
    if a >= b {
        return Err(AlgebraError::EmptyInterval {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) > 0 {
        let inside = sturm_count(&g, a, b)? - usize::from(g.eval(b).is_zero());
        if inside > 0 {
            return Err(AlgebraError::NotSquarefree);
        }
    }
    isolate_squarefree(&p.squarefree_part(), a, b, max_width)
}

/// As [`isolate_roots`] without the squarefree check; `p` must be squarefree.
pub fn isolate_squarefree(
    p: &UniPoly,
    a: &Rat,
    b: &Rat,
    max_width: &Rat,
) -> Result<Vec<(Rat, Rat)>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let pint = to_primitive_int(p);
    // a + (b - a) t = (c + d t) / e
    let e = a.denom().lcm(b.denom());
    let c = a.numer() * (&e / a.denom());
    let d = b.numer() * (&e / b.denom()) - &c;
    let unit = affine_int(&pint, &c, &d, &e);
    let mut found = Vec::new();
    let mut stack = vec![(unit, a.clone(), b.clone())];
    while let Some((q, lo, hi)) = stack.pop() {
        match descartes_unit(&q) {
            0 => {}
            1 => found.push((lo, hi)),
            _ => {
                let (sp, sq) = split_ratio(&q);
                let s = Rat::new(sp.clone(), sq.clone());
                let mid = &lo + (&hi - &lo) * &s;
                let left = affine_int(&q, &BigInt::zero(), &sp, &sq);
                let right = affine_int(&q, &sp, &(&sq - &sp), &sq);
                stack.push((right, mid.clone(), hi));
                stack.push((left, lo, mid));
            }
        }
    }
    found.sort();
    Ok(found
        .into_iter()
        .map(|(lo, hi)| refine_isolated(p, &lo, &hi, max_width))
        .collect())
}

fn split_ratio(q: &[BigInt]) -> (BigInt, BigInt) {
    let cands: [(i64, i64); 8] = [(1, 2), (3, 7), (4, 7), (2, 5), (3, 5), (5, 11), (6, 11), (1, 3)];
    for (p, d) in cands {
        let (p, d) = (BigInt::from(p), BigInt::from(d));
        if !int_eval_at_ratio(q, &p, &d).is_zero() {
            return (p, d);
        }
    }
    // a polynomial of bounded degree cannot vanish at all of these plus
    // infinitely many more; walk a sequence until one works
    let mut k = 13i64;
    loop {
        let (p, d) = (BigInt::from(k / 2), BigInt::from(k));
        if !int_eval_at_ratio(q, &p, &d).is_zero() {
            return (p, d);
        }
        k += 2;
    }
}

/// Shrink an isolating interval of a squarefree `p` to width `w`.
pub fn refine_isolated(p: &UniPoly, lo: &Rat, hi: &Rat, w: &Rat) -> (Rat, Rat) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let mut slo = p.sign_at(&lo);
    let shi = p.sign_at(&hi);
    if slo == 0 || shi == 0 || slo == shi {
        // endpoint at a neighbor root: fall back on Descartes halving once so
        // that both endpoints carry a sign
        return refine_descartes(p, &lo, &hi, w);
    }
    while &hi - &lo > *w {
        let m = (&lo + &hi) / Rat::from_integer(2.into());
        let sm = p.sign_at(&m);
        if sm == 0 {
            let quarter = (&hi - &lo) / Rat::from_integer(4.into());
            let eps = std::cmp::min(quarter, w / Rat::from_integer(4.into()));
            return (&m - &eps, &m + &eps);
        }
        if sm == slo {
            lo = m;
            slo = sm;
        } else {
            hi = m;
        }
    }
    (lo, hi)
}

fn refine_descartes(p: &UniPoly, lo: &Rat, hi: &Rat, w: &Rat) -> (Rat, Rat) {
    let pint = to_primitive_int(p);
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    loop {
        let m = (&lo + &hi) / Rat::from_integer(2.into());
        if p.sign_at(&m) == 0 {
            let quarter = (&hi - &lo) / Rat::from_integer(4.into());
            let eps = std::cmp::min(quarter, w / Rat::from_integer(4.into()));
            return (&m - &eps, &m + &eps);
        }
        let e = lo.denom().lcm(m.denom());
        let c = lo.numer() * (&e / lo.denom());
        let d = m.numer() * (&e / m.denom()) - &c;
        let left = affine_int(&pint, &c, &d, &e);
        if descartes_unit(&left) == 1 {
            hi = m;
        } else {
            lo = m;
        }
        let slo = p.sign_at(&lo);
        let shi = p.sign_at(&hi);
        if slo != 0 && shi != 0 && slo != shi {
            return refine_isolated(p, &lo, &hi, w);
        }
        if &hi - &lo <= *w {
            return (lo, hi);
        }
    }
}

// ---- real-scaled polynomials ----

/// Polynomial `scale * poly(x)` with a symbolic real scale and rational shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPolyR {
    scale: RealExpr,
    poly: UniPoly,
}

impl UniPolyR {
    pub fn new(scale: RealExpr, poly: UniPoly) -> Self {
        UniPolyR { scale, poly }
    }

    pub fn from_rational(poly: UniPoly) -> Self {
        UniPolyR {
            scale: RealExpr::one(),
            poly,
        }
    }

    pub fn scale(&self) -> &RealExpr {
        &self.scale
    }

    pub fn shape(&self) -> &UniPoly {
        &self.poly
    }

    pub fn is_degree_ambiguous(&self, max_prec: u32) -> bool {
        !self.poly.is_zero() && sign_of(&self.scale, max_prec) == Sign::Undecided
    }

    pub fn degree(&self, max_prec: u32) -> Result<Option<usize>, AlgebraError> {
        if self.poly.is_zero() {
            return Ok(None);
        }
        if self.is_degree_ambiguous(max_prec) {
            return Err(AlgebraError::DegreeAmbiguous);
        }
        Ok(self.poly.degree())
    }

    /// Sign of the leading coefficient.
    pub fn leading_sign(&self, max_prec: u32) -> Sign {
        let s = sign_of(&self.scale, max_prec);
        match (s.to_i32(), self.poly.lc()) {
            (Some(s), Some(lc)) => Sign::from_i32(if lc.is_positive() { s } else { -s }),
            _ => Sign::Undecided,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        UniPolyR {
            scale: self.scale.mul(&other.scale),
            poly: self.poly.mul(&other.poly),
        }
    }

    pub fn coeff(&self, i: usize) -> RealExpr {
        self.scale.mul_rat(&self.poly.coeff(i))
    }

    pub fn eval_iv(
        &self,
        ctx: &IntervalCtx,
        x: &DyadicInterval,
    ) -> Result<DyadicInterval, AlgebraError> {
        let s = self.scale.eval_ctx(ctx)?;
        Ok(ctx.mul(&s, &self.poly.eval_iv(ctx, x)))
    }
}

impl Serialize for UniPolyR {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("UniPolyR", 2)?;
        st.serialize_field("scale", &self.scale)?;
        st.serialize_field("poly", &self.poly.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &rat(0, 1), &rat(2, 1)).unwrap(), 1);
        let q = UniPoly::linear(rat(-1, 2), rat(1, 1)).mul(&UniPoly::linear(rat(-1, 3), rat(1, 1)));
        assert_eq!(sturm_count(&q, &rat(0, 1), &rat(1, 1)).unwrap(), 2);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &rat(-10, 1), &rat(10, 1)).unwrap(), 0);
    }

    #[test]
    fn sturm_half_open_endpoints() {
        // roots 0 and 1
        let q = p(&[0, -1, 1]);
        assert_eq!(sturm_count(&q, &rat(0, 1), &rat(1, 1)).unwrap(), 1);
        assert_eq!(sturm_count(&q, &rat(-1, 1), &rat(0, 1)).unwrap(), 1);
        assert_eq!(sturm_count(&q, &rat(-1, 1), &rat(1, 1)).unwrap(), 2);
    }

    #[test]
    fn isolate_sqrt_two() {
        let r = isolate_roots(&p(&[-2, 0, 1]), &rat(0, 1), &rat(2, 1), &rat(1, 8)).unwrap();
        assert_eq!(r.len(), 1);
        let (lo, hi) = &r[0];
        assert!(*lo >= rat(1375, 1000) && *hi <= rat(3, 2));
        assert!(lo * lo < rat(2, 1) && hi * hi > rat(2, 1));
    }

    #[test]
    fn isolate_two_rational_roots() {
        let q = UniPoly::linear(rat(-1, 2), rat(1, 1)).mul(&UniPoly::linear(rat(-1, 3), rat(1, 1)));
        let r = isolate_roots(&q, &rat(0, 1), &rat(1, 1), &rat(1, 100)).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].0 < rat(1, 3) && rat(1, 3) < r[0].1);
        assert!(r[1].0 < rat(1, 2) && rat(1, 2) < r[1].1);
        assert!(r[0].1 <= r[1].0);
    }

    #[test]
    fn cube_is_not_squarefree() {
        assert_eq!(
            isolate_roots(&p(&[0, 0, 0, 1]), &rat(-1, 1), &rat(1, 1), &rat(1, 4)),
            Err(AlgebraError::NotSquarefree)
        );
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.squarefree_part().monic(), p(&[-1, 1]).mul(&p(&[2, 1])));
        let dec = a.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[5, -3, 0, 7, 2]);
        let b = p(&[1, 0, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn compose_and_valuations() {
        let a = p(&[0, 0, 1, -1]); // x^2 (1 - x)
        assert_eq!(a.x_adic_valuation(), 2);
        assert_eq!(a.one_adic_valuation(), 1);
        let shifted = a.compose_linear(&rat(1, 1), &rat(1, 1));
        assert_eq!(shifted.eval(&rat(0, 1)), a.eval(&rat(1, 1)));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "x^2 - 2*x + 1");
        assert_eq!(UniPoly::linear(rat(1, 2), rat(-1, 1)).to_string(), "-x + (1/2)");
    }
}
