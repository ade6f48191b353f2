//! Monomial changes of coordinates on the positive orthant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{BivarError, Exponent, SparsePolyQ2};
use crate::algebra::{RealExpr, Rat};

/// Product of rational powers of positive bases, kept symbolic so that
/// exponents of a repeated base cancel exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerProduct {
    factors: Vec<(Base, Rat)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Base {
    Int(BigInt),
    Expr(RealExpr),
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct {
            factors: Vec::new(),
        }
    }

    /// Panics unless `r > 0`.
    pub fn from_rat(r: &Rat) -> Self {
        assert!(r.is_positive(), "power product of nonpositive rational {r}");
        let mut p = Self::one();
        p.push(Base::Int(r.numer().clone()), Rat::one());
        p.push(Base::Int(r.denom().clone()), -Rat::one());
        p
    }

    /// `e` must be certified positive by the caller.
    pub fn from_positive(e: &RealExpr) -> Self {
        match e.as_rat() {
            Some(r) => Self::from_rat(r),
            None => {
                let mut p = Self::one();
                p.push(Base::Expr(e.clone()), Rat::one());
                p
            }
        }
    }

    fn push(&mut self, b: Base, e: Rat) {
        if let Base::Int(n) = &b {
            if n.is_one() {
                return;
            }
        }
        if let Some(slot) = self.factors.iter_mut().find(|(fb, _)| *fb == b) {
            slot.1 += e;
        } else {
            self.factors.push((b, e));
        }
        self.factors.retain(|(_, e)| !e.is_zero());
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, e) in &other.factors {
            out.push(b.clone(), e.clone());
        }
        out
    }

    pub fn pow(&self, k: &Rat) -> Self {
        PowerProduct {
            factors: if k.is_zero() {
                Vec::new()
            } else {
                self.factors
                    .iter()
                    .map(|(b, e)| (b.clone(), e * k))
                    .collect()
            },
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn to_expr(&self) -> Result<RealExpr, BivarError> {
        let mut rational = Rat::one();
        let mut out = RealExpr::one();
        for (b, e) in &self.factors {
            match b {
                Base::Int(n) => {
                    // split off the integer part of the exponent exactly
                    let whole = e.floor();
                    let frac = e - &whole;
                    let w = whole.to_integer().to_i32().ok_or(crate::algebra::AlgebraError::Overflow)?;
                    let nr = Rat::from_integer(n.clone());
                    rational *= num_traits::pow::Pow::pow(&nr, w);
                    if !frac.is_zero() {
                        out = out.mul(&RealExpr::from_rat(nr).pow(&frac)?);
                    }
                }
                Base::Expr(x) => out = out.mul(&x.pow(e)?),
            }
        }
        Ok(RealExpr::from_rat(rational).mul(&out))
    }
}

pub type Mat2 = [[Rat; 2]; 2];

fn det(m: &Mat2) -> Rat {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

fn inv(m: &Mat2) -> Option<Mat2> {
    let d = det(m);
    if d.is_zero() {
        return None;
    }
    Some([
        [&m[1][1] / &d, -&m[0][1] / &d],
        [-&m[1][0] / &d, &m[0][0] / &d],
    ])
}

/// Old coordinates in terms of new ones:
/// `u_i = s_i * z^{A[i][0]} * w^{A[i][1]}`, so the monomial `u^a` becomes
/// `s^a * (z, w)^{a A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    matrix: Mat2,
    scalings: [PowerProduct; 2],
}

impl MonomialMap {
    pub fn new(matrix: Mat2, scalings: [PowerProduct; 2]) -> Result<Self, BivarError> {
        if det(&matrix).is_zero() {
            return Err(BivarError::NonInvertibleMap);
        }
        Ok(MonomialMap { matrix, scalings })
    }

    pub fn identity() -> Self {
        MonomialMap {
            matrix: [[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]],
            scalings: [PowerProduct::one(), PowerProduct::one()],
        }
    }

    /// Map defined by new coordinates `n_j = b_j * u^{M[j]}`.
    pub fn from_forward(m: &Mat2, b: &[PowerProduct; 2]) -> Result<Self, BivarError> {
        let a = inv(m).ok_or(BivarError::NonInvertibleMap)?;
        let s = |i: usize| b[0].pow(&-&a[i][0]).mul(&b[1].pow(&-&a[i][1]));
        let scalings = [s(0), s(1)];
        Ok(MonomialMap {
            matrix: a,
            scalings,
        })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    pub fn scalings(&self) -> &[PowerProduct; 2] {
        &self.scalings
    }

    pub fn det(&self) -> Rat {
        det(&self.matrix)
    }

    pub fn is_unimodular(&self) -> bool {
        self.matrix.iter().flatten().all(|c| c.is_integer()) && self.det().abs().is_one()
    }

    pub fn inverse(&self) -> Result<Self, BivarError> {
        // n = (u / s)^{A^{-1}} row-wise, i.e. forward data M = A^{-1}, b_j = prod_i s_i^{-M[j][i]}
        let m = inv(&self.matrix).ok_or(BivarError::NonInvertibleMap)?;
        let b = |j: usize| {
            self.scalings[0]
                .pow(&-&m[j][0])
                .mul(&self.scalings[1].pow(&-&m[j][1]))
        };
        let scalings = [b(0), b(1)];
        Ok(MonomialMap {
            matrix: m,
            scalings,
        })
    }

    pub fn map_exponent(&self, a: &Exponent) -> Exponent {
        let m = &self.matrix;
        (
            &a.0 * &m[0][0] + &a.1 * &m[1][0],
            &a.0 * &m[0][1] + &a.1 * &m[1][1],
        )
    }

    pub fn apply(&self, f: &SparsePolyQ2) -> Result<SparsePolyQ2, BivarError> {
        let mut out = Vec::with_capacity(f.len());
        for t in f.terms() {
            let scale = self.scalings[0]
                .pow(&t.exp.0)
                .mul(&self.scalings[1].pow(&t.exp.1));
            let coeff = match t.coeff.as_rat() {
                Some(r) => {
                    let mag = PowerProduct::from_rat(&r.abs()).mul(&scale).to_expr()?;
                    if r.is_negative() {
                        mag.neg()
                    } else {
                        mag
                    }
                }
                None => t.coeff.mul(&scale.to_expr()?),
            };
            out.push((coeff, self.map_exponent(&t.exp)));
        }
        SparsePolyQ2::new(out)
    }
}

impl Serialize for MonomialMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MonomialMap", 2)?;
        let m: Vec<Vec<String>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect();
        st.serialize_field("matrix", &m)?;
        let sc: Vec<String> = self
            .scalings
            .iter()
            .map(|p| p.to_expr().map(|e| e.to_string()).unwrap_or_default())
            .collect();
        st.serialize_field("scalings", &sc)?;
        st.end()
    }
}

/// Signs of a trinomial reduced to one negative term: its index and the
/// polynomial with signs flipped if needed.
fn single_negative(g: &SparsePolyQ2) -> Result<(usize, SparsePolyQ2), BivarError> {
    if g.len() != 3 {
        return Err(BivarError::WrongTermCount {
            expected: 3,
            found: g.len(),
        });
    }
    let g = match g.sign_pattern() {
        (3, 0) | (0, 3) => return Err(BivarError::AllSameSign),
        (1, 2) => g.neg(),
        _ => g.clone(),
    };
    let idx = g.terms().iter().position(|t| t.sign < 0).unwrap();
    Ok((idx, g))
}

fn rel(a: &Exponent, b: &Exponent) -> Exponent {
    (&a.0 - &b.0, &a.1 - &b.1)
}

/// Data of the reduction of a trinomial to `-1 + x + y`.
#[derive(Clone, Debug, Serialize)]
pub struct UnitNormalization {
    pub map: MonomialMap,
    /// Exponent of the term turned into `-1`; companions are divided by it.
    #[serde(serialize_with = "super::ser_exp")]
    pub shift: Exponent,
    pub normalized: SparsePolyQ2,
}

impl UnitNormalization {
    /// Image of a companion polynomial under the same change of coordinates.
    pub fn transform(&self, f: &SparsePolyQ2) -> Result<SparsePolyQ2, BivarError> {
        let shifted = f.mul_monomial(&RealExpr::one(), &(-&self.shift.0, -&self.shift.1))?;
        self.map.apply(&shifted)
    }

    /// Image of a single exponent of a companion polynomial.
    pub fn map_exponent(&self, e: &Exponent) -> Exponent {
        self.map.map_exponent(&rel(e, &self.shift))
    }
}

/// Rational map under which `g` becomes `-1 + x + y`. The positive term
/// sent to `x` is the one making `det[e_x; e_y] > 0`.
pub fn normalize_trinomial_unit(g: &SparsePolyQ2) -> Result<UnitNormalization, BivarError> {
    let (neg, g) = single_negative(g)?;
    let t = g.terms();
    let shift = t[neg].exp.clone();
    let lead = t[neg].coeff.neg();
    let mut pos: Vec<usize> = (0..3).filter(|&i| i != neg).collect();
    let e = |i: usize| rel(&t[i].exp, &shift);
    let (ea, eb) = (e(pos[0]), e(pos[1]));
    let d = &ea.0 * &eb.1 - &ea.1 * &eb.0;
    if d.is_zero() {
        return Err(BivarError::DegenerateSupport);
    }
    if d.is_negative() {
        pos.swap(0, 1);
    }
    let (ex, ey) = (e(pos[0]), e(pos[1]));
    let m = [[ex.0, ex.1], [ey.0, ey.1]];
    let b = |i: usize| -> Result<PowerProduct, BivarError> {
        let c = t[i].coeff.div(&lead)?;
        Ok(PowerProduct::from_positive(&c))
    };
    let map = MonomialMap::from_forward(&m, &[b(pos[0])?, b(pos[1])?])?;
    let divided = g.mul_monomial(&lead.recip()?, &(-&shift.0, -&shift.1))?;
    let normalized = map.apply(&divided)?;
    Ok(UnitNormalization {
        map,
        shift,
        normalized,
    })
}

/// Data of the reduction of a trinomial to `-1 + z^k3 + z^k4 w^l4`.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeNormalization {
    pub map: MonomialMap,
    #[serde(serialize_with = "super::ser_exp")]
    pub shift: Exponent,
    pub k3: i64,
    pub k4: i64,
    pub l4: i64,
    pub normalized: SparsePolyQ2,
}

impl LatticeNormalization {
    pub fn transform(&self, f: &SparsePolyQ2) -> Result<SparsePolyQ2, BivarError> {
        let shifted = f.mul_monomial(&RealExpr::one(), &(-&self.shift.0, -&self.shift.1))?;
        self.map.apply(&shifted)
    }

    /// Image of a single exponent of a companion polynomial.
    pub fn map_exponent(&self, e: &Exponent) -> Exponent {
        self.map.map_exponent(&rel(e, &self.shift))
    }
}

fn to_int(r: &Rat) -> Result<BigInt, BivarError> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(BivarError::NonIntegerExponents)
    }
}

fn small(b: &BigInt) -> Result<i64, BivarError> {
    b.to_i64()
        .ok_or(BivarError::Algebra(crate::algebra::AlgebraError::Overflow))
}

/// Unimodular change of coordinates with positive scalings under which `g`
/// becomes `-1 + z^k3 + z^k4 w^l4` with `k3 > 0` and `l4 > 0`.
///
/// The positive terms are ordered so that `det[w3; w4] > 0`, which makes
/// `l4 > 0` without inverting `w`. The second basis vector comes from the extended gcd, reduced so
/// that its first coordinate lies in `[0, |e1.0|)` (or its second in
/// `[0, |e1.1|)` when `e1.0 = 0`).
pub fn normalize_trinomial_lattice(g: &SparsePolyQ2) -> Result<LatticeNormalization, BivarError> {
    let (neg, g) = single_negative(g)?;
    let t = g.terms();
    let shift = t[neg].exp.clone();
    let lead = t[neg].coeff.neg();
    let pos: Vec<usize> = (0..3).filter(|&i| i != neg).collect();
    let w = |i: usize| -> Result<(BigInt, BigInt), BivarError> {
        let e = rel(&t[i].exp, &shift);
        Ok((to_int(&e.0)?, to_int(&e.1)?))
    };
    let (mut i3, mut i4) = (pos[0], pos[1]);
    let (mut w3, mut w4) = (w(i3)?, w(i4)?);
    let d = &w3.0 * &w4.1 - &w3.1 * &w4.0;
    if d.is_zero() {
        return Err(BivarError::DegenerateSupport);
    }
    if d.is_negative() {
        std::mem::swap(&mut i3, &mut i4);
        std::mem::swap(&mut w3, &mut w4);
    }
    let k3 = w3.0.gcd(&w3.1);
    let (p, q) = (&w3.0 / &k3, &w3.1 / &k3);
    // r, s with p s - q r = 1
    let eg = p.extended_gcd(&q);
    debug_assert!(eg.gcd.is_one());
    let (mut r, mut s) = (-eg.y, eg.x);
    if !p.is_zero() {
        let k = r.div_floor(&p.abs());
        let k = if p.is_negative() { -k } else { k };
        r -= &k * &p;
        s -= &k * &q;
    } else {
        let k = s.div_floor(&q.abs());
        let k = if q.is_negative() { -k } else { k };
        r -= &k * &p;
        s -= &k * &q;
    }
    debug_assert!((&p * &s - &q * &r).is_one());
    // (k, l) = a E^{-1} with E = [[p, q], [r, s]], E^{-1} = [[s, -q], [-r, p]]
    let k4 = &w4.0 * &s - &w4.1 * &r;
    let l4 = -&w4.0 * &q + &w4.1 * &p;
    debug_assert!(l4.is_positive());
    let c3 = t[i3].coeff.div(&lead)?;
    let c4 = t[i4].coeff.div(&lead)?;
    let k3r = Rat::from_integer(k3.clone());
    let k4r = Rat::from_integer(k4.clone());
    let l4r = Rat::from_integer(l4.clone());
    let pc3 = PowerProduct::from_positive(&c3);
    let sigma1 = pc3.pow(&k3r.recip());
    let lambda = PowerProduct::from_positive(&c4)
        .mul(&pc3.pow(&-(&k4r / &k3r)))
        .pow(&l4r.recip());
    let m = [
        [Rat::from_integer(p), Rat::from_integer(q)],
        [Rat::from_integer(r), Rat::from_integer(s)],
    ];
    let map = MonomialMap::from_forward(&m, &[sigma1, lambda])?;
    let divided = g.mul_monomial(&lead.recip()?, &(-&shift.0, -&shift.1))?;
    let normalized = map.apply(&divided)?;
    Ok(LatticeNormalization {
        map,
        shift,
        k3: small(&k3)?,
        k4: small(&k4)?,
        l4: small(&l4)?,
        normalized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, IntervalCtx};

    fn poly(t: &[(Rat, i64, i64)]) -> SparsePolyQ2 {
        SparsePolyQ2::from_rat_terms(t).unwrap()
    }

    fn is_unit_trinomial(p: &SparsePolyQ2, exps: &[Exponent; 3]) {
        assert_eq!(p.len(), 3);
        for (t, e) in p.terms().iter().zip(exps) {
            assert_eq!(&t.exp, e);
        }
        for t in p.terms() {
            let want = if t.exp.0.is_zero() && t.exp.1.is_zero() { -1 } else { 1 };
            assert_eq!(t.coeff.as_rat(), Some(&rat(want, 1)));
        }
    }

    #[test]
    fn unit_identity() {
        let g = poly(&[(rat(-1, 1), 0, 0), (rat(1, 1), 1, 0), (rat(1, 1), 0, 1)]);
        let n = normalize_trinomial_unit(&g).unwrap();
        assert_eq!(n.map, MonomialMap::identity());
        is_unit_trinomial(
            &n.normalized,
            &[(rat(0, 1), rat(0, 1)), (rat(0, 1), rat(1, 1)), (rat(1, 1), rat(0, 1))],
        );
    }

    #[test]
    fn unit_scaled_square() {
        let g = poly(&[(rat(-1, 1), 0, 0), (rat(2, 1), 2, 0), (rat(3, 1), 0, 1)]);
        let n = normalize_trinomial_unit(&g).unwrap();
        let f = poly(&[(rat(1, 1), 2, 0)]);
        let img = n.transform(&f).unwrap();
        assert_eq!(img.len(), 1);
        assert_eq!(img.terms()[0].exp, (rat(1, 1), rat(0, 1)));
        assert_eq!(img.terms()[0].coeff.as_rat(), Some(&rat(1, 2)));
    }

    #[test]
    fn all_same_sign() {
        let g = poly(&[(rat(1, 1), 0, 0), (rat(1, 1), 1, 0), (rat(1, 1), 0, 1)]);
        assert_eq!(normalize_trinomial_lattice(&g).unwrap_err(), BivarError::AllSameSign);
        assert_eq!(normalize_trinomial_unit(&g).unwrap_err(), BivarError::AllSameSign);
    }

    #[test]
    fn lattice_identity() {
        let g = poly(&[(rat(-1, 1), 0, 0), (rat(1, 1), 1, 0), (rat(1, 1), 0, 1)]);
        let n = normalize_trinomial_lattice(&g).unwrap();
        assert_eq!((n.k3, n.k4, n.l4), (1, 0, 1));
        assert_eq!(n.map, MonomialMap::identity());
    }

    #[test]
    fn lattice_sextic_second_equation() {
        // y^6 + (44/31) x^3 - x
        let g = poly(&[(rat(1, 1), 0, 6), (rat(44, 31), 3, 0), (rat(-1, 1), 1, 0)]);
        let n = normalize_trinomial_lattice(&g).unwrap();
        assert!(n.k3 > 0 && n.l4 > 0);
        assert!(n.map.is_unimodular());
        let e = |a: i64, b: i64| (rat(a, 1), rat(b, 1));
        let mut want = [e(0, 0), e(n.k3, 0), e(n.k4, n.l4)];
        want.sort();
        is_unit_trinomial(&n.normalized, &want);
    }

    #[test]
    fn degenerate_support() {
        let g = poly(&[(rat(-1, 1), 0, 0), (rat(1, 1), 1, 1), (rat(1, 1), 2, 2)]);
        assert_eq!(normalize_trinomial_unit(&g).unwrap_err(), BivarError::DegenerateSupport);
        assert_eq!(normalize_trinomial_lattice(&g).unwrap_err(), BivarError::DegenerateSupport);
    }

    #[test]
    fn inverse_roundtrip_on_points() {
        let m = MonomialMap::new(
            [[rat(2, 1), rat(1, 1)], [rat(1, 1), rat(1, 1)]],
            [PowerProduct::from_rat(&rat(3, 2)), PowerProduct::from_rat(&rat(5, 7))],
        )
        .unwrap();
        let f = poly(&[(rat(1, 1), 2, 0), (rat(-3, 1), 1, 4), (rat(7, 5), 0, 0)]);
        let back = m.inverse().unwrap().apply(&m.apply(&f).unwrap()).unwrap();
        assert_eq!(back.len(), f.len());
        let ctx = IntervalCtx::new(80);
        for (a, b) in f.terms().iter().zip(back.terms()) {
            assert_eq!(a.exp, b.exp);
            let x = a.coeff.eval_ctx(&ctx).unwrap();
            let y = b.coeff.eval_ctx(&ctx).unwrap();
            assert!(x.intersect(&y).is_some());
        }
    }
}
