//! The three affine charts covering the real points of the projective line
//! away from 0, 1 and infinity.

use num_traits::One;
use serde::Serialize;

use crate::algebra::{Rat, UniPoly, UniPolyR};
use crate::reduce::{PhiMap, ReduceError};

/// Open arcs of the real projective line cut out by 0, 1 and infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// `(0, 1)`, coordinate `u = x`.
    Unit,
    /// `(1, inf)`, coordinate `u = 1 - 1/x`.
    AboveOne,
    /// `(-inf, 0)`, coordinate `u = 1/(1 - x)`.
    Negative,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::Unit, Region::AboveOne, Region::Negative];

    /// The point `x` with chart coordinate `u`.
    pub fn to_x(self, u: &Rat) -> Rat {
        let one = Rat::one();
        match self {
            Region::Unit => u.clone(),
            Region::AboveOne => &one / (&one - u),
            Region::Negative => &one - &one / u,
        }
    }
}

/// `phi^m` restricted to a region, written as `sigma * chi(u)^m` with `chi` a
/// map of the same shape on (0,1).
#[derive(Clone, Debug)]
pub struct Chart {
    pub region: Region,
    pub chi: PhiMap,
    pub sigma: i32,
}

/// `sum c_i a(u)^i b(u)^(d-i)` for a chart substitution `x = a/b`.
fn homogenize(p: &UniPoly, a: &UniPoly, b: &UniPoly) -> UniPoly {
    let d = p.degree().unwrap_or(0);
    p.coeffs()
        .iter()
        .enumerate()
        .fold(UniPoly::zero(), |acc, (i, c)| {
            acc.add(&a.pow(i as u32).mul(&b.pow((d - i) as u32)).scale(c))
        })
}

fn parity_sign(m: u64, r: &Rat) -> i32 {
    let v = r * Rat::from_integer(m.into());
    if v.to_integer() % 2 == 0.into() {
        1
    } else {
        -1
    }
}

pub fn chart(phi: &PhiMap, region: Region) -> Result<Chart, ReduceError> {
    let e = phi.exponent_at_infinity();
    let (p, q) = (phi.p(), phi.q());
    let subst = |a: &UniPoly, b: &UniPoly| -> (UniPolyR, UniPolyR) {
        (
            UniPolyR::new(p.scale().clone(), homogenize(p.shape(), a, b)),
            UniPolyR::new(q.scale().clone(), homogenize(q.shape(), a, b)),
        )
    };
    let (alpha, beta, (pp, qq), sigma) = match region {
        Region::Unit => return Ok(Chart { region, chi: phi.clone(), sigma: 1 }),
        // x = 1 / (1 - u)
        Region::AboveOne => (
            phi.beta().clone(),
            -&e,
            subst(&UniPoly::one(), &UniPoly::from_i64(&[1, -1])),
            parity_sign(phi.m(), phi.beta()),
        ),
        // x = (u - 1) / u
        Region::Negative => (
            -&e,
            phi.alpha().clone(),
            subst(&UniPoly::from_i64(&[-1, 1]), &UniPoly::x()),
            parity_sign(phi.m(), phi.alpha()),
        ),
    };
    let chi = PhiMap::new(alpha, beta, pp, qq)?;
    Ok(Chart { region, chi, sigma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, DyadicInterval, IntervalCtx};
    use num_traits::ToPrimitive;

    /// `phi(x)^m` against `sigma chi(u)^m` at sample points of each region.
    #[test]
    fn charts_reproduce_phi_power() {
        let p = UniPoly::from_i64(&[2, -1, 3]);
        let q = UniPoly::from_i64(&[5, 1]);
        let phi = PhiMap::rational(rat(2, 3), rat(-1, 2), p.clone(), q.clone()).unwrap();
        let m = phi.m() as i64;
        assert_eq!(m, 6);
        let psi = |x: f64| {
            let px = p.coeffs().iter().rev().fold(0.0, |a, c| a * x + c.to_f64().unwrap());
            let qx = q.coeffs().iter().rev().fold(0.0, |a, c| a * x + c.to_f64().unwrap());
            // x^{m alpha} (1-x)^{m beta} (P/Q)^m with integer powers
            x.powi((2 * m / 3) as i32) * (1.0 - x).powi((-m / 2) as i32) * (px / qx).powi(m as i32)
        };
        let ctx = IntervalCtx::new(80);
        for region in Region::ALL {
            let c = chart(&phi, region).unwrap();
            for u in [rat(1, 7), rat(1, 2), rat(5, 6)] {
                let x = region.to_x(&u);
                let want = psi(x.to_f64().unwrap());
                let chi = c.chi.eval_iv(&ctx, &DyadicInterval::from_rat(&u, 80)).unwrap().mid().to_f64();
                let got = c.sigma as f64 * chi.powi(m as i32);
                assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{region:?} {u}: {got} {want}");
            }
        }
    }
}
