//! Damped Newton iteration in logarithmic coordinates. Uncertified; used to
//! spot-check certified results.

use serde::Serialize;

use crate::algebra::{Dyadic, DyadicInterval, IntervalCtx, Rat, Rounding};
use crate::bivar::SparsePolyQ2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericSolution {
    pub x: f64,
    pub y: f64,
    /// `max(|f|, |g|)` at the polished point.
    pub residual: f64,
    #[serde(skip)]
    pub x_fine: Dyadic,
    #[serde(skip)]
    pub y_fine: Dyadic,
}

struct Terms(Vec<(f64, f64, f64)>);

impl Terms {
    fn new(f: &SparsePolyQ2) -> Self {
        Terms(
            f.terms()
                .iter()
                .map(|t| (t.coeff.to_f64(), rat_f64(&t.exp.0), rat_f64(&t.exp.1)))
                .collect(),
        )
    }

    /// Value, log-derivatives and the sum of absolute term values at
    /// `(e^u, e^v)`.
    fn eval(&self, u: f64, v: f64) -> (f64, f64, f64, f64) {
        self.0.iter().fold((0.0, 0.0, 0.0, 0.0), |acc, &(c, a, b)| {
            let t = c * (a * u + b * v).exp();
            (acc.0 + t, acc.1 + a * t, acc.2 + b * t, acc.3 + t.abs())
        })
    }
}

fn rat_f64(r: &Rat) -> f64 {
    Dyadic::from_rat(r, 64, Rounding::Down).to_f64()
}

fn scaled_residual(f: &Terms, g: &Terms, u: f64, v: f64) -> f64 {
    let (a, _, _, sa) = f.eval(u, v);
    let (b, _, _, sb) = g.eval(u, v);
    (a / sa).powi(2) + (b / sb).powi(2)
}

fn newton_f64(f: &Terms, g: &Terms, mut u: f64, mut v: f64) -> Option<(f64, f64)> {
    for _ in 0..200 {
        let (fv, fu, fw, sf) = f.eval(u, v);
        let (gv, gu, gw, sg) = g.eval(u, v);
        let r = (fv / sf).powi(2) + (gv / sg).powi(2);
        if !r.is_finite() {
            return None;
        }
        if r < 1e-22 {
            return Some((u, v));
        }
        let det = fu * gw - fw * gu;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let du = -(fv * gw - fw * gv) / det;
        let dv = -(fu * gv - fv * gu) / det;
        let mut lambda = 1.0;
        loop {
            let (nu, nv) = (u + lambda * du, v + lambda * dv);
            if scaled_residual(f, g, nu, nv) < r {
                (u, v) = (nu, nv);
                break;
            }
            lambda /= 2.0;
            if lambda < 1e-6 {
                return None;
            }
        }
        if u.abs() > 60.0 || v.abs() > 60.0 {
            return None;
        }
    }
    None
}

/// Values of `f` and its partial derivatives at a point, in high precision.
fn eval_fine(ctx: &IntervalCtx, f: &SparsePolyQ2, x: &Dyadic, y: &Dyadic) -> Option<[Dyadic; 3]> {
    let (xi, yi) = (DyadicInterval::point(x.clone()), DyadicInterval::point(y.clone()));
    let mut acc = [DyadicInterval::zero(), DyadicInterval::zero(), DyadicInterval::zero()];
    for t in f.terms() {
        let c = t.coeff.eval_ctx(ctx).ok()?;
        let (a, b) = (&t.exp.0, &t.exp.1);
        let one = Rat::from_integer(1.into());
        let v = ctx.mul(&c, &ctx.mul(&ctx.pow_rat(&xi, a).ok()?, &ctx.pow_rat(&yi, b).ok()?));
        let dx = ctx.mul(
            &ctx.mul(&c, &ctx.rat(a)),
            &ctx.mul(&ctx.pow_rat(&xi, &(a - &one)).ok()?, &ctx.pow_rat(&yi, b).ok()?),
        );
        let dy = ctx.mul(
            &ctx.mul(&c, &ctx.rat(b)),
            &ctx.mul(&ctx.pow_rat(&xi, a).ok()?, &ctx.pow_rat(&yi, &(b - &one)).ok()?),
        );
        acc = [ctx.add(&acc[0], &v), ctx.add(&acc[1], &dx), ctx.add(&acc[2], &dy)];
    }
    Some(acc.map(|i| i.mid()))
}

fn polish(f: &SparsePolyQ2, g: &SparsePolyQ2, x: f64, y: f64, prec: u32) -> Option<NumericSolution> {
    let ctx = IntervalCtx::new(prec);
    let d = |v: f64| Rat::from_float(v).map(|r| Dyadic::from_rat(&r, prec, Rounding::Down));
    let (mut x, mut y) = (d(x)?, d(y)?);
    let dn = Rounding::Down;
    for _ in 0..12 {
        let [fv, fx, fy] = eval_fine(&ctx, f, &x, &y)?;
        let [gv, gx, gy] = eval_fine(&ctx, g, &x, &y)?;
        let det = fx.mul(&gy, prec, dn).sub(&fy.mul(&gx, prec, dn), prec, dn);
        if det.is_zero() {
            break;
        }
        let nx = fv.mul(&gy, prec, dn).sub(&fy.mul(&gv, prec, dn), prec, dn);
        let ny = fx.mul(&gv, prec, dn).sub(&fv.mul(&gx, prec, dn), prec, dn);
        x = x.sub(&nx.div(&det, prec, dn), prec, dn);
        y = y.sub(&ny.div(&det, prec, dn), prec, dn);
        if !x.is_positive() || !y.is_positive() {
            return None;
        }
    }
    let [fv, ..] = eval_fine(&ctx, f, &x, &y)?;
    let [gv, ..] = eval_fine(&ctx, g, &x, &y)?;
    Some(NumericSolution {
        x: x.to_f64(),
        y: y.to_f64(),
        residual: fv.to_f64().abs().max(gv.to_f64().abs()),
        x_fine: x,
        y_fine: y,
    })
}

/// Approximate positive solutions from a `seeds x seeds` grid of starting
/// points in `log x, log y` over `[-7, 3]`, polished at 192 bits.
pub fn numeric_solve(f: &SparsePolyQ2, g: &SparsePolyQ2, seeds: usize) -> Vec<NumericSolution> {
    let one_sign = |p: &SparsePolyQ2| {
        let (pos, neg) = p.sign_pattern();
        pos == 0 || neg == 0
    };
    if one_sign(f) || one_sign(g) {
        return Vec::new();
    }
    let (tf, tg) = (Terms::new(f), Terms::new(g));
    let n = seeds.max(2);
    let mut found: Vec<(f64, f64)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let u = -7.0 + 10.0 * i as f64 / (n - 1) as f64;
            let v = -7.0 + 10.0 * j as f64 / (n - 1) as f64;
            if let Some((u, v)) = newton_f64(&tf, &tg, u, v) {
                if !found.iter().any(|&(a, b)| (a - u).abs() < 1e-6 && (b - v).abs() < 1e-6) {
                    found.push((u, v));
                }
            }
        }
    }
    let mut out: Vec<NumericSolution> = found
        .into_iter()
        .filter_map(|(u, v)| polish(f, g, u.exp(), v.exp(), 192))
        .collect();
    out.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    out.dedup_by(|a, b| (a.x - b.x).abs() < 1e-12 && (a.y - b.y).abs() < 1e-12);
    out
}
