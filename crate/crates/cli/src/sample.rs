//! Interval samples of `F` or `phi` on (0,1) for plotting.

use std::io::Write;

use fewnomial::algebra::{Dyadic, DyadicInterval, IntervalCtx, Rat, Rounding};
use fewnomial::reduce::{build_phi, recursion_chain, to_F, PhiMap, ReduceError};
use thiserror::Error;

use crate::parse::SystemSpec;

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("need at least 2 sample points")]
    TooFewPoints,
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    F,
    Phi,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleRow {
    pub x: f64,
    /// Outward-rounded enclosure; `None` where evaluation failed (a pole).
    pub value: Option<(f64, f64)>,
}

fn f64_down(d: &Dyadic) -> f64 {
    let v = d.to_f64();
    match Rat::from_float(v) {
        Some(r) if r > d.to_rat() => v.next_down(),
        _ => v,
    }
}

fn f64_up(d: &Dyadic) -> f64 {
    let v = d.to_f64();
    match Rat::from_float(v) {
        Some(r) if r < d.to_rat() => v.next_up(),
        _ => v,
    }
}

fn sample_with<F>(n: usize, eval: F) -> Result<Vec<SampleRow>, SampleError>
where
    F: Fn(&DyadicInterval) -> Option<DyadicInterval>,
{
    if n < 2 {
        return Err(SampleError::TooFewPoints);
    }
    Ok((1..=n)
        .map(|i| {
            let t = Rat::new((i as i64).into(), ((n + 1) as i64).into());
            let x = Dyadic::from_rat(&t, 64, Rounding::Down);
            let v = eval(&DyadicInterval::point(x.clone()));
            SampleRow {
                x: x.to_f64(),
                value: v.map(|v| (f64_down(v.lo()), f64_up(v.hi()))),
            }
        })
        .collect())
}

pub fn sample_phi(phi: &PhiMap, n: usize, precision: u32) -> Result<Vec<SampleRow>, SampleError> {
    let ctx = IntervalCtx::new(precision);
    sample_with(n, |x| phi.eval_iv(&ctx, x).ok())
}

/// Samples at `i / (n + 1)`, `i = 1..=n`.
pub fn cmd_sample(spec: &SystemSpec, what: Target, n: usize) -> Result<Vec<SampleRow>, SampleError> {
    let red = to_F(&spec.f, &spec.g)?;
    let prec = spec.options.precision;
    match what {
        Target::F => {
            let ctx = IntervalCtx::new(prec);
            let coeffs: Vec<DyadicInterval> = red
                .big_f
                .terms()
                .iter()
                .map(|t| t.coeff.eval_ctx(&ctx))
                .collect::<Result<_, _>>()
                .map_err(ReduceError::from)?;
            sample_with(n, |x| {
                let one_minus = ctx.sub(&DyadicInterval::one(), x);
                let mut acc = DyadicInterval::zero();
                for (t, c) in red.big_f.terms().iter().zip(&coeffs) {
                    let v = ctx.mul(&ctx.pow_rat(x, &t.k).ok()?, &ctx.pow_rat(&one_minus, &t.l).ok()?);
                    acc = ctx.add(&acc, &ctx.mul(c, &v));
                }
                Some(acc)
            })
        }
        Target::Phi => {
            let chain = recursion_chain(&red.big_f)?;
            sample_phi(&build_phi(chain.last())?, n, prec)
        }
    }
}

pub fn write_csv(rows: &[SampleRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "x,value_lo,value_hi")?;
    for r in rows {
        match r.value {
            Some((lo, hi)) => writeln!(out, "{:e},{:e},{:e}", r.x, lo, hi)?,
            None => writeln!(out, "{:e},,", r.x)?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_system;
    use fewnomial::algebra::UniPoly;

    #[test]
    fn sextic_f_changes_sign_five_times() {
        let spec = parse_system("x^6 + (44/31)y^3 - y ; y^6 + (44/31)x^3 - x").unwrap();
        let rows = cmd_sample(&spec, Target::F, 1000).unwrap();
        assert_eq!(rows.len(), 1000);
        let signs: Vec<i32> = rows
            .iter()
            .filter_map(|r| r.value)
            .filter_map(|(lo, hi)| {
                if lo > 0.0 {
                    Some(1)
                } else if hi < 0.0 {
                    Some(-1)
                } else {
                    None
                }
            })
            .collect();
        assert_eq!(signs.windows(2).filter(|w| w[0] != w[1]).count(), 5);
    }

    #[test]
    fn monotone_phi() {
        let one = Rat::from_integer(1.into());
        let phi = PhiMap::rational(one.clone(), -one, UniPoly::one(), UniPoly::one()).unwrap();
        let rows = sample_phi(&phi, 50, 64).unwrap();
        for w in rows.windows(2) {
            let (a, b) = (w[0].value.unwrap(), w[1].value.unwrap());
            assert!(a.1 < b.0);
        }
    }

    #[test]
    fn one_point_is_rejected() {
        let spec = parse_system("x - y ; 1 + x - y").unwrap();
        assert!(matches!(cmd_sample(&spec, Target::F, 1), Err(SampleError::TooFewPoints)));
    }

    #[test]
    fn outward_rounding() {
        let third = Dyadic::from_rat(&Rat::new(1.into(), 3.into()), 200, Rounding::Down);
        assert!(Rat::from_float(f64_down(&third)).unwrap() <= third.to_rat());
        assert!(Rat::from_float(f64_up(&third)).unwrap() >= third.to_rat());
    }
}
