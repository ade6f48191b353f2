use num_traits::One;
use serde::Serialize;

use super::{GenPoly, PhiMap, ReduceError};
use crate::algebra::{ser_rat, AlgebraError, DyadicInterval, IntervalCtx, RealExpr, Rat, UniPoly, UniPolyR};

/// `x^m (1-x)^n h(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Layer {
    #[serde(serialize_with = "ser_rat")]
    pub m: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub n: Rat,
    pub h: UniPolyR,
}

impl Layer {
    pub fn new(m: Rat, n: Rat, h: UniPolyR) -> Self {
        Layer { m, n, h }
    }

    pub fn constant(m: Rat, n: Rat, c: RealExpr) -> Self {
        Layer::new(m, n, UniPolyR::new(c, UniPoly::one()))
    }

    /// `(x^m (1-x)^n h)' = x^(m-1) (1-x)^(n-1) [(m - (m+n) x) h + x (1-x) h']`.
    pub fn derivative(&self) -> Layer {
        let h = self.h.shape();
        let lin = UniPoly::linear(self.m.clone(), -(&self.m + &self.n));
        let x1mx = UniPoly::from_i64(&[0, 1, -1]);
        let poly = lin.mul(h).add(&x1mx.mul(&h.derivative()));
        Layer {
            m: &self.m - Rat::one(),
            n: &self.n - Rat::one(),
            h: UniPolyR::new(self.h.scale().clone(), poly),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.h.shape().is_zero()
    }

    pub fn eval_iv(&self, ctx: &IntervalCtx, x: &DyadicInterval) -> Result<DyadicInterval, AlgebraError> {
        let one_minus = ctx.sub(&DyadicInterval::one(), x);
        let pre = ctx.mul(&ctx.pow_rat(x, &self.m)?, &ctx.pow_rat(&one_minus, &self.n)?);
        Ok(ctx.mul(&pre, &self.h.eval_iv(ctx, x)?))
    }
}

/// `sum_i x^m_i (1-x)^n_i h_i(x)`; `stage` is the recursion index `j` (0 for
/// representations not produced by the recursion).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LayeredRep {
    pub layers: Vec<Layer>,
    pub stage: usize,
}

impl LayeredRep {
    pub fn new(layers: Vec<Layer>, stage: usize) -> Self {
        LayeredRep { layers, stage }
    }

    pub fn eval_iv(&self, ctx: &IntervalCtx, x: &DyadicInterval) -> Result<DyadicInterval, AlgebraError> {
        let mut acc = DyadicInterval::zero();
        for l in &self.layers {
            acc = ctx.add(&acc, &l.eval_iv(ctx, x)?);
        }
        Ok(acc)
    }

    /// Largest degree among the polynomial parts.
    pub fn max_degree(&self) -> Option<usize> {
        self.layers.iter().filter_map(|l| l.h.shape().degree()).max()
    }

    pub fn derivative(&self) -> LayeredRep {
        derivative_layer(self, 1)
    }
}

/// Applies the product rule identity `r` times to every layer.
pub fn derivative_layer(rep: &LayeredRep, r: u64) -> LayeredRep {
    let layers = rep
        .layers
        .iter()
        .map(|l| (0..r).fold(l.clone(), |acc, _| acc.derivative()))
        .collect();
    LayeredRep::new(layers, rep.stage)
}

/// The functions `f_1, ..., f_{t-1}` together with the term order used.
#[derive(Clone, Debug, Serialize)]
pub struct Chain {
    /// Indices into the terms of `F`, in peeling order.
    pub order: Vec<usize>,
    pub stages: Vec<LayeredRep>,
}

impl Chain {
    /// Rolle budget `2^(j-1)` between stages `j` and `j+1`.
    pub fn budget(j: usize) -> u64 {
        1u64 << (j - 1)
    }

    /// Degree bound `2^(j-1) - 1` for stage `j`.
    pub fn degree_bound(j: usize) -> u64 {
        (1u64 << (j - 1)) - 1
    }

    pub fn last(&self) -> &LayeredRep {
        self.stages.last().expect("chain has at least one stage")
    }

    /// Whether every stage satisfies its degree bound.
    pub fn degrees_within_bounds(&self) -> bool {
        self.stages
            .iter()
            .all(|s| s.max_degree().unwrap_or(0) as u64 <= Self::degree_bound(s.stage))
    }
}

/// Chain with terms peeled in ascending `(k, l)` order.
pub fn recursion_chain(f: &GenPoly) -> Result<Chain, ReduceError> {
    let order: Vec<usize> = (0..f.len()).collect();
    recursion_chain_ordered(f, &order)
}

/// Chain with an explicit peeling order (a permutation of the term indices).
pub fn recursion_chain_ordered(f: &GenPoly, order: &[usize]) -> Result<Chain, ReduceError> {
    let t = f.len();
    if t < 2 {
        return Err(ReduceError::TooFewTerms { found: t });
    }
    let mut seen = vec![false; t];
    if order.len() != t || order.iter().any(|&i| i >= t || std::mem::replace(&mut seen[i], true)) {
        return Err(ReduceError::InvalidOrder);
    }
    let terms: Vec<_> = order.iter().map(|&i| &f.terms()[i]).collect();
    let (k1, l1) = (&terms[0].k, &terms[0].l);
    let first = LayeredRep::new(
        terms
            .iter()
            .map(|t| Layer::constant(&t.k - k1, &t.l - l1, t.coeff.clone()))
            .collect(),
        1,
    );
    let mut stages = vec![first];
    for j in 1..t - 1 {
        let r = Chain::budget(j);
        let cur = stages.last().unwrap();
        let d = derivative_layer(cur, r);
        debug_assert!(d.layers[0].is_zero(), "leading layer must differentiate to zero");
        let dk = &terms[j - 1].k - &terms[j].k + Rat::from_integer(r.into());
        let dl = &terms[j - 1].l - &terms[j].l + Rat::from_integer(r.into());
        let layers = d.layers[1..]
            .iter()
            .map(|l| Layer::new(&l.m + &dk, &l.n + &dl, l.h.clone()))
            .collect();
        stages.push(LayeredRep::new(layers, j + 1));
    }
    Ok(Chain {
        order: order.to_vec(),
        stages,
    })
}

/// Reads `f_{t-1} = -Q + x^alpha (1-x)^beta P` off a two-layer stage.
pub fn build_phi(last: &LayeredRep) -> Result<PhiMap, ReduceError> {
    let found = last.layers.len();
    let ok = found == 2 && (last.layers[0].m != last.layers[1].m || last.layers[0].n != last.layers[1].n);
    if !ok {
        return Err(ReduceError::LayerCountMismatch { found });
    }
    let (a, b) = (&last.layers[0], &last.layers[1]);
    let alpha = &b.m - &a.m;
    let beta = &b.n - &a.n;
    let q = UniPolyR::new(a.h.scale().neg(), a.h.shape().clone());
    PhiMap::new(alpha, beta, b.h.clone(), q)
}
