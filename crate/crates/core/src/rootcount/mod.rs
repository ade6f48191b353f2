//! Certified root counts on (0,1) and the explicit bounds they are checked
//! against.

mod engine;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{DyadicInterval, RealExpr, Rat, UniPolyR};
use crate::bivar::{BivarError, SparsePolyQ2};
use crate::reduce::{
    build_phi, derivative_layer, recursion_chain, to_F, Chain, GenPoly, Layer, LayeredRep, PhiMap,
    ReduceError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("bound needs t >= 3, got {0}")]
    TooFewTerms(usize),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountSettings {
    /// Starting working precision in bits.
    pub precision: u32,
    /// Precision is doubled up to this value while intervals stay undecided.
    pub max_precision: u32,
    pub max_depth: u32,
    /// Total number of subintervals examined per precision level.
    pub max_nodes: usize,
}

impl Default for CountSettings {
    fn default() -> Self {
        CountSettings {
            precision: 64,
            max_precision: 1024,
            max_depth: 64,
            max_nodes: 50_000,
        }
    }
}

impl CountSettings {
    pub fn new(precision: u32, max_depth: u32) -> Self {
        CountSettings {
            precision,
            max_precision: precision.max(1024),
            max_depth,
            max_nodes: 50_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountStatus {
    CertifiedExact,
    LowerBoundOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedCount {
    pub count: usize,
    pub status: CountStatus,
    pub undecided_intervals: Vec<DyadicInterval>,
    pub precision_used: u32,
    /// Pairwise disjoint intervals, each holding exactly one simple root.
    pub roots: Vec<DyadicInterval>,
}

impl CertifiedCount {
    pub fn is_exact(&self) -> bool {
        self.status == CountStatus::CertifiedExact
    }

    fn certified_zero() -> Self {
        CertifiedCount {
            count: 0,
            status: CountStatus::CertifiedExact,
            undecided_intervals: Vec::new(),
            precision_used: 0,
            roots: Vec::new(),
        }
    }
}

/// Zeros of `F` in (0,1).
pub fn certified_count(f: &GenPoly, settings: &CountSettings) -> CertifiedCount {
    engine::count_rep(&f.to_layered(), settings)
}

/// Zeros in (0,1) of a sum of layers `x^m (1-x)^n h(x)`.
pub fn count_layered(rep: &LayeredRep, settings: &CountSettings) -> CertifiedCount {
    engine::count_rep(rep, settings)
}

/// Solutions of `phi = s` in (0,1). A common factor of P and Q is removed
/// first so that cancelled points are not reported.
pub fn count_level(phi: &PhiMap, s: &RealExpr, settings: &CountSettings) -> CertifiedCount {
    let (p, q) = (phi.p().shape(), phi.q().shape());
    let g = p.gcd(q);
    let (p, q) = if g.degree().unwrap_or(0) > 0 {
        (p.div_rem(&g).0, q.div_rem(&g).0)
    } else {
        (p.clone(), q.clone())
    };
    let layers = vec![
        Layer::new(
            Rat::from_integer(0.into()),
            Rat::from_integer(0.into()),
            UniPolyR::new(phi.q().scale().mul(s).neg(), q),
        ),
        Layer::new(
            phi.alpha().clone(),
            phi.beta().clone(),
            UniPolyR::new(phi.p().scale().clone(), p),
        ),
    ];
    engine::count_layers(&layers, settings)
}

/// Solutions of `phi = 1` in (0,1).
pub fn count_phi_one(phi: &PhiMap, settings: &CountSettings) -> CertifiedCount {
    count_level(phi, &RealExpr::one(), settings)
}

/// Positive solutions of `f = g = 0` for a trinomial `g`.
pub fn count_positive_solutions(
    f: &SparsePolyQ2,
    g: &SparsePolyQ2,
    settings: &CountSettings,
) -> Result<CertifiedCount, CountError> {
    match to_F(f, g) {
        Ok(red) => Ok(certified_count(&red.big_f, settings)),
        Err(ReduceError::Bivar(BivarError::AllSameSign)) => Ok(CertifiedCount::certified_zero()),
        Err(e) => Err(e.into()),
    }
}

/// `3 * 2^(t-2) - 1`.
pub fn bound_t(t: usize) -> Result<u64, CountError> {
    if t < 3 {
        return Err(CountError::TooFewTerms(t));
    }
    Ok(3 * (1u64 << (t - 2)) - 1)
}

/// `deg P + deg Q + 2`.
pub fn bound_phi(phi: &PhiMap) -> u64 {
    (phi.deg_p() + phi.deg_q() + 2) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageCount {
    pub j: usize,
    pub count: usize,
    pub exact: bool,
}

/// `N_j <= N_{j+1} + 2^(j-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub j: usize,
    pub budget: u64,
    /// `None` when the counts involved are not both exact and the lower
    /// bounds are consistent with the inequality.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub t: usize,
    /// `N_1, ..., N_t`.
    pub counts: Vec<StageCount>,
    pub chain: Vec<ChainCheck>,
    pub bound_t: Option<u64>,
    pub bound_phi: Option<u64>,
    /// `N_1 <= bound_t`; `None` if undecided.
    pub within_bound_t: Option<bool>,
    /// `N_{t-1} <= bound_phi`.
    pub within_bound_phi: Option<bool>,
    /// Degrees of the chain stay below `2^(j-1) - 1`.
    pub degrees_ok: Option<bool>,
    pub error: Option<String>,
}

impl BoundReport {
    fn failed(t: usize, e: impl ToString) -> Self {
        BoundReport {
            t,
            counts: Vec::new(),
            chain: Vec::new(),
            bound_t: bound_t(t).ok(),
            bound_phi: None,
            within_bound_t: None,
            within_bound_phi: None,
            degrees_ok: None,
            error: Some(e.to_string()),
        }
    }

    /// A certified count exceeds one of the bounds.
    pub fn is_violation(&self) -> bool {
        self.within_bound_t == Some(false)
            || self.within_bound_phi == Some(false)
            || self.chain.iter().any(|c| c.holds == Some(false))
    }
}

fn le_check(lhs: &CertifiedCount, rhs: &CertifiedCount, slack: u64) -> Option<bool> {
    let l = lhs.count as u64;
    let r = rhs.count as u64 + slack;
    if rhs.is_exact() && l > r {
        Some(false)
    } else if lhs.is_exact() && rhs.is_exact() {
        Some(true)
    } else {
        None
    }
}

fn bound_check(c: &CertifiedCount, bound: u64) -> Option<bool> {
    if c.count as u64 > bound {
        Some(false)
    } else if c.is_exact() {
        Some(true)
    } else {
        None
    }
}

/// The final polynomial `f_t`, obtained by differentiating the last stage.
fn final_stage(chain: &Chain) -> LayeredRep {
    let last = chain.last();
    let r = Chain::budget(last.stage);
    let d = derivative_layer(last, r);
    let layers = d.layers.into_iter().filter(|l| !l.is_zero()).collect();
    LayeredRep::new(layers, last.stage + 1)
}

/// Counts every stage of the derivative recursion and compares them with
/// the bounds.
pub fn check_bounds(f: &SparsePolyQ2, g: &SparsePolyQ2, settings: &CountSettings) -> BoundReport {
    let t = f.len();
    let red = match to_F(f, g) {
        Ok(r) => r,
        Err(e) => return BoundReport::failed(t, e),
    };
    let chain = match recursion_chain(&red.big_f) {
        Ok(c) => c,
        Err(e) => return BoundReport::failed(t, e),
    };
    let t = red.big_f.len();
    let mut counts: Vec<CertifiedCount> = chain.stages.iter().map(|s| count_layered(s, settings)).collect();
    counts.push(count_layered(&final_stage(&chain), settings));
    let chain_checks = (0..counts.len() - 1)
        .map(|i| ChainCheck {
            j: i + 1,
            budget: Chain::budget(i + 1),
            holds: le_check(&counts[i], &counts[i + 1], Chain::budget(i + 1)),
        })
        .collect();
    let bt = bound_t(t).ok();
    let phi = build_phi(chain.last()).ok();
    let bp = phi.as_ref().map(bound_phi);
    let n_last = &counts[counts.len() - 2];
    BoundReport {
        t,
        counts: counts
            .iter()
            .enumerate()
            .map(|(i, c)| StageCount {
                j: i + 1,
                count: c.count,
                exact: c.is_exact(),
            })
            .collect(),
        chain: chain_checks,
        bound_t: bt,
        bound_phi: bp,
        within_bound_t: bt.and_then(|b| bound_check(&counts[0], b)),
        within_bound_phi: bp.and_then(|b| bound_check(n_last, b)),
        degrees_ok: Some(chain.degrees_within_bounds()),
        error: None,
    }
}
