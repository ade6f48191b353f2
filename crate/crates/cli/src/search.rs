//! Seeded searches over coefficient space for systems with many positive
//! solutions.

use std::collections::BTreeMap;
use std::io::Write;

use fewnomial::algebra::Rat;
use fewnomial::bivar::SparsePolyQ2;
use fewnomial::fans::theorem3_check;
use fewnomial::rootcount::{bound_t, count_positive_solutions, CountSettings};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::parse::render_poly;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("support needs at least {0} distinct exponents")]
    SmallSupport(usize),
    #[error("coefficient range must satisfy 0 < lo <= hi")]
    BadRange,
    #[error("grid needs at least 1 step and coefficients to perturb")]
    BadGrid,
    #[error("no such coefficient: {0}")]
    NoSuchCoefficient(String),
    #[error("coefficient is not rational")]
    IrrationalCoefficient,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("record serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    F,
    G,
}

/// One coefficient of the base system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub poly: Which,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub enum Space {
    /// Supports fixed; coefficient magnitudes drawn from `[lo, hi]` with
    /// random signs.
    Random {
        f_support: Vec<(i64, i64)>,
        g_support: Vec<(i64, i64)>,
        coeff_range: (Rat, Rat),
        trials: usize,
    },
    /// Each chosen coefficient `c` of a base system takes the values
    /// `c * (1 + rel * s)` for `steps` evenly spaced `s` in `[-1, 1]`.
    Grid {
        f: SparsePolyQ2,
        g: SparsePolyQ2,
        perturb: Vec<Slot>,
        steps: usize,
        rel: Rat,
    },
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub space: Space,
    pub seed: u64,
    /// Trials whose count reaches this value are recorded.
    pub threshold: usize,
    pub settings: CountSettings,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub trial: usize,
    pub f: String,
    pub g: String,
    pub count: usize,
    pub exact: bool,
    pub hexagon: Option<bool>,
    pub alternates: Option<bool>,
    pub consecutive_translate: Option<bool>,
    pub violation: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub trials: usize,
    pub certified: usize,
    pub undecided: usize,
    pub failed: usize,
    pub max_count: usize,
    /// Certified counts and how often each occurred.
    pub histogram: BTreeMap<usize, usize>,
    pub records: usize,
    pub violations: usize,
}

fn rand_magnitude(rng: &mut ChaCha8Rng, lo: &Rat, hi: &Rat) -> Rat {
    loop {
        let d: i64 = rng.gen_range(1..=100);
        let dd = Rat::from_integer(d.into());
        let a = (lo * &dd).ceil().to_integer().to_i64().unwrap_or(1).max(1);
        let b = (hi * &dd).floor().to_integer().to_i64().unwrap_or(a);
        if a <= b {
            return Rat::new(rng.gen_range(a..=b).into(), d.into());
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, support: &[(i64, i64)], lo: &Rat, hi: &Rat) -> Option<SparsePolyQ2> {
    let terms: Vec<(Rat, i64, i64)> = support
        .iter()
        .map(|&(a, b)| {
            let m = rand_magnitude(rng, lo, hi);
            (if rng.gen_bool(0.5) { m } else { -m }, a, b)
        })
        .collect();
    SparsePolyQ2::from_rat_terms(&terms).ok()
}

fn set_coeff(p: &SparsePolyQ2, index: usize, c: &Rat) -> Option<SparsePolyQ2> {
    let terms: Vec<(Rat, i64, i64)> = p
        .terms()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let v = if i == index { c.clone() } else { t.coeff.as_rat()?.clone() };
            Some((v, t.exp.0.to_integer().to_i64()?, t.exp.1.to_integer().to_i64()?))
        })
        .collect::<Option<_>>()?;
    SparsePolyQ2::from_rat_terms(&terms).ok()
}

impl Space {
    pub fn trials(&self) -> usize {
        match self {
            Space::Random { trials, .. } => *trials,
            Space::Grid { perturb, steps, .. } => steps.pow(perturb.len() as u32),
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        match self {
            Space::Random {
                f_support,
                g_support,
                coeff_range: (lo, hi),
                ..
            } => {
                let distinct = |s: &[(i64, i64)]| {
                    let mut v = s.to_vec();
                    v.sort();
                    v.dedup();
                    v.len() == s.len()
                };
                if g_support.len() != 3 || !distinct(g_support) {
                    return Err(SearchError::SmallSupport(3));
                }
                if f_support.is_empty() || !distinct(f_support) {
                    return Err(SearchError::SmallSupport(1));
                }
                if !lo.is_positive() || lo > hi {
                    return Err(SearchError::BadRange);
                }
            }
            Space::Grid {
                f,
                g,
                perturb,
                steps,
                ..
            } => {
                if perturb.is_empty() || *steps == 0 {
                    return Err(SearchError::BadGrid);
                }
                if !f.has_integer_exponents() || !g.has_integer_exponents() {
                    return Err(SearchError::IrrationalCoefficient);
                }
                for s in perturb {
                    let p = if s.poly == Which::F { f } else { g };
                    let t = p
                        .terms()
                        .get(s.index)
                        .ok_or_else(|| SearchError::NoSuchCoefficient(format!("{:?}{}", s.poly, s.index)))?;
                    if t.coeff.as_rat().is_none() {
                        return Err(SearchError::IrrationalCoefficient);
                    }
                }
                if f.terms().iter().chain(g.terms()).any(|t| t.coeff.as_rat().is_none()) {
                    return Err(SearchError::IrrationalCoefficient);
                }
            }
        }
        Ok(())
    }

    /// System of trial `i`; `None` if the drawn coefficients degenerate.
    pub fn system(&self, seed: u64, i: usize) -> Option<(SparsePolyQ2, SparsePolyQ2)> {
        match self {
            Space::Random {
                f_support,
                g_support,
                coeff_range: (lo, hi),
                ..
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let f = random_poly(&mut rng, f_support, lo, hi)?;
                let g = random_poly(&mut rng, g_support, lo, hi)?;
                Some((f, g))
            }
            Space::Grid {
                f,
                g,
                perturb,
                steps,
                rel,
            } => {
                let (mut f, mut g) = (f.clone(), g.clone());
                let mut rest = i;
                for s in perturb {
                    let k = rest % steps;
                    rest /= steps;
                    let frac = if *steps == 1 {
                        Rat::zero()
                    } else {
                        Rat::new((2 * k as i64 - (*steps as i64 - 1)).into(), ((*steps - 1) as i64).into())
                    };
                    let p = if s.poly == Which::F { &mut f } else { &mut g };
                    let c = p.terms()[s.index].coeff.as_rat()?.clone();
                    *p = set_coeff(p, s.index, &(c * (Rat::one() + rel * frac)))?;
                }
                Some((f, g))
            }
        }
    }
}

enum Outcome {
    Failed,
    Counted { count: usize, exact: bool, record: Option<SearchRecord> },
}

fn run_trial(opts: &SearchOptions, i: usize) -> Outcome {
    let Some((f, g)) = opts.space.system(opts.seed, i) else {
        return Outcome::Failed;
    };
    let Ok(c) = count_positive_solutions(&f, &g, &opts.settings) else {
        return Outcome::Failed;
    };
    let over_bound = c.is_exact() && bound_t(f.len()).is_ok_and(|b| c.count as u64 > b);
    if c.count < opts.threshold && !over_bound {
        return Outcome::Counted {
            count: c.count,
            exact: c.is_exact(),
            record: None,
        };
    }
    let t3 = (f.len() == 3).then(|| theorem3_check(&f, &g, &opts.settings).ok()).flatten();
    let violation = over_bound || t3.as_ref().is_some_and(|r| r.is_violation());
    Outcome::Counted {
        count: c.count,
        exact: c.is_exact(),
        record: Some(SearchRecord {
            trial: i,
            f: render_poly(&f),
            g: render_poly(&g),
            count: c.count,
            exact: c.is_exact(),
            hexagon: t3.as_ref().map(|r| r.hexagon),
            alternates: t3.as_ref().and_then(|r| r.alternates),
            consecutive_translate: t3.as_ref().and_then(|r| r.consecutive_translate),
            violation,
        }),
    }
}

/// Runs all trials, writing one JSON line per record in trial order.
pub fn cmd_search(opts: &SearchOptions, out: &mut dyn Write) -> Result<(SearchSummary, Vec<SearchRecord>), SearchError> {
    opts.space.validate()?;
    let n = opts.space.trials();
    let outcomes: Vec<Outcome> = (0..n).into_par_iter().map(|i| run_trial(opts, i)).collect();
    let mut summary = SearchSummary {
        trials: n,
        ..Default::default()
    };
    let mut records = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Failed => summary.failed += 1,
            Outcome::Counted { count, exact, record } => {
                if exact {
                    summary.certified += 1;
                    *summary.histogram.entry(count).or_default() += 1;
                    summary.max_count = summary.max_count.max(count);
                } else {
                    summary.undecided += 1;
                }
                if let Some(r) = record {
                    serde_json::to_writer(&mut *out, &r)?;
                    writeln!(out)?;
                    summary.violations += usize::from(r.violation);
                    records.push(r);
                }
            }
        }
    }
    summary.records = records.len();
    Ok((summary, records))
}

/// Parses `"6,0 0,3 0,1"`.
pub fn parse_support(s: &str) -> Option<Vec<(i64, i64)>> {
    s.split_whitespace()
        .map(|p| {
            let (a, b) = p.split_once(',')?;
            Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
        })
        .collect()
}

/// Parses `"f1,g1"`: term indices in canonical term order.
pub fn parse_slots(s: &str) -> Option<Vec<Slot>> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            let poly = match p.chars().next()? {
                'f' => Which::F,
                'g' => Which::G,
                _ => return None,
            };
            Some(Slot {
                poly,
                index: p[1..].parse().ok()?,
            })
        })
        .collect()
}
