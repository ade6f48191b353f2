//! Points of the real projective line mapped by `phi^m` to 0, 1 or infinity,
//! together with the real nonspecial critical points.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::chart::{chart, Chart, Region};
use super::{phi_prime_numerator, PhiError};
use crate::algebra::poly::{isolate_squarefree, refine_isolated};
use crate::algebra::{
    ser_rat_pair, sign_of, sturm_count, DyadicInterval, IntervalCtx, RealExpr, Rat, Sign, UniPoly,
};
use crate::bivar::SIGN_PREC;
use crate::reduce::PhiMap;
use crate::rootcount::{count_level, CountSettings};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LandmarkKind {
    LetterP,
    LetterQ,
    /// `phi = 1`, or `chi = 1` in an outer chart.
    LetterRPlus,
    /// `phi = -1` (only for even `m`), or `chi = -1` in an outer chart.
    LetterRMinus,
    NonspecialCritical,
}

impl LandmarkKind {
    pub fn is_r(self) -> bool {
        matches!(self, LandmarkKind::LetterRPlus | LandmarkKind::LetterRMinus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum Location {
    Zero,
    One,
    Infinity,
    /// Isolating interval in the chart coordinate of the region.
    Arc {
        region: Region,
        #[serde(serialize_with = "ser_rat_pair")]
        u: (Rat, Rat),
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Landmark {
    pub location: Location,
    pub kind: LandmarkKind,
    /// Sign of phi at the point, for real regular points of (0,1) and the
    /// endpoints 0 and 1.
    pub phi_sign_at: Option<i32>,
    /// Order of a root or pole of a polynomial factor.
    pub multiplicity: Option<u32>,
    pub multiplicity_note: String,
    /// The isolating interval in the coordinate `x`.
    pub x_interval: Option<DyadicInterval>,
}

impl Landmark {
    pub fn region(&self) -> Option<Region> {
        match &self.location {
            Location::Arc { region, .. } => Some(*region),
            _ => None,
        }
    }

    pub fn u_interval(&self) -> Option<(&Rat, &Rat)> {
        match &self.location {
            Location::Arc { u, .. } => Some((&u.0, &u.1)),
            _ => None,
        }
    }

    pub fn is_pole_or_zero(&self) -> bool {
        matches!(self.kind, LandmarkKind::LetterP | LandmarkKind::LetterQ)
    }

    fn at(location: Location, kind: LandmarkKind, note: String) -> Self {
        Landmark {
            location,
            kind,
            phi_sign_at: None,
            multiplicity: None,
            multiplicity_note: note,
            x_interval: None,
        }
    }
}

/// Landmarks in cyclic order along the real projective line, starting at 0
/// and moving towards 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Landmarks {
    pub items: Vec<Landmark>,
    /// False when some isolating intervals could not be separated or a level
    /// count stayed incomplete; the landmark list is then a best effort.
    pub separated: bool,
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn multiplicity(p: &UniPoly, lo: &Rat, hi: &Rat) -> u32 {
    p.squarefree_decomposition()
        .into_iter()
        .find(|(f, _)| sturm_count(f, lo, hi).unwrap_or(0) > 0)
        .map_or(1, |(_, i)| i as u32)
}

fn vanishes_on(p: &UniPoly, lo: &Rat, hi: &Rat) -> bool {
    !p.is_zero() && p.degree().unwrap_or(0) > 0 && sturm_count(&p.squarefree_part(), lo, hi).unwrap_or(0) > 0
}

/// Which letter r, if any, a regular point with `psi = sigma v^m` carries.
fn r_kind(v: &RealExpr, sigma: i32, m: u64, separated: &mut bool) -> Option<LandmarkKind> {
    let mut equal = |c: i64| match sign_of(&v.sub(&RealExpr::int(c)), SIGN_PREC) {
        Sign::Undecided => {
            *separated = false;
            true
        }
        _ => false,
    };
    let even = m % 2 == 0;
    if sigma == 1 && equal(1) {
        Some(LandmarkKind::LetterRPlus)
    } else if (sigma == 1 && even || sigma == -1 && !even) && equal(-1) {
        Some(LandmarkKind::LetterRMinus)
    } else {
        None
    }
}

fn sign_expr(v: &RealExpr) -> Option<i32> {
    sign_of(v, SIGN_PREC).to_i32()
}

/// Classification of an endpoint where the prefactor exponent vanishes, from
/// the polynomial values there.
#[allow(clippy::too_many_arguments)]
fn regular_point(
    phi: &PhiMap,
    location: Location,
    p0: &Rat,
    q0: &Rat,
    sigma: i32,
    critical: bool,
    separated: &mut bool,
) -> Option<Landmark> {
    if p0.is_zero() {
        return Some(Landmark::at(location, LandmarkKind::LetterP, "zero of P".into()));
    }
    if q0.is_zero() {
        return Some(Landmark::at(location, LandmarkKind::LetterQ, "zero of Q".into()));
    }
    let v = phi.scale_ratio().ok()?.mul_rat(&(p0 / q0));
    let sign = sign_expr(&v);
    if let Some(kind) = r_kind(&v, sigma, phi.m(), separated) {
        let mut l = Landmark::at(location, kind, String::new());
        l.phi_sign_at = sign;
        return Some(l);
    }
    critical.then(|| {
        let mut l = Landmark::at(location, LandmarkKind::NonspecialCritical, String::new());
        l.phi_sign_at = sign;
        l
    })
}

fn exponent_point(location: Location, e: &Rat) -> Landmark {
    let kind = if e.is_positive() {
        LandmarkKind::LetterP
    } else {
        LandmarkKind::LetterQ
    };
    Landmark::at(location, kind, format!("order {}", e.abs()))
}

fn endpoint_zero(phi: &PhiMap, h: &UniPoly, separated: &mut bool) -> Option<Landmark> {
    let a = phi.alpha();
    if !a.is_zero() {
        return Some(exponent_point(Location::Zero, a));
    }
    let z = Rat::zero();
    let (p0, q0) = (phi.p().shape().eval(&z), phi.q().shape().eval(&z));
    regular_point(phi, Location::Zero, &p0, &q0, 1, h.coeff(1).is_zero(), separated)
}

fn endpoint_one(phi: &PhiMap, h: &UniPoly, separated: &mut bool) -> Option<Landmark> {
    let b = phi.beta();
    if !b.is_zero() {
        return Some(exponent_point(Location::One, b));
    }
    let o = Rat::one();
    let (p1, q1) = (phi.p().shape().eval(&o), phi.q().shape().eval(&o));
    let critical = h.derivative().eval(&o).is_zero();
    regular_point(phi, Location::One, &p1, &q1, 1, critical, separated)
}

fn endpoint_infinity(phi: &PhiMap, h: &UniPoly, separated: &mut bool) -> Option<Landmark> {
    let e = phi.exponent_at_infinity();
    if !e.is_zero() {
        // phi ~ x^e, a pole for e > 0
        return Some(exponent_point(Location::Infinity, &-e));
    }
    let lp = phi.p().shape().lc().cloned().unwrap_or_else(Rat::zero);
    let lq = phi.q().shape().lc().cloned().unwrap_or_else(Rat::zero);
    let sigma = {
        let v = phi.beta() * Rat::from_integer(phi.m().into());
        if v.to_integer() % 2 == 0.into() {
            1
        } else {
            -1
        }
    };
    let critical = h.degree().is_some_and(|d| d + 1 <= phi.deg_p() + phi.deg_q());
    let mut l = regular_point(phi, Location::Infinity, &lp, &lq, sigma, critical, separated);
    if let Some(l) = l.as_mut() {
        l.phi_sign_at = None;
    }
    l
}

#[derive(Clone, Debug)]
enum Source {
    /// Root of the product polynomial `W`.
    Exact,
    /// Sign change of `chi - s`.
    Level(i32),
}

#[derive(Clone, Debug)]
struct Pending {
    lo: Rat,
    hi: Rat,
    source: Source,
    kind: LandmarkKind,
    multiplicity: Option<u32>,
    sign: Option<i32>,
}

fn level_sign(chi: &PhiMap, s: i32, t: &Rat) -> Option<i32> {
    let rep = chi.level_set(s);
    let mut prec = 64;
    while prec <= 2048 {
        let ctx = IntervalCtx::new(prec);
        if let Some(sg) = rep.eval_iv(&ctx, &DyadicInterval::from_rat(t, prec)).ok().and_then(|v| v.sign()) {
            return Some(sg);
        }
        prec *= 2;
    }
    None
}

/// Halves an interval holding a sign change of `chi - s`.
fn bisect_level(chi: &PhiMap, s: i32, lo: &Rat, hi: &Rat) -> Option<(Rat, Rat)> {
    let slo = level_sign(chi, s, lo)?;
    let w = hi - lo;
    for (a, b) in [(1, 2), (3, 7), (4, 7), (2, 5), (3, 5)] {
        let m = lo + &w * Rat::new(a.into(), b.into());
        if let Some(sm) = level_sign(chi, s, &m) {
            return Some(if sm == slo { (m, hi.clone()) } else { (lo.clone(), m) });
        }
    }
    None
}

fn overlapping(v: &[Pending]) -> Option<(usize, usize)> {
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i].lo < v[j].hi && v[j].lo < v[i].hi {
                return Some((i, j));
            }
        }
    }
    None
}

fn arc_landmarks(
    c: &Chart,
    m: u64,
    settings: &CountSettings,
    separated: &mut bool,
) -> Result<Vec<Landmark>, PhiError> {
    let chi = &c.chi;
    let (p, q) = (chi.p().shape(), chi.q().shape());
    let h = phi_prime_numerator(chi);
    if h.shape().is_zero() {
        return Err(PhiError::ConstantMap);
    }
    let w = p.mul(q).mul(h.shape()).squarefree_part();
    let (zero, one) = (Rat::zero(), Rat::one());
    let width = Rat::new(1.into(), (1u64 << 16).into());
    let mut pending = Vec::new();
    for (mut lo, mut hi) in isolate_squarefree(&w, &zero, &one, &width)? {
        for _ in 0..256 {
            if lo.is_positive() && hi < one {
                break;
            }
            let quarter = (&hi - &lo) / rat(4);
            (lo, hi) = refine_isolated(&w, &lo, &hi, &quarter);
        }
        let (kind, mult) = if vanishes_on(p, &lo, &hi) {
            (LandmarkKind::LetterP, Some(multiplicity(p, &lo, &hi)))
        } else if vanishes_on(q, &lo, &hi) {
            (LandmarkKind::LetterQ, Some(multiplicity(q, &lo, &hi)))
        } else {
            (LandmarkKind::NonspecialCritical, None)
        };
        let sign = (kind == LandmarkKind::NonspecialCritical && c.region == Region::Unit)
            .then(|| chi.sign_at(&((&lo + &hi) / rat(2))));
        pending.push(Pending {
            lo,
            hi,
            source: Source::Exact,
            kind,
            multiplicity: mult,
            sign,
        });
    }
    let even = m % 2 == 0;
    let levels: Vec<(i32, LandmarkKind)> = match (c.sigma, even) {
        (1, false) => vec![(1, LandmarkKind::LetterRPlus)],
        (1, true) => vec![(1, LandmarkKind::LetterRPlus), (-1, LandmarkKind::LetterRMinus)],
        (_, false) => vec![(-1, LandmarkKind::LetterRMinus)],
        (_, true) => vec![],
    };
    for (s, kind) in levels {
        let cnt = count_level(chi, &RealExpr::int(s.into()), settings);
        if !cnt.is_exact() {
            *separated = false;
        }
        let sign = (c.region == Region::Unit).then_some(s);
        for r in cnt.roots {
            pending.push(Pending {
                lo: r.lo().to_rat(),
                hi: r.hi().to_rat(),
                source: Source::Level(s),
                kind,
                multiplicity: Some(1),
                sign,
            });
        }
    }
    let mut rounds = 0;
    while let Some((i, j)) = overlapping(&pending) {
        rounds += 1;
        if rounds > 400 {
            *separated = false;
            break;
        }
        for k in [i, j] {
            let it = &mut pending[k];
            let next = match it.source {
                Source::Exact => Some(refine_isolated(&w, &it.lo, &it.hi, &((&it.hi - &it.lo) / rat(2)))),
                Source::Level(s) => bisect_level(chi, s, &it.lo, &it.hi),
            };
            match next {
                Some((a, b)) => (it.lo, it.hi) = (a, b),
                None => *separated = false,
            }
        }
    }
    pending.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(pending
        .into_iter()
        .map(|it| {
            let xs = (c.region.to_x(&it.lo), c.region.to_x(&it.hi));
            let x_interval = DyadicInterval::from_rat(&xs.0, 64).hull(&DyadicInterval::from_rat(&xs.1, 64));
            let note = match (it.kind, it.multiplicity) {
                (LandmarkKind::LetterP | LandmarkKind::LetterQ, Some(k)) => format!("multiplicity {k}"),
                _ => String::new(),
            };
            Landmark {
                location: Location::Arc {
                    region: c.region,
                    u: (it.lo, it.hi),
                },
                kind: it.kind,
                phi_sign_at: it.sign,
                multiplicity: it.multiplicity,
                multiplicity_note: note,
                x_interval: Some(x_interval),
            }
        })
        .collect())
}

/// All landmarks of `phi^m` on the real projective line, in cyclic order
/// `0, (0,1), 1, (1,inf), inf, (-inf,0)`.
pub fn classify_landmarks(phi: &PhiMap, settings: &CountSettings) -> Result<Landmarks, PhiError> {
    if phi.p().shape().gcd(phi.q().shape()).degree().unwrap_or(0) > 0 {
        return Err(PhiError::CommonRoot);
    }
    let h = phi_prime_numerator(phi);
    if h.shape().is_zero() {
        return Err(PhiError::ConstantMap);
    }
    let h = h.shape();
    let mut separated = true;
    let mut items = Vec::new();
    items.extend(endpoint_zero(phi, h, &mut separated));
    items.extend(arc_landmarks(&chart(phi, Region::Unit)?, phi.m(), settings, &mut separated)?);
    items.extend(endpoint_one(phi, h, &mut separated));
    items.extend(arc_landmarks(&chart(phi, Region::AboveOne)?, phi.m(), settings, &mut separated)?);
    items.extend(endpoint_infinity(phi, h, &mut separated));
    items.extend(arc_landmarks(&chart(phi, Region::Negative)?, phi.m(), settings, &mut separated)?);
    Ok(Landmarks { items, separated })
}
