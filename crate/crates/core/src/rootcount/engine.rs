//! Adaptive bisection on (0,1) with interval certificates.

use num_traits::Zero;

use super::{CertifiedCount, CountSettings, CountStatus};
use crate::algebra::poly::isolate_squarefree;
use crate::algebra::{AlgebraError, Dyadic, DyadicInterval, IntervalCtx, RealExpr, Rat, UniPoly, UniPolyR};
use crate::reduce::{Layer, LayeredRep};

#[derive(Clone, Debug)]
struct Term {
    m: Rat,
    n: Rat,
    scale: RealExpr,
    poly: UniPoly,
}

/// Layers with the x- and (1-x)-adic valuations of the polynomial parts
/// moved into the prefactor exponents.
#[derive(Clone, Debug)]
struct Normalized {
    terms: Vec<Term>,
    mmin: Rat,
    nmin: Rat,
}

fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

/// Sums layers with rational scales whose prefactors differ by integer
/// powers, so that cancellation between them is exact.
fn merge_classes(layers: &[Layer]) -> Vec<Layer> {
    let one_minus_x = UniPoly::from_i64(&[1, -1]);
    let mut out: Vec<Layer> = Vec::new();
    let mut classes: Vec<((Rat, Rat), Vec<(&Layer, Rat)>)> = Vec::new();
    for l in layers {
        if l.h.shape().is_zero() {
            continue;
        }
        match l.h.scale().as_rat() {
            Some(r) => {
                let key = (frac(&l.m), frac(&l.n));
                match classes.iter_mut().find(|(k, _)| *k == key) {
                    Some((_, v)) => v.push((l, r.clone())),
                    None => classes.push((key, vec![(l, r.clone())])),
                }
            }
            None => out.push(l.clone()),
        }
    }
    for (_, members) in classes {
        let m0 = members.iter().map(|(l, _)| l.m.clone()).min().unwrap();
        let n0 = members.iter().map(|(l, _)| l.n.clone()).min().unwrap();
        let mut h = UniPoly::zero();
        for (l, r) in members {
            let dm = (&l.m - &m0).to_integer().try_into().unwrap_or(0u32);
            let dn = (&l.n - &n0).to_integer().try_into().unwrap_or(0u32);
            let part = l.h.shape().scale(&r).shift_up(dm as usize).mul(&one_minus_x.pow(dn));
            h = h.add(&part);
        }
        if !h.is_zero() {
            out.push(Layer::new(m0, n0, UniPolyR::from_rational(h)));
        }
    }
    out
}

fn normalize(layers: &[Layer]) -> Normalized {
    let one_minus_x = UniPoly::from_i64(&[1, -1]);
    let mut terms = Vec::new();
    for l in layers {
        let h = l.h.shape();
        if h.is_zero() {
            continue;
        }
        let v = h.x_adic_valuation();
        let mut p = UniPoly::new(h.coeffs()[v..].to_vec());
        let w = p.one_adic_valuation();
        if w > 0 {
            p = p.div_rem(&one_minus_x.pow(w as u32)).0;
        }
        terms.push(Term {
            m: &l.m + Rat::from_integer(v.into()),
            n: &l.n + Rat::from_integer(w.into()),
            scale: l.h.scale().clone(),
            poly: p,
        });
    }
    let mmin = terms.iter().map(|t| t.m.clone()).min().unwrap_or_else(Rat::zero);
    let nmin = terms.iter().map(|t| t.n.clone()).min().unwrap_or_else(Rat::zero);
    Normalized { terms, mmin, nmin }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Interior,
    /// Divided by `x^mmin`, valid on `[0, b]`.
    Left,
    /// Divided by `(1-x)^nmin`, valid on `[a, 1]`.
    Right,
}

struct Prepared {
    scales: Vec<DyadicInterval>,
    coeffs: Vec<Vec<DyadicInterval>>,
}

struct Evaluator<'a> {
    ctx: IntervalCtx,
    /// The terms of minimal exponent cancel at 0 (resp. 1), so dominance
    /// cannot certify a neighbourhood of that endpoint.
    stuck_left: bool,
    stuck_right: bool,
    f: &'a Normalized,
    df: &'a Normalized,
    pf: Prepared,
    pdf: Prepared,
}

fn prepare(ctx: &IntervalCtx, n: &Normalized) -> Result<Prepared, AlgebraError> {
    let mut scales = Vec::with_capacity(n.terms.len());
    let mut coeffs = Vec::with_capacity(n.terms.len());
    for t in &n.terms {
        scales.push(t.scale.eval_ctx(ctx)?);
        coeffs.push(t.poly.coeff_intervals(ctx));
    }
    Ok(Prepared { scales, coeffs })
}

fn horner(ctx: &IntervalCtx, c: &[DyadicInterval], x: &DyadicInterval) -> DyadicInterval {
    crate::algebra::poly::horner_iv(ctx, c, x)
}

impl<'a> Evaluator<'a> {
    fn new(prec: u32, f: &'a Normalized, df: &'a Normalized) -> Result<Self, AlgebraError> {
        let ctx = IntervalCtx::new(prec);
        let pf = prepare(&ctx, f)?;
        let pdf = prepare(&ctx, df)?;
        let lead = |at_one: bool| -> bool {
            let mut acc = DyadicInterval::zero();
            for (i, t) in f.terms.iter().enumerate() {
                let (e, emin) = if at_one { (&t.n, &f.nmin) } else { (&t.m, &f.mmin) };
                if e != emin {
                    continue;
                }
                let x = if at_one { DyadicInterval::one() } else { DyadicInterval::zero() };
                let h = horner(&ctx, &pf.coeffs[i], &x);
                acc = ctx.add(&acc, &ctx.mul(&pf.scales[i], &h));
            }
            acc.contains_zero()
        };
        let stuck_left = lead(false);
        let stuck_right = lead(true);
        Ok(Evaluator {
            ctx,
            stuck_left,
            stuck_right,
            f,
            df,
            pf,
            pdf,
        })
    }

    fn eval_with(
        &self,
        n: &Normalized,
        p: &Prepared,
        a: &Dyadic,
        b: &Dyadic,
        mode: Mode,
    ) -> Result<DyadicInterval, AlgebraError> {
        let ctx = &self.ctx;
        let x = DyadicInterval::new(a.clone(), b.clone());
        let om = DyadicInterval::new(Dyadic::one().sub_exact(b), Dyadic::one().sub_exact(a));
        let mut acc = DyadicInterval::zero();
        for (i, t) in n.terms.iter().enumerate() {
            let (em, en) = match mode {
                Mode::Interior => (t.m.clone(), t.n.clone()),
                Mode::Left => (&t.m - &n.mmin, t.n.clone()),
                Mode::Right => (t.m.clone(), &t.n - &n.nmin),
            };
            let xm = if em.is_zero() { DyadicInterval::one() } else { ctx.pow_rat(&x, &em)? };
            let on = if en.is_zero() { DyadicInterval::one() } else { ctx.pow_rat(&om, &en)? };
            let h = horner(ctx, &p.coeffs[i], &x);
            let v = ctx.mul(&ctx.mul(&xm, &on), &ctx.mul(&p.scales[i], &h));
            acc = ctx.add(&acc, &v);
        }
        Ok(acc)
    }

    fn f(&self, a: &Dyadic, b: &Dyadic, mode: Mode) -> Option<DyadicInterval> {
        self.eval_with(self.f, &self.pf, a, b, mode).ok()
    }

    fn df(&self, a: &Dyadic, b: &Dyadic) -> Option<DyadicInterval> {
        self.eval_with(self.df, &self.pdf, a, b, Mode::Interior).ok()
    }

    /// Mean value form `F(c) + F'([a,b]) [a-c, b-c]`.
    fn centered(&self, a: &Dyadic, b: &Dyadic, d: &DyadicInterval) -> Option<DyadicInterval> {
        let c = Dyadic::midpoint(a, b);
        let fc = self.f(&c, &c, Mode::Interior)?;
        let r = DyadicInterval::new(a.sub_exact(&c), b.sub_exact(&c));
        Some(self.ctx.add(&fc, &self.ctx.mul(d, &r)))
    }

    fn sign_at(&self, x: &Dyadic) -> Option<i32> {
        self.f(x, x, Mode::Interior).and_then(|v| v.sign())
    }
}

#[derive(Clone, Debug)]
pub(super) struct Item {
    a: Dyadic,
    b: Dyadic,
    sa: Option<i32>,
    sb: Option<i32>,
    depth: u32,
}

impl Item {
    fn interval(&self) -> DyadicInterval {
        DyadicInterval::new(self.a.clone(), self.b.clone())
    }
}

/// Next exponent towards an endpoint: squaring, then linear steps once the
/// exponent is large.
fn deeper(e: i64) -> i64 {
    let e = e.min(-1);
    (2 * e).max(e - ENDPOINT_STEP)
}

const ENDPOINT_STEP: i64 = 1024;

/// Candidate split point: geometric near the endpoints, arithmetic
/// elsewhere.
fn split_point(a: &Dyadic, b: &Dyadic) -> Dyadic {
    let one = Dyadic::one();
    if a.is_zero() {
        // [0, b] -> [0, b^2] (rounded to a power of two) and [b^2, b]
        let e = b.top() - 1;
        let s = Dyadic::pow2(deeper(e));
        if s < *b {
            return s;
        }
        return b.ldexp(-1);
    }
    if *b == one {
        let u = one.sub_exact(a);
        let e = u.top() - 1;
        let s = one.sub_exact(&Dyadic::pow2(deeper(e)));
        if s > *a {
            return s;
        }
        return Dyadic::midpoint(a, b);
    }
    if b.top() - a.top() >= 3 {
        let s = Dyadic::pow2((a.top() + b.top()) / 2);
        if s > *a && s < *b {
            return s;
        }
    }
    let ua = one.sub_exact(a);
    let ub = one.sub_exact(b);
    if ua.top() - ub.top() >= 3 {
        let s = one.sub_exact(&Dyadic::pow2((ua.top() + ub.top()) / 2));
        if s > *a && s < *b {
            return s;
        }
    }
    Dyadic::midpoint(a, b)
}

/// Split point whose sign is certified, trying small perturbations of the
/// preferred point.
fn certified_split(ev: &Evaluator<'_>, a: &Dyadic, b: &Dyadic) -> (Dyadic, Option<i32>) {
    let s = split_point(a, b);
    if let Some(sg) = ev.sign_at(&s) {
        return (s, Some(sg));
    }
    let w = b.sub_exact(a);
    for k in 1..=6i64 {
        for dir in [1i64, -1] {
            let off = w.ldexp(-4 - k).mul_exact(&Dyadic::from_int(dir * (2 * k - 1)));
            let t = s.add_exact(&off);
            if t > *a && t < *b {
                if let Some(sg) = ev.sign_at(&t) {
                    return (t, Some(sg));
                }
            }
        }
    }
    (s, None)
}

pub(super) struct Outcome {
    pub roots: Vec<DyadicInterval>,
    pub leftover: Vec<Item>,
}

fn run_level(ev: &Evaluator<'_>, items: Vec<Item>, cap: u32, max_nodes: usize) -> Outcome {
    let one = Dyadic::one();
    let mut roots = Vec::new();
    let mut leftover = Vec::new();
    let mut stack: Vec<Item> = items.into_iter().rev().collect();
    let mut nodes = 0usize;
    let tiny = -(ev.ctx.prec() as i64) / 2;
    while let Some(mut it) = stack.pop() {
        nodes += 1;
        if nodes > max_nodes {
            leftover.push(it);
            leftover.extend(stack.drain(..).rev());
            break;
        }
        let left = it.a.is_zero();
        let right = it.b == one;
        if !(left && right) {
            if it.sa.is_none() && !left {
                it.sa = ev.sign_at(&it.a);
            }
            if it.sb.is_none() && !right {
                it.sb = ev.sign_at(&it.b);
            }
            let mode = match (left, right) {
                (true, _) => Mode::Left,
                (_, true) => Mode::Right,
                _ => Mode::Interior,
            };
            if ev.f(&it.a, &it.b, mode).is_some_and(|v| !v.contains_zero()) {
                continue;
            }
            if mode == Mode::Interior {
                let d = ev.df(&it.a, &it.b);
                if let (Some(sa), Some(sb), Some(d)) = (it.sa, it.sb, &d) {
                    if !d.contains_zero() {
                        if sa != sb {
                            roots.push(it.interval());
                        }
                        continue;
                    }
                }
                if let Some(d) = &d {
                    if ev.centered(&it.a, &it.b, d).is_some_and(|v| !v.contains_zero()) {
                        continue;
                    }
                }
            }
        }
        let hopeless = (ev.stuck_left && it.a.top() < tiny)
            || (ev.stuck_right && one.sub_exact(&it.b).top() < tiny);
        if it.depth >= cap || hopeless {
            leftover.push(it);
            continue;
        }
        let (s, ss) = certified_split(ev, &it.a, &it.b);
        let d = it.depth + 1;
        // push right first so the left child is processed first
        stack.push(Item {
            a: s.clone(),
            b: it.b.clone(),
            sa: ss,
            sb: it.sb,
            depth: d,
        });
        stack.push(Item {
            a: it.a,
            b: s,
            sa: it.sa,
            sb: ss,
            depth: d,
        });
    }
    Outcome { roots, leftover }
}

/// Roots of `sum x^m (1-x)^n h` in (0,1).
pub(super) fn count_layers(layers: &[Layer], settings: &CountSettings) -> CertifiedCount {
    let merged = merge_classes(layers);
    let f = normalize(&merged);
    if let [t] = f.terms.as_slice() {
        return count_polynomial(&t.poly, settings);
    }
    let dlayers: Vec<Layer> = merged.iter().map(Layer::derivative).collect();
    let df = normalize(&dlayers);
    let whole = Item {
        a: Dyadic::zero(),
        b: Dyadic::one(),
        sa: None,
        sb: None,
        depth: 0,
    };
    if f.terms.is_empty() {
        return CertifiedCount {
            count: 0,
            status: CountStatus::LowerBoundOnly,
            roots: Vec::new(),
            undecided_intervals: vec![whole.interval()],
            precision_used: settings.precision,
        };
    }
    let mut roots = Vec::new();
    let mut pending = vec![whole];
    let mut prec = settings.precision.max(16);
    let mut used;
    let mut level = 0u32;
    loop {
        used = prec;
        let cap = settings.max_depth + 16 * level;
        let ev = match Evaluator::new(prec, &f, &df) {
            Ok(ev) => ev,
            Err(_) => break,
        };
        // endpoint signs are recomputed at each precision
        let items = pending
            .into_iter()
            .map(|mut it| {
                it.sa = None;
                it.sb = None;
                it
            })
            .collect();
        let out = run_level(&ev, items, cap, settings.max_nodes);
        roots.extend(out.roots);
        pending = out.leftover;
        if pending.is_empty() || prec >= settings.max_precision {
            break;
        }
        prec = (prec * 2).min(settings.max_precision);
        level += 1;
    }
    roots.sort_by(|x, y| x.lo().cmp(y.lo()));
    let mut undecided: Vec<DyadicInterval> = pending.iter().map(Item::interval).collect();
    undecided.sort_by(|x, y| x.lo().cmp(y.lo()));
    let undecided = undecided.into_iter().fold(Vec::<DyadicInterval>::new(), |mut acc, iv| {
        match acc.last_mut() {
            Some(last) if last.hi() >= iv.lo() => *last = last.hull(&iv),
            _ => acc.push(iv),
        }
        acc
    });
    CertifiedCount {
        count: roots.len(),
        status: if undecided.is_empty() {
            CountStatus::CertifiedExact
        } else {
            CountStatus::LowerBoundOnly
        },
        roots,
        undecided_intervals: undecided,
        precision_used: used,
    }
}

/// Distinct roots of a rational polynomial in (0,1), by exact isolation.
fn count_polynomial(p: &UniPoly, settings: &CountSettings) -> CertifiedCount {
    let prec = settings.precision.max(16);
    let width = Rat::new(1.into(), num_bigint::BigInt::from(1u8) << 32);
    let sq = p.squarefree_part();
    let zero = Rat::zero();
    let one = Rat::from_integer(1.into());
    let roots = isolate_squarefree(&sq, &zero, &one, &width)
        .unwrap_or_default()
        .into_iter()
        .map(|(lo, hi)| DyadicInterval::from_rat(&lo, prec).hull(&DyadicInterval::from_rat(&hi, prec)))
        .collect::<Vec<_>>();
    CertifiedCount {
        count: roots.len(),
        status: CountStatus::CertifiedExact,
        roots,
        undecided_intervals: Vec::new(),
        precision_used: prec,
    }
}

pub(super) fn count_rep(rep: &LayeredRep, settings: &CountSettings) -> CertifiedCount {
    count_layers(&rep.layers, settings)
}
