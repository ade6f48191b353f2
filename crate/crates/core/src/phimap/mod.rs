//! Real-line analysis of `phi = x^alpha (1-x)^beta P / Q`: the derivative
//! numerator, the landmarks on the real projective line, the positive
//! branches over (0,1) and the useful critical points.

mod chart;
mod landmarks;
mod t3case;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Rat, UniPoly, UniPolyR};
use crate::reduce::{PhiMap, ReduceError};
use crate::rootcount::{bound_phi, count_phi_one, CertifiedCount, CountSettings};

pub use chart::{chart, Chart, Region};
pub use landmarks::{classify_landmarks, Landmark, LandmarkKind, Landmarks, Location};
pub use t3case::{t3_landmark_case, CaseReport, Ordering};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhiError {
    #[error("P and Q have a common root")]
    CommonRoot,
    #[error("phi is constant")]
    ConstantMap,
    #[error("nondegeneracy conditions violated: {0}")]
    NondegeneracyViolated(String),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `H` with `phi' = x^(alpha-1) (1-x)^(beta-1) H / Q^2`.
pub fn phi_prime_numerator(phi: &PhiMap) -> UniPolyR {
    let (p, q) = (phi.p().shape(), phi.q().shape());
    let (a, b) = (phi.alpha(), phi.beta());
    let pq = p.mul(q);
    let w = p.derivative().mul(q).sub(&p.mul(&q.derivative()));
    let x = UniPoly::x();
    let shape = pq
        .scale(a)
        .add(&w.sub(&pq.scale(&(a + b))).mul(&x))
        .sub(&w.mul(&x).mul(&x));
    UniPolyR::new(phi.p().scale().mul(phi.q().scale()), shape)
}

/// Number of branches of the graph of phi over (0,1) lying above the axis,
/// the total number of branches, and the number `S0` of zeros and poles in
/// (0,1) counted with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Branches {
    pub flat_plus: u32,
    pub flat: u32,
    pub s0: u32,
}

pub fn flat_plus(phi: &PhiMap, lm: &Landmarks) -> Branches {
    let special: Vec<&Landmark> = lm
        .items
        .iter()
        .filter(|l| l.region() == Some(Region::Unit) && l.is_pole_or_zero())
        .collect();
    let s0 = special.iter().map(|l| l.multiplicity.unwrap_or(1)).sum();
    // chart intervals lie strictly inside (0,1), so gap midpoints do too
    let two = Rat::from_integer(2.into());
    let mut cuts = vec![Rat::from_integer(0.into())];
    for l in &special {
        let (lo, hi) = l.u_interval().unwrap();
        cuts.push(lo.clone());
        cuts.push(hi.clone());
    }
    cuts.push(Rat::from_integer(1.into()));
    let samples: Vec<Rat> = cuts.chunks(2).map(|c| (&c[0] + &c[1]) / &two).collect();
    let flat_plus = samples.iter().filter(|x| phi.sign_at(x) > 0).count() as u32;
    Branches {
        flat_plus,
        flat: samples.len() as u32,
        s0,
    }
}

/// Indices of the positive nonspecial critical points in (0,1) with a
/// letter r among their two neighbours along the projective line.
pub fn useful_positive(lm: &Landmarks) -> Vec<usize> {
    let items = &lm.items;
    let n = items.len();
    (0..n)
        .filter(|&i| {
            let l = &items[i];
            if l.kind != LandmarkKind::NonspecialCritical || l.region() != Some(Region::Unit) {
                return false;
            }
            let prev = &items[(i + n - 1) % n];
            let next = &items[(i + 1) % n];
            (prev.kind.is_r() || next.kind.is_r()) && l.phi_sign_at == Some(1)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub landmarks: Landmarks,
    pub branches: Branches,
    pub useful_positive: Vec<usize>,
    /// Solutions of `phi = 1` in (0,1).
    pub n: CertifiedCount,
    pub bound_phi: u64,
    pub h_degree: Option<usize>,
    pub nonspecial_critical: usize,
    /// `floor(S0/2) <= flat_plus <= floor(S0/2) + 1`.
    pub window_ok: bool,
    /// `N <= flat_plus + |U|`; `None` when N or the landmarks are not exact.
    pub useful_bound_ok: Option<bool>,
    /// `N <= deg P + deg Q + 2`.
    pub degree_bound_ok: Option<bool>,
    /// Number of nonspecial critical points is at most `deg P + deg Q + 1`.
    pub completeness_ok: bool,
}

impl PhiReport {
    pub fn is_violation(&self) -> bool {
        !self.window_ok
            || !self.completeness_ok
            || self.useful_bound_ok == Some(false)
            || self.degree_bound_ok == Some(false)
    }
}

pub fn analyze_phi(phi: &PhiMap, settings: &CountSettings) -> Result<PhiReport, PhiError> {
    let landmarks = classify_landmarks(phi, settings)?;
    let branches = flat_plus(phi, &landmarks);
    let useful = useful_positive(&landmarks);
    let n = count_phi_one(phi, settings);
    let bp = bound_phi(phi);
    let h = phi_prime_numerator(phi);
    let nonspecial = landmarks
        .items
        .iter()
        .filter(|l| l.kind == LandmarkKind::NonspecialCritical)
        .count();
    let half = branches.s0 / 2;
    let exact = n.is_exact() && landmarks.separated;
    let nc = n.count as u64;
    Ok(PhiReport {
        window_ok: half <= branches.flat_plus && branches.flat_plus <= half + 1,
        useful_bound_ok: exact.then(|| nc <= (branches.flat_plus as u64) + useful.len() as u64),
        degree_bound_ok: if nc > bp {
            Some(false)
        } else {
            n.is_exact().then_some(true)
        },
        completeness_ok: nonspecial <= phi.deg_p() + phi.deg_q() + 1,
        h_degree: h.shape().degree(),
        landmarks,
        branches,
        useful_positive: useful,
        n,
        bound_phi: bp,
        nonspecial_critical: nonspecial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, DyadicInterval, IntervalCtx};

    #[test]
    fn h_constant_polynomials() {
        let one = UniPoly::one();
        let phi = PhiMap::rational(rat(2, 3), rat(1, 5), one.clone(), one).unwrap();
        let h = phi_prime_numerator(&phi);
        assert_eq!(h.shape(), &UniPoly::new(vec![rat(2, 3), rat(-13, 15)]));
    }

    #[test]
    fn h_without_prefactor() {
        let p = UniPoly::from_i64(&[1, 2, 1]);
        let q = UniPoly::from_i64(&[3, -1]);
        let phi = PhiMap::rational(rat(0, 1), rat(0, 1), p.clone(), q.clone()).unwrap();
        let w = p.derivative().mul(&q).sub(&p.mul(&q.derivative()));
        let want = w.mul(&UniPoly::from_i64(&[0, 1, -1]));
        assert_eq!(phi_prime_numerator(&phi).shape(), &want);
    }

    /// `H` against a difference quotient of phi.
    #[test]
    fn h_matches_numeric_derivative() {
        let p = UniPoly::from_i64(&[1, -3, 2]);
        let q = UniPoly::from_i64(&[2, 1]);
        let phi = PhiMap::rational(rat(1, 3), rat(-1, 2), p, q.clone()).unwrap();
        let h = phi_prime_numerator(&phi);
        let ctx = IntervalCtx::new(120);
        let eps = rat(1, 1 << 30);
        for x in [rat(1, 5), rat(1, 2), rat(7, 9)] {
            let f = |t: &Rat| phi.eval_iv(&ctx, &DyadicInterval::from_rat(t, 120)).unwrap().mid().to_f64();
            let d = (f(&(&x + &eps)) - f(&(&x - &eps))) / (2.0 * 2f64.powi(-30));
            let xf = crate::algebra::Dyadic::from_rat(&x, 80, crate::algebra::Rounding::Down).to_f64();
            let qv = q.eval(&x);
            let qf = crate::algebra::Dyadic::from_rat(&qv, 80, crate::algebra::Rounding::Down).to_f64();
            let hv = crate::algebra::Dyadic::from_rat(&h.shape().eval(&x), 80, crate::algebra::Rounding::Down).to_f64();
            let want = xf.powf(1.0 / 3.0 - 1.0) * (1.0 - xf).powf(-0.5 - 1.0) * hv / (qf * qf);
            assert!((d - want).abs() < 1e-6 * want.abs().max(1.0), "{x}: {d} vs {want}");
        }
    }

    #[test]
    fn odd_ratio_landmarks() {
        // x / (1-x)
        let one = UniPoly::one();
        let phi = PhiMap::rational(rat(1, 1), rat(-1, 1), one.clone(), one).unwrap();
        let lm = classify_landmarks(&phi, &CountSettings::default()).unwrap();
        assert!(lm.separated);
        let kinds: Vec<_> = lm.items.iter().map(|l| (l.location.clone(), l.kind)).collect();
        assert_eq!(kinds[0], (Location::Zero, LandmarkKind::LetterP));
        let r = &lm.items[1];
        assert_eq!(r.kind, LandmarkKind::LetterRPlus);
        let (lo, hi) = r.u_interval().unwrap();
        assert!(lo < &rat(1, 2) && &rat(1, 2) < hi);
        assert_eq!(lm.items[2].location, Location::One);
        assert_eq!(lm.items[2].kind, LandmarkKind::LetterQ);
        let b = flat_plus(&phi, &lm);
        assert_eq!((b.s0, b.flat_plus), (0, 1));
    }

    #[test]
    fn doubled_exponents_note_multiplicity() {
        let one = UniPoly::one();
        let phi = PhiMap::rational(rat(2, 1), rat(-2, 1), one.clone(), one).unwrap();
        let lm = classify_landmarks(&phi, &CountSettings::default()).unwrap();
        assert_eq!(lm.items[0].kind, LandmarkKind::LetterP);
        assert!(lm.items[0].multiplicity_note.contains('2'));
        let rs: Vec<_> = lm
            .items
            .iter()
            .filter(|l| l.kind == LandmarkKind::LetterRPlus && l.region() == Some(Region::Unit))
            .collect();
        assert_eq!(rs.len(), 1);
        // phi tends to 1 at infinity
        assert!(lm
            .items
            .iter()
            .any(|l| l.location == Location::Infinity && l.kind == LandmarkKind::LetterRPlus));
        assert!(rs[0].u_interval().unwrap().0 < &rat(1, 2));
    }

    #[test]
    fn hump_above_one_is_useful() {
        // 5 x (1 - x) peaks at 5/4
        let phi = PhiMap::rational(rat(1, 1), rat(1, 1), UniPoly::from_i64(&[5]), UniPoly::one()).unwrap();
        let rep = analyze_phi(&phi, &CountSettings::default()).unwrap();
        let crit: Vec<_> = rep
            .landmarks
            .items
            .iter()
            .enumerate()
            .filter(|(_, l)| l.kind == LandmarkKind::NonspecialCritical && l.region() == Some(Region::Unit))
            .collect();
        assert_eq!(crit.len(), 1);
        assert_eq!(rep.useful_positive, vec![crit[0].0]);
        assert_eq!(rep.n.count, 2);
        assert!(!rep.is_violation());
    }

    #[test]
    fn hump_below_one_is_not_useful() {
        let phi = PhiMap::rational(rat(1, 1), rat(1, 1), UniPoly::from_i64(&[3]), UniPoly::one()).unwrap();
        let rep = analyze_phi(&phi, &CountSettings::default()).unwrap();
        assert!(rep.useful_positive.is_empty());
        assert_eq!(rep.n.count, 0);
    }

    #[test]
    fn root_before_pole() {
        let phi = PhiMap::rational(
            rat(0, 1),
            rat(0, 1),
            UniPoly::new(vec![rat(-1, 3), rat(1, 1)]),
            UniPoly::new(vec![rat(-2, 3), rat(1, 1)]),
        )
        .unwrap();
        let lm = classify_landmarks(&phi, &CountSettings::default()).unwrap();
        let b = flat_plus(&phi, &lm);
        assert_eq!(b.s0, 2);
        // (x - 1/3)/(x - 2/3) is positive on (0,1/3) and (2/3,1)
        assert_eq!(b.flat_plus, 2);
        assert_eq!(b.flat, 3);
    }

    #[test]
    fn common_root_rejected() {
        let p = UniPoly::from_i64(&[-1, 2]);
        let phi = PhiMap::rational(rat(1, 2), rat(0, 1), p.clone(), p.mul(&UniPoly::from_i64(&[1, 1]))).unwrap();
        assert_eq!(classify_landmarks(&phi, &CountSettings::default()), Err(PhiError::CommonRoot));
    }

    fn five_solution_checks(f: &crate::bivar::SparsePolyQ2, g: &crate::bivar::SparsePolyQ2) {
        let settings = CountSettings::default();
        let t3 = crate::reduce::t3_phi(f, g).unwrap();
        let rep = analyze_phi(&t3.phi, &settings).unwrap();
        assert!(rep.h_degree.unwrap() <= 3);
        assert!(rep.n.is_exact());
        assert!(rep.n.count >= 4, "{}", rep.n.count);
        let rs = rep
            .landmarks
            .items
            .iter()
            .filter(|l| l.kind.is_r() && l.region() == Some(Region::Unit))
            .count();
        assert!(rs >= 4);
        assert!(!rep.is_violation(), "{rep:?}");
        let count = crate::rootcount::count_positive_solutions(f, g, &settings).unwrap();
        let case = t3_landmark_case(&t3, &count).unwrap();
        assert_eq!(case.solutions, 5);
        assert!(case.ordering.is_some() && case.consistent);
        assert_ne!(case.p_tilde, case.q_tilde);
    }

    #[test]
    fn sextic_phi_analysis() {
        let (f, g) = crate::fixtures::sextic();
        five_solution_checks(&f, &g);
    }

    #[test]
    fn quintic_phi_analysis() {
        let (f, g) = crate::fixtures::quintic();
        five_solution_checks(&f, &g);
    }
}
