use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{PhiMap, ReduceError};
use crate::algebra::{ser_rat_pair, RealExpr, Rat, UniPoly, UniPolyR};
use crate::bivar::{normalize_trinomial_lattice, BivarError, Exponent, LatticeNormalization, SparsePolyQ2};

/// Nondegeneracy conditions on the exponents of the two non-constant terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Nondegeneracy {
    /// `alpha_1 - alpha_2 != beta_2 - beta_1`
    ExponentSums,
    /// `alpha_1 != alpha_2`
    AlphasDistinct,
    /// `beta_1 != beta_2`
    BetasDistinct,
    /// `alpha_i + beta_i != 0`
    SumNonzero(usize),
    /// `alpha_i != 0`
    AlphaNonzero(usize),
    /// `beta_i != 0`
    BetaNonzero(usize),
}

fn ser_rat2<S: serde::Serializer>(r: &[Rat; 2], s: S) -> Result<S::Ok, S::Error> {
    [r[0].to_string(), r[1].to_string()].serialize(s)
}

/// Closed-form rational map of a pair of trinomials.
#[derive(Clone, Debug, Serialize)]
pub struct T3Phi {
    pub phi: PhiMap,
    #[serde(serialize_with = "ser_rat2")]
    pub alpha: [Rat; 2],
    #[serde(serialize_with = "ser_rat2")]
    pub beta: [Rat; 2],
    pub a: [RealExpr; 2],
    /// Exponents `(k_i, l_i)` of the two non-constant terms in `(z, w)`.
    pub exps: [(i64, i64); 2],
    pub k3: i64,
    pub k4: i64,
    pub l4: i64,
    /// Whether indices 1 and 2 were exchanged to make `alpha_1 > alpha_2`.
    pub swapped: bool,
    /// Exponent, in the input `f`, of the term turned into `-1`.
    #[serde(serialize_with = "ser_rat_pair")]
    pub constant_term: Exponent,
    pub normalization: LatticeNormalization,
    /// `-1 + a_1 z^k1 w^l1 + a_2 z^k2 w^l2`.
    pub normalized_f: SparsePolyQ2,
    pub violations: Vec<Nondegeneracy>,
}

impl T3Phi {
    /// `alpha_1 / (alpha_1 + beta_1)`, the root of `rho_1`.
    pub fn p_tilde(&self) -> Option<Rat> {
        ratio(&self.alpha[0], &self.beta[0])
    }

    /// `alpha_2 / (alpha_2 + beta_2)`, the root of `rho_2`.
    pub fn q_tilde(&self) -> Option<Rat> {
        ratio(&self.alpha[1], &self.beta[1])
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.violations.is_empty()
    }
}

fn ratio(a: &Rat, b: &Rat) -> Option<Rat> {
    let s = a + b;
    (!s.is_zero()).then(|| a / s)
}

fn int_exp(e: &Exponent) -> Result<(i64, i64), ReduceError> {
    let c = |r: &Rat| {
        r.is_integer()
            .then(|| r.to_integer().to_i64())
            .flatten()
            .ok_or(ReduceError::Bivar(BivarError::NonIntegerExponents))
    };
    Ok((c(&e.0)?, c(&e.1)?))
}

fn violations(alpha: &[Rat; 2], beta: &[Rat; 2]) -> Vec<Nondegeneracy> {
    let mut v = Vec::new();
    if &alpha[0] - &alpha[1] == &beta[1] - &beta[0] {
        v.push(Nondegeneracy::ExponentSums);
    }
    if alpha[0] == alpha[1] {
        v.push(Nondegeneracy::AlphasDistinct);
    }
    if beta[0] == beta[1] {
        v.push(Nondegeneracy::BetasDistinct);
    }
    for i in 0..2 {
        if (&alpha[i] + &beta[i]).is_zero() {
            v.push(Nondegeneracy::SumNonzero(i + 1));
        }
    }
    for i in 0..2 {
        if alpha[i].is_zero() {
            v.push(Nondegeneracy::AlphaNonzero(i + 1));
        }
    }
    for i in 0..2 {
        if beta[i].is_zero() {
            v.push(Nondegeneracy::BetaNonzero(i + 1));
        }
    }
    v
}

/// The map `phi = -(a_1/a_2) x^(alpha_1-alpha_2) (1-x)^(beta_1-beta_2) rho_1 / rho_2`
/// with `rho_i = alpha_i - (alpha_i + beta_i) x`. `f` must be a trinomial
/// and `g` a trinomial with integer exponents.
///
/// Of the two terms of `f` sharing a sign, the first in exponent order
/// becomes the constant `-1`.
pub fn t3_phi(f: &SparsePolyQ2, g: &SparsePolyQ2) -> Result<T3Phi, ReduceError> {
    if f.len() != 3 {
        return Err(ReduceError::WrongTermCount {
            expected: 3,
            found: f.len(),
        });
    }
    let normalization = normalize_trinomial_lattice(g)?;
    let fz = normalization.transform(f)?;
    let majority = match fz.sign_pattern() {
        (3, 0) | (0, 3) => return Err(BivarError::AllSameSign.into()),
        (2, 1) => 1,
        _ => -1,
    };
    let i0 = fz.terms().iter().position(|t| t.sign == majority).unwrap();
    let t0 = &fz.terms()[i0];
    let shift = (-&t0.exp.0, -&t0.exp.1);
    let normalized_f = fz.mul_monomial(&t0.coeff.neg().recip()?, &shift)?;
    let constant_term = f
        .terms()
        .iter()
        .map(|t| t.exp.clone())
        .find(|e| normalization.map_exponent(e) == t0.exp)
        .expect("every image exponent has a preimage");
    let others: Vec<_> = normalized_f
        .terms()
        .iter()
        .filter(|t| !(t.exp.0.is_zero() && t.exp.1.is_zero()))
        .collect();
    debug_assert_eq!(others.len(), 2);
    let (k3, k4, l4) = (normalization.k3, normalization.k4, normalization.l4);
    let r = |n: i64| Rat::from_integer(n.into());
    let mut exps = [int_exp(&others[0].exp)?, int_exp(&others[1].exp)?];
    let mut a = [others[0].coeff.clone(), others[1].coeff.clone()];
    let al = |(k, l): (i64, i64)| (r(k) * r(l4) - r(k4) * r(l)) / (r(k3) * r(l4));
    let be = |(_, l): (i64, i64)| r(l) / r(l4);
    let mut swapped = false;
    if al(exps[0]) < al(exps[1]) {
        exps.swap(0, 1);
        a.swap(0, 1);
        swapped = true;
    }
    let alpha = [al(exps[0]), al(exps[1])];
    let beta = [be(exps[0]), be(exps[1])];
    let rho = |i: usize| UniPoly::linear(alpha[i].clone(), -(&alpha[i] + &beta[i]));
    let p = UniPolyR::new(a[0].neg(), rho(0));
    let q = UniPolyR::new(a[1].clone(), rho(1));
    let phi = PhiMap::new(&alpha[0] - &alpha[1], &beta[0] - &beta[1], p, q)?;
    let violations = violations(&alpha, &beta);
    Ok(T3Phi {
        phi,
        alpha,
        beta,
        a,
        exps,
        k3,
        k4,
        l4,
        swapped,
        constant_term,
        normalization,
        normalized_f,
        violations,
    })
}
