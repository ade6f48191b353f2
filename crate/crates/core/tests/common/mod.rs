#![allow(dead_code)]

use fewnomial::algebra::{Rat, UniPoly};
use fewnomial::bivar::SparsePolyQ2;
use fewnomial::reduce::PhiMap;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn rand_coeff(rng: &mut ChaCha8Rng) -> Rat {
    let n = rng.gen_range(1..=100);
    let d = rng.gen_range(1..=100);
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(s * n, d)
}

/// Random polynomial with `t` distinct integer exponents in `[0, max_exp]^2`.
pub fn rand_poly(rng: &mut ChaCha8Rng, t: usize, max_exp: i64) -> SparsePolyQ2 {
    let mut exps: Vec<(i64, i64)> = Vec::new();
    while exps.len() < t {
        let e = (rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp));
        if !exps.contains(&e) {
            exps.push(e);
        }
    }
    let terms: Vec<(Rat, i64, i64)> = exps.into_iter().map(|(a, b)| (rand_coeff(rng), a, b)).collect();
    SparsePolyQ2::from_rat_terms(&terms).unwrap()
}

pub fn rand_system(rng: &mut ChaCha8Rng, t: usize, max_exp: i64) -> (SparsePolyQ2, SparsePolyQ2) {
    (rand_poly(rng, t, max_exp), rand_poly(rng, 3, max_exp))
}

fn rand_unipoly(rng: &mut ChaCha8Rng, max_deg: usize) -> UniPoly {
    loop {
        let d = rng.gen_range(0..=max_deg);
        let c: Vec<Rat> = (0..=d).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
        let p = UniPoly::new(c);
        if !p.is_zero() {
            return p;
        }
    }
}

fn rand_exponent(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-8..=8), rng.gen_range(1..=4))
}

pub fn rand_phi(rng: &mut ChaCha8Rng) -> PhiMap {
    let (a, b) = (rand_exponent(rng), rand_exponent(rng));
    PhiMap::rational(a, b, rand_unipoly(rng, 3), rand_unipoly(rng, 3)).unwrap()
}
