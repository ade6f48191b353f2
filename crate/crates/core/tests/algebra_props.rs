mod common;

use common::rat;
use fewnomial::algebra::{isolate_roots, sturm_count, DyadicInterval, IntervalCtx, Rat, RealExpr, UniPoly};
use num_traits::{One, Pow};
use proptest::prelude::*;

fn pos_rat() -> impl Strategy<Value = Rat> {
    (1i64..400, 1i64..100).prop_map(|(n, d)| rat(n, d))
}

fn any_rat() -> impl Strategy<Value = Rat> {
    (-400i64..400, 1i64..100).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn arithmetic_encloses(a in any_rat(), b in any_rat(), prec in 16u32..200) {
        let ctx = IntervalCtx::new(prec);
        let (ia, ib) = (ctx.rat(&a), ctx.rat(&b));
        prop_assert!(ctx.add(&ia, &ib).contains_rat(&(&a + &b)));
        prop_assert!(ctx.sub(&ia, &ib).contains_rat(&(&a - &b)));
        prop_assert!(ctx.mul(&ia, &ib).contains_rat(&(&a * &b)));
        if b != Rat::from_integer(0.into()) {
            prop_assert!(ctx.div(&ia, &ib).unwrap().contains_rat(&(&a / &b)));
        }
    }

    #[test]
    fn rational_power_encloses(x in pos_rat(), p in -12i32..12, q in 1u32..7, prec in 24u32..160) {
        // y = x^(p/q) lies in the enclosure iff lo^q <= x^p <= hi^q
        let ctx = IntervalCtx::new(prec);
        let y = ctx.pow_rat(&ctx.rat(&x), &rat(p as i64, q as i64)).unwrap();
        let target: Rat = Pow::pow(&x, p);
        let lo = y.lo().to_rat();
        let hi = y.hi().to_rat();
        prop_assert!(lo > Rat::from_integer(0.into()));
        prop_assert!(Pow::pow(&lo, q) <= target && target <= Pow::pow(&hi, q));
    }

    #[test]
    fn sign_of_expression_matches(n in 2i64..50) {
        // sqrt(n)^2 - n is exactly zero but undecidable; sqrt(n)^2 - n + 1/10^6 is positive
        let s = RealExpr::int(n).pow(&rat(1, 2)).unwrap();
        let e = s.mul(&s).sub(&RealExpr::int(n)).add(&RealExpr::from_rat(rat(1, 1_000_000)));
        prop_assert_eq!(fewnomial::algebra::sign_of(&e, 256).to_i32(), Some(1));
    }

    #[test]
    fn sturm_agrees_with_isolation(roots in prop::collection::btree_set(-30i64..30, 1..6), extra in 0u32..3) {
        // product of (x - r/7) times an irreducible positive quadratic power
        let mut p = UniPoly::one();
        for r in &roots {
            p = p.mul(&UniPoly::linear(rat(-*r, 7), rat(1, 1)));
        }
        let quad = UniPoly::from_i64(&[1, 0, 1]);
        p = p.mul(&quad.pow(extra));
        let (a, b) = (rat(-5, 1), rat(5, 1));
        let n = sturm_count(&p, &a, &b).unwrap();
        let iso = isolate_roots(&p, &a, &b, &rat(1, 100)).unwrap();
        prop_assert_eq!(n, roots.len());
        prop_assert_eq!(iso.len(), roots.len());
        for ((lo, hi), r) in iso.iter().zip(roots.iter()) {
            let r = rat(*r, 7);
            prop_assert!(lo < &r && &r < hi);
        }
    }

    #[test]
    fn polynomial_enclosure(c in prop::collection::vec(any_rat(), 1..6), x in any_rat()) {
        let p = UniPoly::new(c);
        let ctx = IntervalCtx::new(80);
        prop_assert!(p.eval_iv(&ctx, &ctx.rat(&x)).contains_rat(&p.eval(&x)));
    }
}

#[test]
fn point_interval_is_exact() {
    let one = DyadicInterval::one();
    assert!(one.contains_rat(&Rat::one()));
    assert_eq!(one.lo(), one.hi());
}
