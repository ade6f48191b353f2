//! End-to-end acceptance checks. Prints one PASS/FAIL line per check and
//! exits nonzero if any fails.

use std::time::{Duration, Instant};

use fewnomial::algebra::{Rat, UniPoly};
use fewnomial::bivar::{LatticePolygon, SparsePolyQ2};
use fewnomial::fans::{alternates, consecutive_translate_check, is_hexagon, minkowski_sum, normal_fan};
use fewnomial::fixtures;
use fewnomial::oracle::resultant_count_positive;
use fewnomial::phimap::analyze_phi;
use fewnomial::reduce::PhiMap;
use fewnomial::rootcount::{bound_phi, bound_t, check_bounds, count_positive_solutions, CountSettings};
use fewnomial_cli::report::AnalysisReport;
use fewnomial_cli::search::{cmd_search, parse_slots, SearchOptions, Space};
use fewnomial_cli::{cmd_analyze, parse_system};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn rand_coeff(rng: &mut ChaCha8Rng) -> Rat {
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(s * rng.gen_range(1..=100), rng.gen_range(1..=100))
}

fn rand_poly(rng: &mut ChaCha8Rng, t: usize, max_exp: i64) -> SparsePolyQ2 {
    let mut exps: Vec<(i64, i64)> = Vec::new();
    while exps.len() < t {
        let e = (rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp));
        if !exps.contains(&e) {
            exps.push(e);
        }
    }
    let terms: Vec<_> = exps.into_iter().map(|(a, b)| (rand_coeff(rng), a, b)).collect();
    SparsePolyQ2::from_rat_terms(&terms).unwrap()
}

fn rand_systems(seed: u64, t: usize, n: usize) -> Vec<(SparsePolyQ2, SparsePolyQ2)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (rand_poly(&mut rng, t, 8), rand_poly(&mut rng, 3, 8))).collect()
}

fn rand_phis(seed: u64, n: usize) -> Vec<PhiMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let upoly = |rng: &mut ChaCha8Rng| loop {
        let d = rng.gen_range(0..=3);
        let p = UniPoly::new((0..=d).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect());
        if !p.is_zero() {
            return p;
        }
    };
    (0..n)
        .map(|_| {
            let a = rat(rng.gen_range(-8..=8), rng.gen_range(1..=4));
            let b = rat(rng.gen_range(-8..=8), rng.gen_range(1..=4));
            let (p, q) = (upoly(&mut rng), upoly(&mut rng));
            PhiMap::rational(a, b, p, q).unwrap()
        })
        .collect()
}

fn rand_triangle(rng: &mut ChaCha8Rng) -> LatticePolygon {
    loop {
        let pts: Vec<_> = (0..3).map(|_| (rat(rng.gen_range(-8..=8), 1), rat(rng.gen_range(-8..=8), 1))).collect();
        let p = LatticePolygon::hull(&pts).unwrap();
        if !p.is_degenerate() {
            return p;
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fixture_flags(r: &AnalysisReport) -> (bool, String) {
    let count = r.count.as_ref().map(|c| (c.count, c.is_exact()));
    let fans = r.fans.as_ref().map(|f| (f.hexagon, f.alternates, f.consecutive_translate));
    let ok = count == Some((5, true))
        && r.bounds.bound_t == Some(5)
        && fans == Some((true, Some(false), Some(true)))
        && !r.flags.violation;
    (
        ok,
        format!(
            "count={count:?} bound_t={:?} (hexagon, alternates, translate)={fans:?}",
            r.bounds.bound_t
        ),
    )
}

fn fixture(text: &str, slow: bool, budget: Duration) -> Outcome {
    let t = Instant::now();
    let mut spec = parse_system(text).unwrap();
    spec.options.slow = slow;
    let r = cmd_analyze(&spec, false);
    let el = t.elapsed();
    let (ok, d) = fixture_flags(&r);
    check(ok && el <= budget, format!("{d} in {:.1}s", el.as_secs_f64()))
}

fn c1() -> Outcome {
    fixture("x^6 + (44/31)y^3 - y ; y^6 + (44/31)x^3 - x", false, Duration::from_secs(60))
}

fn c2() -> Outcome {
    fixture("x^5 - (49/95)x^3*y + y^6 ; y^5 - (49/95)x*y^3 + x^6", false, Duration::from_secs(60))
}

fn c3() -> Outcome {
    let t = Instant::now();
    let mut spec = parse_system("10x^106 + 11y^53 - 11y ; 10y^106 + 11x^53 - 11x").unwrap();
    spec.options.slow = true;
    let r = cmd_analyze(&spec, false);
    let el = t.elapsed();
    let count = r.count.as_ref().map(|c| (c.count, c.is_exact()));
    let skipped = r.oracle.resultant_count.is_none();
    check(
        count == Some((5, true)) && skipped && !r.flags.violation && el <= Duration::from_secs(1800),
        format!("count={count:?} resultant skipped={skipped} in {:.1}s", el.as_secs_f64()),
    )
}

fn c4() -> Outcome {
    let b: Vec<u64> = (3..=5).map(|t| bound_t(t).unwrap()).collect();
    let phi = PhiMap::rational(rat(1, 2), rat(3, 2), UniPoly::from_i64(&[1, 2]), UniPoly::from_i64(&[3, 1])).unwrap();
    let bp = bound_phi(&phi);
    check(b == [5, 11, 23] && bp == 4, format!("bound_t(3..=5)={b:?} bound_phi(1,1)={bp}"))
}

fn c5() -> Outcome {
    let t = Instant::now();
    let s = CountSettings::default();
    let mut summary = Vec::new();
    let mut violations = 0;
    for (tt, n, seed, bound) in [(3, 200, 501, 5), (4, 100, 502, 11)] {
        let (mut exact, mut max) = (0, 0);
        for (f, g) in rand_systems(seed, tt, n) {
            let Ok(c) = count_positive_solutions(&f, &g, &s) else { continue };
            if c.is_exact() {
                exact += 1;
                max = max.max(c.count);
                if c.count > bound {
                    violations += 1;
                    eprintln!("violation: {f} ; {g} has {}", c.count);
                }
            }
        }
        summary.push(format!("t={tt}: {exact}/{n} certified, max {max}"));
    }
    let el = t.elapsed();
    check(
        violations == 0 && el <= Duration::from_secs(600),
        format!("{} violations={violations} in {:.1}s", summary.join(", "), el.as_secs_f64()),
    )
}

fn phi_suite(window: bool) -> Outcome {
    let s = CountSettings::default();
    let (mut analyzed, mut exact, mut violations) = (0, 0, 0);
    for phi in rand_phis(601, 200) {
        let Ok(r) = analyze_phi(&phi, &s) else { continue };
        analyzed += 1;
        exact += usize::from(r.n.is_exact());
        let bad = if window {
            !r.window_ok || r.useful_bound_ok == Some(false)
        } else {
            r.n.count as u64 > r.bound_phi
        };
        if bad {
            violations += 1;
            eprintln!("violation: {phi:?}");
        }
    }
    check(
        violations == 0 && analyzed > 0,
        format!("{analyzed}/200 analyzed, {exact} with certified N, violations={violations}"),
    )
}

fn c8() -> Outcome {
    let s = CountSettings::default();
    let (mut compared, mut agree, mut tried) = (0, 0, 0);
    let mut seed = 801;
    while compared < 100 && tried < 400 {
        for (f, g) in rand_systems(seed, 3, 50) {
            if compared == 100 {
                break;
            }
            tried += 1;
            let Ok(c) = count_positive_solutions(&f, &g, &s) else { continue };
            if !c.is_exact() {
                continue;
            }
            let Ok(r) = resultant_count_positive(&f, &g) else { continue };
            compared += 1;
            if r == c.count {
                agree += 1;
            } else {
                eprintln!("disagreement: {f} ; {g}: pipeline {} resultant {r}", c.count);
            }
        }
        seed += 1;
    }
    check(
        compared == 100 && agree == compared,
        format!("{agree}/{compared} agree ({tried} systems drawn)"),
    )
}

fn c9() -> Outcome {
    let s = CountSettings::default();
    let mut systems = vec![fixtures::sextic(), fixtures::quintic()];
    systems.extend(rand_systems(501, 3, 200));
    systems.extend(rand_systems(502, 4, 100));
    let (mut checked, mut violations) = (0, 0);
    for (f, g) in &systems {
        let r = check_bounds(f, g, &s);
        if r.error.is_some() {
            continue;
        }
        checked += 1;
        if r.chain.iter().any(|c| c.holds == Some(false)) || r.degrees_ok != Some(true) {
            violations += 1;
            eprintln!("violation: {f} ; {g}: {r:?}");
        }
    }
    check(violations == 0, format!("{checked} systems checked, violations={violations}"))
}

fn c10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let (mut pairs, mut violations, mut alternating) = (0, 0, 0);
    while pairs < 500 {
        let (p, q) = (rand_triangle(&mut rng), rand_triangle(&mut rng));
        if !is_hexagon(&minkowski_sum(&p, &q).unwrap()) {
            continue;
        }
        pairs += 1;
        let alt = alternates(&normal_fan(&p).unwrap(), &normal_fan(&q).unwrap());
        let tr = consecutive_translate_check(&p, &q);
        match (alt, tr) {
            (Ok(a), Ok(t)) if a != t => alternating += usize::from(a),
            other => {
                violations += 1;
                eprintln!("violation: {p:?} {q:?}: {other:?}");
            }
        }
    }
    check(
        violations == 0,
        format!("{pairs} hexagonal pairs, {alternating} alternating, violations={violations}"),
    )
}

fn c11() -> Outcome {
    let t = Instant::now();
    let (f, g) = fixtures::sextic();
    let opts = SearchOptions {
        space: Space::Grid {
            f,
            g,
            perturb: parse_slots("f1,g2").unwrap(),
            steps: 21,
            rel: rat(1, 20),
        },
        seed: 0,
        threshold: 5,
        settings: CountSettings::default(),
    };
    let mut sink = Vec::new();
    let (summary, records) = cmd_search(&opts, &mut sink).unwrap();
    let fives: Vec<_> = records.iter().filter(|r| r.count == 5 && r.exact).collect();
    let bad = fives.iter().filter(|r| r.alternates != Some(false)).count();
    check(
        !fives.is_empty() && bad == 0 && summary.violations == 0 && summary.max_count <= 5,
        format!(
            "{} trials, {} five-solution records, {bad} alternating, histogram {:?} in {:.1}s",
            summary.trials,
            fives.len(),
            summary.histogram,
            t.elapsed().as_secs_f64()
        ),
    )
}

fn main() {
    let checks: [(&str, fn() -> Outcome); 11] = [
        ("1 sextic fixture analyze", c1),
        ("2 quintic fixture analyze", c2),
        ("3 degree-106 fixture (slow)", c3),
        ("4 bound table", c4),
        ("5 random t=3 / t=4 systems within bounds", c5),
        ("6 random phi maps: N(phi=1) <= deg P + deg Q + 2", || phi_suite(false)),
        ("7 random phi maps: branch window and useful critical points", || phi_suite(true)),
        ("8 resultant oracle equals pipeline", c8),
        ("9 derivative chain inequalities and degrees", c9),
        ("10 alternation iff consecutive translate", c10),
        ("11 grid search around the sextic fixture", c11),
    ];
    let mut failed = 0;
    for (name, f) in checks {
        let o = f();
        failed += usize::from(!o.pass);
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
