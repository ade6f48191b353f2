mod common;

use common::{rand_phi, rand_system};
use fewnomial::oracle::{grid_scan, resultant_count_positive};
use fewnomial::phimap::analyze_phi;
use fewnomial::reduce::to_F;
use fewnomial::rootcount::{check_bounds, count_positive_solutions, CountSettings};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn trinomial_systems_within_five() {
    let settings = CountSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut exact = 0;
    for _ in 0..40 {
        let (f, g) = rand_system(&mut rng, 3, 8);
        let Ok(c) = count_positive_solutions(&f, &g, &settings) else { continue };
        assert!(c.count <= 5, "{f} ; {g}: {}", c.count);
        exact += usize::from(c.is_exact());
    }
    assert!(exact >= 30, "only {exact} certified");
}

#[test]
fn rolle_chain_holds() {
    let settings = CountSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for t in [3, 4] {
        for _ in 0..15 {
            let (f, g) = rand_system(&mut rng, t, 8);
            let r = check_bounds(&f, &g, &settings);
            assert!(!r.is_violation(), "{f} ; {g}: {r:?}");
            if r.error.is_none() {
                assert_eq!(r.degrees_ok, Some(true));
            }
        }
    }
}

#[test]
fn resultant_agrees_with_pipeline() {
    let settings = CountSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut compared = 0;
    for _ in 0..30 {
        let (f, g) = rand_system(&mut rng, 3, 6);
        let Ok(c) = count_positive_solutions(&f, &g, &settings) else { continue };
        let Ok(r) = resultant_count_positive(&f, &g) else { continue };
        if c.is_exact() {
            assert_eq!(c.count, r, "{f} ; {g}");
            compared += 1;
        }
    }
    assert!(compared >= 15, "only {compared} compared");
}

#[test]
fn grid_never_exceeds_certified() {
    let settings = CountSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..20 {
        let (f, g) = rand_system(&mut rng, 3, 8);
        let Ok(red) = to_F(&f, &g) else { continue };
        let c = fewnomial::rootcount::certified_count(&red.big_f, &settings);
        let scan = grid_scan(&red.big_f, 500).unwrap();
        if c.is_exact() {
            assert!(scan.count() <= c.count, "{f} ; {g}");
        }
    }
}

#[test]
fn phi_maps_satisfy_bounds_and_windows() {
    let settings = CountSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut analyzed = 0;
    for _ in 0..60 {
        let phi = rand_phi(&mut rng);
        let Ok(rep) = analyze_phi(&phi, &settings) else { continue };
        assert!(!rep.is_violation(), "{phi:?}: {rep:?}");
        assert!(rep.n.count as u64 <= rep.bound_phi);
        analyzed += 1;
    }
    assert!(analyzed >= 40, "only {analyzed} analyzed");
}
