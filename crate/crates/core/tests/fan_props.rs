mod common;

use common::rat;
use fewnomial::bivar::LatticePolygon;
use fewnomial::fans::{alternates, consecutive_translate_check, is_hexagon, minkowski_sum, normal_fan, FanError};
use proptest::prelude::*;

fn triangle() -> impl Strategy<Value = LatticePolygon> {
    prop::array::uniform6(-6i64..=6)
        .prop_map(|c| {
            let pts: Vec<_> = c.chunks(2).map(|p| (rat(p[0], 1), rat(p[1], 1))).collect();
            LatticePolygon::hull(&pts).unwrap()
        })
        .prop_filter("nondegenerate", |p| !p.is_degenerate())
}

fn transform(p: &LatticePolygon, m: [i64; 4], shift: (i64, i64)) -> LatticePolygon {
    let pts: Vec<_> = p
        .vertices()
        .iter()
        .map(|(a, b)| {
            (
                a * rat(m[0], 1) + b * rat(m[1], 1) + rat(shift.0, 1),
                a * rat(m[2], 1) + b * rat(m[3], 1) + rat(shift.1, 1),
            )
        })
        .collect();
    LatticePolygon::hull(&pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn alternation_iff_no_translate(p in triangle(), q in triangle()) {
        let sum = minkowski_sum(&p, &q).unwrap();
        prop_assume!(is_hexagon(&sum));
        let alt = alternates(&normal_fan(&p).unwrap(), &normal_fan(&q).unwrap()).unwrap();
        let tr = consecutive_translate_check(&p, &q).unwrap();
        prop_assert_eq!(alt, !tr);
    }

    #[test]
    fn minkowski_commutes(p in triangle(), q in triangle()) {
        prop_assert_eq!(minkowski_sum(&p, &q).unwrap(), minkowski_sum(&q, &p).unwrap());
    }

    #[test]
    fn minkowski_area_is_mixed(p in triangle(), q in triangle()) {
        // area(P+Q) >= area(P) + area(Q), with vertex count at most 6
        let s = minkowski_sum(&p, &q).unwrap();
        prop_assert!(s.twice_area() >= p.twice_area() + q.twice_area());
        prop_assert!(s.len() <= 6);
    }

    #[test]
    fn invariant_under_unimodular_maps(
        p in triangle(),
        q in triangle(),
        m in prop::sample::select(vec![[0, -1, 1, 0], [1, 1, 0, 1], [1, 0, -2, 1], [-1, 0, 0, -1], [2, 1, 1, 1]]),
        sp in (-3i64..3, -3i64..3),
        sq in (-3i64..3, -3i64..3),
    ) {
        let (p2, q2) = (transform(&p, m, sp), transform(&q, m, sq));
        let hex = is_hexagon(&minkowski_sum(&p, &q).unwrap());
        prop_assert_eq!(hex, is_hexagon(&minkowski_sum(&p2, &q2).unwrap()));
        let a1 = alternates(&normal_fan(&p).unwrap(), &normal_fan(&q).unwrap());
        let a2 = alternates(&normal_fan(&p2).unwrap(), &normal_fan(&q2).unwrap());
        match (a1, a2) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(FanError::ParallelRays), Err(FanError::ParallelRays)) => {}
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn fan_rays_are_outward_normals(p in triangle()) {
        let fan = normal_fan(&p).unwrap();
        prop_assert_eq!(fan.len(), 3);
        let v = p.lattice_vertices();
        for r in fan.rays() {
            // each ray is maximized on exactly one edge
            let dots: Vec<_> = v.iter().map(|a| &r.0 * &a.0 + &r.1 * &a.1).collect();
            let max = dots.iter().max().unwrap();
            prop_assert_eq!(dots.iter().filter(|d| *d == max).count(), 2);
        }
    }
}

#[test]
fn sextic_triangles_translate() {
    let (f, g) = fewnomial::fixtures::sextic();
    let p = fewnomial::bivar::newton_polygon(&f).unwrap();
    let q = fewnomial::bivar::newton_polygon(&g).unwrap();
    assert!(is_hexagon(&minkowski_sum(&p, &q).unwrap()));
    assert!(consecutive_translate_check(&p, &q).unwrap());
    assert!(!alternates(&normal_fan(&p).unwrap(), &normal_fan(&q).unwrap()).unwrap());
}
