//! Normal fans of Newton polygons, Minkowski sums and the alternation
//! predicate for pairs of triangles.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Rat;
use crate::bivar::{newton_polygon, BivarError, LatticePolygon, SparsePolyQ2};
use crate::rootcount::{count_positive_solutions, CertifiedCount, CountError, CountSettings};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("polygon is degenerate")]
    DegeneratePolygon,
    #[error("a ray of one fan points along a ray of the other")]
    ParallelRays,
    #[error("alternation is defined for triangles only")]
    NotTriangles,
    #[error("Minkowski sum is not a hexagon")]
    NotHexagon,
    #[error(transparent)]
    Bivar(#[from] BivarError),
    #[error(transparent)]
    Count(#[from] CountError),
}

pub type Vector = (BigInt, BigInt);

fn cross(a: &Vector, b: &Vector) -> BigInt {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// 0 for angles in `[0, pi)`, 1 for `[pi, 2 pi)`.
fn half(v: &Vector) -> u8 {
    if v.1.is_positive() || (v.1.is_zero() && v.0.is_positive()) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular order starting at the direction `(1, 0)`.
pub fn angle_cmp(a: &Vector, b: &Vector) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| BigInt::zero().cmp(&cross(a, b)))
}

fn same_direction(a: &Vector, b: &Vector) -> bool {
    cross(a, b).is_zero() && half(a) == half(b)
}

fn primitive(v: Vector) -> Vector {
    let g = v.0.gcd(&v.1);
    if g.is_zero() {
        v
    } else {
        (&v.0 / &g, &v.1 / &g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormalFan {
    #[serde(serialize_with = "ser_vectors")]
    rays: Vec<Vector>,
}

fn ser_vectors<S: serde::Serializer>(v: &[Vector], s: S) -> Result<S::Ok, S::Error> {
    let out: Vec<[String; 2]> = v.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
    out.serialize(s)
}

impl NormalFan {
    /// Fan from arbitrary nonzero rays; they are made primitive and sorted.
    pub fn from_rays(rays: Vec<Vector>) -> Self {
        let mut rays: Vec<Vector> = rays.into_iter().map(primitive).collect();
        rays.sort_by(angle_cmp);
        NormalFan { rays }
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

fn lattice_edges(p: &LatticePolygon) -> Vec<(Vector, Vector)> {
    let v = p.lattice_vertices();
    let n = v.len();
    (0..n)
        .map(|i| {
            let (a, b) = (&v[i], &v[(i + 1) % n]);
            (a.clone(), (&b.0 - &a.0, &b.1 - &a.1))
        })
        .collect()
}

/// Primitive outward edge normals, counterclockwise.
pub fn normal_fan(p: &LatticePolygon) -> Result<NormalFan, FanError> {
    if p.is_degenerate() {
        return Err(FanError::DegeneratePolygon);
    }
    // for a counterclockwise boundary the outward normal of (dx, dy) is (dy, -dx)
    Ok(NormalFan::from_rays(
        lattice_edges(p).into_iter().map(|(_, (dx, dy))| (dy, -dx)).collect(),
    ))
}

fn rat_edges(p: &LatticePolygon) -> Vec<(Rat, Rat)> {
    p.edges()
}

/// Minkowski sum by merging the edge sequences in angular order.
pub fn minkowski_sum(p1: &LatticePolygon, p2: &LatticePolygon) -> Result<LatticePolygon, FanError> {
    if p1.is_degenerate() || p2.is_degenerate() {
        return Err(FanError::DegeneratePolygon);
    }
    // directions are compared on integer representatives of each edge
    let scaled = |e: &(Rat, Rat)| -> Vector {
        let l = e.0.denom().lcm(e.1.denom());
        (e.0.numer() * (&l / e.0.denom()), e.1.numer() * (&l / e.1.denom()))
    };
    let mut edges: Vec<(Vector, (Rat, Rat))> = rat_edges(p1)
        .into_iter()
        .chain(rat_edges(p2))
        .map(|e| (scaled(&e), e))
        .collect();
    edges.sort_by(|a, b| angle_cmp(&a.0, &b.0));
    let start = |p: &LatticePolygon| {
        p.vertices()
            .iter()
            .min_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)))
            .cloned()
            .unwrap()
    };
    let (s1, s2) = (start(p1), start(p2));
    let mut cur = (&s1.0 + &s2.0, &s1.1 + &s2.1);
    let mut pts = vec![cur.clone()];
    for (_, e) in &edges {
        cur = (&cur.0 + &e.0, &cur.1 + &e.1);
        pts.push(cur.clone());
    }
    Ok(LatticePolygon::hull(&pts)?)
}

pub fn is_hexagon(p: &LatticePolygon) -> bool {
    !p.is_degenerate() && p.len() == 6
}

fn check_triangles(f1: &NormalFan, f2: &NormalFan) -> Result<(), FanError> {
    if f1.len() != 3 || f2.len() != 3 {
        return Err(FanError::NotTriangles);
    }
    if f1.rays.iter().any(|a| f2.rays.iter().any(|b| same_direction(a, b))) {
        return Err(FanError::ParallelRays);
    }
    Ok(())
}

/// Every open 2-cone of `f2` contains exactly one ray of `f1`.
pub fn alternates(f1: &NormalFan, f2: &NormalFan) -> Result<bool, FanError> {
    check_triangles(f1, f2)?;
    let n = f2.rays.len();
    Ok((0..n).all(|i| {
        let (a, b) = (&f2.rays[i], &f2.rays[(i + 1) % n]);
        f1.rays
            .iter()
            .filter(|v| cross(a, v).is_positive() && cross(v, b).is_positive())
            .count()
            == 1
    }))
}

/// Two cyclically consecutive edge normals of the hexagon `p1 + p2` come from
/// the same summand.
pub fn consecutive_translate_check(p1: &LatticePolygon, p2: &LatticePolygon) -> Result<bool, FanError> {
    if !is_hexagon(&minkowski_sum(p1, p2)?) {
        return Err(FanError::NotHexagon);
    }
    let mut rays: Vec<(Vector, u8)> = normal_fan(p1)?
        .rays
        .into_iter()
        .map(|r| (r, 1))
        .chain(normal_fan(p2)?.rays.into_iter().map(|r| (r, 2)))
        .collect();
    rays.sort_by(|a, b| angle_cmp(&a.0, &b.0));
    let n = rays.len();
    Ok((0..n).any(|i| rays[i].1 == rays[(i + 1) % n].1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem3Report {
    pub count: CertifiedCount,
    pub hexagon: bool,
    /// `None` when rays of the two fans coincide in direction.
    pub alternates: Option<bool>,
    pub consecutive_translate: Option<bool>,
    pub fan_f: NormalFan,
    pub fan_g: NormalFan,
}

impl Theorem3Report {
    /// A certified five-solution system with alternating fans or without a
    /// hexagonal Minkowski sum.
    pub fn is_violation(&self) -> bool {
        self.count.is_exact()
            && self.count.count == 5
            && (self.alternates == Some(true) || !self.hexagon)
    }
}

pub fn theorem3_check(
    f: &SparsePolyQ2,
    g: &SparsePolyQ2,
    settings: &CountSettings,
) -> Result<Theorem3Report, FanError> {
    if f.len() != 3 || g.len() != 3 {
        return Err(FanError::NotTriangles);
    }
    let (p1, p2) = (newton_polygon(f)?, newton_polygon(g)?);
    let (fan_f, fan_g) = (normal_fan(&p1)?, normal_fan(&p2)?);
    let count = count_positive_solutions(f, g, settings)?;
    let hexagon = is_hexagon(&minkowski_sum(&p1, &p2)?);
    let alternates = match alternates(&fan_f, &fan_g) {
        Ok(b) => Some(b),
        Err(FanError::ParallelRays) => None,
        Err(e) => return Err(e),
    };
    let consecutive_translate = match consecutive_translate_check(&p1, &p2) {
        Ok(b) => Some(b),
        Err(FanError::NotHexagon) => None,
        Err(e) => return Err(e),
    };
    Ok(Theorem3Report {
        count,
        hexagon,
        alternates,
        consecutive_translate,
        fan_f,
        fan_g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn poly(pts: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::hull(&pts.iter().map(|&(a, b)| (rat(a, 1), rat(b, 1))).collect::<Vec<_>>()).unwrap()
    }

    fn v(a: i64, b: i64) -> Vector {
        (a.into(), b.into())
    }

    fn fan(rays: &[(i64, i64)]) -> NormalFan {
        NormalFan::from_rays(rays.iter().map(|&(a, b)| v(a, b)).collect())
    }

    #[test]
    fn triangle_with_lattice_parameters() {
        // (k3, k4, l4) = (1, 1, 1)
        let f = normal_fan(&poly(&[(0, 0), (1, 0), (1, 1)])).unwrap();
        assert_eq!(f, fan(&[(0, -1), (-1, 1), (1, 0)]));
        assert_eq!(f.rays(), &[v(1, 0), v(-1, 1), v(0, -1)]);
    }

    #[test]
    fn square_and_standard_triangle() {
        let f = normal_fan(&poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap();
        assert_eq!(f.rays(), &[v(1, 0), v(0, 1), v(-1, 0), v(0, -1)]);
        let t = normal_fan(&poly(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        assert_eq!(t.rays(), &[v(1, 1), v(-1, 0), v(0, -1)]);
    }

    #[test]
    fn rays_are_primitive() {
        let f = normal_fan(&poly(&[(0, 0), (4, 0), (0, 6)])).unwrap();
        assert_eq!(f.rays(), &[v(3, 2), v(-1, 0), v(0, -1)]);
    }

    #[test]
    fn degenerate_polygon_rejected() {
        assert_eq!(normal_fan(&poly(&[(0, 0), (2, 2)])), Err(FanError::DegeneratePolygon));
    }

    #[test]
    fn sum_matches_vertex_hull() {
        let a = poly(&[(0, 1), (6, 0), (0, 3)]);
        let b = poly(&[(1, 0), (3, 0), (0, 6)]);
        let s = minkowski_sum(&a, &b).unwrap();
        let mut pts = Vec::new();
        for x in a.vertices() {
            for y in b.vertices() {
                pts.push((&x.0 + &y.0, &x.1 + &y.1));
            }
        }
        assert_eq!(s, LatticePolygon::hull(&pts).unwrap());
        assert!(is_hexagon(&s));
        let t = minkowski_sum(&a, &a).unwrap();
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn interleaved_fans_alternate() {
        let f1 = fan(&[(0, -1), (-1, 0), (1, 1)]);
        let f2 = fan(&[(1, -1), (0, 1), (-1, -1)]);
        assert_eq!(alternates(&f1, &f2), Ok(true));
        assert_eq!(alternates(&f1, &f1), Err(FanError::ParallelRays));
    }

    #[test]
    fn sextic_polygons() {
        let (f, g) = crate::fixtures::sextic();
        let (p1, p2) = (newton_polygon(&f).unwrap(), newton_polygon(&g).unwrap());
        assert!(is_hexagon(&minkowski_sum(&p1, &p2).unwrap()));
        assert_eq!(alternates(&normal_fan(&p1).unwrap(), &normal_fan(&p2).unwrap()), Ok(false));
        assert_eq!(consecutive_translate_check(&p1, &p2), Ok(true));
    }

    #[test]
    fn fan_check_on_fixtures() {
        for (f, g) in [crate::fixtures::sextic(), crate::fixtures::quintic()] {
            let r = theorem3_check(&f, &g, &CountSettings::default()).unwrap();
            assert_eq!(r.count.count, 5);
            assert!(r.hexagon);
            assert_eq!(r.alternates, Some(false));
            assert_eq!(r.consecutive_translate, Some(true));
            assert!(!r.is_violation());
        }
    }
}
