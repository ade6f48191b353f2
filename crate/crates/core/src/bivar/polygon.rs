use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{BivarError, SparsePolyQ2};
use crate::algebra::Rat;

pub type Point = (Rat, Rat);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    Point,
    Segment,
}

/// Convex polygon with counterclockwise, strictly convex vertex list
/// starting at the lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
    degeneracy: Option<Degeneracy>,
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rat {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

impl LatticePolygon {
    /// Convex hull of a nonempty point set.
    pub fn hull(points: &[Point]) -> Result<Self, BivarError> {
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort();
        pts.dedup();
        match pts.len() {
            0 => return Err(BivarError::Empty),
            1 => {
                return Ok(LatticePolygon {
                    vertices: pts,
                    degeneracy: Some(Degeneracy::Point),
                })
            }
            _ => {}
        }
        let mut lower: Vec<Point> = Vec::new();
        for p in &pts {
            while lower.len() >= 2
                && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        let degeneracy = (lower.len() < 3).then_some(Degeneracy::Segment);
        Ok(LatticePolygon {
            vertices: lower,
            degeneracy,
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn degeneracy(&self) -> Option<Degeneracy> {
        self.degeneracy
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracy.is_some()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge vectors `v[i+1] - v[i]`, counterclockwise.
    pub fn edges(&self) -> Vec<Point> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = &self.vertices[i];
                let b = &self.vertices[(i + 1) % n];
                (&b.0 - &a.0, &b.1 - &a.1)
            })
            .collect()
    }

    /// Vertices scaled by the common denominator to integer points.
    pub fn lattice_vertices(&self) -> Vec<(BigInt, BigInt)> {
        let l = self
            .vertices
            .iter()
            .fold(BigInt::one(), |acc, (a, b)| acc.lcm(a.denom()).lcm(b.denom()));
        self.vertices
            .iter()
            .map(|(a, b)| {
                (
                    a.numer() * (&l / a.denom()),
                    b.numer() * (&l / b.denom()),
                )
            })
            .collect()
    }

    pub fn twice_area(&self) -> Rat {
        let n = self.vertices.len();
        (0..n).fold(Rat::zero(), |acc, i| {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            acc + &a.0 * &b.1 - &a.1 * &b.0
        })
    }
}

impl Serialize for LatticePolygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LatticePolygon", 2)?;
        let v: Vec<[String; 2]> = self
            .vertices
            .iter()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .collect();
        st.serialize_field("vertices", &v)?;
        st.serialize_field("degeneracy", &self.degeneracy)?;
        st.end()
    }
}

/// Newton polygon of the support of `f`.
pub fn newton_polygon(f: &SparsePolyQ2) -> Result<LatticePolygon, BivarError> {
    let pts: Vec<Point> = f.exponents().cloned().collect();
    LatticePolygon::hull(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn pt(a: i64, b: i64) -> Point {
        (rat(a, 1), rat(b, 1))
    }

    #[test]
    fn sextic_first_triangle() {
        let f = SparsePolyQ2::from_rat_terms(&[
            (rat(1, 1), 6, 0),
            (rat(44, 31), 0, 3),
            (rat(-1, 1), 0, 1),
        ])
        .unwrap();
        let p = newton_polygon(&f).unwrap();
        assert_eq!(p.vertices(), &[pt(0, 1), pt(6, 0), pt(0, 3)]);
        assert!(!p.is_degenerate());
        assert!(p.twice_area().is_positive());
    }

    #[test]
    fn quintic_first_triangle() {
        let f = SparsePolyQ2::from_rat_terms(&[
            (rat(1, 1), 5, 0),
            (rat(-49, 95), 3, 1),
            (rat(1, 1), 0, 6),
        ])
        .unwrap();
        let p = newton_polygon(&f).unwrap();
        assert_eq!(p.vertices(), &[pt(0, 6), pt(3, 1), pt(5, 0)]);
    }

    #[test]
    fn degenerate_hulls() {
        let p = LatticePolygon::hull(&[pt(2, 3)]).unwrap();
        assert_eq!(p.degeneracy(), Some(Degeneracy::Point));
        let s = LatticePolygon::hull(&[pt(0, 0), pt(1, 1), pt(2, 2)]).unwrap();
        assert_eq!(s.degeneracy(), Some(Degeneracy::Segment));
        assert_eq!(s.vertices(), &[pt(0, 0), pt(2, 2)]);
    }

    #[test]
    fn collinear_boundary_points_dropped() {
        let p = LatticePolygon::hull(&[pt(0, 0), pt(1, 0), pt(2, 0), pt(2, 2), pt(0, 2)]).unwrap();
        assert_eq!(p.len(), 4);
    }
}
