//! Named systems with known numbers of positive solutions.

use crate::algebra::{rat, Rat};
use crate::bivar::SparsePolyQ2;

fn poly(terms: &[(Rat, i64, i64)]) -> SparsePolyQ2 {
    SparsePolyQ2::from_rat_terms(terms).expect("fixture coefficients are rational")
}

/// `x^6 + (44/31) y^3 - y = y^6 + (44/31) x^3 - x = 0`, five positive
/// solutions.
pub fn sextic() -> (SparsePolyQ2, SparsePolyQ2) {
    sextic_with(rat(44, 31), rat(44, 31))
}

/// The same shape with independent middle coefficients.
pub fn sextic_with(a: Rat, b: Rat) -> (SparsePolyQ2, SparsePolyQ2) {
    let f = poly(&[(rat(1, 1), 6, 0), (a, 0, 3), (rat(-1, 1), 0, 1)]);
    let g = poly(&[(rat(1, 1), 0, 6), (b, 3, 0), (rat(-1, 1), 1, 0)]);
    (f, g)
}

/// `x^5 - (49/95) x^3 y + y^6 = y^5 - (49/95) x y^3 + x^6 = 0`, five
/// positive solutions.
pub fn quintic() -> (SparsePolyQ2, SparsePolyQ2) {
    let c = rat(-49, 95);
    let f = poly(&[(rat(1, 1), 5, 0), (c.clone(), 3, 1), (rat(1, 1), 0, 6)]);
    let g = poly(&[(rat(1, 1), 0, 5), (c, 1, 3), (rat(1, 1), 6, 0)]);
    (f, g)
}

/// `10 x^106 + 11 y^53 - 11 y = 10 y^106 + 11 x^53 - 11 x = 0`, five
/// positive solutions.
pub fn haas() -> (SparsePolyQ2, SparsePolyQ2) {
    let f = poly(&[(rat(10, 1), 106, 0), (rat(11, 1), 0, 53), (rat(-11, 1), 0, 1)]);
    let g = poly(&[(rat(10, 1), 0, 106), (rat(11, 1), 53, 0), (rat(-11, 1), 1, 0)]);
    (f, g)
}
