//! Exact positive-solution counts by elimination: the resultant in `y`,
//! its positive roots, and the first subresultant for back-substitution.

use num_traits::{One, Zero};

use super::OracleError;
use crate::algebra::poly::{isolate_squarefree, refine_isolated};
use crate::algebra::{sturm_count, Rat, UniPoly};
use crate::bivar::SparsePolyQ2;

/// Polynomial in `y` with coefficients in `Q[x]`, index = degree in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyXY(Vec<UniPoly>);

impl PolyXY {
    /// Clears negative exponents by a monomial shift, which does not change
    /// the positive solutions.
    pub fn from_sparse(f: &SparsePolyQ2) -> Result<Self, OracleError> {
        if !f.has_integer_exponents() {
            return Err(OracleError::NonIntegerExponents);
        }
        let ex: Vec<(i64, i64, Rat)> = f
            .terms()
            .iter()
            .map(|t| {
                let c = t.coeff.as_rat().cloned().ok_or(OracleError::NonRationalCoefficient)?;
                let a = t.exp.0.to_integer().try_into().map_err(|_| OracleError::DegreeTooLarge)?;
                let b = t.exp.1.to_integer().try_into().map_err(|_| OracleError::DegreeTooLarge)?;
                Ok((a, b, c))
            })
            .collect::<Result<_, OracleError>>()?;
        let amin = ex.iter().map(|e| e.0).min().unwrap_or(0);
        let bmin = ex.iter().map(|e| e.1).min().unwrap_or(0);
        let dy = ex.iter().map(|e| e.1 - bmin).max().unwrap_or(0) as usize;
        let mut c = vec![UniPoly::zero(); dy + 1];
        for (a, b, r) in ex {
            let (a, b) = ((a - amin) as usize, (b - bmin) as usize);
            c[b] = c[b].add(&UniPoly::constant(r).shift_up(a));
        }
        Ok(PolyXY(c))
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn transpose(&self) -> Self {
        let dx = self.deg_x();
        let mut c = vec![UniPoly::zero(); dx + 1];
        for (b, cx) in self.0.iter().enumerate() {
            for (a, r) in cx.coeffs().iter().enumerate() {
                c[a] = c[a].add(&UniPoly::constant(r.clone()).shift_up(b));
            }
        }
        PolyXY(c)
    }

    pub fn deg_y(&self) -> usize {
        self.0.len() - 1
    }

    pub fn deg_x(&self) -> usize {
        self.0.iter().filter_map(UniPoly::degree).max().unwrap_or(0)
    }

    pub fn lc_y(&self) -> &UniPoly {
        self.0.last().unwrap()
    }

    fn at_x(&self, x: &Rat) -> Vec<Rat> {
        self.0.iter().map(|c| c.eval(x)).collect()
    }
}

fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let p = m[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    d
}

/// Coefficient of `y^i` in the `j`-th subresultant of `a` and `b` (formal
/// degrees), evaluated from numeric coefficient lists.
fn subres_coeff(a: &[Rat], b: &[Rat], j: usize, i: usize) -> Rat {
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == j && n == j {
        // no rows; either input serves as the subresultant of index j
        return b[i].clone();
    }
    let width = m + n - j;
    let rows: Vec<Vec<Rat>> = (0..n - j)
        .map(|s| (a, n - j - 1 - s))
        .chain((0..m - j).map(|s| (b, m - j - 1 - s)))
        .map(|(p, shift)| {
            // coefficients of y^(width-1) .. y^0 of p * y^shift
            (0..width)
                .map(|c| {
                    let deg = width - 1 - c;
                    if deg >= shift && deg - shift < p.len() {
                        p[deg - shift].clone()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    let k = m + n - 2 * j;
    let last = width - 1 - i;
    let square = rows
        .into_iter()
        .map(|r| {
            let mut v: Vec<Rat> = r[..k - 1].to_vec();
            v.push(r[last].clone());
            v
        })
        .collect();
    det(square)
}

/// Newton interpolation through `(i, v_i)`, `i = 0, 1, ...`.
fn interpolate(vals: &[Rat]) -> UniPoly {
    let n = vals.len();
    let mut dd = vals.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / Rat::from_integer((k as i64).into());
        }
    }
    let mut p = UniPoly::zero();
    for k in (0..n).rev() {
        // p = p * (x - k) + dd[k]
        p = p
            .mul(&UniPoly::new(vec![Rat::from_integer((-(k as i64)).into()), Rat::one()]))
            .add(&UniPoly::constant(dd[k].clone()));
    }
    p
}

/// Coefficient of `y^i` of the `j`-th subresultant as a polynomial in `x`.
pub fn subresultant_coeff(a: &PolyXY, b: &PolyXY, j: usize, i: usize) -> UniPoly {
    let (m, n) = (a.deg_y(), b.deg_y());
    let bound = (n - j) * a.deg_x() + (m - j) * b.deg_x();
    let vals: Vec<Rat> = (0..=bound)
        .map(|t| {
            let x = Rat::from_integer((t as i64).into());
            subres_coeff(&a.at_x(&x), &b.at_x(&x), j, i)
        })
        .collect();
    interpolate(&vals)
}

pub fn resultant_y(a: &PolyXY, b: &PolyXY) -> UniPoly {
    subresultant_coeff(a, b, 0, 0)
}

/// Sign of `s` at the unique root of the squarefree `r` in `(lo, hi)`.
fn sign_at_root(r: &UniPoly, lo: &Rat, hi: &Rat, s: &UniPoly) -> i32 {
    if s.is_zero() {
        return 0;
    }
    let g = r.gcd(s);
    if g.degree().unwrap_or(0) > 0 && sturm_count(&g, lo, hi).unwrap_or(0) > 0 {
        return 0;
    }
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    while sturm_count(s, &lo, &hi).unwrap_or(1) > 0 {
        let w = (&hi - &lo) / Rat::from_integer(2.into());
        (lo, hi) = refine_isolated(r, &lo, &hi, &w);
    }
    s.sign_at(&hi)
}

/// Number of solutions of `f = g = 0` with both coordinates positive.
pub fn resultant_count_positive(f: &SparsePolyQ2, g: &SparsePolyQ2) -> Result<usize, OracleError> {
    let (mut a, mut b) = (PolyXY::from_sparse(f)?, PolyXY::from_sparse(g)?);
    if a.deg_y() == 0 || b.deg_y() == 0 {
        (a, b) = (a.transpose(), b.transpose());
    }
    if a.deg_y() == 0 || b.deg_y() == 0 {
        return Err(OracleError::NonSimple("equation free of y".into()));
    }
    if (a.deg_y() + b.deg_y()) * (a.deg_x() + b.deg_x()) > 4000 {
        return Err(OracleError::DegreeTooLarge);
    }
    let r = resultant_y(&a, &b);
    if r.is_zero() {
        return Err(OracleError::CommonComponent);
    }
    let rs = r.squarefree_part();
    if rs.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let s11 = subresultant_coeff(&a, &b, 1, 1);
    let s10 = subresultant_coeff(&a, &b, 1, 0);
    let bound = rs.cauchy_bound() + Rat::one();
    let width = Rat::new(1.into(), (1u64 << 20).into());
    let mut count = 0;
    for (lo, hi) in isolate_squarefree(&rs, &Rat::zero(), &bound, &width)? {
        if sign_at_root(&rs, &lo, &hi, a.lc_y()) == 0 && sign_at_root(&rs, &lo, &hi, b.lc_y()) == 0 {
            return Err(OracleError::NonSimple("leading coefficients vanish together".into()));
        }
        let d = sign_at_root(&rs, &lo, &hi, &s11);
        if d == 0 {
            return Err(OracleError::NonSimple("several common roots over one abscissa".into()));
        }
        // the common root is y = -s10 / s11
        let n = sign_at_root(&rs, &lo, &hi, &s10);
        if n != 0 && n != d {
            count += 1;
        }
    }
    Ok(count)
}
