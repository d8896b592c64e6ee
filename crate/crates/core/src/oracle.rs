//! Slow, independent reference computations used by tests and `selfcheck`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::bipoly::BiPoly;
use crate::fields::{Field, FqElem};
use crate::unipoly::UPoly;

/// Sylvester matrix of `a`, `b` with formal degrees `da`, `db`.
fn sylvester_rows<T: Clone>(a: &[T], da: usize, b: &[T], db: usize, zero: T) -> Vec<Vec<T>> {
    let n = da + db;
    let mut rows = Vec::with_capacity(n);
    let coeff = |v: &[T], i: usize| v.get(i).cloned().unwrap_or_else(|| zero.clone());
    for r in 0..db {
        let mut row = vec![zero.clone(); n];
        for j in 0..=da {
            row[r + j] = coeff(a, da - j);
        }
        rows.push(row);
    }
    for r in 0..da {
        let mut row = vec![zero.clone(); n];
        for j in 0..=db {
            row[r + j] = coeff(b, db - j);
        }
        rows.push(row);
    }
    rows
}

/// Determinant by Gaussian elimination.
pub fn determinant(f: &Field, mut m: Vec<Vec<FqElem>>) -> FqElem {
    let n = m.len();
    let mut det = f.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return f.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = f.neg(det);
        }
        det = f.mul(det, m[col][col]);
        let inv = f.inv(m[col][col]);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = f.mul(m[r][col], inv);
            for k in col..n {
                let v = f.mul(factor, m[col][k]);
                m[r][k] = f.sub(m[r][k], v);
            }
        }
    }
    det
}

/// Resultant as the Sylvester determinant with formal degrees.
pub fn sylvester_resultant(a: &UPoly, da: usize, b: &UPoly, db: usize) -> FqElem {
    let f = a.field();
    if da + db == 0 {
        return f.one();
    }
    let rows = sylvester_rows(a.coeffs(), da, b.coeffs(), db, f.zero());
    determinant(f, rows)
}

/// Fraction-free (Bareiss) determinant over `F_q[t]`.
pub fn bareiss_determinant(field: &Arc<Field>, mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one(field.clone());
    }
    let mut sign = false;
    let mut prev = UPoly::one(field.clone());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return UPoly::zero(field.clone());
            };
            m.swap(k, piv);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UPoly::zero(field.clone());
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// `disc_x` of a monic `f` via the Sylvester determinant of `f` and
/// `df/dx` over `F_q[t]`.
pub fn bareiss_disc_x(f: &BiPoly) -> UPoly {
    let field = f.field().clone();
    let n = f.deg_x().expect("nonzero polynomial");
    let df = f.deriv_x();
    let dn = df.deg_x().expect("nonzero derivative");
    let rows = sylvester_rows(
        f.x_major(),
        n,
        df.x_major(),
        dn,
        UPoly::zero(field.clone()),
    );
    let det = bareiss_determinant(&field, rows);
    if (n * (n - 1) / 2) % 2 == 1 {
        -&det
    } else {
        det
    }
}

/// All monic polynomials of the given degree.
pub fn monic_polys(field: &Arc<Field>, degree: usize) -> Vec<UPoly> {
    let q = field.q() as u64;
    let count = q.pow(degree as u32);
    (0..count)
        .map(|mut code| {
            let mut coeffs = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                coeffs.push(field.from_code_unchecked((code % q) as u32));
                code /= q;
            }
            coeffs.push(field.one());
            UPoly::new(field.clone(), coeffs)
        })
        .collect()
}

/// Number of monic irreducibles of degree `n`, by sieving out products.
pub fn count_irreducible_monic(field: &Arc<Field>, n: usize) -> usize {
    let key = |p: &UPoly| p.coeffs().iter().map(|c| c.code()).collect::<Vec<_>>();
    let mut reducible = HashSet::new();
    for i in 1..=n / 2 {
        let small = monic_polys(field, i);
        let big = monic_polys(field, n - i);
        for a in &small {
            for b in &big {
                reducible.insert(key(&(a * b)));
            }
        }
    }
    monic_polys(field, n)
        .iter()
        .filter(|p| !reducible.contains(&key(p)))
        .count()
}

/// Whether `u` is `c * v^2` for some constant `c` and `v` in `F_q[t]`,
/// by enumerating `v`.
pub fn is_const_square_brute(u: &UPoly) -> bool {
    let Some(d) = u.degree() else {
        return false;
    };
    if d % 2 == 1 {
        return false;
    }
    let field = u.field();
    let c = u.lc();
    monic_polys(field, d / 2)
        .iter()
        .any(|v| (v * v).scale(c) == *u)
}
