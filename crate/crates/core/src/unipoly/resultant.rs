use super::{trim, UPoly};
use crate::error::{Error, Result};
use crate::fields::{Field, FqElem};

/// `a mod b` in place; `inv` is the inverse of `lc(b)`.
fn rem_in_place(f: &Field, a: &mut Vec<FqElem>, b: &[FqElem], inv: FqElem) {
    let n = b.len() - 1;
    if a.len() <= n {
        return;
    }
    for k in (0..a.len() - n).rev() {
        let top = a[k + n];
        if top.is_zero() {
            continue;
        }
        let nc = f.neg(f.mul(top, inv));
        for j in 0..n {
            a[k + j] = f.add(a[k + j], f.mul(nc, b[j]));
        }
        a[k + n] = f.zero();
    }
    a.truncate(n);
    trim(a);
}

/// Euclidean resultant of trimmed, nonzero coefficient vectors.
pub(crate) fn resultant_slices(f: &Field, a: &[FqElem], b: &[FqElem]) -> FqElem {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mut acc = f.one();
    loop {
        let m = a.len() - 1;
        let n = b.len() - 1;
        if n == 0 {
            return f.mul(acc, f.pow(b[0], m as u64));
        }
        if m == 0 {
            return f.mul(acc, f.pow(a[0], n as u64));
        }
        let lb = b[n];
        rem_in_place(f, &mut a, &b, f.inv(lb));
        if a.is_empty() {
            return f.zero();
        }
        let k = a.len() - 1;
        // Res(a, b) = (-1)^(mn) lc(b)^(m - k) Res(b, a mod b)
        if (m * n) % 2 == 1 {
            acc = f.neg(acc);
        }
        acc = f.mul(acc, f.pow(lb, (m - k) as u64));
        std::mem::swap(&mut a, &mut b);
    }
}

/// `Res(a, b)` with respect to the actual degrees.
pub fn resultant(a: &UPoly, b: &UPoly) -> Result<FqElem> {
    if !a.same_field(b) {
        return Err(Error::FieldMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(resultant_slices(a.field(), a.coeffs(), b.coeffs()))
}

/// The Sylvester determinant of `a` and `b` read with formal degrees
/// `da >= deg a` and `db >= deg b`. This is what specializing a resultant
/// of polynomials with parameter-dependent coefficients produces.
pub fn resultant_formal(a: &UPoly, da: usize, b: &UPoly, db: usize) -> FqElem {
    assert!(a.same_field(b), "field mismatch");
    debug_assert!(a.deg() <= da as i64 && b.deg() <= db as i64);
    resultant_formal_slices(a.field(), a.coeffs(), da, b.coeffs(), db)
}

pub(crate) fn resultant_formal_slices(
    f: &Field,
    a: &[FqElem],
    da: usize,
    b: &[FqElem],
    db: usize,
) -> FqElem {
    let coeff0 = |v: &[FqElem]| v.first().copied().unwrap_or_else(|| f.zero());
    if da == 0 {
        return f.pow(coeff0(a), db as u64);
    }
    if db == 0 {
        return f.pow(coeff0(b), da as u64);
    }
    if a.is_empty() || b.is_empty() {
        return f.zero();
    }
    let (ma, nb) = (a.len() - 1, b.len() - 1);
    if ma == da {
        let r = resultant_slices(f, a, b);
        f.mul(f.pow(a[ma], (db - nb) as u64), r)
    } else if nb == db {
        let r = resultant_slices(f, a, b);
        let mut out = f.mul(f.pow(b[nb], (da - ma) as u64), r);
        if (db * (da + ma)) % 2 == 1 {
            out = f.neg(out);
        }
        out
    } else {
        f.zero()
    }
}

/// `(-1)^(n(n-1)/2) lc^(n-2-deg f') Res(f, f')`; zero when `f' = 0`.
pub fn discriminant(f: &UPoly) -> Result<FqElem> {
    f.degree()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Precondition("discriminant needs degree >= 1".into()))?;
    Ok(discriminant_slices(f.field(), f.coeffs()))
}

pub(crate) fn discriminant_slices(fld: &Field, f: &[FqElem]) -> FqElem {
    let n = f.len() - 1;
    let df: Vec<FqElem> = {
        let mut v: Vec<FqElem> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| fld.mul(fld.from_int(i as i64), c))
            .collect();
        trim(&mut v);
        v
    };
    if df.is_empty() {
        return fld.zero();
    }
    let k = df.len() - 1;
    let r = resultant_slices(fld, f, &df);
    let lc = f[n];
    let e = n as i64 - 2 - k as i64;
    let scale = if e >= 0 {
        fld.pow(lc, e as u64)
    } else {
        fld.inv(fld.pow(lc, (-e) as u64))
    };
    let mut out = fld.mul(scale, r);
    if (n * (n - 1) / 2) % 2 == 1 {
        out = fld.neg(out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::sylvester_resultant;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn matches_sylvester_oracle() {
        let f = Field::make(3, 2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = UPoly::random(f.clone(), 6, &mut rng);
            let b = UPoly::random(f.clone(), 5, &mut rng);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
            assert_eq!(resultant(&a, &b).unwrap(), sylvester_resultant(&a, da, &b, db));
            for (xa, xb) in [(da + 1, db), (da, db + 2), (da + 2, db + 1)] {
                assert_eq!(resultant_formal(&a, xa, &b, xb), sylvester_resultant(&a, xa, &b, xb));
            }
        }
    }

    #[test]
    fn symmetry_and_multiplicativity() {
        let f = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let a = UPoly::random_monic(f.clone(), 4, &mut rng);
            let b = UPoly::random_monic(f.clone(), 3, &mut rng);
            let c = UPoly::random_monic(f.clone(), 2, &mut rng);
            let ab = resultant(&a, &b).unwrap();
            let ba = resultant(&b, &a).unwrap();
            assert_eq!(ab, ba);
            let lhs = resultant(&(&a * &b), &c).unwrap();
            let rhs = f.mul(resultant(&a, &c).unwrap(), resultant(&b, &c).unwrap());
            assert_eq!(lhs, rhs);
            let ac = resultant(&a, &c).unwrap();
            let ca = resultant(&c, &a).unwrap();
            assert_eq!(ac, ca);
        }
    }

    #[test]
    fn quadratic_discriminant() {
        let f = Field::prime(7).unwrap();
        for b in 0..7 {
            for c in 0..7 {
                for a in 1..7 {
                    let p = UPoly::from_ints(f.clone(), &[c, b, a]);
                    let expect = f.from_int(b * b - 4 * a * c);
                    assert_eq!(discriminant(&p).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn discriminant_vanishes_on_repeated_roots() {
        let f: Arc<Field> = Field::make(3, 3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let a = UPoly::random_monic(f.clone(), 2, &mut rng);
            let b = UPoly::random_monic(f.clone(), 3, &mut rng);
            let p = &(&a * &a) * &b;
            assert!(discriminant(&p).unwrap().is_zero());
        }
        let p = UPoly::from_ints(f, &[1, 0, 0, 1]);
        assert!(discriminant(&p).unwrap().is_zero());
    }
}
