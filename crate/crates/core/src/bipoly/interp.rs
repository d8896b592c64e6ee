//! Evaluation-interpolation for polynomials in `t` known through their
//! values: evaluate at distinct points of a large enough extension,
//! interpolate, then descend the coefficients back to `F_q`.

use std::sync::Arc;

use super::BiPoly;
use crate::error::{Error, Result};
use crate::fields::{Embedding, Field, FqElem, Tower};
use crate::unipoly::resultant::{discriminant_slices, resultant_formal_slices};
use crate::unipoly::UPoly;

/// Coefficients (low first) of the polynomial of degree `< xs.len()`
/// through the points `(xs[i], ys[i])`. Points must be distinct.
pub fn newton_interpolate(f: &Field, xs: &[FqElem], ys: &[FqElem]) -> Vec<FqElem> {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = f.sub(xs[i], xs[i - j]);
            c[i] = f.div(f.sub(c[i], c[i - 1]), den);
        }
    }
    let mut out = vec![f.zero(); n];
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + c[i]
        for k in (1..n).rev() {
            out[k] = f.sub(out[k - 1], f.mul(out[k], xs[i]));
        }
        out[0] = f.sub(c[i], f.mul(out[0], xs[i]));
    }
    out
}

/// `count` distinct points in the smallest extension holding that many.
pub(crate) fn sample_points(tower: &Tower, count: usize) -> Result<(Arc<Embedding>, Vec<FqElem>)> {
    let q = tower.base().q() as u64;
    let mut s = 1u32;
    while q.pow(s) < count as u64 {
        s += 1;
        if s > tower.max_degree() {
            return Err(Error::FieldTooLarge(format!(
                "{count} interpolation points over F_{q}"
            )));
        }
    }
    let emb = tower.ext(s)?;
    let pts = (0..count as u32)
        .map(|c| emb.target().from_code_unchecked(c))
        .collect();
    Ok((emb, pts))
}

/// Recovers a polynomial over the base field of degree `<= bound` from
/// its values at extension points.
pub fn interpolate_to_base<F>(tower: &Tower, bound: usize, mut eval: F) -> Result<UPoly>
where
    F: FnMut(&Embedding, FqElem) -> FqElem,
{
    let (emb, pts) = sample_points(tower, bound + 1)?;
    let vals: Vec<FqElem> = pts.iter().map(|&t| eval(&emb, t)).collect();
    let coeffs = newton_interpolate(emb.target(), &pts, &vals);
    let base = coeffs
        .into_iter()
        .map(|c| emb.descend(c).map_err(|_| Error::Descent))
        .collect::<Result<Vec<_>>>()?;
    Ok(UPoly::new(tower.base().clone(), base))
}

/// `disc_x(f)` for `f` monic in `x` of degree `>= 1`.
pub fn disc_x(f: &BiPoly, tower: &Tower) -> Result<UPoly> {
    check_tower(f, tower)?;
    if !f.is_monic_x() {
        return Err(Error::Precondition("disc_x needs f monic in x".into()));
    }
    let n = f.deg_x().unwrap();
    if n == 0 {
        return Err(Error::Precondition("disc_x needs deg_x f >= 1".into()));
    }
    let dt = f.deg_t().unwrap_or(0);
    let bound = (2 * n - 1) * dt;
    interpolate_to_base(tower, bound, |emb, t0| {
        let ft = f.eval_t_raw(emb, t0);
        discriminant_slices(emb.target(), &ft)
    })
}

/// `Res_x(a, b)` with formal degrees `deg_x a`, `deg_x b`.
pub fn resultant_x(a: &BiPoly, b: &BiPoly, tower: &Tower) -> Result<UPoly> {
    let da = a.deg_x().ok_or(Error::ZeroPolynomial)?;
    let db = b.deg_x().ok_or(Error::ZeroPolynomial)?;
    resultant_x_formal(a, da, b, db, tower)
}

/// `Res_x` with explicit formal degrees `da >= deg_x a`, `db >= deg_x b`.
pub fn resultant_x_formal(
    a: &BiPoly,
    da: usize,
    b: &BiPoly,
    db: usize,
    tower: &Tower,
) -> Result<UPoly> {
    check_tower(a, tower)?;
    check_tower(b, tower)?;
    if a.deg_x().is_some_and(|d| d > da) || b.deg_x().is_some_and(|d| d > db) {
        return Err(Error::Precondition("formal degree below actual degree".into()));
    }
    let bound = da * b.deg_t().unwrap_or(0) + db * a.deg_t().unwrap_or(0);
    interpolate_to_base(tower, bound, |emb, t0| {
        let at = a.eval_t_raw(emb, t0);
        let bt = b.eval_t_raw(emb, t0);
        resultant_formal_slices(emb.target(), &at, da, &bt, db)
    })
}

/// `Res_t(a, b)`, a polynomial in `x`.
pub fn resultant_t(a: &BiPoly, b: &BiPoly, tower: &Tower) -> Result<UPoly> {
    resultant_x(&a.swap(), &b.swap(), tower)
}

fn check_tower(f: &BiPoly, tower: &Tower) -> Result<()> {
    if f.field().tag() != tower.base().tag() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}
