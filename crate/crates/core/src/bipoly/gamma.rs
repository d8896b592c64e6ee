//! The curve `g = f0'/c = 0`, the function `gamma = f0` restricted to it,
//! and the polynomials that control its local behaviour.

use super::interp::sample_points;
use super::{newton_interpolate, resultant_x_formal, BiPoly};
use crate::error::{Error, Result};
use crate::fields::{FqElem, Tower};
use crate::unipoly::resultant::resultant_formal_slices;
use crate::unipoly::{in_fq_xp, UPoly};

/// Everything derived from `f0` that the place sieve needs.
///
/// `h` is the minimal polynomial of `gamma` over `F_q(x)` up to content,
/// stored with outer variable `T` and inner variable `x`
/// (`h.x_major()[i]` is the coefficient of `T^i`).
#[derive(Clone, Debug)]
pub struct GammaData {
    pub f0: BiPoly,
    /// `con_t(f0')`, monic in `x`.
    pub c: UPoly,
    /// `f0' / c`.
    pub g: BiPoly,
    /// `deg_t g`.
    pub d: usize,
    pub h: BiPoly,
    /// `Res_T(H, dH/dT)`.
    pub dpoly: UPoly,
    /// `Res_T(H, dH/dx)`.
    pub rpoly: UPoly,
    /// `lc_t(g)`.
    pub lcg: UPoly,
    /// `lc_T(H)`.
    pub lch: UPoly,
}

impl GammaData {
    /// `lc_t(g) * lc_T(H)`: its roots are the excluded x-values.
    pub fn exceptional(&self) -> UPoly {
        &self.lcg * &self.lch
    }

    /// Product of every polynomial whose roots violate the unit conditions.
    pub fn bad(&self) -> UPoly {
        &(&self.exceptional() * &self.dpoly) * &self.rpoly
    }

    /// `H(x0, gamma0)` for a point of the curve.
    pub fn h_at(&self, emb: &crate::fields::Embedding, x0: FqElem, gamma0: FqElem) -> FqElem {
        self.h.eval_point(emb, x0, gamma0)
    }
}

/// Whether `g` is separable as a polynomial in `t` over `F_q(x)`.
pub fn separable_in_t(g: &BiPoly, tower: &Tower) -> Result<bool> {
    let gs = g.swap();
    let d = gs.deg_x().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Ok(true);
    }
    let dg = gs.deriv_x();
    if dg.is_zero() {
        return Ok(false);
    }
    Ok(!resultant_x_formal(&gs, d, &dg, d - 1, tower)?.is_zero())
}

/// A norm kept inside the polynomial ring: `resultant = lc^exponent * N(w)`
/// up to sign, where `lc` is the leading coefficient of `g` in the
/// eliminated variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Norm {
    pub resultant: UPoly,
    pub exponent: usize,
}

/// Norm of `w(t, alpha)` down to `F_q(t)`: `Res_x(g, w)`, exponent `deg_x w`.
pub fn norm_lf(g: &BiPoly, w: &BiPoly, tower: &Tower) -> Result<Norm> {
    let exponent = w.deg_x().ok_or(Error::ZeroPolynomial)?;
    let resultant = super::resultant_x(g, w, tower)?;
    if resultant.is_zero() {
        return Err(Error::Precondition("w vanishes on the curve".into()));
    }
    Ok(Norm { resultant, exponent })
}

/// Norm of `w(t, alpha)` down to `F_q(alpha)`: `Res_t(g, w)`, exponent `deg_t w`.
pub fn norm_lk(g: &BiPoly, w: &BiPoly, tower: &Tower) -> Result<Norm> {
    norm_lf(&g.swap(), &w.swap(), tower)
}

/// The condition on the `t`-coefficients `b_j(x)` of `f0' = sum b_j t^j`:
/// `deg_t f0' = 1`, or `b_1 != 0` and `b_1 / gcd(b_1, b_2)` has a monomial
/// of exponent prime to `p`.
pub fn condition_star(f0: &BiPoly) -> Result<bool> {
    let fp = f0.deriv_x();
    let Some(d) = fp.deg_t() else {
        return Ok(false);
    };
    match d {
        0 => Ok(false),
        1 => Ok(true),
        _ => {
            let cols = fp.t_major();
            let (b1, b2) = (&cols[1], &cols[2]);
            if b1.is_zero() {
                return Ok(false);
            }
            let w = b1.div_exact(&b1.gcd(b2)?)?;
            Ok(!in_fq_xp(&w))
        }
    }
}

/// Builds `c`, `g`, `H`, `D`, `R` for `f0`.
///
/// Fails when `f0' = 0`, when `deg_t f0' = 0`, or when `g` is inseparable
/// in `t`.
pub fn gamma_data(f0: &BiPoly, tower: &Tower) -> Result<GammaData> {
    let fp = f0.deriv_x();
    if fp.is_zero() {
        return Err(Error::Precondition("f0' vanishes".into()));
    }
    let (c, g) = fp.primitive_part_t()?;
    let d = g.deg_t().unwrap_or(0);
    if d == 0 {
        return Err(Error::Precondition("f0' has degree 0 in t".into()));
    }
    if !separable_in_t(&g, tower)? {
        return Err(Error::Precondition("g is inseparable in t".into()));
    }
    let e = f0.deg_t().unwrap();
    let (gs, fs) = (g.swap(), f0.swap());
    let (gx, fx) = (g.deg_x().unwrap_or(0), f0.deg_x().unwrap_or(0));
    let bound_x = e * gx + d * fx;

    // W(x, T) = Res_t(g, T - f0): evaluate at x-points, then at T-points.
    let (emb, pts) = sample_points(tower, (bound_x + 1).max(d + 1))?;
    let tf = emb.target();
    let ts = &pts[..d + 1];
    let xs = &pts[..bound_x + 1];
    let mut rows: Vec<Vec<FqElem>> = vec![Vec::with_capacity(xs.len()); d + 1];
    for &xk in xs {
        let gk = gs.eval_t_raw(&emb, xk);
        let fk = fs.eval_t_raw(&emb, xk);
        let vals: Vec<FqElem> = ts
            .iter()
            .map(|&tj| {
                let mut b: Vec<FqElem> = fk.iter().map(|&v| tf.neg(v)).collect();
                if b.is_empty() {
                    b.push(tf.zero());
                }
                b[0] = tf.add(b[0], tj);
                crate::unipoly::trim(&mut b);
                resultant_formal_slices(tf, &gk, d, &b, e)
            })
            .collect();
        for (i, w) in newton_interpolate(tf, ts, &vals).into_iter().enumerate() {
            rows[i].push(w);
        }
    }
    let base = tower.base().clone();
    let w_rows = rows
        .iter()
        .map(|vals| {
            let coeffs = newton_interpolate(tf, xs, vals)
                .into_iter()
                .map(|v| emb.descend(v).map_err(|_| Error::Descent))
                .collect::<Result<Vec<_>>>()?;
            Ok(UPoly::new(base.clone(), coeffs))
        })
        .collect::<Result<Vec<_>>>()?;
    let w = BiPoly::new(base.clone(), w_rows);
    let cont = w.content_x()?;
    let mut h = w.div_t_exact(&cont)?;
    let top = h.lc_x().lc();
    h = h.scale(base.inv(top));

    let lch = h.lc_x();
    let dpoly = resultant_x_formal(&h, d, &h.deriv_x(), d - 1, tower)?;
    let rpoly = resultant_x_formal(&h, d, &h.deriv_t(), d, tower)?;
    Ok(GammaData {
        f0: f0.clone(),
        c,
        lcg: g.lc_t(),
        g,
        d,
        h,
        dpoly,
        rpoly,
        lch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn linear_case_by_hand() {
        // f0 = x^4 + t x + t over F_3: g = x^3 + t, gamma = -x^3, H = T + x^3.
        let f = Field::prime(3).unwrap();
        let tower = Tower::new(f.clone(), 1);
        let f0 = BiPoly::from_ints(f.clone(), &[&[0, 1], &[0, 1], &[], &[], &[1]]);
        let gd = gamma_data(&f0, &tower).unwrap();
        assert!(gd.c.is_one());
        assert_eq!(gd.g, BiPoly::from_ints(f.clone(), &[&[0, 1], &[], &[], &[1]]));
        assert_eq!(gd.d, 1);
        let want = BiPoly::from_ints(f.clone(), &[&[0, 0, 0, 1], &[1]]);
        assert_eq!(gd.h, want);
        assert!(gd.rpoly.is_zero());
        let emb = tower.ext(2).unwrap();
        let tf = emb.target().clone();
        let mut seen = 0;
        for x0 in tf.elements().unwrap() {
            let t0 = tf.neg(tf.pow(x0, 3));
            assert!(gd.g.eval_point(&emb, t0, x0).is_zero());
            let gamma0 = f0.eval_point(&emb, t0, x0);
            assert!(gd.h_at(&emb, x0, gamma0).is_zero());
            seen += 1;
        }
        assert!(seen >= 9);
    }

    #[test]
    fn h_vanishes_on_curve_points() {
        let f = Field::prime(3).unwrap();
        let tower = Tower::new(f.clone(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut checked = 0;
        while checked < 3 {
            let f0 = crate::model::sample_f(&crate::model::ModelParams::new(f.clone(), 2, 7), &mut rng);
            let Ok(gd) = gamma_data(&f0, &tower) else { continue };
            let m = 4;
            let emb = tower.ext(m).unwrap();
            let tf = emb.target().clone();
            let mut pts = 0;
            for x0 in tf.elements().unwrap() {
                let gt = gd.g.eval_x(&emb, x0);
                if gt.deg() < 1 {
                    continue;
                }
                for t0 in crate::unipoly::roots(&gt, &mut rng).unwrap() {
                    if gd.exceptional().eval_in(&emb, x0).is_zero() {
                        continue;
                    }
                    let gamma0 = f0.eval_point(&emb, t0, x0);
                    assert!(gd.h_at(&emb, x0, gamma0).is_zero());
                    pts += 1;
                }
            }
            assert!(pts >= 20);
            assert_eq!(gd.h.deg_x(), Some(gd.d));
            checked += 1;
        }
    }

    #[test]
    fn star_condition_examples() {
        let f = Field::prime(3).unwrap();
        // f0' = 2x + t(1 + x) + t^2 x: b1 = 1 + x, b2 = x, quotient 1 + x.
        let f0 = BiPoly::from_ints(f.clone(), &[&[], &[0, 1], &[1, 2, 2]]);
        let fp = f0.deriv_x();
        assert_eq!(fp.deg_t(), Some(2));
        assert!(condition_star(&f0).unwrap());
        // b1 = x^3 after removing the gcd: in F_3[x^3], fails.
        let g0 = BiPoly::from_ints(f.clone(), &[&[], &[0, 0, 1], &[], &[], &[0, 1], &[0, 0, 0]]);
        let gp = g0.deriv_x();
        assert_eq!(gp.t_major()[1], UPoly::from_ints(f.clone(), &[0, 0, 0, 1]));
        assert!(!condition_star(&g0).unwrap());
        // deg_t f0' = 1 is accepted outright.
        let h0 = BiPoly::from_ints(f.clone(), &[&[0, 1], &[0, 1], &[], &[], &[1]]);
        assert!(condition_star(&h0).unwrap());
    }
}
