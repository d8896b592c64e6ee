//! The random model `f = x^n + a_{n-1}(t) x^{n-1} + ... + a_0(t)` with
//! `a_i` drawn from `F_q[t]_{<=d}`, its derivative-slices `f0 + h(x)^p`,
//! and the exact content law.

use std::sync::Arc;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::unipoly::{factor, UPoly};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffModel {
    /// Every `a_i` uniform in `F_q[t]_{<=d}`.
    #[default]
    Uniform,
    /// Every `a_i` monic of degree exactly `d` in `t`.
    MonicDegreeD,
}

#[derive(Clone, Debug)]
pub struct ModelParams {
    pub field: Arc<Field>,
    pub d: usize,
    pub n: usize,
    pub coeffs: CoeffModel,
}

impl ModelParams {
    pub fn new(field: Arc<Field>, d: usize, n: usize) -> ModelParams {
        ModelParams {
            field,
            d,
            n,
            coeffs: CoeffModel::Uniform,
        }
    }

    /// Largest allowed `deg h` in a slice: `(n - 1) / p`.
    pub fn h_degree(&self) -> usize {
        (self.n - 1) / self.field.p() as usize
    }
}

pub fn sample_f<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> BiPoly {
    let field = &params.field;
    let mut rows: Vec<UPoly> = (0..params.n)
        .map(|_| match params.coeffs {
            CoeffModel::Uniform => UPoly::random(field.clone(), params.d, rng),
            CoeffModel::MonicDegreeD => UPoly::random_monic(field.clone(), params.d, rng),
        })
        .collect();
    rows.push(UPoly::one(field.clone()));
    BiPoly::new(field.clone(), rows)
}

/// Uniform `h` in `F_q[x]_{<=(n-1)/p}`.
pub fn sample_h<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> UPoly {
    UPoly::random(params.field.clone(), params.h_degree(), rng)
}

/// `f0 + h(x)^p`, which has the same `x`-derivative as `f0`.
pub fn slice_member(f0: &BiPoly, h: &UPoly) -> Result<BiPoly> {
    let n = f0.deg_x().ok_or(Error::ZeroPolynomial)?;
    let p = f0.field().p() as usize;
    if h.deg() > ((n.max(1) - 1) / p) as i64 {
        return Err(Error::Precondition(format!(
            "deg h = {} exceeds (n-1)/p = {}",
            h.deg(),
            (n.max(1) - 1) / p
        )));
    }
    Ok(f0 + &BiPoly::from_x_poly(&h.pow(p as u64)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContentReport {
    /// `con_t(f)`, monic.
    pub c: UPoly,
    pub k: usize,
    /// Degrees of the distinct irreducible factors of `c`.
    pub factor_degrees: Vec<usize>,
    /// `lcm` of `factor_degrees`: the order of the constant-field part.
    pub c_order: u64,
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

pub fn content_report(f: &BiPoly) -> Result<ContentReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let c = f.content_t()?;
    let k = c.degree().unwrap_or(0);
    let factor_degrees = if c.is_constant() {
        Vec::new()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        factor(&c, &mut rng)?.degrees()
    };
    let c_order = factor_degrees.iter().fold(1, |acc, &d| lcm_u64(acc, d as u64));
    Ok(ContentReport {
        c,
        k,
        factor_degrees,
        c_order,
    })
}

/// `P(con_t(f') = c)` for a fixed monic `c` of degree `k < n`, as an
/// exact rational `(1 - q^-d) q^(-k(d+1))`.
pub fn content_law_prediction(q: u32, d: usize, k: usize) -> Ratio<u128> {
    let q = q as u128;
    let qd = q.pow(d as u32);
    Ratio::new(qd - 1, qd) / Ratio::from_integer(q.pow((k * (d + 1)) as u32))
}

/// `P(deg con_t(f') = kappa) = (1 - q^-d) q^(-kappa d)`.
pub fn content_degree_law(q: u32, d: usize, kappa: usize) -> Ratio<u128> {
    let q = q as u128;
    let qd = q.pow(d as u32);
    Ratio::new(qd - 1, qd) / Ratio::from_integer(qd.pow(kappa as u32))
}

pub fn ratio_to_f64(r: &Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FqElem;

    /// Enumerates every `f` of the model for tiny parameters.
    fn all_models(field: &Arc<Field>, d: usize, n: usize) -> Vec<BiPoly> {
        let q = field.q() as u64;
        let per = q.pow((d + 1) as u32);
        let total = per.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut rows = Vec::new();
                for _ in 0..n {
                    let mut c = code % per;
                    code /= per;
                    let coeffs: Vec<FqElem> = (0..=d)
                        .map(|_| {
                            let v = field.from_code(c as u32 % field.q()).unwrap();
                            c /= q;
                            v
                        })
                        .collect();
                    rows.push(UPoly::new(field.clone(), coeffs));
                }
                rows.push(UPoly::one(field.clone()));
                BiPoly::new(field.clone(), rows)
            })
            .collect()
    }

    #[test]
    fn content_law_is_exact_on_full_enumeration() {
        let f = Field::prime(3).unwrap();
        let (d, n) = (1, 3);
        let models = all_models(&f, d, n);
        let total = models.len() as u128;
        let mut by_k = [0u128; 4];
        let mut is_x = 0u128;
        for m in &models {
            let r = content_report(m).unwrap();
            by_k[r.k] += 1;
            if r.c == UPoly::x(f.clone()) {
                is_x += 1;
            }
        }
        for kappa in 0..2 {
            assert_eq!(Ratio::new(by_k[kappa], total), content_degree_law(3, d, kappa));
        }
        assert_eq!(Ratio::new(is_x, total), content_law_prediction(3, d, 1));
    }

    #[test]
    fn slices_share_the_derivative() {
        let f = Field::prime(3).unwrap();
        let params = ModelParams::new(f.clone(), 2, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f0 = sample_f(&params, &mut rng);
        for _ in 0..10 {
            let h = sample_h(&params, &mut rng);
            assert!(h.deg() <= 3);
            let s = slice_member(&f0, &h).unwrap();
            assert_eq!(s.deriv_x(), f0.deriv_x());
            assert!(s.is_monic_x());
        }
        let big = UPoly::from_ints(f, &[0, 0, 0, 0, 1]);
        assert!(slice_member(&f0, &big).is_err());
    }

    #[test]
    fn sample_shape() {
        let f = Field::make(3, 2, 0).unwrap();
        let mut params = ModelParams::new(f.clone(), 3, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = sample_f(&params, &mut rng);
        assert_eq!(s.deg_x(), Some(6));
        assert!(s.is_monic_x());
        assert!(s.deg_t().unwrap() <= 3);
        params.coeffs = CoeffModel::MonicDegreeD;
        let m = sample_f(&params, &mut rng);
        assert!(m.x_major()[..6].iter().all(|r| r.degree() == Some(3) && r.is_monic()));
    }

    #[test]
    fn c_order_is_lcm() {
        let f = Field::prime(3).unwrap();
        // f0 = (x^3 + x)(x + t), so c = x(x^2 + 1).
        let f0 = BiPoly::from_ints(f.clone(), &[&[], &[0, 1], &[1], &[0, 1], &[1]]);
        let rep = content_report(&f0).unwrap();
        assert_eq!(rep.c, UPoly::from_ints(f, &[0, 1, 0, 1]));
        assert_eq!(rep.k, 3);
        assert_eq!(rep.factor_degrees, vec![1, 2]);
        assert_eq!(rep.c_order, 2);
    }
}
