//! Polynomials in `F_q[t][x]`, stored x-major: `rows[i]` is the
//! coefficient of `x^i`, a polynomial in `t`.

mod gamma;
mod interp;

pub use gamma::{condition_star, gamma_data, norm_lf, norm_lk, separable_in_t, GammaData, Norm};
pub use interp::{
    disc_x, interpolate_to_base, newton_interpolate, resultant_t, resultant_x,
    resultant_x_formal,
};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::{Embedding, Field, FieldSpec, FqElem, Tower};
use crate::unipoly::{factor, is_irreducible, roots, squarefree_decomposition, UPoly};

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Arc<Field>,
    rows: Vec<UPoly>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}

impl BiPoly {
    pub fn new(field: Arc<Field>, mut rows: Vec<UPoly>) -> BiPoly {
        debug_assert!(rows.iter().all(|r| r.field().tag() == field.tag()));
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BiPoly { field, rows }
    }

    pub fn zero(field: Arc<Field>) -> BiPoly {
        BiPoly { field, rows: Vec::new() }
    }

    /// From `cols[j]`, the coefficient of `t^j` as a polynomial in `x`.
    pub fn from_t_major(field: Arc<Field>, cols: &[UPoly]) -> BiPoly {
        let nx = cols.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
        let rows = (0..nx)
            .map(|i| UPoly::new(field.clone(), cols.iter().map(|c| c.coeff(i)).collect()))
            .collect();
        BiPoly::new(field, rows)
    }

    /// A polynomial in `x` alone.
    pub fn from_x_poly(u: &UPoly) -> BiPoly {
        let field = u.field().clone();
        let rows = u
            .coeffs()
            .iter()
            .map(|&c| UPoly::constant(field.clone(), c))
            .collect();
        BiPoly::new(field, rows)
    }

    /// A polynomial in `t` alone.
    pub fn from_t_poly(u: &UPoly) -> BiPoly {
        BiPoly::new(u.field().clone(), vec![u.clone()])
    }

    /// From integer coefficients `ints[i][j]` of `x^i t^j`.
    pub fn from_ints(field: Arc<Field>, ints: &[&[i64]]) -> BiPoly {
        let rows = ints.iter().map(|r| UPoly::from_ints(field.clone(), r)).collect();
        BiPoly::new(field, rows)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn x_major(&self) -> &[UPoly] {
        &self.rows
    }

    /// `cols[j]` = coefficient of `t^j`, a polynomial in `x`.
    pub fn t_major(&self) -> Vec<UPoly> {
        let nt = self.rows.iter().map(|r| r.coeffs().len()).max().unwrap_or(0);
        (0..nt)
            .map(|j| {
                UPoly::new(
                    self.field.clone(),
                    self.rows.iter().map(|r| r.coeff(j)).collect(),
                )
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.degree()).max()
    }

    pub fn coeff(&self, i: usize, j: usize) -> FqElem {
        self.rows
            .get(i)
            .map(|r| r.coeff(j))
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn row(&self, i: usize) -> UPoly {
        self.rows
            .get(i)
            .cloned()
            .unwrap_or_else(|| UPoly::zero(self.field.clone()))
    }

    /// Leading coefficient in `x`, a polynomial in `t`.
    pub fn lc_x(&self) -> UPoly {
        self.rows
            .last()
            .cloned()
            .unwrap_or_else(|| UPoly::zero(self.field.clone()))
    }

    /// Leading coefficient in `t`, a polynomial in `x`.
    pub fn lc_t(&self) -> UPoly {
        self.t_major()
            .pop()
            .unwrap_or_else(|| UPoly::zero(self.field.clone()))
    }

    pub fn is_monic_x(&self) -> bool {
        self.lc_x().is_one()
    }

    pub fn deriv_x(&self) -> BiPoly {
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, r)| r.scale(f.from_int(i as i64)))
            .collect();
        BiPoly::new(f.clone(), rows)
    }

    pub fn deriv_t(&self) -> BiPoly {
        BiPoly::new(
            self.field.clone(),
            self.rows.iter().map(|r| r.derivative()).collect(),
        )
    }

    /// Exchanges the roles of `x` and `t`.
    pub fn swap(&self) -> BiPoly {
        BiPoly::new(self.field.clone(), self.t_major())
    }

    /// `gcd` of the `t`-coefficients, a monic polynomial in `x`.
    pub fn content_t(&self) -> Result<UPoly> {
        let mut g = UPoly::zero(self.field.clone());
        for c in self.t_major() {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(&c)?;
            if g.is_one() {
                break;
            }
        }
        Ok(g)
    }

    /// `gcd` of the `x`-coefficients, a monic polynomial in `t`.
    pub fn content_x(&self) -> Result<UPoly> {
        let mut g = UPoly::zero(self.field.clone());
        for r in self.rows.iter().filter(|r| !r.is_zero()) {
            g = g.gcd(r)?;
            if g.is_one() {
                break;
            }
        }
        Ok(g)
    }

    /// `self / content_t(self)`.
    pub fn primitive_part_t(&self) -> Result<(UPoly, BiPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let c = self.content_t()?;
        let cols = self
            .t_major()
            .iter()
            .map(|col| col.div_exact(&c))
            .collect::<Result<Vec<_>>>()?;
        Ok((c, BiPoly::from_t_major(self.field.clone(), &cols)))
    }

    /// Multiplies by a polynomial in `t`.
    pub fn scale_t(&self, u: &UPoly) -> BiPoly {
        BiPoly::new(self.field.clone(), self.rows.iter().map(|r| r * u).collect())
    }

    /// Divides by a polynomial in `t` that divides every row.
    pub fn div_t_exact(&self, u: &UPoly) -> Result<BiPoly> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.div_exact(u))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiPoly::new(self.field.clone(), rows))
    }

    pub fn scale(&self, c: FqElem) -> BiPoly {
        BiPoly::new(self.field.clone(), self.rows.iter().map(|r| r.scale(c)).collect())
    }

    /// `f(t0, x)` for `t0` in the target of `emb`.
    pub fn eval_t(&self, emb: &Embedding, t0: FqElem) -> UPoly {
        UPoly::new(
            emb.target().clone(),
            self.rows.iter().map(|r| r.eval_in(emb, t0)).collect(),
        )
    }

    /// `f(t0, x)` as a raw coefficient vector, for hot loops.
    pub(crate) fn eval_t_raw(&self, emb: &Embedding, t0: FqElem) -> Vec<FqElem> {
        let mut v: Vec<FqElem> = self.rows.iter().map(|r| r.eval_in(emb, t0)).collect();
        crate::unipoly::trim(&mut v);
        v
    }

    /// `f(t, x0)` for `x0` in the target of `emb`.
    pub fn eval_x(&self, emb: &Embedding, x0: FqElem) -> UPoly {
        let tf = emb.target();
        let nt = self.rows.iter().map(|r| r.coeffs().len()).max().unwrap_or(0);
        let mut out = vec![tf.zero(); nt];
        for r in self.rows.iter().rev() {
            for o in out.iter_mut() {
                *o = tf.mul(*o, x0);
            }
            for (o, &c) in out.iter_mut().zip(r.coeffs()) {
                *o = tf.add(*o, emb.apply(c));
            }
        }
        UPoly::new(tf.clone(), out)
    }

    pub fn eval_point(&self, emb: &Embedding, t0: FqElem, x0: FqElem) -> FqElem {
        let tf = emb.target();
        self.rows
            .iter()
            .rev()
            .fold(tf.zero(), |acc, r| tf.add(tf.mul(acc, x0), r.eval_in(emb, t0)))
    }

    /// The image of `f` in `F_P[x]` for a prime `P` of `F_q[t]`.
    pub fn reduce_mod_prime(&self, residue: &ResidueField) -> UPoly {
        self.eval_t(&residue.emb, residue.tau)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.spec(),
            "x_major": self.rows.iter().map(|r| r.encode_coeffs()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<BiPoly> {
        let spec: FieldSpec = serde_json::from_value(
            v.get("field").cloned().ok_or_else(|| Error::Format("missing field".into()))?,
        )?;
        let field = spec.build()?;
        BiPoly::decode_rows(field, v.get("x_major").unwrap_or(&Value::Null))
    }

    pub fn decode_rows(field: Arc<Field>, v: &Value) -> Result<BiPoly> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Format("x_major must be a list".into()))?
            .iter()
            .map(|r| UPoly::decode_coeffs(field.clone(), r))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiPoly::new(field, rows))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(rhs.rows.len());
        let rows = (0..n).map(|i| &self.row(i) + &rhs.row(i)).collect();
        BiPoly::new(self.field.clone(), rows)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly::new(self.field.clone(), self.rows.iter().map(|r| -r).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(self.field.clone());
        }
        let mut rows = vec![UPoly::zero(self.field.clone()); self.rows.len() + rhs.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in rhs.rows.iter().enumerate() {
                rows[i + j] = &rows[i + j] + &(a * b);
            }
        }
        BiPoly::new(self.field.clone(), rows)
    }
}

/// `F_q[t]/(P)` realised inside `F_{q^m}` through a root `tau` of `P`.
#[derive(Clone, Debug)]
pub struct ResidueField {
    prime: UPoly,
    emb: Arc<Embedding>,
    tau: FqElem,
}

impl ResidueField {
    /// `P` must be irreducible; `tau` is its smallest-code root.
    pub fn new<R: Rng + ?Sized>(tower: &Tower, prime: &UPoly, rng: &mut R) -> Result<ResidueField> {
        if !is_irreducible(prime)? {
            return Err(Error::Precondition("residue field of a reducible polynomial".into()));
        }
        let m = prime.degree().unwrap() as u32;
        let emb = tower.ext(m)?;
        let tau = roots(&emb.apply_poly(prime), rng)?
            .into_iter()
            .min()
            .ok_or_else(|| Error::Precondition("prime has no root in its residue field".into()))?;
        Ok(ResidueField {
            prime: prime.monic(),
            emb,
            tau,
        })
    }

    pub fn prime(&self) -> &UPoly {
        &self.prime
    }

    pub fn embedding(&self) -> &Arc<Embedding> {
        &self.emb
    }

    pub fn tau(&self) -> FqElem {
        self.tau
    }

    pub fn field(&self) -> &Arc<Field> {
        self.emb.target()
    }
}

/// Outcome of the constant-times-square test on a polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstSquare {
    pub is_const_square: bool,
    /// Whether the constant is itself a square in `F_q` (meaningful when
    /// `is_const_square`).
    pub const_is_square: bool,
}

/// Whether a nonzero `u` equals `c * v^2` with `c` constant.
pub fn is_const_square(u: &UPoly) -> Result<ConstSquare> {
    let dec = squarefree_decomposition(u)?;
    let is_cs = dec.iter().all(|(_, m)| m % 2 == 0);
    Ok(ConstSquare {
        is_const_square: is_cs,
        const_is_square: u.field().is_square(u.lc())?,
    })
}

/// A lowest-degree irreducible factor of odd multiplicity, if any.
pub fn const_square_witness<R: Rng + ?Sized>(u: &UPoly, rng: &mut R) -> Result<Option<UPoly>> {
    let odd = squarefree_decomposition(u)?
        .into_iter()
        .filter(|(_, m)| m % 2 == 1)
        .fold(UPoly::one(u.field().clone()), |acc, (a, _)| &acc * &a);
    if odd.is_constant() {
        return Ok(None);
    }
    let fac = factor(&odd, rng)?;
    Ok(fac.factors.into_iter().map(|(g, _)| g).next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::is_const_square_brute;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_bi(field: &Arc<Field>, nx: usize, nt: usize, rng: &mut ChaCha8Rng) -> BiPoly {
        let rows = (0..=nx).map(|_| UPoly::random(field.clone(), nt, rng)).collect();
        BiPoly::new(field.clone(), rows)
    }

    #[test]
    fn swap_and_views_are_consistent() {
        let f = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = rand_bi(&f, 4, 3, &mut rng);
        assert_eq!(a.swap().swap(), a);
        assert_eq!(BiPoly::from_t_major(f.clone(), &a.t_major()), a);
        for i in 0..5 {
            for j in 0..4 {
                assert_eq!(a.swap().coeff(j, i), a.coeff(i, j));
            }
        }
    }

    #[test]
    fn evaluation_is_a_ring_map() {
        let f = Field::prime(7).unwrap();
        let tower = Tower::new(f.clone(), 0);
        let emb = tower.ext(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = rand_bi(&f, 3, 2, &mut rng);
        let b = rand_bi(&f, 2, 3, &mut rng);
        let tf = emb.target().clone();
        for _ in 0..20 {
            let (t0, x0) = (tf.random(&mut rng), tf.random(&mut rng));
            let ab = (&a * &b).eval_point(&emb, t0, x0);
            assert_eq!(ab, tf.mul(a.eval_point(&emb, t0, x0), b.eval_point(&emb, t0, x0)));
            assert_eq!(a.eval_t(&emb, t0).eval(x0), a.eval_point(&emb, t0, x0));
            assert_eq!(a.eval_x(&emb, x0).eval(t0), a.eval_point(&emb, t0, x0));
        }
    }

    #[test]
    fn derivatives_commute() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = rand_bi(&f, 6, 5, &mut rng);
        assert_eq!(a.deriv_x().deriv_t(), a.deriv_t().deriv_x());
        assert_eq!(a.swap().deriv_x().swap(), a.deriv_t());
    }

    #[test]
    fn primitive_part_removes_content() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let core = rand_bi(&f, 3, 2, &mut rng);
        let c = UPoly::from_ints(f.clone(), &[1, 1, 1]);
        let a = &core * &BiPoly::from_x_poly(&c);
        let (cont, pp) = a.primitive_part_t().unwrap();
        assert!(c.divides(&cont).unwrap());
        assert!(pp.content_t().unwrap().is_one());
        assert_eq!(&pp * &BiPoly::from_x_poly(&cont), a);
    }

    #[test]
    fn const_square_agrees_with_enumeration() {
        let f = Field::prime(3).unwrap();
        for code in 1..3u32.pow(5) {
            let mut c = code;
            let coeffs: Vec<i64> = (0..5)
                .map(|_| {
                    let d = c % 3;
                    c /= 3;
                    d as i64
                })
                .collect();
            let u = UPoly::from_ints(f.clone(), &coeffs);
            assert_eq!(
                is_const_square(&u).unwrap().is_const_square,
                is_const_square_brute(&u),
                "{u:?}"
            );
        }
    }

    #[test]
    fn witness_has_odd_multiplicity() {
        let f = Field::prime(5).unwrap();
        let a = UPoly::from_ints(f.clone(), &[1, 0, 1]);
        let b = UPoly::from_ints(f.clone(), &[2, 1]);
        let u = &a.pow(2) * &b.pow(3);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(const_square_witness(&u, &mut rng).unwrap(), Some(b.clone()));
        assert_eq!(const_square_witness(&a.pow(4), &mut rng).unwrap(), None);
    }

    #[test]
    fn reduction_mod_prime_matches_remainder() {
        let f = Field::prime(3).unwrap();
        let tower = Tower::new(f.clone(), 5);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let p = crate::unipoly::random_irreducible(&f, 3, &mut rng).unwrap();
        let res = ResidueField::new(&tower, &p, &mut rng).unwrap();
        let a = rand_bi(&f, 3, 6, &mut rng);
        let red = a.reduce_mod_prime(&res);
        for (i, r) in a.x_major().iter().enumerate() {
            let rr = r.rem(&p).unwrap();
            assert_eq!(red.coeff(i), rr.eval_in(res.embedding(), res.tau()));
        }
    }

    #[test]
    fn json_round_trip() {
        let f = Field::make(3, 2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = rand_bi(&f, 3, 2, &mut rng);
        assert_eq!(BiPoly::from_json(&a.to_json()).unwrap(), a);
    }
}
