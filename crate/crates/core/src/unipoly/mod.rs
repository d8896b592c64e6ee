//! Dense univariate polynomials over `F_q`.

mod factor;
pub(crate) mod resultant;

pub use factor::{
    degree_pattern, distinct_degree, equal_degree, factor, in_fq_xp, is_irreducible, pth_root,
    random_irreducible, roots, squarefree_decomposition, Factorization, FrobeniusMap,
};
pub use resultant::{discriminant, resultant, resultant_formal};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::{Embedding, Field, FieldSpec, FqElem};

#[derive(Clone)]
pub struct UPoly {
    field: Arc<Field>,
    coeffs: Vec<FqElem>,
}

impl PartialEq for UPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.tag() == other.field.tag() && self.coeffs == other.coeffs
    }
}

impl Eq for UPoly {}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<u32> = self.coeffs.iter().map(|c| c.code()).collect();
        write!(f, "UPoly{codes:?}")
    }
}

pub(crate) fn trim(v: &mut Vec<FqElem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl UPoly {
    /// Builds a polynomial from coefficients, low degree first.
    pub fn new(field: Arc<Field>, mut coeffs: Vec<FqElem>) -> UPoly {
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        trim(&mut coeffs);
        UPoly { field, coeffs }
    }

    pub fn zero(field: Arc<Field>) -> UPoly {
        UPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Arc<Field>) -> UPoly {
        let one = field.one();
        UPoly { field, coeffs: vec![one] }
    }

    pub fn x(field: Arc<Field>) -> UPoly {
        UPoly::monomial(field.clone(), field.one(), 1)
    }

    pub fn constant(field: Arc<Field>, c: FqElem) -> UPoly {
        UPoly::new(field, vec![c])
    }

    pub fn monomial(field: Arc<Field>, c: FqElem, k: usize) -> UPoly {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        UPoly::new(field, coeffs)
    }

    /// Coefficients taken from the prime subfield.
    pub fn from_ints(field: Arc<Field>, ints: &[i64]) -> UPoly {
        let coeffs = ints.iter().map(|&c| field.from_int(c)).collect();
        UPoly::new(field, coeffs)
    }

    pub fn random<R: Rng + ?Sized>(field: Arc<Field>, max_degree: usize, rng: &mut R) -> UPoly {
        let coeffs = (0..=max_degree).map(|_| field.random(rng)).collect();
        UPoly::new(field, coeffs)
    }

    pub fn random_monic<R: Rng + ?Sized>(field: Arc<Field>, degree: usize, rng: &mut R) -> UPoly {
        let mut coeffs: Vec<FqElem> = (0..degree).map(|_| field.random(rng)).collect();
        coeffs.push(field.one());
        UPoly::new(field, coeffs)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FqElem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for zero, convenient in degree arithmetic.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == self.field.one()
    }

    pub fn same_field(&self, other: &UPoly) -> bool {
        self.field.tag() == other.field.tag()
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.lc());
        self.scale(inv)
    }

    pub fn scale(&self, c: FqElem) -> UPoly {
        let f = &self.field;
        UPoly::new(f.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn derivative(&self) -> UPoly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        UPoly::new(f.clone(), coeffs)
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluates at a point of an extension, embedding the coefficients.
    pub fn eval_in(&self, emb: &Embedding, x: FqElem) -> FqElem {
        let t = emb.target();
        self.coeffs
            .iter()
            .rev()
            .fold(t.zero(), |acc, &c| t.add(t.mul(acc, x), emb.apply(c)))
    }

    fn check(&self, other: &UPoly) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &UPoly) -> Result<UPoly> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &UPoly) -> Result<UPoly> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &UPoly) -> Result<UPoly> {
        self.check(other)?;
        Ok(self * other)
    }

    /// Euclidean division. Errors on a zero divisor or mismatched fields.
    pub fn divmod(&self, b: &UPoly) -> Result<(UPoly, UPoly)> {
        self.check(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let n = b.coeffs.len() - 1;
        if self.coeffs.len() <= n {
            return Ok((UPoly::zero(f.clone()), self.clone()));
        }
        let inv = f.inv(b.lc());
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - n];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + n], inv);
            q[k] = c;
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for j in 0..n {
                r[k + j] = f.add(r[k + j], f.mul(nc, b.coeffs[j]));
            }
            r[k + n] = f.zero();
        }
        r.truncate(n);
        Ok((UPoly::new(f.clone(), q), UPoly::new(f.clone(), r)))
    }

    pub fn rem(&self, b: &UPoly) -> Result<UPoly> {
        Ok(self.divmod(b)?.1)
    }

    /// Quotient when `b` divides `self`; [`Error::Precondition`] otherwise.
    pub fn div_exact(&self, b: &UPoly) -> Result<UPoly> {
        let (q, r) = self.divmod(b)?;
        if !r.is_zero() {
            return Err(Error::Precondition("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, b: &UPoly) -> Result<bool> {
        Ok(b.rem(self)?.is_zero())
    }

    pub fn pow(&self, mut k: u64) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::one(self.field.clone());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mul_mod(&self, b: &UPoly, m: &UPoly) -> Result<UPoly> {
        (self * b).rem(m)
    }

    pub fn pow_mod(&self, mut k: u64, m: &UPoly) -> Result<UPoly> {
        let mut base = self.rem(m)?;
        let mut acc = UPoly::one(self.field.clone()).rem(m)?;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> Result<UPoly> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn xgcd(&self, other: &UPoly) -> Result<(UPoly, UPoly, UPoly)> {
        self.check(other)?;
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::one(f.clone()), UPoly::zero(f.clone()));
        let (mut t0, mut t1) = (UPoly::zero(f.clone()), UPoly::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = f.inv(r0.lc());
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative())?.is_constant())
    }

    /// Coefficient list in the element encoding of the field.
    pub fn encode_coeffs(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|&c| self.field.encode(c)).collect())
    }

    pub fn decode_coeffs(field: Arc<Field>, v: &Value) -> Result<UPoly> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Format(format!("expected coefficient list, got {v}")))?;
        let coeffs = items.iter().map(|c| field.decode(c)).collect::<Result<Vec<_>>>()?;
        Ok(UPoly::new(field, coeffs))
    }

    pub fn to_json(&self) -> Value {
        json!({ "field": self.field.spec(), "coeffs": self.encode_coeffs() })
    }

    pub fn from_json(v: &Value) -> Result<UPoly> {
        let spec: FieldSpec = serde_json::from_value(
            v.get("field").cloned().ok_or_else(|| Error::Format("missing field".into()))?,
        )?;
        let field = spec.build()?;
        UPoly::decode_coeffs(field, v.get("coeffs").unwrap_or(&Value::Null))
    }

    /// Sort key: degree, then coefficient codes from the top.
    pub(crate) fn canonical_key(&self) -> (usize, Vec<u32>) {
        (
            self.coeffs.len(),
            self.coeffs.iter().rev().map(|c| c.code()).collect(),
        )
    }
}

impl Add for &UPoly {
    type Output = UPoly;

    fn add(self, rhs: &UPoly) -> UPoly {
        assert!(self.same_field(rhs), "field mismatch");
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, &c) in out.iter_mut().zip(&short.coeffs) {
            *o = f.add(*o, c);
        }
        UPoly::new(f.clone(), out)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;

    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;

    fn neg(self) -> UPoly {
        let f = &self.field;
        UPoly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

impl Mul for &UPoly {
    type Output = UPoly;

    fn mul(self, rhs: &UPoly) -> UPoly {
        assert!(self.same_field(rhs), "field mismatch");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(f.clone());
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UPoly::new(f.clone(), out)
    }
}
