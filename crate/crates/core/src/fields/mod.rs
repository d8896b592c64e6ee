//! Finite fields `F_q`, `q = p^e` with `p` odd.
//!
//! An element is stored as the integer whose base-`p` digits are its
//! coefficients in the power basis `1, u, ..., u^(e-1)` of `F_p[u]/(m(u))`.
//! Prime fields use plain modular arithmetic. Extensions up to
//! [`TABLE_LIMIT`] elements use exp/log/Zech tables derived from the dense
//! representation; larger ones multiply digit vectors directly.

mod embed;

pub use embed::{Embedding, Tower};

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::unipoly::{is_irreducible, UPoly};

/// Largest field size that gets log tables.
pub const TABLE_LIMIT: u32 = 1 << 16;
/// Default bound for [`Field::elements`].
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

const MAX_E: usize = 20;
const NO_LOG: u32 = u32::MAX;

/// A field element. The tag is a fingerprint of the owning field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    code: u32,
    tag: u32,
}

impl FqElem {
    pub fn code(self) -> u32 {
        self.code
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }

    pub fn tag(self) -> u32 {
        self.tag
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.code)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Serializable description of a field: `modulus` lists the defining
/// polynomial's coefficients low degree first and is absent for `e = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Arc<Field>> {
        match (&self.modulus, self.e) {
            (None, 1) => Field::prime(self.p),
            (Some(m), e) if m.len() == e as usize + 1 => Field::with_modulus(self.p, m.clone()),
            _ => Err(Error::InvalidField(format!(
                "modulus does not match e = {}",
                self.e
            ))),
        }
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

enum Arith {
    Prime,
    Table(Tables),
    Dense,
}

pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    tag: u32,
    generator: u32,
    arith: Arith,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.p, self.e, self.modulus)
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag && self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q` into `(p, e)` when it is an odd prime power.
pub fn prime_power(q: u32) -> Result<(u32, u32)> {
    let factors = prime_factors(q as u64);
    if factors.len() != 1 {
        return Err(Error::InvalidField(format!("{q} is not a prime power")));
    }
    let p = factors[0] as u32;
    if p == 2 {
        return Err(Error::InvalidField("characteristic 2 is not supported".into()));
    }
    let mut e = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        e += 1;
    }
    Ok((p, e))
}

fn fingerprint(p: u32, e: u32, modulus: &[u32]) -> u32 {
    let mut h: u32 = 0x811c_9dc5;
    for w in [p, e].iter().chain(modulus) {
        for b in w.to_le_bytes() {
            h ^= b as u32;
            h = h.wrapping_mul(0x0100_0193);
        }
    }
    h
}

fn check_size(p: u32, e: u32) -> Result<u32> {
    let mut q: u64 = 1;
    for _ in 0..e {
        q *= p as u64;
        if q >= 1 << 32 || e as usize > MAX_E {
            return Err(Error::FieldTooLarge(format!("{p}^{e}")));
        }
    }
    Ok(q as u32)
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Arc<Field>> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let mut f = Field {
            p,
            e: 1,
            q: p,
            modulus: Vec::new(),
            tag: fingerprint(p, 1, &[]),
            generator: 1,
            arith: Arith::Prime,
        };
        f.generator = f.find_generator();
        Ok(Arc::new(f))
    }

    /// `F_{p^e}` with a modulus drawn by a seeded search over monic
    /// irreducible polynomials of degree `e`.
    pub fn make(p: u32, e: u32, seed: u64) -> Result<Arc<Field>> {
        if e < 1 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let base = Field::prime(p)?;
        if e == 1 {
            return Ok(base);
        }
        check_size(p, e)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut coeffs: Vec<FqElem> = (0..e).map(|_| base.random(&mut rng)).collect();
            coeffs.push(base.one());
            let m = UPoly::new(base.clone(), coeffs);
            if is_irreducible(&m)? {
                let modulus = m.coeffs().iter().map(|c| c.code).collect();
                return Field::build_extension(p, e, modulus);
            }
        }
    }

    /// `F_p[u]/(modulus)`; the modulus is checked for irreducibility.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Arc<Field>> {
        let base = Field::prime(p)?;
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        let e = modulus.len() as u32 - 1;
        if e == 1 {
            return Ok(base);
        }
        check_size(p, e)?;
        let m = UPoly::new(base.clone(), modulus.iter().map(|&c| base.from_u32(c)).collect());
        if !is_irreducible(&m)? {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Field::build_extension(p, e, modulus)
    }

    /// `F_q` for an odd prime power `q`.
    pub fn from_q(q: u32, seed: u64) -> Result<Arc<Field>> {
        let (p, e) = prime_power(q)?;
        Field::make(p, e, seed)
    }

    fn build_extension(p: u32, e: u32, modulus: Vec<u32>) -> Result<Arc<Field>> {
        let q = check_size(p, e)?;
        let mut f = Field {
            p,
            e,
            q,
            tag: fingerprint(p, e, &modulus),
            modulus,
            generator: 0,
            arith: Arith::Dense,
        };
        f.generator = f.find_generator();
        if q <= TABLE_LIMIT {
            f.arith = Arith::Table(f.build_tables());
        }
        Ok(Arc::new(f))
    }

    fn find_generator(&self) -> u32 {
        let order = (self.q - 1) as u64;
        let primes = prime_factors(order);
        let start = if self.e == 1 { 1 } else { self.p };
        (start..self.q)
            .find(|&c| {
                let g = self.elem(c);
                primes.iter().all(|&r| self.pow(g, order / r) != self.one())
            })
            .expect("multiplicative group is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let n = (self.q - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![NO_LOG; self.q as usize];
        let g = self.elem(self.generator);
        let mut x = self.one();
        for i in 0..n {
            exp.push(x.code);
            log[x.code as usize] = i as u32;
            x = self.mul(x, g);
        }
        let zech = exp
            .iter()
            .map(|&c| {
                let d0 = c % self.p;
                let shifted = c - d0 + (d0 + 1) % self.p;
                log[shifted as usize]
            })
            .collect();
        Tables { exp, log, zech }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn tag(&self) -> u32 {
        self.tag
    }

    /// Defining polynomial, low degree first; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            e: self.e,
            modulus: (self.e > 1).then(|| self.modulus.clone()),
        }
    }

    pub fn uses_tables(&self) -> bool {
        matches!(self.arith, Arith::Table(_))
    }

    /// A generator of the multiplicative group.
    pub fn generator(&self) -> FqElem {
        self.elem(self.generator)
    }

    #[inline]
    fn elem(&self, code: u32) -> FqElem {
        FqElem { code, tag: self.tag }
    }

    pub fn zero(&self) -> FqElem {
        self.elem(0)
    }

    pub fn one(&self) -> FqElem {
        self.elem(1)
    }

    pub fn contains(&self, a: FqElem) -> bool {
        a.tag == self.tag && a.code < self.q
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        self.elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub(crate) fn from_u32(&self, c: u32) -> FqElem {
        self.elem(c % self.p)
    }

    /// Element with the given integer code (base-`p` digits = coefficients).
    pub fn from_code(&self, code: u32) -> Result<FqElem> {
        if code >= self.q {
            return Err(Error::Format(format!("code {code} out of range for q = {}", self.q)));
        }
        Ok(self.elem(code))
    }

    /// Trusted code conversion for internal loops.
    #[inline]
    pub(crate) fn from_code_unchecked(&self, code: u32) -> FqElem {
        debug_assert!(code < self.q);
        self.elem(code)
    }

    /// Element from power-basis coefficients, low degree first.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElem> {
        if coeffs.len() > self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Format(format!("bad coefficient list {coeffs:?}")));
        }
        let mut code = 0u32;
        for &c in coeffs.iter().rev() {
            code = code * self.p + c;
        }
        Ok(self.elem(code))
    }

    /// Power-basis coefficients, low degree first, trailing zeros removed.
    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        let mut out = Vec::new();
        let mut c = a.code;
        while c > 0 {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    /// JSON encoding: a bare integer for prime fields, a coefficient list otherwise.
    pub fn encode(&self, a: FqElem) -> Value {
        if self.e == 1 {
            Value::from(a.code)
        } else {
            Value::from(self.coeffs(a))
        }
    }

    pub fn decode(&self, v: &Value) -> Result<FqElem> {
        match v {
            Value::Number(n) => {
                let c = n
                    .as_i64()
                    .ok_or_else(|| Error::Format(format!("bad element {v}")))?;
                if self.e == 1 {
                    Ok(self.from_int(c))
                } else if (0..self.p as i64).contains(&c) {
                    Ok(self.elem(c as u32))
                } else {
                    Err(Error::Format(format!("bare integer {c} is not in F_p")))
                }
            }
            Value::Array(items) => {
                let digits = items
                    .iter()
                    .map(|d| {
                        d.as_u64()
                            .map(|x| x as u32)
                            .ok_or_else(|| Error::Format(format!("bad digit {d}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.from_coeffs(&digits)
            }
            _ => Err(Error::Format(format!("bad element {v}"))),
        }
    }

    fn digits(&self, code: u32) -> [u64; MAX_E] {
        let mut d = [0u64; MAX_E];
        let mut c = code;
        for slot in d.iter_mut().take(self.e as usize) {
            *slot = (c % self.p) as u64;
            c /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u64]) -> u32 {
        let p = self.p as u64;
        let mut code = 0u64;
        for &x in d[..self.e as usize].iter().rev() {
            code = code * p + x % p;
        }
        code as u32
    }

    fn dense_add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut s = [0u64; MAX_E];
        for i in 0..self.e as usize {
            s[i] = da[i] + db[i];
        }
        self.undigits(&s)
    }

    fn dense_neg(&self, a: u32) -> u32 {
        let p = self.p as u64;
        let mut d = self.digits(a);
        for x in d.iter_mut().take(self.e as usize) {
            *x = (p - *x) % p;
        }
        self.undigits(&d)
    }

    fn dense_mul(&self, a: u32, b: u32) -> u32 {
        let e = self.e as usize;
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_E];
        for i in 0..e {
            if da[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] += da[i] * db[j];
            }
        }
        for k in (e..2 * e - 1).rev() {
            let c = prod[k] % p;
            prod[k] = 0;
            if c == 0 {
                continue;
            }
            for i in 0..e {
                let m = self.modulus[i] as u64;
                prod[k - e + i] = (prod[k - e + i] + c * ((p - m) % p)) % p;
            }
        }
        self.undigits(&prod)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        debug_assert!(a.tag == self.tag && b.tag == self.tag);
        match &self.arith {
            Arith::Prime => {
                let s = a.code + b.code;
                self.elem(if s >= self.p { s - self.p } else { s })
            }
            Arith::Table(t) => {
                if a.code == 0 {
                    return b;
                }
                if b.code == 0 {
                    return a;
                }
                let n = self.q - 1;
                let (la, lb) = (t.log[a.code as usize], t.log[b.code as usize]);
                let diff = if lb >= la { lb - la } else { lb + n - la };
                let z = t.zech[diff as usize];
                if z == NO_LOG {
                    return self.zero();
                }
                let s = la + z;
                self.elem(t.exp[(if s >= n { s - n } else { s }) as usize])
            }
            Arith::Dense => self.elem(self.dense_add(a.code, b.code)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        debug_assert!(a.tag == self.tag);
        if a.code == 0 {
            return a;
        }
        match &self.arith {
            Arith::Prime => self.elem(self.p - a.code),
            Arith::Table(t) => {
                let n = self.q - 1;
                let s = t.log[a.code as usize] + n / 2;
                self.elem(t.exp[(if s >= n { s - n } else { s }) as usize])
            }
            Arith::Dense => self.elem(self.dense_neg(a.code)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        debug_assert!(a.tag == self.tag && b.tag == self.tag);
        if a.code == 0 || b.code == 0 {
            return self.zero();
        }
        match &self.arith {
            Arith::Prime => self.elem(((a.code as u64 * b.code as u64) % self.p as u64) as u32),
            Arith::Table(t) => {
                let n = self.q - 1;
                let s = t.log[a.code as usize] + t.log[b.code as usize];
                self.elem(t.exp[(if s >= n { s - n } else { s }) as usize])
            }
            Arith::Dense => self.elem(self.dense_mul(a.code, b.code)),
        }
    }

    pub fn square(&self, a: FqElem) -> FqElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FqElem, k: u64) -> FqElem {
        if k == 0 {
            return self.one();
        }
        if a.code == 0 {
            return self.zero();
        }
        if let Arith::Table(t) = &self.arith {
            let n = (self.q - 1) as u64;
            let l = t.log[a.code as usize] as u64;
            return self.elem(t.exp[((l * (k % n)) % n) as usize]);
        }
        let mut base = a;
        let mut acc = self.one();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero. Use [`Field::try_inv`] for a checked version.
    #[inline]
    pub fn inv(&self, a: FqElem) -> FqElem {
        assert!(a.code != 0, "inverse of zero");
        match &self.arith {
            Arith::Table(t) => {
                let n = self.q - 1;
                let l = t.log[a.code as usize];
                self.elem(t.exp[((n - l) % n) as usize])
            }
            _ => self.pow(a, (self.q - 2) as u64),
        }
    }

    pub fn try_inv(&self, a: FqElem) -> Result<FqElem> {
        if a.tag != self.tag {
            return Err(Error::FieldMismatch);
        }
        if a.code == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv(a))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> FqElem {
        self.mul(a, self.inv(b))
    }

    /// Checked arithmetic: validates field membership and division by zero.
    pub fn arith(&self, op: FieldOp, a: FqElem, b: FqElem) -> Result<FqElem> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::FieldMismatch);
        }
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => {
                if b.code == 0 {
                    return Err(Error::DivisionByZero);
                }
                self.div(a, b)
            }
        })
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: FqElem, k: u32) -> FqElem {
        let r = k % self.e;
        self.pow(a, (self.p as u64).pow(r))
    }

    /// Whether a nonzero element is a square.
    pub fn is_square(&self, a: FqElem) -> Result<bool> {
        if a.code == 0 {
            return Err(Error::Precondition("is_square of zero".into()));
        }
        Ok(match &self.arith {
            Arith::Table(t) => t.log[a.code as usize] % 2 == 0,
            _ => self.pow(a, ((self.q - 1) / 2) as u64) == self.one(),
        })
    }

    /// Degree of `a` over the prime field.
    pub fn prime_degree(&self, a: FqElem) -> u32 {
        (1..=self.e)
            .find(|&j| self.e % j == 0 && self.frobenius(a, j) == a)
            .unwrap_or(self.e)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        self.elem(rng.gen_range(0..self.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        self.elem(rng.gen_range(1..self.q))
    }

    /// All elements in code order, refusing fields above [`ENUMERATION_LIMIT`].
    pub fn elements(&self) -> Result<impl Iterator<Item = FqElem> + '_> {
        self.elements_bounded(ENUMERATION_LIMIT)
    }

    pub fn elements_bounded(&self, bound: u64) -> Result<impl Iterator<Item = FqElem> + '_> {
        if self.q as u64 > bound {
            return Err(Error::EnumerationTooLarge(self.q as u64, bound));
        }
        Ok((0..self.q).map(move |c| self.elem(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_twin(f: &Field) -> Field {
        Field {
            p: f.p,
            e: f.e,
            q: f.q,
            modulus: f.modulus.clone(),
            tag: f.tag,
            generator: f.generator,
            arith: Arith::Dense,
        }
    }

    #[test]
    fn prime_field_axioms() {
        let f = Field::prime(7).unwrap();
        let els: Vec<_> = f.elements().unwrap().collect();
        for &a in &els {
            for &b in &els {
                let s = (a.code() + b.code()) % 7;
                assert_eq!(f.add(a, b).code(), s);
                assert_eq!(f.mul(a, b).code(), (a.code() * b.code()) % 7);
                assert_eq!(f.add(f.sub(a, b), b), a);
            }
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a)), f.one());
            }
        }
    }

    #[test]
    fn tables_agree_with_dense() {
        for (p, e) in [(3, 2), (3, 5), (5, 3), (7, 2)] {
            let f = Field::make(p, e, 11).unwrap();
            assert!(f.uses_tables());
            let d = dense_twin(&f);
            for a in f.elements().unwrap() {
                assert_eq!(f.neg(a), d.neg(a));
                for b in f.elements().unwrap().step_by(3) {
                    assert_eq!(f.add(a, b), d.add(a, b));
                    assert_eq!(f.mul(a, b), d.mul(a, b));
                }
            }
        }
    }

    #[test]
    fn multiplicative_order_and_frobenius() {
        let f = Field::make(3, 4, 1).unwrap();
        let g = f.generator();
        assert_eq!(f.pow(g, 80), f.one());
        assert_ne!(f.pow(g, 40), f.one());
        assert_ne!(f.pow(g, 16), f.one());
        for a in f.elements().unwrap() {
            assert_eq!(f.frobenius(a, 4), a);
            let sum = f.add(a, g);
            assert_eq!(f.frobenius(sum, 1), f.add(f.frobenius(a, 1), f.frobenius(g, 1)));
        }
        let fixed = f.elements().unwrap().filter(|&a| f.frobenius(a, 1) == a).count();
        assert_eq!(fixed, 3);
        let deg2 = f.elements().unwrap().filter(|&a| f.prime_degree(a) <= 2).count();
        assert_eq!(deg2, 9);
    }

    #[test]
    fn squares_are_half_of_units() {
        let f = Field::make(5, 2, 3).unwrap();
        let sq = f.elements().unwrap().skip(1).filter(|&a| f.is_square(a).unwrap()).count();
        assert_eq!(sq, 12);
        assert!(f.is_square(f.zero()).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::make(2, 3, 0).is_err());
        assert!(Field::make(9, 1, 0).is_err());
        assert!(Field::make(3, 0, 0).is_err());
        assert!(Field::make(3, 21, 0).is_err());
        assert!(Field::with_modulus(3, vec![2, 0, 1]).is_err());
        assert!(Field::with_modulus(3, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn spec_round_trip() {
        let f = Field::make(3, 3, 5).unwrap();
        let spec = f.spec();
        let json = serde_json::to_string(&spec).unwrap();
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(*back.build().unwrap(), *f);
        let fp = Field::prime(7).unwrap();
        assert_eq!(serde_json::to_string(&fp.spec()).unwrap(), r#"{"p":7,"e":1}"#);
        for a in f.elements().unwrap() {
            assert_eq!(f.decode(&f.encode(a)).unwrap(), a);
        }
    }

    #[test]
    fn checked_arith_detects_mismatch() {
        let a = Field::make(3, 2, 1).unwrap();
        let b = Field::make(3, 3, 1).unwrap();
        let x = a.one();
        let y = b.one();
        assert!(matches!(a.arith(FieldOp::Add, x, y), Err(Error::FieldMismatch)));
        assert!(matches!(a.arith(FieldOp::Div, x, a.zero()), Err(Error::DivisionByZero)));
        assert_eq!(a.arith(FieldOp::Mul, x, x).unwrap(), x);
    }

    #[test]
    fn dense_backend_above_table_limit() {
        let f = Field::make(3, 13, 2).unwrap();
        assert!(!f.uses_tables());
        let g = f.generator();
        let n = (f.q() - 1) as u64;
        assert_eq!(f.pow(g, n), f.one());
        assert_eq!(f.mul(g, f.inv(g)), f.one());
    }

    #[test]
    fn enumeration_bound() {
        let f = Field::make(3, 6, 0).unwrap();
        assert!(f.elements_bounded(100).is_err());
        assert_eq!(f.elements().unwrap().count(), 729);
    }
}
