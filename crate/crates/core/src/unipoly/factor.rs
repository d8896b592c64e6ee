use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use super::UPoly;
use crate::error::{Error, Result};
use crate::fields::{prime_factors, Field, FqElem};

const SPLIT_ATTEMPTS: u32 = 64;

/// `f = unit * prod g_i^(m_i)`, factors monic irreducible and canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(UPoly, u32)>,
}

impl Factorization {
    pub fn product(&self, field: &Arc<Field>) -> UPoly {
        self.factors.iter().fold(
            UPoly::constant(field.clone(), self.unit),
            |acc, (g, m)| &acc * &g.pow(*m as u64),
        )
    }

    /// Degrees of the distinct irreducible factors.
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|(g, _)| g.degree().unwrap_or(0)).collect()
    }

    pub fn to_json(&self, field: &Field) -> Value {
        json!({
            "unit": field.encode(self.unit),
            "factors": self
                .factors
                .iter()
                .map(|(g, m)| json!([g.encode_coeffs(), m]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Whether only powers of `x^p` occur in `f`.
pub fn in_fq_xp(f: &UPoly) -> bool {
    let p = f.field().p() as usize;
    f.coeffs()
        .iter()
        .enumerate()
        .all(|(i, c)| c.is_zero() || i % p == 0)
}

/// The `g` with `g^p = f`, for `f` in `F_q[x^p]`.
pub fn pth_root(f: &UPoly) -> Result<UPoly> {
    if !in_fq_xp(f) {
        return Err(Error::Precondition("polynomial is not a p-th power".into()));
    }
    let field = f.field();
    let p = field.p() as usize;
    let e = field.e();
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.frobenius(c, e - 1))
        .collect();
    Ok(UPoly::new(field.clone(), coeffs))
}

/// Squarefree decomposition `[(a_i, i)]` of a nonzero polynomial: the
/// `a_i` are monic, squarefree, pairwise coprime and `f = lc * prod a_i^i`.
pub fn squarefree_decomposition(f: &UPoly) -> Result<Vec<(UPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    sqf_into(&f.monic(), 1, &mut out)?;
    out.sort_by_key(|(_, m)| *m);
    let mut merged: Vec<(UPoly, u32)> = Vec::new();
    for (a, m) in out {
        match merged.last_mut() {
            Some((b, k)) if *k == m => *b = &*b * &a,
            _ => merged.push((a, m)),
        }
    }
    Ok(merged)
}

fn sqf_into(f: &UPoly, scale: u32, out: &mut Vec<(UPoly, u32)>) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    let p = f.field().p();
    let df = f.derivative();
    if df.is_zero() {
        return sqf_into(&pth_root(f)?, scale * p, out);
    }
    let mut c = f.gcd(&df)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if !z.is_constant() {
            out.push((z, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w)?;
    }
    if !c.is_constant() {
        sqf_into(&pth_root(&c)?, scale * p, out)?;
    }
    Ok(())
}

/// The `F_q`-linear map `h -> h^q` on `F_q[x]/(m)`.
pub struct FrobeniusMap {
    modulus: UPoly,
    cols: Vec<UPoly>,
}

impl FrobeniusMap {
    pub fn new(modulus: &UPoly) -> Result<FrobeniusMap> {
        let m = modulus.monic();
        let n = m
            .degree()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Precondition("Frobenius map needs degree >= 1".into()))?;
        let field = m.field().clone();
        let xq = UPoly::x(field.clone()).pow_mod(field.q() as u64, &m)?;
        let mut cols = Vec::with_capacity(n);
        let mut cur = UPoly::one(field).rem(&m)?;
        for _ in 0..n {
            cols.push(cur.clone());
            cur = cur.mul_mod(&xq, &m)?;
        }
        Ok(FrobeniusMap { modulus: m, cols })
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    /// `x^q mod m`.
    pub fn xq(&self) -> UPoly {
        if self.cols.len() > 1 {
            self.cols[1].clone()
        } else {
            let f = self.modulus.field().clone();
            UPoly::x(f).pow_mod(self.modulus.field().q() as u64, &self.modulus).unwrap()
        }
    }

    /// `h^q mod m`, for `deg h < deg m`.
    pub fn apply(&self, h: &UPoly) -> UPoly {
        let field = self.modulus.field();
        let n = self.cols.len();
        let mut out = vec![field.zero(); n];
        for (&c, col) in h.coeffs().iter().zip(&self.cols) {
            if c.is_zero() {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(col.coeffs()) {
                *o = field.add(*o, field.mul(c, v));
            }
        }
        UPoly::new(field.clone(), out)
    }
}

/// Distinct-degree factorization of a squarefree polynomial:
/// `[(g_i, i)]` where `g_i` is the product of its monic irreducible
/// factors of degree `i`.
pub fn distinct_degree(f: &UPoly) -> Result<Vec<(UPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic();
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![(f, 1)]);
    }
    let field = f.field().clone();
    let x = UPoly::x(field);
    let frob = FrobeniusMap::new(&f)?;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&f)?;
    let mut i = 0;
    loop {
        i += 1;
        if rest.deg() < 2 * i as i64 {
            break;
        }
        h = frob.apply(&h);
        let g = rest.gcd(&(&h - &x))?;
        if !g.is_constant() {
            rest = rest.div_exact(&g)?;
            out.push((g, i));
        }
    }
    if !rest.is_constant() {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    Ok(out)
}

/// Splits a product of distinct monic irreducibles of degree `i`
/// (Cantor-Zassenhaus, odd `q`).
pub fn equal_degree<R: Rng + ?Sized>(f: &UPoly, i: usize, rng: &mut R) -> Result<Vec<UPoly>> {
    let f = f.monic();
    let n = f
        .degree()
        .ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    if i == 0 || n % i != 0 {
        return Err(Error::Precondition(format!("degree {n} is not a multiple of {i}")));
    }
    if n == i {
        return Ok(vec![f]);
    }
    let field = f.field().clone();
    let frob = FrobeniusMap::new(&f)?;
    let half = ((field.q() - 1) / 2) as u64;
    let one = UPoly::one(field.clone());
    for _ in 0..SPLIT_ATTEMPTS {
        let a = UPoly::random(field.clone(), n - 1, rng);
        if a.is_constant() {
            continue;
        }
        // a^((q^i - 1)/2) = (a^(1 + q + ... + q^(i-1)))^((q-1)/2)
        let mut t = a.clone();
        let mut s = a;
        for _ in 1..i {
            t = frob.apply(&t);
            s = s.mul_mod(&t, &f)?;
        }
        let b = s.pow_mod(half, &f)?;
        let d = f.gcd(&(&b - &one))?;
        if d.deg() > 0 && d.deg() < n as i64 {
            let e = f.div_exact(&d)?;
            let mut parts = equal_degree(&d, i, rng)?;
            parts.extend(equal_degree(&e, i, rng)?);
            return Ok(parts);
        }
    }
    Err(Error::SplittingFailed(SPLIT_ATTEMPTS))
}

/// Complete factorization into monic irreducibles.
pub fn factor<R: Rng + ?Sized>(f: &UPoly, rng: &mut R) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lc();
    let mut factors = Vec::new();
    for (a, m) in squarefree_decomposition(f)? {
        for (g, i) in distinct_degree(&a)? {
            for h in equal_degree(&g, i, rng)? {
                factors.push((h, m));
            }
        }
    }
    factors.sort_by(|(a, m), (b, k)| a.canonical_key().cmp(&b.canonical_key()).then(m.cmp(k)));
    Ok(Factorization { unit, factors })
}

/// Distinct roots in the coefficient field, sorted by code.
pub fn roots<R: Rng + ?Sized>(f: &UPoly, rng: &mut R) -> Result<Vec<FqElem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic();
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let field = f.field().clone();
    let x = UPoly::x(field.clone());
    let xq = x.pow_mod(field.q() as u64, &f)?;
    let g = f.gcd(&(&xq - &x))?;
    let mut out: Vec<FqElem> = equal_degree(&g, 1, rng)?
        .into_iter()
        .map(|l| field.neg(l.coeff(0)))
        .collect();
    out.sort();
    Ok(out)
}

/// Rabin's test. Constants are not irreducible.
pub fn is_irreducible(f: &UPoly) -> Result<bool> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = f.monic();
    let x = UPoly::x(f.field().clone());
    let frob = FrobeniusMap::new(&f)?;
    let mut powers = Vec::with_capacity(n + 1);
    let mut h = x.rem(&f)?;
    powers.push(h.clone());
    for _ in 0..n {
        h = frob.apply(&h);
        powers.push(h.clone());
    }
    if powers[n] != powers[0] {
        return Ok(false);
    }
    for r in prime_factors(n as u64) {
        let k = n / r as usize;
        if !f.gcd(&(&powers[k] - &x))?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn random_irreducible<R: Rng + ?Sized>(
    field: &Arc<Field>,
    degree: usize,
    rng: &mut R,
) -> Result<UPoly> {
    if degree == 0 {
        return Err(Error::Precondition("irreducible polynomials have degree >= 1".into()));
    }
    loop {
        let f = UPoly::random_monic(field.clone(), degree, rng);
        if is_irreducible(&f)? {
            return Ok(f);
        }
    }
}

/// Degrees of the irreducible factors of a squarefree polynomial,
/// descending. This is the cycle type of Frobenius on its roots.
pub fn degree_pattern(f: &UPoly) -> Result<Vec<usize>> {
    let mut parts = Vec::new();
    for (g, i) in distinct_degree(f)? {
        let k = g.degree().unwrap() / i;
        parts.extend(std::iter::repeat_n(i, k));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(parts)
}
