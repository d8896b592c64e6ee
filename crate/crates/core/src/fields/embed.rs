use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Field, FqElem};
use crate::error::{Error, Result};
use crate::rng::substream_seed;
use crate::unipoly::{roots, UPoly};

const TABLE_SOURCE_LIMIT: u32 = 1 << 16;

/// A field embedding `F_q -> F_{q^m}` fixed by the image of the source
/// generator `u`, chosen as the smallest-code root of the source modulus.
pub struct Embedding {
    source: Arc<Field>,
    target: Arc<Field>,
    degree: u32,
    powers: Vec<FqElem>,
    table: Option<Vec<FqElem>>,
    // Left inverse of the digit matrix of `powers`, over F_p.
    left_inverse: Vec<Vec<u64>>,
}

impl std::fmt::Debug for Embedding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Embedding({:?} -> {:?})", self.source, self.target)
    }
}

impl Embedding {
    pub fn identity(field: Arc<Field>) -> Result<Embedding> {
        let image = if field.e() == 1 {
            field.one()
        } else {
            field.from_code_unchecked(field.p())
        };
        Embedding::with_image(field.clone(), field, image)
    }

    pub fn new(source: Arc<Field>, target: Arc<Field>) -> Result<Embedding> {
        if source.p() != target.p() || target.e() % source.e() != 0 {
            return Err(Error::InvalidField(format!("{source:?} does not embed in {target:?}")));
        }
        if source.e() == 1 {
            let one = target.one();
            return Embedding::with_image(source, target, one);
        }
        let m = UPoly::new(
            target.clone(),
            source.modulus().iter().map(|&c| target.from_u32(c)).collect(),
        );
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        let image = roots(&m, &mut rng)?
            .into_iter()
            .min()
            .ok_or_else(|| Error::InvalidField("modulus has no root in target".into()))?;
        Embedding::with_image(source, target, image)
    }

    fn with_image(source: Arc<Field>, target: Arc<Field>, image: FqElem) -> Result<Embedding> {
        let es = source.e() as usize;
        let et = target.e() as usize;
        let p = source.p() as u64;
        let mut powers = Vec::with_capacity(es);
        let mut x = target.one();
        for _ in 0..es {
            powers.push(x);
            x = target.mul(x, image);
        }
        // Gauss-Jordan on [M | I] where column i of M holds the digits of u^i.
        let cols: Vec<Vec<u32>> = powers
            .iter()
            .map(|&y| {
                let mut d = target.coeffs(y);
                d.resize(et, 0);
                d
            })
            .collect();
        let mut rows: Vec<Vec<u64>> = (0..et)
            .map(|r| {
                let mut row: Vec<u64> = (0..es).map(|c| cols[c][r] as u64).collect();
                row.extend((0..et).map(|k| (k == r) as u64));
                row
            })
            .collect();
        for col in 0..es {
            let piv = (col..et)
                .find(|&r| rows[r][col] != 0)
                .ok_or_else(|| Error::InvalidField("embedding image is degenerate".into()))?;
            rows.swap(col, piv);
            let inv = mod_pow(rows[col][col], p - 2, p);
            for v in rows[col].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..et {
                if r != col && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    for k in 0..es + et {
                        rows[r][k] = (rows[r][k] + (p - factor) * rows[col][k]) % p;
                    }
                }
            }
        }
        let left_inverse = rows[..es].iter().map(|r| r[es..].to_vec()).collect();
        let degree = target.e() / source.e();
        let mut emb = Embedding {
            source,
            target,
            degree,
            powers,
            table: None,
            left_inverse,
        };
        if emb.source.q() <= TABLE_SOURCE_LIMIT {
            let table = emb
                .source
                .elements()?
                .map(|a| emb.apply_direct(a))
                .collect();
            emb.table = Some(table);
        }
        Ok(emb)
    }

    pub fn source(&self) -> &Arc<Field> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Field> {
        &self.target
    }

    /// Relative degree `m = [target : source]`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn apply_direct(&self, a: FqElem) -> FqElem {
        let t = &self.target;
        self.source
            .coeffs(a)
            .iter()
            .zip(&self.powers)
            .fold(t.zero(), |acc, (&c, &pw)| t.add(acc, t.mul(t.from_u32(c), pw)))
    }

    #[inline]
    pub fn apply(&self, a: FqElem) -> FqElem {
        debug_assert!(self.source.contains(a));
        match &self.table {
            Some(t) => t[a.code() as usize],
            None => self.apply_direct(a),
        }
    }

    /// Preimage of `y`, or [`Error::NotInSubfield`].
    pub fn descend(&self, y: FqElem) -> Result<FqElem> {
        let p = self.source.p() as u64;
        let mut digits = self.target.coeffs(y);
        digits.resize(self.target.e() as usize, 0);
        let c: Vec<u32> = self
            .left_inverse
            .iter()
            .map(|row| {
                (row.iter().zip(&digits).map(|(&a, &d)| a * d as u64).sum::<u64>() % p) as u32
            })
            .collect();
        let mut trimmed = c;
        while trimmed.last() == Some(&0) {
            trimmed.pop();
        }
        let x = self.source.from_coeffs(&trimmed)?;
        if self.apply(x) == y {
            Ok(x)
        } else {
            Err(Error::NotInSubfield)
        }
    }

    pub fn apply_poly(&self, f: &UPoly) -> UPoly {
        UPoly::new(
            self.target.clone(),
            f.coeffs().iter().map(|&c| self.apply(c)).collect(),
        )
    }

    pub fn descend_poly(&self, f: &UPoly) -> Result<UPoly> {
        let coeffs = f
            .coeffs()
            .iter()
            .map(|&c| self.descend(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(UPoly::new(self.source.clone(), coeffs))
    }

    /// `y^q` where `q` is the source size.
    pub fn frobenius(&self, y: FqElem) -> FqElem {
        self.target.pow(y, self.source.q() as u64)
    }

    /// The distinct conjugates of `y` over the source, starting with `y`.
    pub fn conjugates(&self, y: FqElem) -> Vec<FqElem> {
        let mut out = vec![y];
        let mut z = self.frobenius(y);
        while z != y {
            out.push(z);
            z = self.frobenius(z);
        }
        out
    }

    /// Degree of `y` over the source field.
    pub fn relative_degree(&self, y: FqElem) -> u32 {
        self.conjugates(y).len() as u32
    }

    /// Minimal polynomial of `y` over the source.
    pub fn min_poly(&self, y: FqElem) -> Result<UPoly> {
        let t = &self.target;
        let mut poly = UPoly::one(t.clone());
        for c in self.conjugates(y) {
            poly = &poly * &UPoly::new(t.clone(), vec![t.neg(c), t.one()]);
        }
        self.descend_poly(&poly)
    }
}

fn mod_pow(mut b: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        k >>= 1;
    }
    acc
}

/// Lazily built extensions `F_q -> F_{q^m}` of one base field.
///
/// Each extension modulus is drawn from a stream keyed by `(seed, m)`, so the
/// tower is the same whatever order extensions are requested in.
pub struct Tower {
    base: Arc<Field>,
    seed: u64,
    exts: Mutex<BTreeMap<u32, Arc<Embedding>>>,
}

impl Tower {
    pub fn new(base: Arc<Field>, seed: u64) -> Tower {
        Tower {
            base,
            seed,
            exts: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn ext(&self, m: u32) -> Result<Arc<Embedding>> {
        if m == 0 {
            return Err(Error::InvalidField("extension degree 0".into()));
        }
        let mut exts = self.exts.lock().expect("tower lock poisoned");
        if let Some(e) = exts.get(&m) {
            return Ok(e.clone());
        }
        let emb = if m == 1 {
            Embedding::identity(self.base.clone())?
        } else {
            let target = Field::make(
                self.base.p(),
                self.base.e() * m,
                substream_seed(self.seed, m as u64),
            )?;
            Embedding::new(self.base.clone(), target)?
        };
        let emb = Arc::new(emb);
        exts.insert(m, emb.clone());
        Ok(emb)
    }

    /// Largest `m` with `q^m` inside the supported field range.
    pub fn max_degree(&self) -> u32 {
        let mut m = 1;
        let q = self.base.q() as u64;
        while q.pow(m + 1) < 1 << 32 && (self.base.e() * (m + 1)) as usize <= super::MAX_E {
            m += 1;
        }
        m
    }
}
