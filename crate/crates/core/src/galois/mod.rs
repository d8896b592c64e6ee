//! Frobenius cycle types and Galois group certificates.
//!
//! Certification for `f = c(x) g(t, x)` with `n' = deg_x g`: an `n'`-cycle
//! makes `G_g` transitive, a prime cycle of length `n'/2 < l < n' - 2` then
//! forces `A_{n'}` by Jordan's theorem, and the discriminant rules out the
//! even and fibre-product alternatives. Jordan's theorem is a trusted fact;
//! everything else is an observed factorization.

mod lattice;
pub mod perm;

pub use lattice::{Class, SmallGroupTable, SubgroupClass, MAX_D};
pub use perm::{transitive_groups, Perm, TransitiveGroup};

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bipoly::{disc_x, is_const_square, separable_in_t, BiPoly, ConstSquare, ResidueField};
use crate::error::{Error, Result};
use crate::fields::{FqElem, Tower};
use crate::model::content_report;
use crate::unipoly::{degree_pattern, is_irreducible, random_irreducible, roots, UPoly};

/// Cycle lengths, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> CycleType {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Sign parity, `(n - #parts) mod 2`.
    pub fn parity(&self) -> u8 {
        ((self.n() - self.parts.len()) % 2) as u8
    }

    pub fn is_full_cycle(&self) -> bool {
        self.parts.len() == 1
    }

    /// A prime part `l` with `n/2 < l < n - 2`.
    pub fn jordan_prime(&self) -> Option<usize> {
        let n = self.n();
        self.parts
            .iter()
            .copied()
            .find(|&l| 2 * l > n && l + 2 < n && crate::fields::is_prime(l as u32))
    }
}

impl std::fmt::Display for CycleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Level {
    Rigorous,
    Heuristic,
    Failed,
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `G_f = S_{n'} x C`.
    FullProduct { n_prime: usize, c_order: u64 },
    /// `f` has no `t`: `G_f = C`, cyclic.
    CyclicContent { c_order: u64 },
    /// Transitive groups of degree `n'` with exactly the observed types.
    Census { n_prime: usize, candidates: Vec<String> },
    /// `Gal(H Q / F_q(x)) = S_d x C_2` for the derivative curve.
    DerivativeGroup { d: usize },
    None,
}

impl Claim {
    pub fn to_json(&self) -> Value {
        match self {
            Claim::FullProduct { n_prime, c_order } => {
                json!({"kind": "full_product", "n_prime": n_prime, "C_order": c_order})
            }
            Claim::CyclicContent { c_order } => {
                json!({"kind": "cyclic_content", "n_prime": 0, "C_order": c_order})
            }
            Claim::Census { n_prime, candidates } => {
                json!({"kind": "census", "n_prime": n_prime, "candidates": candidates})
            }
            Claim::DerivativeGroup { d } => json!({"kind": "derivative_group", "d": d}),
            Claim::None => json!({"kind": "none"}),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    /// The prime sampled: `P(t)` for certificates of `f`, the minimal
    /// polynomial of `x0` for the derivative test.
    pub p: UPoly,
    pub ctype: CycleType,
    pub parity: u8,
    /// Order of the Frobenius component in the cyclic factor.
    pub c_order: u64,
}

impl Evidence {
    pub fn to_json(&self) -> Value {
        json!({
            "P": self.p.encode_coeffs(),
            "type": self.ctype.parts(),
            "parity": self.parity,
            "c_order": self.c_order,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub level: Level,
    pub claim: Claim,
    pub evidence: Vec<Evidence>,
    pub disc_verdict: Option<ConstSquare>,
    pub skipped_ramified: u64,
    pub notes: Vec<String>,
}

impl Certificate {
    fn new(claim: Claim) -> Certificate {
        Certificate {
            level: Level::Failed,
            claim,
            evidence: Vec::new(),
            disc_verdict: None,
            skipped_ramified: 0,
            notes: Vec::new(),
        }
    }

    /// A rigorous `S_{n'} x C` certificate with `n' >= 2`.
    pub fn certifies_symmetric(&self) -> bool {
        self.level == Level::Rigorous
            && matches!(self.claim, Claim::FullProduct { n_prime, .. } if n_prime >= 2)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "claim": self.claim.to_json(),
            "evidence": self.evidence.iter().map(Evidence::to_json).collect::<Vec<_>>(),
            "disc_verdict": self.disc_verdict.as_ref().map(|v| json!({
                "is_const_square": v.is_const_square,
                "const_is_square": v.const_is_square,
            })),
            "skipped_ramified": self.skipped_ramified,
            "notes": self.notes,
        })
    }
}

/// One Frobenius observation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobSample {
    pub ctype: CycleType,
    pub parity: u8,
    /// `|C| / gcd(deg P, |C|)` when a content order was supplied.
    pub c_component: Option<u64>,
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn sample_at(f: &BiPoly, res: &ResidueField, c_order: Option<u64>) -> Result<Option<FrobSample>> {
    let red = f.reduce_mod_prime(res);
    if red.degree() != f.deg_x() || !red.is_squarefree()? {
        return Ok(None);
    }
    let ctype = CycleType::new(degree_pattern(&red)?);
    let m = res.prime().degree().unwrap() as u64;
    Ok(Some(FrobSample {
        parity: ctype.parity(),
        ctype,
        c_component: c_order.map(|c| c / gcd_u64(m, c)),
    }))
}

/// Cycle type of Frobenius at `P` on the roots of `f`; `None` when `f mod P`
/// is not squarefree.
pub fn frobenius_cycle_type<R: Rng + ?Sized>(
    f: &BiPoly,
    p: &UPoly,
    c_order: Option<u64>,
    tower: &Tower,
    rng: &mut R,
) -> Result<Option<FrobSample>> {
    if !f.is_monic_x() {
        return Err(Error::Precondition("f must be monic in x".into()));
    }
    let res = ResidueField::new(tower, p, rng)?;
    sample_at(f, &res, c_order)
}

/// `[lo, lo + 4]` with `lo` the least degree such that `q^lo >= 4n`.
pub fn default_window(q: u32, n: usize) -> (usize, usize) {
    let mut lo = 1;
    while (q as u64).pow(lo as u32) < 4 * n as u64 {
        lo += 1;
    }
    (lo, lo + 4)
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub budget: usize,
    /// Inclusive range of prime degrees; [`default_window`] when absent.
    pub window: Option<(usize, usize)>,
}

/// Transitive groups of degree `n` whose cycle-type set equals `observed`,
/// and, separately, those whose type set contains it.
pub fn census(n: usize, observed: &BTreeSet<CycleType>) -> (Vec<String>, Vec<String>) {
    let mut exact = Vec::new();
    let mut containing = Vec::new();
    for g in transitive_groups(n) {
        let ts = g.type_set();
        if &ts == observed {
            exact.push(g.name.clone());
        }
        if observed.is_subset(&ts) {
            containing.push(g.name.clone());
        }
    }
    (exact, containing)
}

/// Tries to certify `G_f = S_{n'} x C` by sampling Frobenius at random
/// primes; falls back to a cycle-type census when `n' < 8`.
pub fn certify_full_product<R: Rng + ?Sized>(
    f: &BiPoly,
    opts: &CertifyOptions,
    tower: &Tower,
    rng: &mut R,
) -> Result<Certificate> {
    let base = f.field().clone();
    if base.p() == 2 {
        return Err(Error::Precondition("certification needs odd q".into()));
    }
    if opts.budget == 0 {
        return Err(Error::Config("prime budget must be positive".into()));
    }
    if !f.is_monic_x() {
        return Err(Error::Precondition("f must be monic in x".into()));
    }
    let disc_f = disc_x(f, tower)?;
    if disc_f.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let rep = content_report(f)?;
    let n = f.deg_x().unwrap();
    let n_prime = n - rep.k;
    let c_order = rep.c_order;

    if n_prime == 0 {
        let mut cert = Certificate::new(Claim::CyclicContent { c_order });
        cert.level = Level::Rigorous;
        cert.notes.push(format!("pure content; factor degrees {:?}", rep.factor_degrees));
        return Ok(cert);
    }
    let (_, g) = f.primitive_part_t()?;
    let disc_g = if rep.k == 0 { disc_f.clone() } else { disc_x(&g, tower)? };
    let cs_f = is_const_square(&disc_f)?;
    let cs_g = is_const_square(&disc_g)?;
    let mut cert = Certificate::new(Claim::FullProduct { n_prime, c_order });
    cert.disc_verdict = Some(cs_f.clone());
    if cs_f.is_const_square != cs_g.is_const_square {
        cert.level = Level::Inconsistent;
        cert.notes.push("disc(f) and disc(g) disagree on const*square".into());
        return Ok(cert);
    }
    if cs_f.is_const_square {
        cert.notes.push(format!(
            "disc(f) is const*square with {} constant",
            if cs_f.const_is_square { "square" } else { "nonsquare" }
        ));
    }
    if n_prime == 1 {
        cert.level = Level::Rigorous;
        cert.notes.push("g is linear in x".into());
        return Ok(cert);
    }

    let (lo, hi) = opts.window.unwrap_or_else(|| default_window(base.q(), n));
    if lo == 0 || lo > hi {
        return Err(Error::Config(format!("bad prime degree window [{lo}, {hi}]")));
    }
    let rigorous_route = n_prime >= 8;
    let (mut n_cycle, mut jordan, mut odd) = (false, None, false);
    let mut observed = BTreeSet::new();
    for _ in 0..opts.budget {
        let m = rng.gen_range(lo..=hi);
        let p = random_irreducible(&base, m, rng)?;
        let res = ResidueField::new(tower, &p, rng)?;
        let Some(s) = sample_at(&g, &res, Some(c_order))? else {
            cert.skipped_ramified += 1;
            continue;
        };
        // Stickelberger: the sign of Frobenius is the quadratic character
        // of disc(g) mod P.
        let dv = disc_g.eval_in(res.embedding(), res.tau());
        if res.field().is_square(dv)? != (s.parity == 0) {
            cert.level = Level::Inconsistent;
            cert.notes.push(format!("parity of {} at {:?} contradicts disc(g)", s.ctype, p));
            return Ok(cert);
        }
        n_cycle |= s.ctype.is_full_cycle();
        jordan = jordan.or(s.ctype.jordan_prime());
        odd |= s.parity == 1;
        observed.insert(s.ctype.clone());
        cert.evidence.push(Evidence {
            p,
            parity: s.parity,
            ctype: s.ctype,
            c_order: s.c_component.unwrap_or(1),
        });
        let disc_ok = !cs_f.is_const_square || (c_order % 2 == 1 && odd);
        if let Some(l) = jordan.filter(|_| rigorous_route && n_cycle && disc_ok) {
            cert.level = Level::Rigorous;
            cert.notes.push(format!("prime cycle of length {l}"));
            return Ok(cert);
        }
    }

    if !rigorous_route {
        let (exact, containing) = census(n_prime, &observed);
        cert.notes.push(format!("census over {} unramified primes", cert.evidence.len()));
        if exact.is_empty() {
            cert.notes.push(format!("no transitive group of degree {n_prime} has exactly the observed types"));
            cert.notes.push(format!("groups containing them: {containing:?}"));
            cert.claim = Claim::Census { n_prime, candidates: Vec::new() };
        } else {
            cert.level = Level::Heuristic;
            cert.claim = Claim::Census { n_prime, candidates: exact };
        }
        return Ok(cert);
    }
    if !n_cycle {
        cert.notes.push(format!("no {n_prime}-cycle found"));
    }
    if jordan.is_none() {
        cert.notes.push("no prime cycle in the Jordan range".into());
    }
    if cs_f.is_const_square && !(c_order % 2 == 1 && odd) {
        cert.notes.push("discriminant test failed".into());
    }
    Ok(cert)
}

/// Result of [`derivative_group_test`].
#[derive(Clone, Debug)]
pub struct DerivativeGroupResult {
    pub certificate: Certificate,
    /// `deg_t g` where `f0' = c g`.
    pub d: usize,
    pub content_degree: usize,
    /// `(deg c)^2 < n`.
    pub content_small: bool,
}

impl DerivativeGroupResult {
    /// The certificate names the full group and the content is small.
    pub fn passes(&self) -> bool {
        self.certificate.level == Level::Heuristic
            && matches!(self.certificate.claim, Claim::DerivativeGroup { .. })
            && self.content_small
    }
}

fn first_irreducible_quadratic(field: &std::sync::Arc<crate::fields::Field>) -> Result<UPoly> {
    for a in field.elements()? {
        for b in field.elements()? {
            let q = UPoly::new(field.clone(), vec![b, a, field.one()]);
            if is_irreducible(&q)? {
                return Ok(q);
            }
        }
    }
    Err(Error::Precondition("no irreducible quadratic".into()))
}

/// Samples Frobenius at points `x0` of the `x`-line on the roots of
/// `g(t, x0)` together with a fixed irreducible quadratic `Q(t)`, and asks
/// whether only `S_d x C_2` is compatible with the classes seen.
pub fn derivative_group_test<R: Rng + ?Sized>(
    f0: &BiPoly,
    budget: usize,
    tower: &Tower,
    rng: &mut R,
) -> Result<DerivativeGroupResult> {
    let fp = f0.deriv_x();
    if fp.is_zero() {
        return Err(Error::Precondition("f0' vanishes".into()));
    }
    let (c, g) = fp.primitive_part_t()?;
    let d = g.deg_t().unwrap_or(0);
    if d == 0 {
        return Err(Error::Precondition("deg_t f0' = 0".into()));
    }
    if !separable_in_t(&g, tower)? {
        return Err(Error::Precondition("g is inseparable in t".into()));
    }
    let n = f0.deg_x().unwrap_or(0);
    let content_degree = c.degree().unwrap_or(0);
    let base = tower.base().clone();
    let quad = first_irreducible_quadratic(&base)?;
    let (lo, _) = default_window(base.q(), n.max(1));
    let lo = lo.max(2);
    let hi = lo + 3;

    let table = if d <= MAX_D { Some(SmallGroupTable::get(d)?) } else { None };
    let mut cert = Certificate::new(Claim::DerivativeGroup { d });
    cert.notes.push(format!("Q = {:?}", quad));
    let mut flips: BTreeMap<usize, bool> = BTreeMap::new();
    let mut observed: BTreeSet<Class> = BTreeSet::new();
    let lcg = g.lc_t();
    for _ in 0..budget {
        let m = rng.gen_range(lo..=hi);
        let emb = tower.ext(m as u32)?;
        let tf = emb.target().clone();
        let x0 = loop {
            let x: FqElem = tf.random(rng);
            if emb.relative_degree(x) as usize == m {
                break x;
            }
        };
        if lcg.eval_in(&emb, x0).is_zero() {
            cert.skipped_ramified += 1;
            continue;
        }
        let gx = g.eval_x(&emb, x0);
        if !gx.is_squarefree()? {
            cert.skipped_ramified += 1;
            continue;
        }
        let ctype = CycleType::new(degree_pattern(&gx)?);
        let flip = match flips.get(&m) {
            Some(&f) => f,
            None => {
                let f = roots(&emb.apply_poly(&quad), rng)?.is_empty();
                flips.insert(m, f);
                f
            }
        };
        observed.insert((ctype.clone(), flip));
        cert.evidence.push(Evidence {
            p: emb.min_poly(x0)?,
            parity: ctype.parity(),
            ctype,
            c_order: if flip { 2 } else { 1 },
        });
        if table.is_some_and(|t| t.only_full(&observed)) {
            cert.level = Level::Heuristic;
            break;
        }
    }
    match table {
        None => cert.notes.push(format!("d = {d} > {MAX_D}: raw types only")),
        Some(t) if cert.level != Level::Heuristic => {
            let orders: Vec<usize> = t.compatible(&observed).iter().map(|&i| t.subgroups[i].order).collect();
            cert.notes.push(format!("compatible subgroup orders {orders:?}"));
        }
        _ => {}
    }
    Ok(DerivativeGroupResult {
        certificate: cert,
        d,
        content_degree,
        content_small: content_degree * content_degree < n,
    })
}
