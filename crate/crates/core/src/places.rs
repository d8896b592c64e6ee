//! Degree-one places of `L = F_q(t, alpha)`, where `g(t, alpha) = 0`, seen
//! as Frobenius orbits of smooth affine points of the curve `g = 0`, and the
//! divisibility events of `gamma_h = f0(t, alpha) + h(alpha)^p` at them.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bipoly::{disc_x, gamma_data, norm_lk, BiPoly, GammaData};
use crate::error::{Error, Result};
use crate::fields::{Embedding, FqElem, Tower, ENUMERATION_LIMIT};
use crate::model::slice_member;
use crate::par;
use crate::rng::substream_seed;
use crate::unipoly::{distinct_degree, factor, roots, squarefree_decomposition, Factorization, UPoly};

const SHARD: u64 = 4096;

/// A place of `L` with residue degree one over both `F_q(t)` and `F_q(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub m: usize,
    /// Smallest code in the Frobenius orbit of `t0`.
    pub t0: FqElem,
    pub x0: FqElem,
    /// Minimal polynomial of `t0` over `F_q`.
    pub p: UPoly,
    /// Minimal polynomial of `x0` over `F_q`.
    pub q: UPoly,
    /// `f0(t0, x0)`, the residue of `gamma`.
    pub gamma0: FqElem,
}

impl Place {
    pub fn to_json(&self, emb: &Embedding) -> Value {
        let tf = emb.target();
        json!({
            "m": self.m,
            "t0": tf.encode(self.t0),
            "x0": tf.encode(self.x0),
            "P": self.p.encode_coeffs(),
            "Q": self.q.encode_coeffs(),
        })
    }
}

/// Why candidates were dropped during an enumeration. `t_orbits` counts the
/// primes `P` of degree `m` that were inspected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExclusionStats {
    pub t_orbits: u64,
    pub degree_drop: u64,
    pub ramified: u64,
    pub condition_b: u64,
    pub wrong_degree_roots: u64,
}

impl ExclusionStats {
    fn merge(&mut self, o: &ExclusionStats) {
        self.t_orbits += o.t_orbits;
        self.degree_drop += o.degree_drop;
        self.ramified += o.ramified;
        self.condition_b += o.condition_b;
        self.wrong_degree_roots += o.wrong_degree_roots;
    }

    pub fn to_json(&self) -> Value {
        json!({
            "t_orbits": self.t_orbits,
            "degree_drop": self.degree_drop,
            "ramified": self.ramified,
            "condition_b": self.condition_b,
            "wrong_degree_roots": self.wrong_degree_roots,
        })
    }
}

#[derive(Debug)]
pub struct PlaceSet {
    pub m: usize,
    pub emb: Arc<Embedding>,
    /// Sorted by `(t0, x0)` code.
    pub places: Vec<Place>,
    pub stats: ExclusionStats,
}

impl PlaceSet {
    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }
}

/// Immutable data for sieving one `f0`, with write-once caches of `S_m`.
pub struct SieveContext {
    pub f0: BiPoly,
    pub gamma: GammaData,
    /// Factorization of `c = con_t(f0')`.
    pub c_factors: Factorization,
    tower: Arc<Tower>,
    bad: UPoly,
    cache: Mutex<BTreeMap<usize, Arc<PlaceSet>>>,
}

impl std::fmt::Debug for SieveContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SieveContext").field("f0", &self.f0).finish_non_exhaustive()
    }
}

impl SieveContext {
    pub fn new(f0: &BiPoly, tower: Arc<Tower>) -> Result<SieveContext> {
        let gamma = gamma_data(f0, &tower)?;
        let mut rng = ChaCha8Rng::seed_from_u64(tower.seed());
        let c_factors = if gamma.c.is_constant() {
            Factorization {
                unit: gamma.c.lc(),
                factors: Vec::new(),
            }
        } else {
            factor(&gamma.c, &mut rng)?
        };
        let bad = gamma.bad();
        Ok(SieveContext {
            f0: f0.clone(),
            gamma,
            c_factors,
            tower,
            bad,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    /// `k = deg c`.
    pub fn k(&self) -> usize {
        self.gamma.c.degree().unwrap_or(0)
    }

    /// `S_m`, enumerated once and cached.
    pub fn places(&self, m: usize) -> Result<Arc<PlaceSet>> {
        if let Some(s) = self.cache.lock().expect("cache lock poisoned").get(&m) {
            return Ok(s.clone());
        }
        let set = Arc::new(enumerate_sm(self, m)?);
        let mut cache = self.cache.lock().expect("cache lock poisoned");
        Ok(cache.entry(m).or_insert(set).clone())
    }
}

/// Walks the Frobenius orbit of `y`: `Some(true)` when `y` has exact degree
/// `m` and is the smallest code of its orbit, `Some(false)` when it has
/// degree `m` but is not minimal, `None` when its degree is smaller.
fn orbit_status(emb: &Embedding, y: FqElem, m: usize) -> Option<bool> {
    let mut z = y;
    let mut minimal = true;
    for _ in 1..m {
        z = emb.frobenius(z);
        if z == y {
            return None;
        }
        if z.code() < y.code() {
            minimal = false;
        }
    }
    Some(minimal)
}

fn exact_degree(emb: &Embedding, y: FqElem, m: usize) -> bool {
    orbit_status(emb, y, m).is_some()
}

/// Enumerates `S_m`: for each prime `P` of degree `m` (one root `t0` per
/// orbit), keep `P` when `g mod P` keeps its `x`-degree, is squarefree and
/// is coprime to the bad locus, then take the roots `x0` of exact degree `m`.
pub fn enumerate_sm(ctx: &SieveContext, m: usize) -> Result<PlaceSet> {
    if m == 0 {
        return Err(Error::Precondition("place degree must be positive".into()));
    }
    let q = ctx.tower.base().q() as u64;
    let size = q
        .checked_pow(m as u32)
        .filter(|&s| s <= ENUMERATION_LIMIT)
        .ok_or(Error::EnumerationTooLarge(q.saturating_pow(m as u32), ENUMERATION_LIMIT))?;
    let emb = ctx.tower.ext(m as u32)?;
    let tf = emb.target().clone();
    let g = &ctx.gamma.g;
    let nx = g.deg_x().unwrap_or(0);
    let bad = emb.apply_poly(&ctx.bad);
    let shards = size.div_ceil(SHARD);

    let parts = par::map_indices(shards, |s| {
        let mut stats = ExclusionStats::default();
        let mut out = Vec::new();
        for code in s * SHARD..((s + 1) * SHARD).min(size) {
            let t0 = tf.from_code_unchecked(code as u32);
            if orbit_status(&emb, t0, m) != Some(true) {
                continue;
            }
            stats.t_orbits += 1;
            let gt = g.eval_t(&emb, t0);
            if gt.degree() != Some(nx) {
                stats.degree_drop += 1;
                continue;
            }
            if nx == 0 || !gt.is_squarefree()? {
                stats.ramified += 1;
                continue;
            }
            if bad.is_zero() || !gt.gcd(&bad.rem(&gt)?)?.is_one() {
                stats.condition_b += 1;
                continue;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(substream_seed(ctx.tower.seed(), code));
            let rs = roots(&gt, &mut rng)?;
            let mut p = None;
            for x0 in rs {
                if !exact_degree(&emb, x0, m) {
                    stats.wrong_degree_roots += 1;
                    continue;
                }
                if p.is_none() {
                    p = Some(emb.min_poly(t0)?);
                }
                out.push(Place {
                    m,
                    t0,
                    x0,
                    p: p.clone().unwrap(),
                    q: emb.min_poly(x0)?,
                    gamma0: ctx.f0.eval_point(&emb, t0, x0),
                });
            }
        }
        Ok::<_, Error>((out, stats))
    });

    let mut places = Vec::new();
    let mut stats = ExclusionStats::default();
    for part in parts {
        let (ps, st): (Vec<Place>, ExclusionStats) = part?;
        places.extend(ps);
        stats.merge(&st);
    }
    places.sort_by_key(|p| (p.t0.code(), p.x0.code()));
    Ok(PlaceSet {
        m,
        emb,
        places,
        stats,
    })
}

/// Rechecks a place from scratch: the curve equation, both residue degrees,
/// smoothness and the unit conditions at `x0`.
pub fn verify_place(ctx: &SieveContext, pl: &Place) -> Result<()> {
    let emb = ctx.tower.ext(pl.m as u32)?;
    let gd = &ctx.gamma;
    let fail = |what: &str| Err(Error::Precondition(format!("place check failed: {what}")));
    if !gd.g.eval_point(&emb, pl.t0, pl.x0).is_zero() {
        return fail("g(t0, x0) != 0");
    }
    if pl.p.degree() != Some(pl.m) || pl.q.degree() != Some(pl.m) {
        return fail("residue degree");
    }
    if !pl.p.eval_in(&emb, pl.t0).is_zero() || !pl.q.eval_in(&emb, pl.x0).is_zero() {
        return fail("minimal polynomials");
    }
    if !crate::unipoly::is_irreducible(&pl.p)? || !crate::unipoly::is_irreducible(&pl.q)? {
        return fail("minimal polynomial reducible");
    }
    let gx = gd.g.deriv_x().eval_point(&emb, pl.t0, pl.x0);
    let gt = gd.g.deriv_t().eval_point(&emb, pl.t0, pl.x0);
    if gx.is_zero() && gt.is_zero() {
        return fail("singular point");
    }
    for (name, u) in [("lc_t g", &gd.lcg), ("lc_T H", &gd.lch), ("D", &gd.dpoly), ("R", &gd.rpoly)] {
        if u.eval_in(&emb, pl.x0).is_zero() {
            return fail(&format!("{name} vanishes at x0"));
        }
    }
    if pl.gamma0 != ctx.f0.eval_point(&emb, pl.t0, pl.x0) {
        return fail("stored residue of gamma");
    }
    Ok(())
}

/// Whether the place divides `gamma_h`: `f0(t0, x0) + h(x0)^p = 0`.
pub fn place_divides(pl: &Place, ctx: &SieveContext, h: &UPoly) -> Result<bool> {
    if h.field().tag() != ctx.tower.base().tag() {
        return Err(Error::FieldMismatch);
    }
    let emb = ctx.tower.ext(pl.m as u32)?;
    Ok(divides_in(&emb, pl, h))
}

fn divides_in(emb: &Embedding, pl: &Place, h: &UPoly) -> bool {
    let tf = emb.target();
    let hp = tf.pow(h.eval_in(emb, pl.x0), tf.p() as u64);
    tf.add(pl.gamma0, hp).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmOutcome {
    /// Number of places of `S_m` dividing `gamma_h`.
    pub count: usize,
    /// The dividing place when `count == 1`.
    pub unique: Option<Place>,
}

impl EmOutcome {
    pub fn holds(&self) -> bool {
        self.count == 1
    }
}

pub fn event_em(ctx: &SieveContext, h: &UPoly, m: usize) -> Result<EmOutcome> {
    let set = ctx.places(m)?;
    let hits: Vec<&Place> = set.places.iter().filter(|pl| divides_in(&set.emb, pl, h)).collect();
    Ok(EmOutcome {
        count: hits.len(),
        unique: if hits.len() == 1 { Some(hits[0].clone()) } else { None },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmPrime {
    pub holds: bool,
    /// Canonically first prime of degree `m` dividing the discriminant once.
    pub witness: Option<UPoly>,
}

/// Whether `disc_x(f)` has a prime factor of degree `m` with multiplicity one.
pub fn event_em_prime(f: &BiPoly, m: usize, tower: &Tower) -> Result<EmPrime> {
    let disc = disc_x(f, tower)?;
    em_prime_of_disc(&disc, m, tower.seed())
}

pub fn em_prime_of_disc(disc: &UPoly, m: usize, seed: u64) -> Result<EmPrime> {
    if disc.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    if disc.is_constant() {
        return Ok(EmPrime {
            holds: false,
            witness: None,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let witness = factor(disc, &mut rng)?
        .factors
        .into_iter()
        .find(|(p, e)| *e == 1 && p.degree() == Some(m))
        .map(|(p, _)| p);
    Ok(EmPrime {
        holds: witness.is_some(),
        witness,
    })
}

/// Second route to `E_m'`: the multiplicity-one squarefree part, then
/// distinct-degree splitting.
pub fn em_prime_by_ddf(disc: &UPoly, m: usize) -> Result<bool> {
    if disc.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    if disc.is_constant() {
        return Ok(false);
    }
    let Some((once, _)) = squarefree_decomposition(disc)?.into_iter().find(|(_, e)| *e == 1) else {
        return Ok(false);
    };
    Ok(distinct_degree(&once)?.iter().any(|(_, i)| *i == m))
}

/// `v_P(u)` for nonzero `u`.
pub fn valuation(u: &UPoly, p: &UPoly) -> Result<usize> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut v = 0;
    let mut w = u.clone();
    loop {
        let (quo, r) = w.divmod(p)?;
        if !r.is_zero() {
            return Ok(v);
        }
        w = quo;
        v += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmCheck {
    pub em: bool,
    /// `v_P(disc) = 1` for the prime under the unique place; false without one.
    pub emprime_at_witness: bool,
    /// `m > k deg_t f0`, `P` does not divide `lc_x g`, and no other place
    /// over `P` divides `gamma_h`.
    pub hypotheses_met: bool,
    /// `m > 8 log_q n`, reported only.
    pub log_threshold_met: bool,
    pub witness: Option<Place>,
    pub disc_valuation: Option<usize>,
}

pub fn em_implies_emprime_check(ctx: &SieveContext, h: &UPoly, m: usize) -> Result<EmCheck> {
    let em = event_em(ctx, h, m)?;
    let n = ctx.f0.deg_x().unwrap_or(0) as f64;
    let q = ctx.tower.base().q() as f64;
    let log_threshold_met = m as f64 > 8.0 * n.ln() / q.ln();
    let Some(pl) = em.unique else {
        return Ok(EmCheck {
            em: false,
            emprime_at_witness: false,
            hypotheses_met: false,
            log_threshold_met,
            witness: None,
            disc_valuation: None,
        });
    };
    let emb = ctx.tower.ext(m as u32)?;
    let tf = emb.target().clone();
    let g = &ctx.gamma.g;
    let kd = ctx.k() * ctx.f0.deg_t().unwrap_or(0);
    let gs_ok = !g.lc_x().eval_in(&emb, pl.t0).is_zero();

    let f = slice_member(&ctx.f0, h)?;
    let gt = g.eval_t(&emb, pl.t0);
    let lin = UPoly::new(tf.clone(), vec![tf.neg(pl.x0), tf.one()]);
    let rest = gt.div_exact(&lin)?;
    let gamma_t = f.eval_t(&emb, pl.t0);
    let isolated = !gamma_t.is_zero() && rest.gcd(&gamma_t)?.is_one();

    let disc = disc_x(&f, &ctx.tower)?;
    let v = if disc.is_zero() { None } else { Some(valuation(&disc, &pl.p)?) };
    Ok(EmCheck {
        em: true,
        emprime_at_witness: v == Some(1),
        hypotheses_met: m > kd && gs_ok && isolated,
        log_threshold_met,
        witness: Some(pl),
        disc_valuation: v,
    })
}

/// Places of `set` at which `Q^2` divides `N_{L/K}(gamma_h) = Res_t(g, gamma_h)`.
/// `None` when `gamma_h` vanishes on the curve.
pub fn square_norm_hits(ctx: &SieveContext, h: &UPoly, set: &PlaceSet) -> Result<Option<usize>> {
    Ok(square_norm_hits_all(ctx, h, &[set])?.map(|v| v[0]))
}

/// [`square_norm_hits`] for several place sets, computing the norm once.
pub fn square_norm_hits_all(ctx: &SieveContext, h: &UPoly, sets: &[&PlaceSet]) -> Result<Option<Vec<usize>>> {
    let f = slice_member(&ctx.f0, h)?;
    let norm = match norm_lk(&ctx.gamma.g, &f, &ctx.tower) {
        Ok(n) => n.resultant,
        Err(Error::Precondition(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let dn = norm.derivative();
    Ok(Some(
        sets.iter()
            .map(|set| {
                set.places
                    .iter()
                    .filter(|pl| {
                        norm.eval_in(&set.emb, pl.x0).is_zero() && dn.eval_in(&set.emb, pl.x0).is_zero()
                    })
                    .count()
            })
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Field;
    use crate::model::{sample_f, sample_h, ModelParams};

    fn reference() -> SieveContext {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tower = Arc::new(Tower::new(f.clone(), 9));
        loop {
            let f0 = sample_f(&ModelParams::new(f.clone(), 2, 8), &mut rng);
            if let Ok(ctx) = SieveContext::new(&f0, tower.clone()) {
                if ctx.gamma.d == 2 && !ctx.gamma.rpoly.is_zero() {
                    return ctx;
                }
            }
        }
    }

    #[test]
    fn inseparable_projection_gives_no_places() {
        // g = x^3 + t: every fibre over t is a triple point.
        let f = Field::prime(3).unwrap();
        let tower = Arc::new(Tower::new(f.clone(), 1));
        let f0 = BiPoly::from_ints(f.clone(), &[&[0, 1], &[0, 1], &[], &[], &[1]]);
        let ctx = SieveContext::new(&f0, tower.clone()).unwrap();
        let emb = tower.ext(2).unwrap();
        let tf = emb.target().clone();
        let mut raw = 0;
        for t0 in tf.elements().unwrap() {
            for x0 in tf.elements().unwrap() {
                if ctx.gamma.g.eval_point(&emb, t0, x0).is_zero()
                    && exact_degree(&emb, t0, 2)
                    && exact_degree(&emb, x0, 2)
                {
                    assert_eq!(t0, tf.neg(tf.pow(x0, 3)));
                    raw += 1;
                }
            }
        }
        assert_eq!(raw, 6);
        let s2 = ctx.places(2).unwrap();
        assert!(s2.is_empty());
        assert_eq!(s2.stats.t_orbits, 3);
        assert_eq!(s2.stats.ramified, 3);
    }

    #[test]
    fn enumerated_places_pass_independent_checks() {
        let ctx = reference();
        for m in 1..=5 {
            let set = ctx.places(m).unwrap();
            for pl in &set.places {
                verify_place(&ctx, pl).unwrap();
                assert_eq!(orbit_status(&set.emb, pl.t0, m), Some(true));
            }
            let mut keys: Vec<_> = set.places.iter().map(|p| (p.t0, p.x0)).collect();
            keys.dedup();
            assert_eq!(keys.len(), set.len());
        }
        assert!(ctx.places(5).unwrap().len() > 10);
    }

    #[test]
    fn brute_force_agrees_with_enumeration() {
        let ctx = reference();
        let m = 3;
        let set = ctx.places(m).unwrap();
        let emb = &set.emb;
        let tf = emb.target().clone();
        let gd = &ctx.gamma;
        let bad = [&gd.lcg, &gd.lch, &gd.dpoly, &gd.rpoly];
        let mut want = Vec::new();
        for t0 in tf.elements().unwrap() {
            if orbit_status(emb, t0, m) != Some(true) {
                continue;
            }
            let gt = gd.g.eval_t(emb, t0);
            if gt.degree() != gd.g.deg_x() || gt.gcd(&gt.derivative()).unwrap().deg() > 0 {
                continue;
            }
            // Unit conditions at every root of g(t0, x) in a common extension.
            let ok = crate::unipoly::factor(&gt, &mut ChaCha8Rng::seed_from_u64(0))
                .unwrap()
                .factors
                .iter()
                .all(|(fac, _)| bad.iter().all(|b| emb.apply_poly(b).gcd(fac).unwrap().is_one()));
            if !ok {
                continue;
            }
            for x0 in tf.elements().unwrap() {
                if gt.eval(x0).is_zero() && exact_degree(emb, x0, m) {
                    want.push((t0, x0));
                }
            }
        }
        let got: Vec<_> = set.places.iter().map(|p| (p.t0, p.x0)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn constructed_witness_divides() {
        let ctx = reference();
        let set = ctx.places(3).unwrap();
        let pl = &set.places[0];
        let emb = &set.emb;
        let tf = emb.target().clone();
        // h of degree <= 2 with h(x0)^3 = -gamma0; 1, x0, x0^2 span F_27.
        let target = tf.pow(tf.neg(pl.gamma0), (tf.q() / 3) as u64);
        let base = ctx.tower().base().clone();
        let mut found = 0;
        for code in 0..27u32 {
            let h = UPoly::new(
                base.clone(),
                (0..3).map(|i| base.from_int(((code / 3u32.pow(i)) % 3) as i64)).collect(),
            );
            if h.eval_in(emb, pl.x0) == target {
                assert!(place_divides(pl, &ctx, &h).unwrap());
                found += 1;
            }
        }
        assert_eq!(found, 1);
        let zero = UPoly::zero(base);
        assert_eq!(place_divides(pl, &ctx, &zero).unwrap(), pl.gamma0.is_zero());
    }

    #[test]
    fn em_prime_on_planted_discriminant() {
        let f = Field::prime(3).unwrap();
        // 2 t (t^2 + 1)^2
        let t = UPoly::from_ints(f.clone(), &[0, 2]);
        let q = UPoly::from_ints(f.clone(), &[1, 0, 1]);
        let disc = &t * &(&q * &q);
        let e1 = em_prime_of_disc(&disc, 1, 0).unwrap();
        assert!(e1.holds);
        assert_eq!(e1.witness, Some(UPoly::x(f.clone())));
        assert!(!em_prime_of_disc(&disc, 2, 0).unwrap().holds);
        assert!(matches!(em_prime_of_disc(&UPoly::zero(f.clone()), 1, 0), Err(Error::ZeroDiscriminant)));
        // Scaling by a constant changes nothing.
        assert_eq!(em_prime_of_disc(&disc.scale(f.from_int(2)), 1, 0).unwrap(), e1);
    }

    #[test]
    fn em_prime_routes_agree() {
        let f = Field::prime(3).unwrap();
        let tower = Tower::new(f.clone(), 3);
        let params = ModelParams::new(f.clone(), 1, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..40 {
            let fp = sample_f(&params, &mut rng);
            let disc = disc_x(&fp, &tower).unwrap();
            if disc.is_zero() {
                continue;
            }
            for m in 1..=4 {
                assert_eq!(em_prime_of_disc(&disc, m, 1).unwrap().holds, em_prime_by_ddf(&disc, m).unwrap());
            }
        }
    }

    #[test]
    fn unique_place_divides_and_implication_holds() {
        let ctx = reference();
        let params = ModelParams::new(ctx.tower().base().clone(), 2, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut seen = 0;
        for _ in 0..300 {
            let h = sample_h(&params, &mut rng);
            for m in 3..=4 {
                let out = event_em(&ctx, &h, m).unwrap();
                if let Some(pl) = &out.unique {
                    assert!(place_divides(pl, &ctx, &h).unwrap());
                    let chk = em_implies_emprime_check(&ctx, &h, m).unwrap();
                    assert!(chk.em);
                    if chk.hypotheses_met {
                        assert!(chk.emprime_at_witness, "{chk:?}");
                        seen += 1;
                    }
                }
            }
        }
        assert!(seen > 0);
    }
}
