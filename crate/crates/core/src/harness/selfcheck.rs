//! The deterministic invariant suite. Each check runs a fixed number of
//! seeded cases and stops at the first failure, reporting its seed.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Command, RunOutput};
use crate::bipoly::{disc_x, is_const_square, BiPoly};
use crate::error::Result;
use crate::fields::{Embedding, Field, FqElem, Tower};
use crate::galois::{transitive_groups, CycleType, SmallGroupTable};
use crate::model::{content_law_prediction, content_report, sample_f, sample_h, slice_member, ModelParams};
use crate::oracle::{bareiss_disc_x, is_const_square_brute, sylvester_resultant};
use crate::places::{em_prime_by_ddf, em_prime_of_disc, verify_place, SieveContext};
use crate::rng::substream_seed;
use crate::unipoly::{degree_pattern, discriminant, factor, is_irreducible, resultant, UPoly};

const MASTER: u64 = 0x5e1f_c4ec;

/// Deliberate defects used to show that the suite notices them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// `Res(a, b)` is negated whenever `deg a < deg b`.
    ResultantSign,
}

#[derive(Clone, Debug, Default)]
pub struct SelfcheckOptions {
    pub mutate: Option<Mutation>,
}

type CaseResult = std::result::Result<(), String>;

struct Check {
    module: &'static str,
    invariant: &'static str,
    cases: u64,
    run: fn(&SelfcheckOptions, &mut ChaCha8Rng, u64) -> CaseResult,
}

fn res(opts: &SelfcheckOptions, a: &UPoly, b: &UPoly) -> std::result::Result<FqElem, String> {
    let r = resultant(a, b).map_err(|e| e.to_string())?;
    Ok(match opts.mutate {
        Some(Mutation::ResultantSign) if a.deg() < b.deg() => a.field().neg(r),
        _ => r,
    })
}

fn ok<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> CaseResult {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn pick(qs: &[u32], i: u64) -> Arc<Field> {
    Field::from_q(qs[i as usize % qs.len()], 0).expect("valid field size")
}

fn small_field(i: u64) -> Arc<Field> {
    pick(&[3, 5, 7, 9, 25, 27], i)
}

fn nonzero_poly(f: &Arc<Field>, deg: usize, rng: &mut ChaCha8Rng) -> UPoly {
    loop {
        let u = UPoly::random(f.clone(), deg, rng);
        if !u.is_zero() {
            return u;
        }
    }
}

fn check_slicing(_: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = small_field(i);
    let n = 2 + (i % 9) as usize;
    let model = ModelParams::new(f, 1 + (i % 3) as usize, n);
    let f0 = sample_f(&model, rng);
    let h = sample_h(&model, rng);
    let f1 = ok(slice_member(&f0, &h))?;
    ensure(f1.deriv_x() == f0.deriv_x(), || format!("slice of {f0:?} by {h:?}"))
}

fn check_disc_bareiss(_: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = pick(&[7, 11, 9], i);
    let p = f.p() as usize;
    let n = (2..=5).filter(|n| n % p != 0).nth((i / 3) as usize % 3).unwrap_or(2);
    let model = ModelParams::new(f.clone(), 1 + (i % 2) as usize, n);
    let a = sample_f(&model, rng);
    let tower = Tower::new(f, i);
    let d = ok(disc_x(&a, &tower))?;
    ensure(d == bareiss_disc_x(&a), || format!("disc of {a:?}"))
}

fn check_euclid_sylvester(opts: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = small_field(i);
    let a = nonzero_poly(&f, 1 + rng.gen_range(0..7), rng);
    let b = nonzero_poly(&f, 1 + rng.gen_range(0..7), rng);
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    let r = res(opts, &a, &b)?;
    ensure(r == sylvester_resultant(&a, da, &b, db), || format!("Res({a:?}, {b:?})"))
}

fn check_multiplicative(opts: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = small_field(i);
    let a = nonzero_poly(&f, 1 + rng.gen_range(0..5), rng);
    let b = nonzero_poly(&f, 1 + rng.gen_range(0..5), rng);
    let c = nonzero_poly(&f, 5 + rng.gen_range(0..3), rng);
    let lhs = res(opts, &(&a * &b), &c)?;
    let rhs = f.mul(res(opts, &a, &c)?, res(opts, &b, &c)?);
    ensure(lhs == rhs, || format!("Res(ab, c) with a = {a:?}, b = {b:?}, c = {c:?}"))
}

fn check_symmetry(opts: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = small_field(i);
    let a = nonzero_poly(&f, 1 + rng.gen_range(0..6), rng);
    let b = nonzero_poly(&f, 1 + rng.gen_range(0..6), rng);
    let ab = res(opts, &a, &b)?;
    let ba = res(opts, &b, &a)?;
    let sign = (a.degree().unwrap() * b.degree().unwrap()) % 2 == 1;
    let expect = if sign { f.neg(ba) } else { ba };
    ensure(ab == expect, || format!("Res({a:?}, {b:?}) vs Res(b, a)"))
}

fn check_content_disc(_: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = pick(&[5, 7], i);
    let tower = Tower::new(f.clone(), i);
    let g = sample_f(&ModelParams::new(f.clone(), 1, 2 + (i % 3) as usize), rng);
    let c = UPoly::random_monic(f.clone(), 1 + (i % 2) as usize, rng);
    let fx = &g * &BiPoly::from_x_poly(&c);
    let df = ok(disc_x(&fx, &tower))?;
    let dg = ok(disc_x(&g, &tower))?;
    if df.is_zero() || dg.is_zero() {
        return Ok(());
    }
    let (sf, sg) = (ok(is_const_square(&df))?, ok(is_const_square(&dg))?);
    ensure(sf.is_const_square == sg.is_const_square, || format!("content {c:?} times {g:?}"))
}

fn check_const_square_brute(_: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = pick(&[3, 5], i);
    let u = if i % 3 == 0 {
        let v = nonzero_poly(&f, 2, rng);
        (&v * &v).scale(f.random_nonzero(rng))
    } else {
        nonzero_poly(&f, 4, rng)
    };
    ensure(ok(is_const_square(&u))?.is_const_square == is_const_square_brute(&u), || format!("{u:?}"))
}

fn check_factor_roundtrip(_: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = small_field(i);
    let mut u = nonzero_poly(&f, 1 + rng.gen_range(0..14), rng);
    if i % 4 == 0 {
        let w = nonzero_poly(&f, 2, rng);
        u = &u * &(&w * &w);
    }
    let fac = ok(factor(&u, rng))?;
    ensure(fac.product(&f) == u, || format!("product of factors of {u:?}"))?;
    for (g, _) in &fac.factors {
        ensure(g.is_monic() && ok(is_irreducible(g))?, || format!("factor {g:?} of {u:?}"))?;
    }
    Ok(())
}

fn check_parity(_: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = small_field(i);
    let u = UPoly::random_monic(f.clone(), 2 + rng.gen_range(0..8), rng);
    if !ok(u.is_squarefree())? {
        return Ok(());
    }
    let parity = CycleType::new(ok(degree_pattern(&u))?).parity();
    let disc = ok(discriminant(&u))?;
    ensure(ok(f.is_square(disc))? == (parity == 0), || format!("sign of Frobenius on {u:?}"))
}

fn check_field_axioms(_: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = pick(&[9, 3u32.pow(11), 65521], i);
    let (a, b, c) = (f.random(rng), f.random(rng), f.random(rng));
    ensure(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)), || "distributivity".into())?;
    ensure(f.frobenius(f.add(a, b), 1) == f.add(f.frobenius(a, 1), f.frobenius(b, 1)), || "frobenius".into())?;
    if !a.is_zero() {
        ensure(f.mul(a, f.inv(a)) == f.one(), || format!("inverse of {a:?}"))?;
    }
    Ok(())
}

fn check_embedding(_: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let base = small_field(i);
    let tower = Tower::new(base.clone(), i);
    let emb: Arc<Embedding> = ok(tower.ext(2 + (i % 3) as u32))?;
    let (a, b) = (base.random(rng), base.random(rng));
    let t = emb.target();
    ensure(emb.apply(base.mul(a, b)) == t.mul(emb.apply(a), emb.apply(b)), || "embedding mul".into())?;
    ensure(emb.apply(base.add(a, b)) == t.add(emb.apply(a), emb.apply(b)), || "embedding add".into())?;
    ensure(ok(emb.descend(emb.apply(a)))? == a, || "descent".into())
}

fn check_em_routes(_: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = pick(&[3, 5], i);
    let a = nonzero_poly(&f, 2 + rng.gen_range(0..10), rng);
    let s = nonzero_poly(&f, rng.gen_range(0..3), rng);
    let disc = &a * &(&s * &s);
    let m = 1 + rng.gen_range(0..4);
    let e1 = ok(em_prime_of_disc(&disc, m, i))?.holds;
    let e2 = ok(em_prime_by_ddf(&disc, m))?;
    ensure(e1 == e2, || format!("routes disagree on {disc:?} at m = {m}"))
}

/// Every `f` with `n = 3`, `d = 1` over `F_3`, counted by content.
fn check_content_enumeration(_: &SelfcheckOptions, _: &mut ChaCha8Rng, _: u64) -> CaseResult {
    let f = ok(Field::prime(3))?;
    let lin: Vec<UPoly> = (0..9).map(|c| UPoly::from_ints(f.clone(), &[c % 3, c / 3])).collect();
    let x = UPoly::x(f.clone());
    let (mut total, mut one, mut is_x) = (0u128, 0u128, 0u128);
    for a in &lin {
        for b in &lin {
            for c in &lin {
                let p = BiPoly::new(f.clone(), vec![a.clone(), b.clone(), c.clone(), UPoly::one(f.clone())]);
                let rep = ok(content_report(&p))?;
                total += 1;
                one += rep.c.is_one() as u128;
                is_x += (rep.c == x) as u128;
            }
        }
    }
    let p1 = content_law_prediction(3, 1, 0) * total;
    let px = content_law_prediction(3, 1, 1) * total;
    ensure(p1.to_integer() == one && p1.is_integer(), || format!("P(con = 1): {one} of {total}"))?;
    ensure(px.to_integer() == is_x && px.is_integer(), || format!("P(con = x): {is_x} of {total}"))
}

fn check_group_tables(_: &SelfcheckOptions, _: &mut ChaCha8Rng, _: u64) -> CaseResult {
    let counts: Vec<usize> = (1..=7).map(|n| transitive_groups(n).len()).collect();
    ensure(counts == [1, 1, 2, 5, 5, 16, 7], || format!("transitive counts {counts:?}"))?;
    let lattice: Vec<usize> = (1..=3).map(|d| SmallGroupTable::get(d).unwrap().subgroups.len()).collect();
    ensure(lattice == [2, 5, 10], || format!("subgroup classes {lattice:?}"))
}

fn check_places(_: &SelfcheckOptions, rng: &mut ChaCha8Rng, i: u64) -> CaseResult {
    let f = ok(Field::prime(3))?;
    let tower = Arc::new(Tower::new(f.clone(), i));
    let model = ModelParams::new(f, 2, 6);
    let ctx = loop {
        if let Ok(ctx) = SieveContext::new(&sample_f(&model, rng), tower.clone()) {
            break ctx;
        }
    };
    for m in 1..=4 {
        let set = ok(ctx.places(m))?;
        for pl in &set.places {
            ok(verify_place(&ctx, pl)).map_err(|e| format!("m = {m}: {e}"))?;
        }
        let mut keys: Vec<(u32, u32)> = set.places.iter().map(|p| (p.t0.code(), p.x0.code())).collect();
        keys.dedup();
        ensure(keys.len() == set.len(), || format!("duplicate places at m = {m}"))?;
    }
    Ok(())
}

fn checks() -> Vec<Check> {
    let c = |module, invariant, cases, run| Check {
        module,
        invariant,
        cases,
        run,
    };
    vec![
        c("fields", "field axioms", 300, check_field_axioms as fn(&_, &mut _, _) -> _),
        c("fields", "embedding is a homomorphism", 120, check_embedding),
        c("unipoly", "resultant Euclid equals Sylvester determinant", 200, check_euclid_sylvester),
        c("unipoly", "resultant multiplicativity", 200, check_multiplicative),
        c("unipoly", "resultant symmetry law", 200, check_symmetry),
        c("unipoly", "factor round trip", 200, check_factor_roundtrip),
        c("unipoly", "Frobenius sign matches discriminant character", 200, check_parity),
        c("bipoly", "disc by interpolation equals Bareiss determinant", 200, check_disc_bareiss),
        c("bipoly", "const*square test equals enumeration", 200, check_const_square_brute),
        c("bipoly", "disc(f) and disc(g) agree on const*square", 200, check_content_disc),
        c("model", "derivative slicing", 200, check_slicing),
        c("model", "exact content law by enumeration", 1, check_content_enumeration),
        c("places", "enumerated places verify", 6, check_places),
        c("places", "simple-prime routes agree", 200, check_em_routes),
        c("galois", "group tables", 1, check_group_tables),
    ]
}

/// Runs every check and reports one row per invariant.
pub fn selfcheck(opts: &SelfcheckOptions) -> Result<RunOutput> {
    let mut out = RunOutput::new(Command::Selfcheck, &["module", "invariant", "cases", "status", "detail"]);
    let mut per_module: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for (ci, check) in checks().iter().enumerate() {
        let mut passed = 0;
        let mut failure = None;
        for i in 0..check.cases {
            let seed = substream_seed(MASTER, (ci as u64) << 32 | i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match (check.run)(opts, &mut rng, i) {
                Ok(()) => passed += 1,
                Err(e) => {
                    failure = Some(format!("case {i} seed {seed:#x}: {e}"));
                    break;
                }
            }
        }
        let entry = per_module.entry(check.module).or_insert((0, 0));
        entry.0 += passed;
        entry.1 += failure.is_some() as u64;
        out.accepted &= failure.is_none();
        out.row(vec![
            check.module.into(),
            check.invariant.into(),
            passed.to_string(),
            if failure.is_none() { "pass" } else { "FAIL" }.into(),
            failure.clone().unwrap_or_default(),
        ]);
        out.records.push(json!({
            "module": check.module, "invariant": check.invariant, "cases": passed, "failure": failure,
        }));
    }
    out.summary = json!({
        "modules": per_module
            .iter()
            .map(|(m, (p, f))| (m.to_string(), json!({"cases": p, "failed_checks": f})))
            .collect::<serde_json::Map<_, _>>(),
        "mutation": opts.mutate.map(|m| format!("{m:?}")),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_is_caught_by_name() {
        let out = selfcheck(&SelfcheckOptions {
            mutate: Some(Mutation::ResultantSign),
        })
        .unwrap();
        assert!(!out.accepted);
        let failed: Vec<&str> = out.rows.iter().filter(|r| r[3] == "FAIL").map(|r| r[1].as_str()).collect();
        assert!(failed.contains(&"resultant symmetry law"), "{failed:?}");
    }
}
