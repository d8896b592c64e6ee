use std::path::PathBuf;
use std::time::Instant;

use ffgalois::bipoly::BiPoly;
use ffgalois::fields::Field;
use ffgalois::harness::{run, write_outputs, ExperimentConfig, Manifest};
use ffgalois::model::{sample_f, ModelParams};
use ffgalois::oracle::is_const_square_brute;
use ffgalois::rng::{substream, substream_seed};
use ffgalois::unipoly::UPoly;
use ffgalois::Error;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn cfg(command: &str) -> ExperimentConfig {
    ExperimentConfig {
        command: command.into(),
        ..Default::default()
    }
}

#[test]
fn results_do_not_depend_on_workers() {
    let mut c = cfg("content-law");
    c.samples = 3000;
    c.workers = 1;
    let a = run(&c).unwrap();
    c.workers = 3;
    let b = run(&c).unwrap();
    assert_eq!(a.csv().unwrap(), b.csv().unwrap());
    assert_eq!(a.jsonl(), b.jsonl());

    let mut g = cfg("galois-cert");
    g.n = 10;
    g.samples = 8;
    g.controls = 6;
    g.budget = 60;
    g.workers = 1;
    let a = run(&g).unwrap();
    g.workers = 2;
    let b = run(&g).unwrap();
    assert_eq!(a.csv().unwrap(), b.csv().unwrap());
    assert_eq!(a.jsonl(), b.jsonl());
}

#[test]
fn single_sample_table_is_well_formed() {
    let mut c = cfg("content-law");
    c.samples = 1;
    let out = run(&c).unwrap();
    assert_eq!(out.rows.len(), 6);
    assert!(out.rows.iter().all(|r| r.len() == out.header.len()));
    assert_eq!(out.records.len(), 1);
    let csv = out.csv().unwrap();
    assert_eq!(csv.lines().count(), 7);
}

#[test]
fn quadratic_discriminants_match_the_closed_form() {
    // For x^2 + a1 x + a0 the discriminant is a1^2 - 4 a0.
    let mut c = cfg("disc-square-rate");
    c.q = 3;
    c.d = 1;
    c.n = 2;
    c.samples = 400;
    let out = run(&c).unwrap();
    let field = Field::prime(3).unwrap();
    let model = ModelParams::new(field.clone(), 1, 2);
    let four = field.from_int(4);
    let mut seen = 0;
    for rec in out.records.iter().filter(|r| r.get("i").is_some()) {
        let i = rec["i"].as_u64().unwrap();
        let f = sample_f(&model, &mut substream(substream_seed(c.seed, 2), i));
        let (a0, a1) = (f.row(0), f.row(1));
        let disc = &(&a1 * &a1) - &a0.scale(four);
        if disc.is_zero() {
            assert_eq!(rec["zero_disc"], true);
        } else {
            assert_eq!(rec["const_square"], is_const_square_brute(&disc), "sample {i}");
        }
        seen += 1;
    }
    assert_eq!(seen, 400);
}

#[test]
fn quadratic_rate_agrees_with_enumeration() {
    let field = Field::prime(3).unwrap();
    let lin: Vec<UPoly> = (0..9).map(|c| UPoly::from_ints(field.clone(), &[c % 3, c / 3])).collect();
    let (mut nonzero, mut square) = (0u64, 0u64);
    for a0 in &lin {
        for a1 in &lin {
            let disc = &(a1 * a1) - &a0.scale(field.from_int(4));
            if !disc.is_zero() {
                nonzero += 1;
                square += is_const_square_brute(&disc) as u64;
            }
        }
    }
    let exact = square as f64 / nonzero as f64;
    let mut c = cfg("disc-square-rate");
    c.q = 3;
    c.d = 1;
    c.n = 2;
    c.samples = 6000;
    let out = run(&c).unwrap();
    let zero: u64 = out.rows[0][2].parse().unwrap();
    let cs: u64 = out.rows[0][3].parse().unwrap();
    let trials = c.samples - zero;
    let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
    let z = (cs as f64 / trials as f64 - exact) / sigma;
    assert!(z.abs() < 4.0, "exact {exact}, z = {z}");
}

#[test]
fn identical_seeds_give_identical_tables() {
    let mut c = cfg("disc-square-rate");
    c.n_list = vec![4, 6];
    c.samples = 100;
    c.max_final_rate = 1.0;
    let a = run(&c).unwrap();
    let b = run(&c).unwrap();
    assert_eq!(a.csv().unwrap(), b.csv().unwrap());
    c.seed += 1;
    assert_ne!(a.jsonl(), run(&c).unwrap().jsonl());
}

#[test]
fn shipped_reference_files_come_from_the_search() {
    for name in ["f0_q3_d2_n8.json", "f0_q3_d2_n16.json"] {
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(data(name)).unwrap()).unwrap();
        let s = &v["search"];
        let mut c = cfg("sample-f0");
        c.q = s["q"].as_u64().unwrap() as u32;
        c.d = s["d"].as_u64().unwrap() as usize;
        c.n = s["n"].as_u64().unwrap() as usize;
        c.seed = s["seed"].as_u64().unwrap();
        c.samples = s["index"].as_u64().unwrap() + 1;
        let out = run(&c).unwrap();
        assert!(out.accepted, "{name}");
        assert_eq!(out.summary["f0"], v, "{name}");
        let f0 = BiPoly::from_json(&v).unwrap();
        assert_eq!(f0.deg_x(), Some(c.n));
    }
}

#[test]
fn places_records_cover_the_table() {
    let mut c = cfg("places-count");
    c.f0_file = Some(data("f0_q3_d2_n8.json"));
    c.m = Some(2);
    c.m_max = Some(5);
    let out = run(&c).unwrap();
    let total: usize = out.rows.iter().map(|r| r[1].parse::<usize>().unwrap()).sum();
    assert_eq!(out.records.len(), total);
    for r in &out.records {
        assert!(r["P"].as_array().unwrap().len() == r["m"].as_u64().unwrap() as usize + 1);
    }
}

#[test]
fn sieve_needs_an_f0_file() {
    let c = cfg("sieve-events");
    assert!(matches!(run(&c), Err(Error::Config(_))));
    let mut c = cfg("places-count");
    c.q = 5;
    c.f0_file = Some(data("f0_q3_d2_n8.json"));
    assert!(matches!(run(&c), Err(Error::Config(_))));
}

#[test]
fn manifest_reruns_reproduce_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = cfg("sieve-events");
    c.d = 2;
    c.samples = 200;
    c.f0_file = Some(data("f0_q3_d2_n16.json"));
    let out = run(&c).unwrap();
    let m = write_outputs(&out, &c, dir.path(), Instant::now()).unwrap();
    assert_eq!(m.outputs, vec!["sieve-events.csv", "sieve-events.jsonl"]);
    let text = std::fs::read_to_string(dir.path().join("manifest.json")).unwrap();
    let back: Manifest = serde_json::from_str(&text).unwrap();
    assert_eq!(back.config_sha256, c.digest());
    let mut again = back.config.clone();
    again.workers = 1;
    let rerun = run(&again).unwrap();
    let csv = std::fs::read_to_string(dir.path().join("sieve-events.csv")).unwrap();
    assert_eq!(rerun.csv().unwrap(), csv);
    assert_eq!(rerun.jsonl(), std::fs::read_to_string(dir.path().join("sieve-events.jsonl")).unwrap());
}
