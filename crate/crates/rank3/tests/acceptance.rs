//! Acceptance criteria, one printed line each.
//!
//! Run with `cargo test -p rank3 --test acceptance`.
//! The test asserts the recorded outcome of every criterion, so a criterion that
//! starts passing or failing unexpectedly breaks the build either way.

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rank3::ball::Ball;
use rank3::characters::{character_vector, character_vector_frobenius, CharacterSpec};
use rank3::golden;
use rank3::hypergeom::{pochhammer_valuation_oracle, vp_coefficient, HGParams};
use rank3::lie::{theta_count_unchecked, Family};
use rank3::monodromy::DenominatorClass;
use rank3::primes::{analytic_lower_bound, verify_windows, WindowConfig, X_PI_30};
use rank3::rat::{abs, q, qi, vp, Q};
use rank3::sieve::{classify_all, witness_beta, DEFAULT_ORDER};
use rank3::smatrix::{glueing_character, ising_s, symmetrize_spec, Symmetrized, DEFAULT_PRECISION, DEFAULT_TERMS};
use rank3::surface::am_count;
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

const FOURIER_TOLERANCE: i64 = 0;
const A_RADIUS: f64 = 0.25;
const S_TOLERANCE: f64 = 1e-20;
const GLUE_THROUGH: usize = 10;
const FIBER_MAX_M: i64 = 2000;
const BETA_SAMPLES: usize = 50;
const CARRY_INSTANCES: usize = 500;
const FROBENIUS_TERMS: usize = 50;
const ANALYTIC_MIN: f64 = 1e3;

struct Outcome {
    id: u32,
    pass: bool,
}

fn report(id: u32, name: &str, pass: bool, detail: String, t: Instant) -> Outcome {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id} {verdict}: {name}: {detail} [{:.1} s]", t.elapsed().as_secs_f64());
    Outcome { id, pass }
}

fn fourier() -> Outcome {
    let t = Instant::now();
    let rows = golden::useries();
    let mut bad = vec![];
    let mut checked = 0;
    for f in golden::fourier_rows() {
        let u = rows.iter().find(|r| r.h1 == f.h1 && r.h2 == f.h2).unwrap();
        let spec = CharacterSpec::new(f.h1.clone(), f.h2.clone()).unwrap().with_normalization(u.a1.clone(), u.a2.clone());
        let got = character_vector(&spec, f.coefficients.len()).unwrap();
        for (i, want) in f.coefficients.iter().enumerate() {
            checked += 1;
            let diff = &got.component(f.coordinate).coeffs()[i] - Q::from_integer(want.clone());
            if abs(&diff) > qi(FOURIER_TOLERANCE) {
                bad.push(format!("h2={} f{} index {i}", f.h2, f.coordinate));
            }
        }
    }
    let pass = bad.is_empty() && t.elapsed().as_secs_f64() < 10.0;
    report(1, "Fourier coefficients of the 11 U-series rows", pass, format!("{checked} printed values, mismatches {bad:?}"), t)
}

/// Also returns the unit-normalized S matrices for criterion 3.
fn recovery() -> (Outcome, Vec<(rank3::golden::USeriesRow, rank3::smatrix::SMatrix)>) {
    let t = Instant::now();
    let mut bad = vec![];
    let mut worst: f64 = 0.0;
    let mut out = vec![];
    for u in golden::useries() {
        let spec = CharacterSpec::new(u.h1.clone(), u.h2.clone()).unwrap();
        let (sym, s) = symmetrize_spec(&spec, DEFAULT_PRECISION, DEFAULT_TERMS).unwrap();
        match &sym {
            Symmetrized::Integers { radius, .. } if *radius < A_RADIUS => {
                worst = worst.max(*radius);
                if sym.integers() != Some((u.a1.clone(), u.a2.clone())) {
                    bad.push(format!("h2={}: {:?}", u.h2, sym));
                }
            }
            other => bad.push(format!("h2={}: {other:?}", u.h2)),
        }
        out.push((u, s));
    }
    let pass = bad.is_empty() && t.elapsed().as_secs_f64() < 60.0;
    let detail = format!("11 rows at {DEFAULT_PRECISION} bits, worst radius {worst:.2e} (< {A_RADIUS}), mismatches {bad:?}");
    (report(2, "A1/A2 recovery", pass, detail, t), out)
}

fn smatrix(rows: &[(rank3::golden::USeriesRow, rank3::smatrix::SMatrix)]) -> Outcome {
    let t = Instant::now();
    let target = ising_s();
    let (mut dist, mut defect, mut det): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (u, s) in rows {
        let p = s.precision;
        let a1 = Ball::from_q(&Q::from_integer(u.a1.clone()), p);
        let a2 = Ball::from_q(&Q::from_integer(u.a2.clone()), p);
        let full = s.conjugate_diagonal(&a1, &a2).unwrap();
        dist = dist.max(full.distance_to(&target));
        defect = defect.max(full.square_defect());
        let d = full.det();
        det = det.max(d.re.add(&Ball::from_int(1, p)).mag().max(d.im.mag()));
    }
    let pass = dist < S_TOLERANCE && defect < S_TOLERANCE && det < S_TOLERANCE;
    let detail = format!("max |S - S_Ising| {dist:.2e}, max |S^2 - I| {defect:.2e}, max |det S + 1| {det:.2e} (tolerance {S_TOLERANCE:e})");
    report(3, "S-matrix of the U-series", pass, detail, t)
}

fn glueing() -> Outcome {
    let t = Instant::now();
    let mut bad = vec![];
    let ks = golden::supported_k();
    for &k in &ks {
        let g = glueing_character(15 - k as i64, GLUE_THROUGH + 2).unwrap();
        if !(g.equal && g.weight_one && g.weights_sum_to_two) {
            bad.push(k);
        }
    }
    report(4, "glueing identity", bad.is_empty(), format!("k in {ks:?} through q^{GLUE_THROUGH}, failures {bad:?}"), t)
}

fn fibers() -> Outcome {
    let t = Instant::now();
    let table_m: BTreeSet<Q> = golden::den5_rows().into_iter().chain(golden::den7_rows()).map(|r| r.m).collect();
    let mut ok = true;
    let mut parts = vec![];
    for n in [16u64, 5, 7] {
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        let mut min = usize::MAX;
        let mut off_tables = 0;
        for m in 0..=FIBER_MAX_M {
            let c = am_count(&qi(m), n);
            ok &= c.within_bound;
            *hist.entry(c.count).or_default() += 1;
            min = min.min(c.count);
            if c.count > 0 && !table_m.contains(&qi(m)) {
                off_tables += 1;
            }
        }
        let mode = hist.iter().max_by_key(|(_, v)| **v).map(|(k, _)| *k).unwrap();
        if n == 16 {
            ok &= min >= 8 && mode == 8;
            parts.push(format!("N=16 min {min} mode {mode} ({} of {})", hist[&8], FIBER_MAX_M + 1));
        } else {
            ok &= mode == 0;
            parts.push(format!(
                "N={n} mode {mode} ({} of {}), {off_tables} nonzero fibers with m outside the den-5/den-7 tables",
                hist[&0],
                FIBER_MAX_M + 1
            ));
        }
    }
    ok &= t.elapsed().as_secs_f64() < 120.0;
    report(5, "fiber counts for m in [0, 2000]", ok, format!("{}; all within the linear bound", parts.join("; ")), t)
}

fn sieve() -> Outcome {
    let t = Instant::now();
    let classes = [DenominatorClass::Den5, DenominatorClass::Den7, DenominatorClass::Imprimitive];
    let out = classify_all(&classes, DEFAULT_ORDER).unwrap();
    let want = [golden::den5_rows(), golden::den7_rows(), golden::imprimitive_rows()];
    let mut parts = vec![];
    let mut ok = true;
    for (c, w) in out.iter().zip(want.iter()) {
        let got = c.survivors();
        let equal = got == *w;
        ok &= equal;
        parts.push(format!("{:?} {} rows{}", c.class, got.len(), if equal { "" } else { " (differs)" }));
    }
    ok &= t.elapsed().as_secs_f64() < 1800.0;
    report(6, "sieve reproduces the tables at depth 1000", ok, parts.join(", "), t)
}

fn betas() -> Outcome {
    let t = Instant::now();
    let sample: Vec<i64> = (25..).filter(|b| b % 3 != 0 && b % 8 != 0).take(BETA_SAMPLES).collect();
    let mut bad = vec![];
    for &b in &sample {
        let (p, k) = witness_beta(b).unwrap();
        let spec = CharacterSpec::new(q(b, 16) + qi(1), q(-1, 2)).unwrap();
        let f0 = character_vector_frobenius(&spec, k + 1).unwrap().f0;
        if k as u64 != (p - 1) / 2 || vp(&f0.coeffs()[k], p) > -1 {
            bad.push(b);
        }
    }
    let detail = format!("beta in {}..={}, failures {bad:?}", sample[0], sample[sample.len() - 1]);
    report(7, "nonintegrality witnesses on y = -3/2", bad.is_empty(), detail, t)
}

fn oracles() -> Outcome {
    let t = Instant::now();
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let primes = vec![11u64, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 97, 101];
    let strat = (
        proptest::sample::select(vec![5i64, 7, 16, 8]),
        -40i64..40,
        -40i64..40,
        0u64..300,
        proptest::sample::select(primes),
    );
    let (mut carry_ok, mut done) = (0, 0);
    while done < CARRY_INSTANCES {
        let (d, a, b, k, p) = strat.new_tree(&mut runner).unwrap().current();
        let (h1, h2) = (q(a, d), q(b, d));
        if CharacterSpec::new(h1.clone(), h2.clone()).is_err() {
            continue;
        }
        let Ok(params) = HGParams::for_f0(&h1, &h2) else { continue };
        let (Ok(x), Ok(y)) = (pochhammer_valuation_oracle(&params, k, p), vp_coefficient(&h1, &h2, k, p)) else {
            continue;
        };
        done += 1;
        carry_ok += (x == y) as usize;
    }
    let mut specs: Vec<CharacterSpec> = golden::den5_rows()
        .into_iter()
        .chain(golden::den7_rows())
        .chain(golden::imprimitive_rows())
        .map(|r| CharacterSpec::new(r.h1, r.h2).unwrap())
        .collect();
    specs.extend(golden::useries().into_iter().map(|u| CharacterSpec::new(u.h1, u.h2).unwrap().with_normalization(u.a1, u.a2)));
    let frob_ok = specs
        .iter()
        .filter(|s| character_vector(s, FROBENIUS_TERMS).unwrap() == character_vector_frobenius(s, FROBENIUS_TERMS).unwrap())
        .count();
    let theta_ok = (2..=10)
        .filter(|&l| {
            let b = theta_count_unchecked(Family::B, l).unwrap() as i64;
            let c = theta_count_unchecked(Family::C, l).unwrap() as i64;
            b - c == 2 * l as i64 - 4
        })
        .count();
    let pass = carry_ok == CARRY_INSTANCES && frob_ok == specs.len() && theta_ok == 9;
    let detail = format!(
        "carries {carry_ok}/{CARRY_INSTANCES}, Frobenius vs hypergeometric {frob_ok}/{} specs to {FROBENIUS_TERMS} terms, B/C theta counts {theta_ok}/9",
        specs.len()
    );
    report(8, "oracle equivalences", pass, detail, t)
}

fn primes() -> Outcome {
    let t = Instant::now();
    let cfg = WindowConfig::default();
    let r = verify_windows(&cfg).unwrap();
    let bound = analytic_lower_bound(X_PI_30 as f64, &cfg).unwrap();
    let within = t.elapsed().as_secs_f64() < 10.0;
    let mut detail = match &r.counterexample {
        None => format!("default range [{}, {}] passes", cfg.x_min, cfg.x_max),
        Some(c) => format!(
            "default range [{}, {}] fails: residue {} has consecutive primes {} and {}, empty window at X = {}",
            cfg.x_min,
            cfg.x_max,
            c.residue,
            c.q,
            c.next.map_or("none below the sieve limit".into(), |n| n.to_string()),
            c.x
        ),
    };
    let f = verify_windows(&WindowConfig::full()).unwrap();
    detail += &format!("; full range to {X_PI_30} {}", if f.pass { "passes" } else { "fails" });
    detail += &format!("; analytic bound at {X_PI_30} is {bound:.4e}");
    let pass = r.pass && within && f.pass && bound > ANALYTIC_MIN;
    report(9, "primes in short windows mod 30", pass, detail, t)
}

fn main() {
    let mut outcomes = vec![fourier()];
    let (rec, rows) = recovery();
    outcomes.push(rec);
    outcomes.push(smatrix(&rows));
    outcomes.push(glueing());
    outcomes.push(fibers());
    outcomes.push(sieve());
    outcomes.push(betas());
    outcomes.push(oracles());
    outcomes.push(primes());
    // criterion 9 fails on a genuine gap above the printed threshold (6991 -> 7321, residue 1)
    let expected_failures = [9u32];
    let unexpected: Vec<u32> =
        outcomes.iter().filter(|o| o.pass == expected_failures.contains(&o.id)).map(|o| o.id).collect();
    println!(
        "acceptance: {} of {} criteria pass; expected failures {expected_failures:?}",
        outcomes.iter().filter(|o| o.pass).count(),
        outcomes.len()
    );
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
