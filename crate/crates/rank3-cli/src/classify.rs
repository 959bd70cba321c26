//! The chained pipeline: sieve, trimming, U-series and Fourier comparison,
//! final partition.

use crate::config::Settings;
use crate::output::{table_json, Output, Table};
use rank3::characters::{character_vector, CharacterSpec};
use rank3::golden;
use rank3::monodromy::DenominatorClass;
use rank3::rat::{fmt_q, q, Q};
use rank3::sieve::{classify_all, Classification, TableRow, DEFAULT_ORDER};
use rank3::smatrix::{trim_candidate, TrimVerdict, Trimmed};
use rank3::surface::m_of;
use rank3::Result;
use serde_json::json;
use std::time::Instant;

pub struct Report {
    pub output: Output,
    /// Golden-table mismatches, one line each.
    pub mismatches: Vec<String>,
    /// Differences from the published final list; informational.
    pub notes: Vec<String>,
}

pub fn class_name(c: DenominatorClass) -> &'static str {
    match c {
        DenominatorClass::Den5 => "den5",
        DenominatorClass::Den7 => "den7",
        DenominatorClass::Imprimitive => "imprimitive",
    }
}

pub fn golden_rows(c: DenominatorClass) -> Vec<TableRow> {
    match c {
        DenominatorClass::Den5 => golden::den5_rows(),
        DenominatorClass::Den7 => golden::den7_rows(),
        DenominatorClass::Imprimitive => golden::imprimitive_rows(),
    }
}

/// `missing`/`extra` lines naming each differing row by its columns.
pub fn diff_rows(name: &str, want: &[TableRow], got: &[TableRow]) -> Vec<String> {
    let mut out = vec![];
    for r in want.iter().filter(|r| !got.contains(r)) {
        match got.iter().find(|g| g.h1 == r.h1 && g.h2 == r.h2) {
            Some(g) => {
                for (col, a, b) in [("m", &r.m, &g.m), ("c", &r.c, &g.c), ("c_tilde", &r.c_tilde, &g.c_tilde)] {
                    if a != b {
                        out.push(format!(
                            "{name}: row (h1={}, h2={}) column {col}: expected {}, got {}",
                            fmt_q(&r.h1),
                            fmt_q(&r.h2),
                            fmt_q(a),
                            fmt_q(b)
                        ));
                    }
                }
            }
            None => out.push(format!("{name}: missing row m,h1,h2,c,c_tilde = {}", r.csv())),
        }
    }
    for g in got.iter().filter(|g| !want.iter().any(|r| r.h1 == g.h1 && r.h2 == g.h2)) {
        out.push(format!("{name}: unexpected row m,h1,h2,c,c_tilde = {}", g.csv()));
    }
    out
}

pub fn reason(t: &Trimmed) -> String {
    match t {
        Trimmed::NonPositiveRatio { index } => format!("non_positive_ratio(index={index})"),
        Trimmed::NonIntegerA { a1, a2 } => format!("non_integer_a(a1={a1}; a2={a2})"),
        Trimmed::Undecided { radius } => format!("undecided(radius={radius:.3e})"),
        Trimmed::NonIntegral { coordinate, index } => format!("non_integral(f{coordinate}; index={index})"),
        Trimmed::Negative { coordinate, index } => format!("negative(f{coordinate}; index={index})"),
        Trimmed::Verlinde { max_deviation, negative } => {
            let neg: Vec<String> = negative.iter().map(|[i, j, k]| format!("N{i}{j}^{k}")).collect();
            format!("verlinde(max_deviation={max_deviation:.3e}; negative={})", neg.join(" "))
        }
        Trimmed::ZeroFirstRow => "zero_first_row".into(),
    }
}

/// Compare computed Fourier coefficients with every printed value.
pub fn fourier_mismatches() -> Result<Vec<String>> {
    let mut out = vec![];
    let rows = golden::useries();
    for f in golden::fourier_rows() {
        let u = rows.iter().find(|r| r.h1 == f.h1 && r.h2 == f.h2).expect("Fourier rows are U-series rows");
        let spec = CharacterSpec::new(f.h1.clone(), f.h2.clone())?.with_normalization(u.a1.clone(), u.a2.clone());
        let cv = character_vector(&spec, f.coefficients.len())?;
        let got = cv.component(f.coordinate).coeffs();
        for (i, want) in f.coefficients.iter().enumerate() {
            let want = Q::from_integer(want.clone());
            if got[i] != want {
                out.push(format!(
                    "fourier: row (h1={}, h2={}, f{}) column {i}: expected {}, got {}",
                    fmt_q(&f.h1),
                    fmt_q(&f.h2),
                    f.coordinate,
                    fmt_q(&want),
                    fmt_q(&got[i])
                ));
            }
        }
    }
    Ok(out)
}

fn timed<T>(stage: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let v = f();
    eprintln!("stage {stage}: {:.2} s", t.elapsed().as_secs_f64());
    v
}

const PARTITION_HEADER: &[&str] = &["group", "tag", "class", "m", "h1", "h2", "c", "c_tilde", "a1", "a2", "reason"];

fn group_of(v: &TrimVerdict, h1: &Q, h2: &Q) -> &'static str {
    if !v.survives() {
        "eliminated"
    } else if *h1 == q(-2, 7) && *h2 == q(-3, 7) {
        "vir_c27"
    } else if *h1 == q(3, 5) && *h2 == q(2, 5) {
        "a41"
    } else if golden::useries().iter().any(|u| (u.h1 == *h1 && u.h2 == *h2) || (u.h1 == *h2 && u.h2 == *h1)) {
        "useries"
    } else {
        "additional"
    }
}

pub fn run(classes: &[DenominatorClass], s: &Settings) -> Result<Report> {
    let mut mismatches = vec![];
    let mut notes = vec![];
    let classified: Vec<Classification> = timed("sieve", || classify_all(classes, s.order))?;

    let mut sieve_json = vec![];
    for c in &classified {
        let got = c.survivors();
        if s.order == DEFAULT_ORDER {
            mismatches.extend(diff_rows(class_name(c.class), &golden_rows(c.class), &got));
        }
        sieve_json.push(json!({
            "class": class_name(c.class),
            "candidates": c.candidates,
            "survivors": got.len(),
            "eliminated": c.verdicts.iter().filter(|v| !v.survives()).map(|v| json!({
                "h1": fmt_q(&v.candidate.h1),
                "h2": fmt_q(&v.candidate.h2),
                "status": serde_json::to_value(&v.status).expect("serializable"),
            })).collect::<Vec<_>>(),
            "rows": got,
        }));
    }
    if s.order != DEFAULT_ORDER {
        eprintln!("note: golden row comparison is pinned at order {DEFAULT_ORDER}; skipped at order {}", s.order);
    }

    let mut table = Table::new(PARTITION_HEADER);
    let mut trims = vec![];
    timed("trim", || -> Result<()> {
        for c in &classified {
            for row in c.survivors() {
                let spec = CharacterSpec::new(row.h1.clone(), row.h2.clone())?;
                let v = trim_candidate(&spec, s.precision, s.terms, s.order)?;
                let group = group_of(&v, &row.h1, &row.h2);
                table.push(vec![
                    group.into(),
                    String::new(),
                    class_name(c.class).into(),
                    fmt_q(&row.m),
                    fmt_q(&row.h1),
                    fmt_q(&row.h2),
                    fmt_q(&row.c),
                    fmt_q(&row.c_tilde),
                    v.a1.clone().unwrap_or_default(),
                    v.a2.clone().unwrap_or_default(),
                    v.eliminated.as_ref().map(reason).unwrap_or_default(),
                ]);
                trims.push(v);
            }
        }
        Ok(())
    })?;

    // U-series: every published row must survive with its published A1, A2.
    if classes.contains(&DenominatorClass::Imprimitive) {
        for u in golden::useries() {
            // rows are stored with h1 >= h2; a swapped row carries swapped A's
            let (h1, h2) = (fmt_q(&u.h1), fmt_q(&u.h2));
            let found = trims.iter().find_map(|v| {
                if v.h1 == h1 && v.h2 == h2 {
                    Some((v, v.a1.clone(), v.a2.clone()))
                } else if v.h1 == h2 && v.h2 == h1 {
                    Some((v, v.a2.clone(), v.a1.clone()))
                } else {
                    None
                }
            });
            let name = format!("useries: row (h1={h1}, h2={h2})");
            match found {
                None => mismatches.push(format!("{name}: missing")),
                Some((v, _, _)) if !v.survives() => {
                    mismatches.push(format!("{name}: eliminated by {}", reason(v.eliminated.as_ref().unwrap())))
                }
                Some((_, a1, a2)) => {
                    let m = m_of(&(&u.h1 - Q::from_integer(1.into())), &(&u.h2 - Q::from_integer(1.into())))?;
                    for (col, want, got) in [
                        ("m", u.m.to_string(), fmt_q(&m)),
                        ("a1", u.a1.to_string(), a1.unwrap_or_default()),
                        ("a2", u.a2.to_string(), a2.unwrap_or_default()),
                    ] {
                        if want != got {
                            mismatches.push(format!("{name} column {col}: expected {want}, got {got}"));
                        }
                    }
                }
            }
        }
        mismatches.extend(timed("fourier", fourier_mismatches)?);
    }

    // The y = -1/2 family: h1 = s/16, h2 = 1/2, m = s(s-1)/2.
    if classes.contains(&DenominatorClass::Imprimitive) {
        for s_param in (1..=s.family_max).filter(|t| t % 8 != 0) {
            let row = TableRow::new(&q(s_param, 16), &q(1, 2));
            table.push(vec![
                "y_half".into(),
                format!("s={s_param}"),
                "imprimitive".into(),
                fmt_q(&row.m),
                fmt_q(&q(s_param, 16)),
                fmt_q(&q(1, 2)),
                fmt_q(&row.c),
                fmt_q(&row.c_tilde),
                String::new(),
                String::new(),
                String::new(),
            ]);
        }
    }

    // Published examples: survivors, or members of the y = -1/2 family.
    let mut known = vec![];
    for k in golden::known_examples() {
        let present = table.rows.iter().any(|r| {
            r[0] != "eliminated"
                && ((r[4] == k.h1 && r[5] == k.h2) || (r[4] == k.h2 && r[5] == k.h1))
                && r[6] == k.c
        });
        let classes_cover = if k.h1 == "1/2" || k.h2 == "1/2" {
            classes.contains(&DenominatorClass::Imprimitive)
        } else {
            let h = [rank3::rat::parse_q(&k.h1)?, rank3::rat::parse_q(&k.h2)?];
            classes.iter().any(|c| h.iter().all(|x| c.admits_denominator(x)))
        };
        if classes_cover && !present {
            mismatches.push(format!("known: row {} (c={}, h1={}, h2={}): not among survivors", k.voa, k.c, k.h1, k.h2));
        }
        known.push(json!({"voa": k.voa, "c": k.c, "h1": k.h1, "h2": k.h2, "present": present}));
    }

    // The published final list: y = -1/2 family, Vir(c_{2,7}), A_{4,1}, the U-series.
    let groups: Vec<(&str, &str)> = table.rows.iter().map(|r| (r[0].as_str(), r[4].as_str())).collect();
    if classes.contains(&DenominatorClass::Den5) && !groups.iter().any(|(g, _)| *g == "a41") {
        notes.push("A_{4,1} datum (24, 3/5, 2/5) does not survive trimming".into());
    }
    if classes.contains(&DenominatorClass::Den7) && !groups.iter().any(|(g, _)| *g == "vir_c27") {
        notes.push("Vir(c_{2,7}) datum does not survive trimming".into());
    }
    for r in table.rows.iter().filter(|r| r[0] == "additional") {
        notes.push(format!("additional survivor m={}, h1={}, h2={}, A=({}, {})", r[3], r[4], r[5], r[8], r[9]));
    }

    let json = json!({
        "order": s.order,
        "precision": s.precision,
        "terms": s.terms,
        "sieve": sieve_json,
        "trim": trims,
        "partition": table_json(&table),
        "known_examples": known,
        "golden": {"pass": mismatches.is_empty(), "mismatches": mismatches},
        "notes": notes,
    });
    Ok(Report { output: Output { table, json }, mismatches, notes })
}
