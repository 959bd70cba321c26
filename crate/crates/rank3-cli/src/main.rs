//! `rank3`: drive the classification pipeline and its individual stages.
//!
//! Exit codes: 0 when every golden comparison passes, 1 on a mismatch or a
//! failed verification, 2 on usage or input errors.

mod classify;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use config::{ConfigFile, Format, Overrides, Settings};
use output::{table_json, Output, Table};
use rank3::characters::{character_vector, character_vector_frobenius, CharacterSpec};
use rank3::golden;
use rank3::lie::{self, LeviConstraints, RankConstraint, SimpleType};
use rank3::monodromy::DenominatorClass;
use rank3::primes::{analytic_lower_bound, verify_windows, WindowConfig};
use rank3::rat::{fmt_q, parse_q, Q};
use rank3::sieve::{scan_candidate, witness_beta, SieveStatus, DEFAULT_ORDER};
use rank3::smatrix::{glueing_character, smatrix_report, Symmetrized};
use rank3::surface::{am_count, fiber_enumerate, weierstrass_report};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "rank3", version, about = "Rank-3 character vector classification pipeline")]
struct Cli {
    /// Flat `key = value` config file.
    #[arg(long, global = true, env = "RANK3_CONFIG")]
    config: Option<PathBuf>,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "md")]
    json: bool,
    /// Emit a markdown table.
    #[arg(long, global = true)]
    md: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "RANK3_THREADS")]
    threads: Option<usize>,
    /// Coefficient scan depth.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Ball precision in bits for S-matrix work.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// q-series terms used in numerical evaluation.
    #[arg(long, global = true)]
    terms: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full pipeline: sieve, trimming, U-series check, final partition.
    Classify {
        /// Denominator classes: 5, 7, 16 (default all three).
        #[arg(long, value_delimiter = ',')]
        classes: Vec<u32>,
        /// Largest s listed for the y = -1/2 family.
        #[arg(long)]
        family_max: Option<i64>,
    },
    /// Character vector coefficients.
    Expand {
        #[command(flatten)]
        weights: Weights,
        #[arg(long)]
        a1: Option<String>,
        #[arg(long)]
        a2: Option<String>,
        /// Number of coefficients per coordinate.
        #[arg(short = 'n', long, default_value_t = 10)]
        coefficients: usize,
        /// Use the Frobenius recursion instead of the hypergeometric formulas.
        #[arg(long)]
        frobenius: bool,
    },
    /// Rational points of a fiber of the elliptic surface, or point counts over a range of fibers.
    Fiber {
        /// Fiber parameter m.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "range")]
        m: Option<String>,
        /// Integer fibers `a:b` (inclusive); prints counts.
        #[arg(long)]
        range: Option<String>,
        /// Denominator bound.
        #[arg(long, default_value_t = 16)]
        n: u64,
    },
    /// Coefficient scan of one candidate, a whole denominator class, or a beta witness.
    Sieve {
        #[command(flatten)]
        weights: OptWeights,
        /// Denominator class 5, 7 or 16.
        #[arg(long)]
        class: Option<u32>,
        /// beta for the y = -3/2 family witness.
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<i64>,
    },
    /// Certified S-matrix, symmetrization and Verlinde check.
    Smatrix {
        #[command(flatten)]
        weights: OptWeights,
        /// Run every U-series row and compare A1, A2.
        #[arg(long)]
        useries: bool,
    },
    /// Glueing identity against j - 744 + 48k.
    Glue {
        /// U-series parameter p (default: every p with k = 15 - p in the supported set).
        #[arg(long)]
        p: Option<i64>,
        /// Series order (checks through q^(order-2)).
        #[arg(long = "through", default_value_t = 12)]
        through: usize,
    },
    /// Lie algebra dimensions and weight-one decompositions.
    Lie {
        #[command(subcommand)]
        command: LieCommand,
    },
    /// Primes in windows [X, rX] for every reduced residue class.
    Primes {
        #[arg(long)]
        modulus: Option<u64>,
        /// Window ratio r as n/d.
        #[arg(long)]
        ratio: Option<String>,
        #[arg(long)]
        xmin: Option<u64>,
        #[arg(long)]
        xmax: Option<u64>,
        /// Check up to the analytic threshold.
        #[arg(long, conflicts_with = "xmax")]
        full: bool,
    },
}

#[derive(Subcommand, Debug)]
enum LieCommand {
    /// Dimension, N_G and weight-2 dimensions for types up to a rank.
    Dims {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        /// Level used for the weight-2 dimension column.
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Decompositions of a given dimension into simple and abelian parts.
    Levi {
        #[arg(long)]
        target: usize,
        #[arg(long, conflicts_with = "max_rank")]
        rank: Option<usize>,
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long)]
        no_abelian: bool,
        /// Forbidden simple types, e.g. A1,B2.
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct Weights {
    #[arg(long, allow_hyphen_values = true)]
    h1: String,
    #[arg(long, allow_hyphen_values = true)]
    h2: String,
}

#[derive(Args, Debug)]
struct OptWeights {
    #[arg(long, allow_hyphen_values = true, requires = "h2")]
    h1: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "h1")]
    h2: Option<String>,
}

/// Errors and their exit codes.
enum Failure {
    Usage(String),
    Mismatch(Output, Vec<String>),
}

impl From<rank3::Error> for Failure {
    fn from(e: rank3::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run = Result<Output, Failure>;

fn parse_weight(s: &str) -> Result<Q, Failure> {
    parse_q(s).map_err(|e| Failure::Usage(format!("{s:?}: {e}")))
}

fn spec_of(h1: &str, h2: &str) -> Result<CharacterSpec, Failure> {
    Ok(CharacterSpec::new(parse_weight(h1)?, parse_weight(h2)?)?)
}

fn class_of(n: u32) -> Result<DenominatorClass, Failure> {
    DenominatorClass::from_denominator(n).ok_or_else(|| Failure::Usage(format!("unknown denominator class {n} (5, 7, 16)")))
}

fn settings(cli: &Cli) -> Result<Settings, String> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p).map_err(|e| e.to_string())?,
        None => ConfigFile::default(),
    };
    let mut o = Overrides {
        format: if cli.json {
            Some(Format::Json)
        } else if cli.md {
            Some(Format::Md)
        } else {
            None
        },
        order: cli.order,
        precision: cli.precision,
        terms: cli.terms,
        threads: cli.threads,
        ..Default::default()
    };
    match &cli.command {
        Command::Classify { family_max, .. } => o.family_max = *family_max,
        Command::Primes { modulus, ratio, xmin, xmax, .. } => {
            o.modulus = *modulus;
            o.ratio = ratio.clone();
            o.xmin = *xmin;
            o.xmax = *xmax;
        }
        _ => {}
    }
    Settings::resolve(&file, &o).map_err(|e| e.to_string())
}

fn with_mismatches(out: Output, mismatches: Vec<String>) -> Run {
    if mismatches.is_empty() {
        Ok(out)
    } else {
        Err(Failure::Mismatch(out, mismatches))
    }
}

fn cmd_classify(classes: &[u32], s: &Settings) -> Run {
    let classes: Vec<DenominatorClass> = if classes.is_empty() {
        vec![DenominatorClass::Den5, DenominatorClass::Den7, DenominatorClass::Imprimitive]
    } else {
        classes.iter().map(|&n| class_of(n)).collect::<Result<_, _>>()?
    };
    let report = classify::run(&classes, s)?;
    for n in &report.notes {
        eprintln!("note: {n}");
    }
    with_mismatches(report.output, report.mismatches)
}

fn cmd_expand(w: &Weights, a1: &Option<String>, a2: &Option<String>, n: usize, frobenius: bool) -> Run {
    let mut spec = spec_of(&w.h1, &w.h2)?;
    if a1.is_some() || a2.is_some() {
        let p = |v: &Option<String>| -> Result<num_bigint::BigInt, Failure> {
            v.as_deref().unwrap_or("1").parse().map_err(|_| Failure::Usage(format!("bad normalization {v:?}")))
        };
        spec = spec.with_normalization(p(a1)?, p(a2)?);
    }
    let cv = if frobenius { character_vector_frobenius(&spec, n)? } else { character_vector(&spec, n)? };
    let mut t = Table::new(&["coordinate", "exponent", "index", "coefficient"]);
    for i in 0..3 {
        let f = cv.component(i);
        for (k, c) in f.coeffs().iter().enumerate() {
            t.push(vec![format!("f{i}"), fmt_q(f.leading_exponent()), k.to_string(), fmt_q(c)]);
        }
    }
    Ok(Output { json: serde_json::to_value(cv.to_json()).expect("serializable"), table: t })
}

fn parse_range(r: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("range {r:?} must be a:b"));
    let (a, b) = r.split_once(':').ok_or_else(bad)?;
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn cmd_fiber(m: &Option<String>, range: &Option<String>, n: u64) -> Run {
    if n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    if let Some(r) = range {
        let (a, b) = parse_range(r)?;
        let mut t = Table::new(&["m", "n", "count", "certified_bound", "within_bound", "line_component"]);
        let mut bad = vec![];
        for mm in a..=b {
            let c = am_count(&Q::from_integer(mm.into()), n);
            if !c.within_bound {
                bad.push(format!("fiber m={mm}: count {} exceeds bound {}", c.count, c.certified_bound));
            }
            t.push(vec![
                c.m.clone(),
                n.to_string(),
                c.count.to_string(),
                c.certified_bound.clone(),
                c.within_bound.to_string(),
                c.line_component.clone().unwrap_or_default(),
            ]);
        }
        let json = table_json(&t);
        return with_mismatches(Output { table: t, json }, bad);
    }
    let m = parse_weight(m.as_deref().ok_or_else(|| Failure::Usage("give --m or --range".into()))?)?;
    let mut t = Table::new(&["m", "x", "y", "provenance", "on_surface", "on_curve"]);
    let mut bad = vec![];
    for p in fiber_enumerate(&m, n) {
        let w = weierstrass_report(&m, &p);
        if !(w.on_surface && w.on_curve) {
            bad.push(format!("point ({}, {}) fails the Weierstrass check", fmt_q(&p.x), fmt_q(&p.y)));
        }
        t.push(vec![
            fmt_q(&p.m),
            fmt_q(&p.x),
            fmt_q(&p.y),
            p.provenance.to_string(),
            w.on_surface.to_string(),
            w.on_curve.to_string(),
        ]);
    }
    let count = am_count(&m, n);
    let json = json!({"count": count, "points": table_json(&t)});
    with_mismatches(Output { table: t, json }, bad)
}

fn status_detail(st: &SieveStatus) -> (String, String) {
    match st {
        SieveStatus::Survives => ("survives".into(), String::new()),
        SieveStatus::FailsPositivity { coordinate, index } => ("fails_positivity".into(), format!("f{coordinate} index {index}")),
        SieveStatus::FailsIntegrality { prime, index } => ("fails_integrality".into(), format!("p={prime} index {index}")),
        SieveStatus::FailsRegion => ("fails_region".into(), String::new()),
        SieveStatus::ExcludedReducible => ("excluded_reducible".into(), String::new()),
    }
}

fn cmd_sieve(w: &OptWeights, class: Option<u32>, beta: Option<i64>, s: &Settings) -> Run {
    if let Some(b) = beta {
        let (p, k) = witness_beta(b)?;
        let mut t = Table::new(&["beta", "prime", "index"]);
        t.push(vec![b.to_string(), p.to_string(), k.to_string()]);
        let json = json!({"beta": b, "prime": p, "index": k});
        return Ok(Output { table: t, json });
    }
    if let Some(n) = class {
        let c = class_of(n)?;
        let out = rank3::sieve::classify_all(&[c], s.order)?;
        let rows = out[0].survivors();
        let mut t = Table::new(&["m", "h1", "h2", "c", "c_tilde"]);
        for r in &rows {
            t.push([&r.m, &r.h1, &r.h2, &r.c, &r.c_tilde].map(fmt_q).to_vec());
        }
        let mismatches = if s.order == DEFAULT_ORDER {
            classify::diff_rows(classify::class_name(c), &classify::golden_rows(c), &rows)
        } else {
            eprintln!("note: golden row comparison is pinned at order {DEFAULT_ORDER}; skipped at order {}", s.order);
            vec![]
        };
        let bounds: Vec<_> = out[0]
            .fiber_bounds
            .iter()
            .map(|b| json!({"kind": format!("{:?}", b.kind), "value": fmt_q(&b.value), "x_bound": b.x_bound.as_ref().map(fmt_q)}))
            .collect();
        let json = json!({"class": classify::class_name(c), "candidates": out[0].candidates, "rows": rows, "fiber_bounds": bounds});
        return with_mismatches(Output { table: t, json }, mismatches);
    }
    let (h1, h2) = match (&w.h1, &w.h2) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Failure::Usage("give --h1/--h2, --class or --beta".into())),
    };
    let v = scan_candidate(&spec_of(h1, h2)?, s.order)?;
    let (status, detail) = status_detail(&v.status);
    let mut t = Table::new(&["h1", "h2", "order", "status", "detail"]);
    t.push(vec![fmt_q(&v.candidate.h1), fmt_q(&v.candidate.h2), s.order.to_string(), status, detail]);
    let json = json!({"h1": fmt_q(&v.candidate.h1), "h2": fmt_q(&v.candidate.h2), "order": s.order, "status": v.status});
    Ok(Output { table: t, json })
}

fn cmd_smatrix(w: &OptWeights, useries: bool, s: &Settings) -> Run {
    let specs: Vec<(CharacterSpec, Option<(String, String)>)> = if useries {
        golden::useries()
            .into_iter()
            .map(|u| Ok((CharacterSpec::new(u.h1, u.h2)?, Some((u.a1.to_string(), u.a2.to_string())))))
            .collect::<Result<_, rank3::Error>>()?
    } else {
        match (&w.h1, &w.h2) {
            (Some(a), Some(b)) => vec![(spec_of(a, b)?, None)],
            _ => return Err(Failure::Usage("give --h1/--h2 or --useries".into())),
        }
    };
    let mut t = Table::new(&["h1", "h2", "verdict", "a1", "a2", "radius", "square_defect", "fusion"]);
    let mut reports = vec![];
    let mut mismatches = vec![];
    for (spec, want) in specs {
        let r = smatrix_report(&spec, s.precision, s.terms)?;
        let (verdict, a1, a2, radius) = match &r.symmetrized {
            Symmetrized::Integers { a1, a2, radius } => ("integers", a1.clone(), a2.clone(), format!("{radius:.3e}")),
            Symmetrized::NonInteger { a1, a2, distance } => ("non_integer", a1.clone(), a2.clone(), format!("{distance:.3e}")),
            Symmetrized::NonPositive { index } => ("non_positive", String::new(), String::new(), format!("index {index}")),
            Symmetrized::Undecided { radius } => ("undecided", String::new(), String::new(), format!("{radius:.3e}")),
        };
        if let Some((w1, w2)) = want {
            for (col, e, g) in [("a1", &w1, &a1), ("a2", &w2, &a2)] {
                if e != g {
                    mismatches.push(format!("useries: row (h1={}, h2={}) column {col}: expected {e}, got {g}", r.h1, r.h2));
                }
            }
        }
        let fusion = match &r.fusion {
            Some(f) if f.verdict => "ok".to_string(),
            Some(f) => format!("fails (max_deviation {:.3e}, {} negative)", f.max_deviation, f.negative.len()),
            None => String::new(),
        };
        t.push(vec![
            r.h1.clone(),
            r.h2.clone(),
            verdict.into(),
            a1,
            a2,
            radius,
            r.square_defect.map(|d| format!("{d:.3e}")).unwrap_or_default(),
            fusion,
        ]);
        reports.push(r);
    }
    let json = serde_json::to_value(&reports).expect("serializable");
    with_mismatches(Output { table: t, json }, mismatches)
}

fn cmd_glue(p: Option<i64>, order: usize) -> Run {
    if order < 3 {
        return Err(Failure::Usage("--through must be at least 3".into()));
    }
    let ps: Vec<i64> = match p {
        Some(p) => vec![p],
        None => golden::supported_k().into_iter().map(|k| 15 - k as i64).collect(),
    };
    let mut t = Table::new(&["p", "k", "through", "constant", "expected_constant", "equal", "weight_one", "weights_sum_to_two"]);
    let mut bad = vec![];
    for p in ps {
        let g = glueing_character(p, order)?;
        let c0 = |f: &rank3::qseries::QExpansion| f.coeffs().get(1).map(fmt_q).unwrap_or_default();
        if !(g.equal && g.weight_one && g.weights_sum_to_two) {
            bad.push(format!("glue: row p={p} (k={}): identity fails", g.k));
        }
        t.push(vec![
            p.to_string(),
            g.k.to_string(),
            format!("q^{}", order - 2),
            c0(&g.product),
            c0(&g.expected),
            g.equal.to_string(),
            g.weight_one.to_string(),
            g.weights_sum_to_two.to_string(),
        ]);
    }
    let json = table_json(&t);
    with_mismatches(Output { table: t, json }, bad)
}

fn cmd_lie(c: &LieCommand) -> Run {
    match c {
        LieCommand::Dims { max_rank, level } => {
            let mut t = Table::new(&["type", "dim", "rank", "theta_count", "dim_weight2"]);
            for ty in lie::simple_types_up_to(usize::MAX, *max_rank).into_iter().rev() {
                t.push(vec![
                    ty.to_string(),
                    ty.dim().to_string(),
                    ty.rank.to_string(),
                    lie::theta_count(ty)?.to_string(),
                    lie::dim_weight2(ty, *level)?.to_string(),
                ]);
            }
            let json = table_json(&t);
            Ok(Output { table: t, json })
        }
        LieCommand::Levi { target, rank, max_rank, no_abelian, forbid } => {
            let forbidden = forbid.iter().map(|f| f.parse::<SimpleType>()).collect::<Result<_, _>>()?;
            let rank = rank.map(RankConstraint::Exactly).or(max_rank.map(RankConstraint::AtMost));
            let cons = LeviConstraints { rank, allow_abelian: !no_abelian, forbidden, ..Default::default() };
            let found = lie::levi_search(*target, &cons)?;
            let mut t = Table::new(&["decomposition", "dim", "rank"]);
            for d in &found {
                t.push(vec![d.to_string(), d.dim().to_string(), d.rank().to_string()]);
            }
            let json = table_json(&t);
            Ok(Output { table: t, json })
        }
    }
}

fn cmd_primes(full: bool, s: &Settings) -> Run {
    let mut cfg = if full { WindowConfig::full() } else { WindowConfig::default() };
    if let Some(m) = s.modulus {
        cfg.modulus = m;
    }
    if let Some(r) = &s.ratio {
        cfg.ratio = parse_weight(r)?;
    }
    if let Some(x) = s.xmin {
        cfg.x_min = x;
    }
    if let (Some(x), false) = (s.xmax, full) {
        cfg.x_max = x;
    }
    let report = verify_windows(&cfg)?;
    let bound = if cfg.modulus == 30 { analytic_lower_bound(rank3::primes::X_PI_30 as f64, &cfg).ok() } else { None };
    let mut t = Table::new(&["residue", "first", "worst_q", "worst_next", "max_ratio", "pairs"]);
    for c in &report.classes {
        t.push(vec![
            c.residue.to_string(),
            c.first.map(|v| v.to_string()).unwrap_or_default(),
            c.worst.as_ref().map(|w| w.q.to_string()).unwrap_or_default(),
            c.worst.as_ref().map(|w| w.next.to_string()).unwrap_or_default(),
            format!("{:.9}", c.max_ratio),
            c.pairs.to_string(),
        ]);
    }
    let json = json!({"report": report, "analytic_lower_bound_at_threshold": bound});
    let bad = match &report.counterexample {
        Some(ce) => vec![format!(
            "primes: residue {} has no prime in [X, {}X] at X = {} (q = {}, next = {})",
            ce.residue,
            report.ratio,
            ce.x,
            ce.q,
            ce.next.map(|v| v.to_string()).unwrap_or_else(|| "none".into())
        )],
        None if !report.pass => vec!["primes: window check failed".into()],
        None => vec![],
    };
    with_mismatches(Output { table: t, json }, bad)
}

fn run(cli: &Cli, s: &Settings) -> Run {
    match &cli.command {
        Command::Classify { classes, .. } => cmd_classify(classes, s),
        Command::Expand { weights, a1, a2, coefficients, frobenius } => {
            cmd_expand(weights, a1, a2, *coefficients, *frobenius)
        }
        Command::Fiber { m, range, n } => cmd_fiber(m, range, *n),
        Command::Sieve { weights, class, beta } => cmd_sieve(weights, *class, *beta, s),
        Command::Smatrix { weights, useries } => cmd_smatrix(weights, *useries, s),
        Command::Glue { p, through } => cmd_glue(*p, *through),
        Command::Lie { command } => cmd_lie(command),
        Command::Primes { full, .. } => cmd_primes(*full, s),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let s = match settings(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(n) = s.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli, &s) {
        Ok(out) => {
            print!("{}", out.render(s.format));
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(out, lines)) => {
            print!("{}", out.render(s.format));
            for l in lines {
                eprintln!("mismatch: {l}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
