//! Positivity regions, long coefficient scans and `p`-adic witnesses that cut
//! the candidates down to the tabulated survivors.

use crate::characters::{central_charge, effective_central_charge, CharacterSpec, IntegralScan, Recurrence};
use crate::error::{Error, Result};
use crate::hypergeom::{carry_arguments, vp_coefficient, zeroth_digit};
use crate::monodromy::{is_admissible_pair, DenominatorClass};
use crate::rat::{fmt_q, is_prime_u64, prime_factors, q, qi, vp, Q};
use crate::surface::m_of;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

pub const DEFAULT_ORDER: usize = 1000;

/// `F1(x, y)`, the `q^1` coefficient of normalized `f1`.
pub fn f1_coefficient(x: &Q, y: &Q) -> Result<Q> {
    let den = (x + qi(2)) * (y - x - qi(1));
    if den.is_zero() {
        return Err(Error::DivisionByZero("(x+2)(y-x-1) = 0"));
    }
    let num = qi(4) * (qi(2) * y - qi(4) * x - qi(3)) * (x * x - x * y + qi(8) * y * y + qi(3) * x + qi(14) * y + qi(8));
    Ok(num / den)
}

/// `F2(x, y) = F1(y, x)`.
pub fn f2_coefficient(x: &Q, y: &Q) -> Result<Q> {
    f1_coefficient(y, x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Boxed,
    HorizontalY,
    HorizontalX,
    Diagonal,
    Excluded,
}

pub fn in_box(x: &Q, y: &Q) -> bool {
    (x + qi(1)).abs() <= q(5, 2) && (y + qi(1)).abs() <= q(5, 2)
}

pub fn positivity_region(x: &Q, y: &Q) -> Region {
    if in_box(x, y) {
        Region::Boxed
    } else if (x - y).abs() <= qi(1) {
        Region::Diagonal
    } else if *y >= qi(-2) && *y <= Q::zero() {
        Region::HorizontalY
    } else if *x >= qi(-2) && *x <= Q::zero() {
        Region::HorizontalX
    } else {
        Region::Excluded
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SieveStatus {
    Survives,
    FailsPositivity { coordinate: usize, index: usize },
    FailsIntegrality { prime: u64, index: usize },
    FailsRegion,
    ExcludedReducible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Scan,
    Region,
    Witness,
    Monodromy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveVerdict {
    pub candidate: CharacterSpec,
    pub status: SieveStatus,
    pub witness: Option<(u64, usize)>,
    pub method: Method,
}

impl SieveVerdict {
    pub fn survives(&self) -> bool {
        self.status == SieveStatus::Survives
    }

    pub fn m(&self) -> Q {
        self.candidate.m()
    }

    pub fn row(&self) -> TableRow {
        TableRow::new(&self.candidate.h1, &self.candidate.h2)
    }
}

/// One row in the layout `m, h1, h2, c, c~`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TableRow {
    #[serde(serialize_with = "ser_q")]
    pub m: Q,
    #[serde(serialize_with = "ser_q")]
    pub h1: Q,
    #[serde(serialize_with = "ser_q")]
    pub h2: Q,
    #[serde(serialize_with = "ser_q")]
    pub c: Q,
    #[serde(serialize_with = "ser_q")]
    pub c_tilde: Q,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

impl TableRow {
    /// Normalizes to `h1 >= h2`.
    pub fn new(h1: &Q, h2: &Q) -> Self {
        let (h1, h2) = if h1 >= h2 { (h1.clone(), h2.clone()) } else { (h2.clone(), h1.clone()) };
        let m = m_of(&(&h1 - qi(1)), &(&h2 - qi(1))).unwrap_or_else(|_| Q::zero());
        TableRow { c: central_charge(&h1, &h2), c_tilde: effective_central_charge(&h1, &h2), m, h1, h2 }
    }

    pub fn csv(&self) -> String {
        [&self.m, &self.h1, &self.h2, &self.c, &self.c_tilde].map(fmt_q).join(",")
    }

    pub fn markdown(&self) -> String {
        format!("| {} |", [&self.m, &self.h1, &self.h2, &self.c, &self.c_tilde].map(fmt_q).join(" | "))
    }
}

pub const TABLE_HEADER: &str = "m,h1,h2,c,c_tilde";

/// Smallest prime factor of a positive integer > 1.
fn smallest_prime(d: &BigInt) -> u64 {
    let mut n = d.clone();
    let mut p = 2u64;
    loop {
        if (&n % p).is_zero() {
            return p;
        }
        if BigInt::from(p) * BigInt::from(p) > n {
            return n.to_u64().unwrap_or(0);
        }
        p += 1;
        if p > 1 << 20 {
            // large cofactor: report it only if it fits
            n /= BigInt::one();
            return n.to_u64().unwrap_or(0);
        }
    }
}

/// Scan `order` coefficients: `f0` nonnegative integers, `f1`, `f2` nonnegative.
pub fn scan_candidate(spec: &CharacterSpec, order: usize) -> Result<SieveVerdict> {
    let roots = spec.roots();
    let verdict = |status: SieveStatus, witness| SieveVerdict { candidate: spec.clone(), status, witness, method: Method::Scan };
    let r0 = Recurrence::new(&spec.mlde_a, &spec.mlde_b, &roots[0])?;
    match r0.integral_scan(order)? {
        IntegralScan::Integral => {}
        IntegralScan::NonIntegral { index, denominator, .. } => {
            let p = smallest_prime(&denominator);
            return Ok(verdict(SieveStatus::FailsIntegrality { prime: p, index }, Some((p, index))));
        }
        IntegralScan::Negative { index } => {
            return Ok(verdict(SieveStatus::FailsPositivity { coordinate: 0, index }, None));
        }
    }
    for coord in [1usize, 2] {
        let r = Recurrence::new(&spec.mlde_a, &spec.mlde_b, &roots[coord])?;
        if let Some(index) = r.first_negative(order)? {
            return Ok(verdict(SieveStatus::FailsPositivity { coordinate: coord, index }, None));
        }
    }
    Ok(verdict(SieveStatus::Survives, None))
}

/// Exact `v_p` of the `index`-th coefficient of `f0`.
pub fn f0_coefficient_valuation(h1: &Q, h2: &Q, index: usize, p: u64) -> Result<i64> {
    let spec = CharacterSpec::new(h1.clone(), h2.clone())?;
    let rec = Recurrence::new(&spec.mlde_a, &spec.mlde_b, &spec.roots()[0])?;
    let coeffs = rec.rational_coeffs(index + 1)?;
    Ok(vp(&coeffs[index], p))
}

/// A prime `p > 96` and index `k` with `v_p(B_k) < 0` for a denominator-5 point.
///
/// Looks for `p` whose zeroth digit of `-y-1` exceeds the zeroth digits of the
/// three upper carry arguments, takes `k = p - y0`, then lowers `k` to the first
/// index where `v_p(B_k) < 0` (so the pole survives into `f0`). Searches primes
/// up to `prime_cap`; `None` if none qualifies.
pub fn witness_search_den5(x: &Q, y: &Q, prime_cap: u64) -> Result<Option<(u64, usize)>> {
    let five = BigInt::from(5);
    let ok_den = |t: &Q| *t.denom() == five;
    if !ok_den(x) || !ok_den(y) {
        return Err(Error::Precondition("5x and 5y must be integers coprime to 5".into()));
    }
    if (x.numer() - y.numer()).mod_floor(&five).is_zero() {
        return Err(Error::Precondition("5x and 5y must differ mod 5".into()));
    }
    if (y + qi(1)).abs() >= qi(1) {
        return Err(Error::Precondition("|y + 1| < 1 required".into()));
    }
    let (h1, h2) = (x + qi(1), y + qi(1));
    let (up, low) = carry_arguments(&h1, &h2);
    let mut p = 97u64;
    while p <= prime_cap {
        if is_prime_u64(p) {
            let y0 = zeroth_digit(&low[1], p)?;
            let mut best = true;
            for a in &up {
                if zeroth_digit(a, p)? >= y0 {
                    best = false;
                    break;
                }
            }
            if best && y0 > 0 {
                let k = (p - y0) as usize;
                for i in 1..=k {
                    if vp_coefficient(&h1, &h2, i as u64, p)? < 0 {
                        return Ok(Some((p, i)));
                    }
                }
            }
        }
        p += 2;
    }
    Ok(None)
}

/// For `(m, x, y) = ((beta^2+45beta+512)/6, beta/16, -3/2)` outside the box:
/// the least prime `p > 3` dividing `beta + 24`, and `k = (p-1)/2`, confirmed on
/// the exact `f0` coefficient.
pub fn witness_beta(beta: i64) -> Result<(u64, usize)> {
    if beta.rem_euclid(8) == 0 || beta.rem_euclid(3) == 0 {
        return Err(Error::Precondition(format!("beta = {beta} divisible by 3 or 8")));
    }
    if (-56..=24).contains(&beta) {
        return Err(Error::Precondition(format!("beta = {beta} lies in the boxed region")));
    }
    let (h1, h2) = (q(beta, 16) + qi(1), q(-1, 2));
    for p in prime_factors((beta + 24).unsigned_abs()) {
        if p <= 3 {
            continue;
        }
        let k = ((p - 1) / 2) as usize;
        if vp_coefficient(&h1, &h2, k as u64, p)? < 0 && f0_coefficient_valuation(&h1, &h2, k, p)? <= -1 {
            return Ok((p, k));
        }
    }
    Err(Error::Mismatch(format!("no confirmed witness for beta = {beta}")))
}

/// Dense polynomial over `Q`, lowest degree first.
type Poly = Vec<Q>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) + b.get(i).cloned().unwrap_or_else(Q::zero))
        .collect();
    poly_trim(out)
}

fn poly_scale(a: &Poly, c: &Q) -> Poly {
    poly_trim(a.iter().map(|x| x * c).collect())
}

fn poly_divmod(n: &Poly, d: &Poly) -> (Poly, Poly) {
    let mut r = n.clone();
    let dd = d.len() - 1;
    let lead = d[dd].clone();
    if r.len() <= dd {
        return (vec![], r);
    }
    let mut qt = vec![Q::zero(); r.len() - dd];
    for i in (0..qt.len()).rev() {
        let c = &r[i + dd] / &lead;
        for (j, dj) in d.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
        qt[i] = c;
    }
    r.truncate(dd);
    (poly_trim(qt), poly_trim(r))
}

/// A one-parameter slice of the surface, parameterized by `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberKind {
    /// `y = value`.
    Horizontal,
    /// `x - y = value`.
    Diagonal,
}

/// `m(x) = S(x) + R(x)/V(x)` on a fiber, and the resulting bound on `|x|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberBound {
    pub kind: FiberKind,
    pub value: Q,
    pub modulus: u32,
    /// `None` when `R = 0`: `m` is a polynomial in `x` and the fiber is an infinite family.
    pub x_bound: Option<Q>,
}

/// Integrality of `m` forces `|x| <= x_bound` for `x` in `(1/modulus) Z`.
pub fn fiber_bound(kind: FiberKind, value: &Q, modulus: u32) -> FiberBound {
    let xpoly: Poly = vec![Q::zero(), Q::one()];
    let ypoly: Poly = match kind {
        FiberKind::Horizontal => vec![value.clone()],
        FiberKind::Diagonal => vec![-value.clone(), Q::one()],
    };
    let u = poly_add(&xpoly, &ypoly);
    let v = poly_mul(&xpoly, &ypoly);
    let f = poly_scale(&u, &qi(4));
    let a = poly_add(&f, &vec![qi(6)]);
    let b = poly_mul(&poly_add(&f, &vec![qi(2)]), &poly_add(&f, &vec![qi(-2)]));
    let inner = poly_add(&b, &poly_scale(&v, &qi(-62)));
    let num = poly_scale(&poly_mul(&a, &inner), &qi(-1));
    let (s, r) = poly_divmod(&num, &v);
    if r.is_empty() {
        return FiberBound { kind, value: value.clone(), modulus, x_bound: None };
    }
    let dq = Q::from_integer(BigInt::from(modulus));
    let mut bden = BigInt::one();
    let mut dk = Q::one();
    for c in &s {
        bden = bden.lcm((c / &dk).denom());
        dk *= &dq;
    }
    let d = v.len() - 1;
    let vd = v[d].abs();
    let vsum: Q = v[..d].iter().map(|c| c.abs()).sum();
    let rsum: Q = r.iter().map(|c| c.abs()).sum();
    let rtop = r.last().unwrap().abs();
    let cauchy = qi(1) + r[..r.len() - 1].iter().map(|c| c.abs() / &rtop).max().unwrap_or_else(Q::zero);
    let bound = [qi(1), qi(2) * vsum / &vd, qi(2) * Q::from_integer(bden) * rsum / &vd, cauchy]
        .into_iter()
        .max()
        .unwrap()
        + qi(1);
    FiberBound { kind, value: value.clone(), modulus, x_bound: Some(bound) }
}

/// Infinite families handled outside the finite candidate lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `y = -1/2`: `h2 = 1/2`, `m = (alpha+15)(alpha+16)/2`; realized, omitted from the tables.
    YHalf,
    /// `y = -3/2`: members outside the box fail integrality at `((p-1)/2)` for `p | beta+24`.
    YThreehalf,
    /// `x - y = 1/2`: `f0 = q^(m/24) prod (1+q^n)^m`; members outside the box are reported here.
    DiagonalHalf,
}

pub fn family_of(h1: &Q, h2: &Q) -> Option<Family> {
    let half = q(1, 2);
    if *h1 == half || *h2 == half {
        Some(Family::YHalf)
    } else if (h1 - h2).abs() == half {
        Some(Family::DiagonalHalf)
    } else if *h1 == -half.clone() || *h2 == -half {
        Some(Family::YThreehalf)
    } else {
        None
    }
}

/// A scanned candidate or a logged fiber bound.
#[derive(Clone, Debug)]
pub struct Classification {
    pub class: DenominatorClass,
    pub candidates: usize,
    pub verdicts: Vec<SieveVerdict>,
    pub fiber_bounds: Vec<FiberBound>,
    pub families: Vec<Family>,
}

impl Classification {
    pub fn survivors(&self) -> Vec<TableRow> {
        let mut rows: Vec<TableRow> = self.verdicts.iter().filter(|v| v.survives()).map(|v| v.row()).collect();
        rows.sort();
        rows
    }
}

fn canonical(h1: Q, h2: Q) -> (Q, Q) {
    if h1 >= h2 {
        (h1, h2)
    } else {
        (h2, h1)
    }
}

/// Weight pairs `(h1 >= h2)` worth scanning for one denominator class.
///
/// The boxed region `|h| <= 5/2` is filtered by admissible residue pairs; the
/// horizontal and diagonal strips by denominators only, using [`fiber_bound`]
/// to make each fiber finite. Members of [`Family::YHalf`] and the two special
/// fibers with `R = 0` are left out.
pub fn candidates(class: DenominatorClass) -> (Vec<(Q, Q)>, Vec<FiberBound>) {
    let n = class.modulus() as i64;
    let mut out: BTreeSet<(Q, Q)> = BTreeSet::new();
    let keep = |h1: &Q, h2: &Q, pairs: bool| -> bool {
        if !class.admits_denominator(h1) || !class.admits_denominator(h2) || (h1 - h2).is_integer() {
            return false;
        }
        if family_of(h1, h2) == Some(Family::YHalf) {
            return false;
        }
        if pairs && !is_admissible_pair(class, h1, h2) {
            return false;
        }
        match m_of(&(h1 - qi(1)), &(h2 - qi(1))) {
            Ok(m) => m.is_integer() && !m.is_negative(),
            Err(_) => false,
        }
    };
    let grid: Vec<Q> = (-5 * n / 2..=5 * n / 2).map(|j| q(j, n)).collect();
    for a in &grid {
        for b in &grid {
            if keep(a, b, true) {
                out.insert(canonical(a.clone(), b.clone()));
            }
        }
    }
    let mut bounds = vec![];
    let fibers = (-n + 1..n)
        .map(|j| (FiberKind::Horizontal, q(j, n) - qi(1)))
        .chain((1..n).map(|j| (FiberKind::Diagonal, q(j, n))))
        .filter(|(_, v)| !v.is_integer());
    for (kind, value) in fibers {
        let fb = fiber_bound(kind, &value, class.modulus());
        if let Some(xb) = &fb.x_bound {
            let imax = (xb * qi(n)).ceil().to_integer().to_i64().unwrap();
            for i in -imax..=imax {
                let x = q(i, n);
                let y = match kind {
                    FiberKind::Horizontal => value.clone(),
                    FiberKind::Diagonal => &x - &value,
                };
                if in_box(&x, &y) {
                    continue;
                }
                let (h1, h2) = (&x + qi(1), &y + qi(1));
                if keep(&h1, &h2, false) {
                    out.insert(canonical(h1, h2));
                }
            }
        }
        bounds.push(fb);
    }
    (out.into_iter().collect(), bounds)
}

/// Full pipeline for the given denominator classes.
pub fn classify_all(classes: &[DenominatorClass], order: usize) -> Result<Vec<Classification>> {
    classes
        .iter()
        .map(|&class| {
            let (cands, fiber_bounds) = candidates(class);
            let verdicts: Vec<SieveVerdict> = cands
                .par_iter()
                .map(|(h1, h2)| {
                    let spec = CharacterSpec::new(h1.clone(), h2.clone())?;
                    scan_candidate(&spec, order)
                })
                .collect::<Result<_>>()?;
            let families = match class {
                DenominatorClass::Imprimitive => vec![Family::YHalf, Family::YThreehalf, Family::DiagonalHalf],
                _ => vec![],
            };
            Ok(Classification { class, candidates: cands.len(), verdicts, fiber_bounds, families })
        })
        .collect()
}
