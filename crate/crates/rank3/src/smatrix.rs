//! Numerical `rho(S)` from q-series evaluation at points near `i`, recovery of
//! `A1, A2` by symmetrization, the Verlinde check, and the exact glueing
//! identity between the U-series and the `V^(k)` characters.

use crate::ball::{pi, Ball, CBall};
use crate::characters::{character_vector_frobenius, CharacterSpec};
use crate::error::{Error, Result};
use crate::golden;
use crate::qseries::{j_unit, QExpansion};
use crate::rat::{fmt_q, q, qi, to_f64, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub const DEFAULT_PRECISION: u32 = 256;
pub const DEFAULT_TERMS: usize = 120;
/// Largest certified radius for which rounding `A_i` to an integer is decisive.
pub const ROUNDING_RADIUS: f64 = 0.25;
/// A decisively rounded `A_i` must also be this close to its integer.
pub const INTEGER_TOLERANCE: f64 = 1e-20;
pub const VERLINDE_TOLERANCE: f64 = 1e-6;
const MAX_PRECISION: u32 = 2048;

/// A point of the upper half plane given by rational coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Tau {
    pub re: Q,
    pub im: Q,
}

impl Tau {
    pub fn new(re: Q, im: Q) -> Self {
        Tau { re, im }
    }

    pub fn i() -> Self {
        Tau { re: Q::zero(), im: Q::one() }
    }

    pub fn to_ball(&self, prec: u32) -> CBall {
        CBall::new(Ball::from_q(&self.re, prec), Ball::from_q(&self.im, prec))
    }
}

/// `tau_j = i + j (0.05 + 0.03 i)`; `round` shifts `j` for resampling.
pub fn sample_points(round: usize) -> [Tau; 3] {
    std::array::from_fn(|t| {
        let j = (3 * round + t + 1) as i64;
        Tau::new(q(j, 20), qi(1) + q(3 * j, 100))
    })
}

/// Exact coefficients of one character vector, converted once per precision.
pub struct Evaluator {
    prec: u32,
    exponents: [Q; 3],
    coeffs: [Vec<Ball>; 3],
    /// `|a_{N-1}|` and the largest ratio over the last stored coefficients.
    tail: [(f64, f64); 3],
    pi: Ball,
}

fn tail_data(c: &[Q]) -> (f64, f64) {
    let n = c.len();
    let last = to_f64(&c[n - 1]).abs();
    let mut rho: f64 = 0.0;
    for w in c[n.saturating_sub(11)..].windows(2) {
        let (a, b) = (to_f64(&w[0]).abs(), to_f64(&w[1]).abs());
        if a > 0.0 {
            rho = rho.max(b / a);
        } else if b > 0.0 {
            rho = f64::INFINITY;
        }
    }
    (last, rho.max(1.0))
}

impl Evaluator {
    pub fn new(spec: &CharacterSpec, prec: u32, terms: usize) -> Result<Self> {
        if terms < 12 {
            return Err(Error::OrderTooSmall(12));
        }
        let v = character_vector_frobenius(spec, terms)?;
        Ok(Self::from_series([&v.f0, &v.f1, &v.f2], prec))
    }

    pub fn from_series(series: [&QExpansion; 3], prec: u32) -> Self {
        let exponents = series.map(|s| s.leading_exponent().clone());
        let coeffs = series.map(|s| s.coeffs().iter().map(|c| Ball::from_q(c, prec)).collect());
        let tail = series.map(|s| tail_data(s.coeffs()));
        Evaluator { prec, exponents, coeffs, tail, pi: pi(prec) }
    }

    /// `exp(2 pi i r tau)`.
    fn q_power(&self, r: &Q, tau: &CBall) -> CBall {
        let two_pi_r = self.pi.mul(&Ball::from_q(&(qi(2) * r), self.prec));
        let z = CBall::new(tau.im.mul(&two_pi_r).neg(), tau.re.mul(&two_pi_r));
        z.exp()
    }

    /// `F(tau)` with the truncation tail folded into the radius.
    pub fn eval(&self, tau: &CBall) -> Result<[CBall; 3]> {
        if tau.im.mig() <= 0.5 {
            return Err(Error::Precondition("Im(tau) must exceed 1/2".into()));
        }
        let qq = self.q_power(&Q::one(), tau);
        let qa = qq.mag();
        let limit = 2f64.powi(-(self.prec as i32) / 2);
        let mut out: Vec<CBall> = Vec::with_capacity(3);
        for i in 0..3 {
            let c = &self.coeffs[i];
            let mut s = CBall::real(c[c.len() - 1].clone());
            for a in c[..c.len() - 1].iter().rev() {
                s = s.mul(&qq);
                s = CBall::new(s.re.add(a), s.im);
            }
            let (last, rho) = self.tail[i];
            let x = rho * qa;
            if x >= 1.0 {
                return Err(Error::Tolerance(format!("series {i} does not converge at this tau")));
            }
            let tail = last * qa.powi(c.len() as i32 - 1) * x / (1.0 - x);
            let lead = self.q_power(&self.exponents[i], tau);
            let tail = tail * lead.mag();
            if tail > limit * (1.0 + lead.mag()) {
                return Err(Error::Tolerance(format!("tail bound {tail:.3e} for series {i}; raise terms")));
            }
            out.push(lead.mul(&s).add_error(tail));
        }
        Ok([out[0].clone(), out[1].clone(), out[2].clone()])
    }

    /// The `T` eigenvalues `exp(2 pi i r_j)`.
    pub fn t_phases(&self) -> [CBall; 3] {
        let one = CBall::real(Ball::from_int(1, self.prec));
        std::array::from_fn(|j| self.q_power(&self.exponents[j], &one))
    }
}

/// `F(tau)` for `spec` with its normalization (unknown `A_i` read as 1).
pub fn eval_character(spec: &CharacterSpec, tau: &Tau, prec: u32, terms: usize) -> Result<[CBall; 3]> {
    Evaluator::new(spec, prec, terms)?.eval(&tau.to_ball(prec))
}

pub type Mat3 = [[CBall; 3]; 3];

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = a[i][0].mul(&b[0][j]);
            for k in 1..3 {
                s = s.add(&a[i][k].mul(&b[k][j]));
            }
            s
        })
    })
}

fn det3(a: &Mat3) -> CBall {
    let m = |i: usize, j: usize, k: usize, l: usize| a[i][k].mul(&a[j][l]).sub(&a[i][l].mul(&a[j][k]));
    a[0][0].mul(&m(1, 2, 1, 2)).sub(&a[0][1].mul(&m(1, 2, 0, 2))).add(&a[0][2].mul(&m(1, 2, 0, 1)))
}

fn inverse3(a: &Mat3) -> Option<Mat3> {
    let d = det3(a);
    let cof = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let v = a[r[0]][c[0]].mul(&a[r[1]][c[1]]).sub(&a[r[0]][c[1]].mul(&a[r[1]][c[0]]));
        if (i + j).is_multiple_of(2) {
            v
        } else {
            v.neg()
        }
    };
    let mut out: Vec<[CBall; 3]> = vec![];
    for i in 0..3 {
        let mut row: Vec<CBall> = vec![];
        for j in 0..3 {
            row.push(cof(j, i).div(&d)?);
        }
        out.push([row[0].clone(), row[1].clone(), row[2].clone()]);
    }
    Some([out[0].clone(), out[1].clone(), out[2].clone()])
}

fn inf_norm(a: &Mat3) -> f64 {
    a.iter().map(|r| r.iter().map(|z| z.mag()).sum::<f64>()).fold(0.0, f64::max)
}

/// A numerical `rho(S)` in the basis `(f0, f1, f2)`.
#[derive(Clone, Debug)]
pub struct SMatrix {
    pub entries: Mat3,
    pub condition: f64,
    pub precision: u32,
}

impl SMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &CBall {
        &self.entries[i][j]
    }

    pub fn square(&self) -> Mat3 {
        mat_mul(&self.entries, &self.entries)
    }

    pub fn det(&self) -> CBall {
        det3(&self.entries)
    }

    /// Largest certified distance of `S^2` from the identity.
    pub fn square_defect(&self) -> f64 {
        let s2 = self.square();
        let mut worst: f64 = 0.0;
        for (i, row) in s2.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let want = CBall::real(Ball::from_int((i == j) as i64, self.precision));
                worst = worst.max(z.sub(&want).mag());
            }
        }
        worst
    }

    pub fn max_radius(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.rad()).fold(0.0, f64::max)
    }

    /// `diag(1, A1, A2) S diag(1, A1, A2)^-1`.
    pub fn conjugate_diagonal(&self, a1: &Ball, a2: &Ball) -> Result<SMatrix> {
        let one = Ball::from_int(1, self.precision);
        let d = [one, a1.clone(), a2.clone()];
        let mut e = self.entries.clone();
        for i in 0..3 {
            for j in 0..3 {
                let z = self.entries[i][j].scale(&d[i]);
                let w = CBall::real(d[j].clone());
                e[i][j] = z.div(&w).ok_or(Error::DivisionByZero("diagonal scaling"))?;
            }
        }
        Ok(SMatrix { entries: e, condition: self.condition, precision: self.precision })
    }

    /// Largest certified distance from a real matrix with entries `a + b sqrt 2`.
    pub fn distance_to(&self, target: &[[(Q, Q); 3]; 3]) -> f64 {
        let sqrt2 = Ball::from_int(2, self.precision).sqrt().expect("2 > 0");
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let (a, b) = &target[i][j];
                let t = Ball::from_q(a, self.precision).add(&Ball::from_q(b, self.precision).mul(&sqrt2));
                worst = worst.max(self.entries[i][j].sub(&CBall::real(t)).mag());
            }
        }
        worst
    }

    pub fn to_strings(&self, digits: usize) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|z| format!("{} +/- {:.3e}", z.to_string_digits(digits), z.rad())).collect())
            .collect()
    }
}

/// The Ising `S`: `(1/2) [[1, 1, r], [1, 1, -r], [r, -r, 0]]` with `r = sqrt 2`, as `a + b sqrt 2`.
pub fn ising_s() -> [[(Q, Q); 3]; 3] {
    let h = q(1, 2);
    let z = Q::zero();
    [
        [(h.clone(), z.clone()), (h.clone(), z.clone()), (z.clone(), h.clone())],
        [(h.clone(), z.clone()), (h.clone(), z.clone()), (z.clone(), -h.clone())],
        [(z.clone(), h.clone()), (z.clone(), -h.clone()), (z.clone(), z.clone())],
    ]
}

/// Solve `F(-1/tau_j) = M F(tau_j)` for the three sample points.
pub fn extract_s_with(ev: &Evaluator, round: usize) -> Result<SMatrix> {
    let prec = ev.prec;
    let pts = sample_points(round);
    let mut a: Vec<[CBall; 3]> = vec![];
    let mut b: Vec<[CBall; 3]> = vec![];
    let minus_one = CBall::real(Ball::from_int(-1, prec));
    for t in &pts {
        let tau = t.to_ball(prec);
        let inv = minus_one.div(&tau).ok_or(Error::DivisionByZero("tau"))?;
        a.push(ev.eval(&tau)?);
        b.push(ev.eval(&inv)?);
    }
    // columns are sample points
    let am: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()));
    let bm: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| b[j][i].clone()));
    let inv = inverse3(&am).ok_or_else(|| Error::Tolerance("ill-conditioned sample".into()))?;
    let condition = inf_norm(&am) * inf_norm(&inv);
    Ok(SMatrix { entries: mat_mul(&bm, &inv), condition, precision: prec })
}

/// `rho(S)` for `spec` with `A1 = A2 = 1`; resamples if the system is singular at this precision.
pub fn extract_s(spec: &CharacterSpec, prec: u32, terms: usize) -> Result<SMatrix> {
    let unit = CharacterSpec { a1: None, a2: None, ..spec.clone() };
    let ev = Evaluator::new(&unit, prec, terms)?;
    let mut last = Error::Tolerance("no sample".into());
    for round in 0..4 {
        match extract_s_with(&ev, round) {
            Ok(s) => return Ok(s),
            Err(e @ Error::Tolerance(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Symmetrized {
    /// Both `A_i` are certified positive integers.
    Integers { a1: String, a2: String, radius: f64 },
    /// Decisive rounding, but at least one `A_i` is not an integer.
    NonInteger { a1: String, a2: String, distance: f64 },
    /// `S_0i / S_i0` is not a positive real.
    NonPositive { index: usize },
    /// The radius is too large to decide; retry at higher precision.
    Undecided { radius: f64 },
}

impl Symmetrized {
    pub fn integers(&self) -> Option<(BigInt, BigInt)> {
        match self {
            Symmetrized::Integers { a1, a2, .. } => Some((a1.parse().ok()?, a2.parse().ok()?)),
            _ => None,
        }
    }
}

/// The `A_i` balls making `diag(1, A1, A2) S diag(1, A1, A2)^-1` symmetric.
pub fn symmetrizing_scalars(s: &SMatrix) -> std::result::Result<[Ball; 2], usize> {
    let mut out: Vec<Ball> = vec![];
    for i in 1..3 {
        let r = s.entries[0][i].div(&s.entries[i][0]).ok_or(i)?;
        if r.im.mag() > r.re.mag() * 1e-12 + r.im.rad() * 2.0 || !r.re.is_positive() {
            return Err(i);
        }
        out.push(r.re.sqrt().ok_or(i)?);
    }
    Ok([out[0].clone(), out[1].clone()])
}

pub fn symmetrize(s: &SMatrix) -> Symmetrized {
    let a = match symmetrizing_scalars(s) {
        Ok(a) => a,
        Err(index) => return Symmetrized::NonPositive { index },
    };
    let radius = a[0].rad().max(a[1].rad());
    if radius >= ROUNDING_RADIUS {
        return Symmetrized::Undecided { radius };
    }
    let (n1, d1) = a[0].nearest_integer();
    let (n2, d2) = a[1].nearest_integer();
    let distance = (d1 - a[0].rad()).max(d2 - a[1].rad()).max(0.0);
    if distance <= INTEGER_TOLERANCE && n1.is_positive() && n2.is_positive() {
        Symmetrized::Integers { a1: n1.to_string(), a2: n2.to_string(), radius }
    } else {
        Symmetrized::NonInteger { a1: a[0].to_decimal(12), a2: a[1].to_decimal(12), distance }
    }
}

/// Extract and symmetrize, doubling precision and terms while undecided.
pub fn symmetrize_spec(spec: &CharacterSpec, prec: u32, terms: usize) -> Result<(Symmetrized, SMatrix)> {
    let (mut p, mut t) = (prec, terms);
    loop {
        let s = extract_s(spec, p, t)?;
        let v = symmetrize(&s);
        if !matches!(v, Symmetrized::Undecided { .. }) || p >= MAX_PRECISION {
            return Ok((v, s));
        }
        p *= 2;
        t *= 2;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionTensor {
    /// `n[i][j][k] = N_ij^k`, midpoints.
    pub n: Vec<Vec<Vec<f64>>>,
    pub rounded: Vec<Vec<Vec<i64>>>,
    pub max_deviation: f64,
    /// Entries within tolerance of a negative integer, flagged but not rejected.
    pub negative: Vec<[usize; 3]>,
    pub verdict: bool,
}

/// `N_ij^k = sum_a S_ia S_ja conj(S_ka) / S_0a`.
pub fn verlinde_check(s: &SMatrix, tolerance: f64) -> Result<FusionTensor> {
    let e = &s.entries;
    for a in 0..3 {
        if e[0][a].re.contains_zero() && e[0][a].im.contains_zero() {
            return Err(Error::DivisionByZero("first row of S"));
        }
    }
    let mut n = vec![vec![vec![0.0; 3]; 3]; 3];
    let mut rounded = vec![vec![vec![0i64; 3]; 3]; 3];
    let (mut dev, mut negative, mut ok): (f64, Vec<[usize; 3]>, bool) = (0.0, vec![], true);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let mut sum = CBall::zero(s.precision);
                for a in 0..3 {
                    let t = e[i][a].mul(&e[j][a]).mul(&e[k][a].conj());
                    sum = sum.add(&t.div(&e[0][a]).ok_or(Error::DivisionByZero("first row of S"))?);
                }
                let (r, d) = sum.re.nearest_integer();
                let d = d.max(sum.im.mag());
                let r = r.to_i64().unwrap_or(i64::MAX);
                n[i][j][k] = sum.re.mid_f64();
                rounded[i][j][k] = r;
                dev = dev.max(d);
                if d > tolerance {
                    ok = false;
                } else if r < 0 {
                    negative.push([i, j, k]);
                    ok = false;
                }
            }
        }
    }
    Ok(FusionTensor { n, rounded, max_deviation: dev, negative, verdict: ok })
}

/// Quantum dimensions `S_i0 / S_00`.
pub fn quantum_dimensions(s: &SMatrix) -> Result<[CBall; 3]> {
    let e = &s.entries;
    let d: Vec<CBall> =
        (0..3).map(|i| e[i][0].div(&e[0][0]).ok_or(Error::DivisionByZero("S_00"))).collect::<Result<_>>()?;
    Ok([d[0].clone(), d[1].clone(), d[2].clone()])
}

/// JSON report for one candidate.
#[derive(Clone, Debug, Serialize)]
pub struct SMatrixReport {
    pub h1: String,
    pub h2: String,
    pub precision: u32,
    pub terms: usize,
    pub condition: f64,
    pub s_unit: Vec<Vec<String>>,
    pub symmetrized: Symmetrized,
    pub s: Option<Vec<Vec<String>>>,
    pub square_defect: Option<f64>,
    pub fusion: Option<FusionTensor>,
}

pub fn smatrix_report(spec: &CharacterSpec, prec: u32, terms: usize) -> Result<SMatrixReport> {
    let (sym, s) = symmetrize_spec(spec, prec, terms)?;
    let (mut s_full, mut defect, mut fusion) = (None, None, None);
    if let Some((a1, a2)) = sym.integers() {
        let p = s.precision;
        let full = s.conjugate_diagonal(&Ball::from_q(&Q::from_integer(a1), p), &Ball::from_q(&Q::from_integer(a2), p))?;
        defect = Some(full.square_defect());
        fusion = verlinde_check(&full, VERLINDE_TOLERANCE).ok();
        s_full = Some(full.to_strings(25));
    }
    Ok(SMatrixReport {
        h1: fmt_q(&spec.h1),
        h2: fmt_q(&spec.h2),
        precision: s.precision,
        terms,
        condition: s.condition,
        s_unit: s.to_strings(25),
        symmetrized: sym,
        s: s_full,
        square_defect: defect,
        fusion,
    })
}

/// Why the trimming stage removed a candidate.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Trimmed {
    NonPositiveRatio { index: usize },
    NonIntegerA { a1: String, a2: String },
    Undecided { radius: f64 },
    NonIntegral { coordinate: usize, index: usize },
    Negative { coordinate: usize, index: usize },
    /// Fusion coefficients off the integers, or negative ones (flagged).
    Verlinde { max_deviation: f64, negative: Vec<[usize; 3]> },
    ZeroFirstRow,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrimVerdict {
    pub h1: String,
    pub h2: String,
    pub a1: Option<String>,
    pub a2: Option<String>,
    pub eliminated: Option<Trimmed>,
}

impl TrimVerdict {
    pub fn survives(&self) -> bool {
        self.eliminated.is_none()
    }
}

/// Symmetrize, test integrality of all three coordinates to `order` terms, then Verlinde.
pub fn trim_candidate(spec: &CharacterSpec, prec: u32, terms: usize, order: usize) -> Result<TrimVerdict> {
    let mut v = TrimVerdict { h1: fmt_q(&spec.h1), h2: fmt_q(&spec.h2), a1: None, a2: None, eliminated: None };
    let (sym, s) = symmetrize_spec(spec, prec, terms)?;
    let (a1, a2) = match sym {
        Symmetrized::Integers { ref a1, ref a2, .. } => (a1.parse::<BigInt>().unwrap(), a2.parse::<BigInt>().unwrap()),
        Symmetrized::NonInteger { a1, a2, .. } => {
            v.eliminated = Some(Trimmed::NonIntegerA { a1, a2 });
            return Ok(v);
        }
        Symmetrized::NonPositive { index } => {
            v.eliminated = Some(Trimmed::NonPositiveRatio { index });
            return Ok(v);
        }
        Symmetrized::Undecided { radius } => {
            v.eliminated = Some(Trimmed::Undecided { radius });
            return Ok(v);
        }
    };
    v.a1 = Some(a1.to_string());
    v.a2 = Some(a2.to_string());
    let full_spec = spec.clone().with_normalization(a1.clone(), a2.clone());
    let cv = character_vector_frobenius(&full_spec, order)?;
    for coordinate in 0..3 {
        let c = cv.component(coordinate).coeffs();
        if let Some(index) = c.iter().position(|x| !x.is_integer()) {
            v.eliminated = Some(Trimmed::NonIntegral { coordinate, index });
            return Ok(v);
        }
        if let Some(index) = c.iter().position(|x| x.is_negative()) {
            v.eliminated = Some(Trimmed::Negative { coordinate, index });
            return Ok(v);
        }
    }
    let p = s.precision;
    let full = s.conjugate_diagonal(&Ball::from_q(&Q::from_integer(a1), p), &Ball::from_q(&Q::from_integer(a2), p))?;
    match verlinde_check(&full, VERLINDE_TOLERANCE) {
        Ok(f) if f.verdict => {}
        Ok(f) => v.eliminated = Some(Trimmed::Verlinde { max_deviation: f.max_deviation, negative: f.negative }),
        Err(_) => v.eliminated = Some(Trimmed::ZeroFirstRow),
    }
    Ok(v)
}

/// The `V^(k)` weights `(1/2, (2k+1)/16)`.
pub fn vk_spec(k: i64) -> Result<CharacterSpec> {
    CharacterSpec::new(q(1, 2), q(2 * k + 1, 16))
}

/// `A'` for `V^(k)`: Ising for `k = 0`, `A_{1,2}` for `k = 1`, `B_{k,1}` otherwise.
pub fn vk_normalization(k: i64) -> (BigInt, BigInt) {
    match k {
        0 => (BigInt::one(), BigInt::one()),
        1 => (BigInt::from(3), BigInt::from(2)),
        _ => (BigInt::from(2 * k + 1), BigInt::one() << k as usize),
    }
}

#[derive(Clone, Debug)]
pub struct Glueing {
    pub p: i64,
    pub k: i64,
    pub product: QExpansion,
    pub expected: QExpansion,
    /// `sum f_i^W f_i^V == j - 744 + 48k` through the computed order.
    pub equal: bool,
    /// `(15 - p)(2p + 17) + 2k^2 + k == 48k`.
    pub weight_one: bool,
    /// `h_i + h_i' == 2` for `i = 1, 2`.
    pub weights_sum_to_two: bool,
}

/// `sum_i f_i^(W_p) f_i^(V_k)` against `j - 744 + 48k`, exactly, through `q^(order-2)`.
pub fn glueing_character(p: i64, order: usize) -> Result<Glueing> {
    if !(5..=15).contains(&p) {
        return Err(Error::Precondition(format!("p = {p} outside 5..15")));
    }
    let k = 15 - p;
    let row = golden::useries()
        .into_iter()
        .find(|r| r.p() == p)
        .ok_or_else(|| Error::Precondition(format!("no U-series row for p = {p}")))?;
    let w = CharacterSpec::new(row.h1.clone(), row.h2.clone())?.with_normalization(row.a1.clone(), row.a2.clone());
    let (b1, b2) = vk_normalization(k);
    let v = vk_spec(k)?.with_normalization(b1, b2);
    let fw = character_vector_frobenius(&w, order)?;
    let fv = character_vector_frobenius(&v, order)?;
    let mut product = fw.f0.mul(&fv.f0);
    for i in 1..3 {
        product = product.add(&fw.component(i).mul(fv.component(i)))?;
    }
    let j = j_unit(order).shift(&qi(-1));
    let expected = j.add(&QExpansion::constant(qi(48 * k - 744), order - 1))?;
    let n = product.order().min(expected.order());
    let equal = product.leading_exponent() == expected.leading_exponent()
        && product.coeffs()[..n] == expected.coeffs()[..n];
    let weight_one = (15 - p) * (2 * p + 17) + 2 * k * k + k == 48 * k;
    let weights_sum_to_two = &w.h1 + &v.h1 == qi(2) && &w.h2 + &v.h2 == qi(2);
    Ok(Glueing { p, k, product, expected, equal, weight_one, weights_sum_to_two })
}
