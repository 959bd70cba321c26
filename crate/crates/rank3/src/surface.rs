//! The elliptic surface
//!
//! ```text
//! 0 = (4(x+y)+6)((4(x+y)+2)(4(x+y)-2) - 62xy) + mxy
//! ```
//!
//! relating `m` (the `q^1` coefficient of `f0`) to `x = h1 - 1`, `y = h2 - 1`.

use crate::error::{Error, Result};
use crate::rat::{fmt_q, q, qi, Q};
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

/// Where a point on the surface came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    GenericEnumeration,
    YHalfFamily(i64),
    YThreehalfFamily(i64),
    BoxedRegion,
    Manual,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::GenericEnumeration => write!(f, "generic_enumeration"),
            Provenance::YHalfFamily(s) => write!(f, "y_half_family({s})"),
            Provenance::YThreehalfFamily(b) => write!(f, "y_threehalf_family({b})"),
            Provenance::BoxedRegion => write!(f, "boxed_region"),
            Provenance::Manual => write!(f, "manual"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    pub m: Q,
    pub x: Q,
    pub y: Q,
    pub provenance: Provenance,
}

impl FiberPoint {
    /// Checked constructor.
    pub fn new(m: Q, x: Q, y: Q, provenance: Provenance) -> Result<Self> {
        if !eval_eq1(&m, &x, &y).is_zero() {
            return Err(Error::Precondition(format!(
                "({}, {}, {}) is not on the surface",
                fmt_q(&m),
                fmt_q(&x),
                fmt_q(&y)
            )));
        }
        Ok(FiberPoint { m, x, y, provenance })
    }

    /// `x = 0` or `y = 0`: these sections carry reducible monodromy.
    pub fn is_reducible_section(&self) -> bool {
        self.x.is_zero() || self.y.is_zero()
    }

    pub fn swapped(&self) -> FiberPoint {
        FiberPoint { m: self.m.clone(), x: self.y.clone(), y: self.x.clone(), provenance: self.provenance.clone() }
    }

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", fmt_q(&self.m), fmt_q(&self.x), fmt_q(&self.y), self.provenance)
    }
}

pub const CSV_HEADER: &str = "m,x,y,provenance";

/// Residual of the surface equation.
pub fn eval_eq1(m: &Q, x: &Q, y: &Q) -> Q {
    let u = x + y;
    let v = x * y;
    let f = qi(4) * &u;
    (&f + qi(6)) * ((&f + qi(2)) * (&f - qi(2)) - qi(62) * &v) + m * v
}

/// The `m` putting `(x, y)` on the surface.
pub fn m_of(x: &Q, y: &Q) -> Result<Q> {
    let v = x * y;
    if v.is_zero() {
        return Err(Error::DivisionByZero("m_of needs xy != 0"));
    }
    let f = qi(4) * (x + y);
    Ok(-(&f + qi(6)) * ((&f + qi(2)) * (&f - qi(2)) - qi(62) * &v) / v)
}

/// `v = xy` on the quotient curve at `u = x + y`.
pub fn quotient_v(u: &Q, m: &Q) -> Result<Q> {
    let den = qi(372) - m + qi(248) * u;
    if den.is_zero() {
        return Err(Error::DivisionByZero("372 - m + 248u = 0"));
    }
    let two_u = qi(2) * u;
    Ok(qi(8) * (&two_u - qi(1)) * (&two_u + qi(1)) * (&two_u + qi(3)) / den)
}

/// On `m = 0, 248, 496` the surface contains the whole line `x + y = (m - 372)/248`.
pub fn line_component(m: &Q) -> Option<Q> {
    let special = m.is_integer() && [0, 248, 496].contains(&m.to_integer().to_i64()?);
    special.then(|| (m - qi(372)) / qi(248))
}

/// `max(4|m - 372|/31, 1537)`: the window for `u` used by the enumerator.
pub fn u_window(m: &Q) -> Q {
    let a = qi(4) * (m - qi(372)).abs() / qi(31);
    a.max(qi(1537))
}

/// `2 + N max(16|m - 372|/31, 6148)`.
pub fn certified_bound(m: &Q, n: u64) -> Q {
    let a = qi(16) * (m - qi(372)).abs() / qi(31);
    qi(2) + Q::from_integer(BigInt::from(n)) * a.max(qi(6148))
}

fn is_square_rational(d: &Q) -> Option<Q> {
    if d.is_negative() {
        return None;
    }
    let n = d.numer().sqrt();
    let m = d.denom().sqrt();
    (&n * &n == *d.numer() && &m * &m == *d.denom()).then(|| Q::new(n, m))
}

fn divides(n: u64, d: &BigInt) -> bool {
    (BigInt::from(n) % d).is_zero()
}

/// Points for one `u = i/N`, exact rational path.
fn points_at_slow(m: &Q, i: i64, n: u64) -> Vec<(Q, Q)> {
    let u = Q::new(BigInt::from(i), BigInt::from(n));
    let Ok(v) = quotient_v(&u, m) else { return vec![] };
    let disc = &u * &u - qi(4) * &v;
    let Some(r) = is_square_rational(&disc) else { return vec![] };
    let x = (&u + &r) / qi(2);
    let y = (&u - &r) / qi(2);
    if !divides(n, x.denom()) || !divides(n, y.denom()) {
        return vec![];
    }
    if x == y {
        vec![(x, y)]
    } else {
        vec![(x.clone(), y.clone()), (y, x)]
    }
}

/// Points for one `u = i/N` in `i128`, `None` when anything overflows.
fn points_at_fast(mn: i128, md: i128, i: i128, n: i128) -> Option<Vec<(Q, Q)>> {
    // 372 - m + 248 i/N = w / (md N)
    let w = n.checked_mul(372i128.checked_mul(md)?.checked_sub(mn)?)?.checked_add(248i128.checked_mul(i)?.checked_mul(md)?)?;
    if w == 0 {
        return Some(vec![]);
    }
    let p = (2 * i - n).checked_mul(2 * i + n)?.checked_mul(2 * i + 3 * n)?;
    let num = i.checked_mul(i)?.checked_mul(w)?.checked_sub(32i128.checked_mul(p)?.checked_mul(md)?)?;
    let prod = num.checked_mul(w)?;
    if prod < 0 {
        return Some(vec![]);
    }
    let s = (prod as u128).sqrt();
    if s.checked_mul(s)? != prod as u128 {
        return Some(vec![]);
    }
    let s = i128::try_from(s).ok()?;
    let aw = w.abs();
    let den = 2i128.checked_mul(n)?.checked_mul(aw)?;
    let x = Q::new(BigInt::from(i.checked_mul(aw)?.checked_add(s)?), BigInt::from(den));
    let y = Q::new(BigInt::from(i.checked_mul(aw)?.checked_sub(s)?), BigInt::from(den));
    let nn = n as u64;
    if !divides(nn, x.denom()) || !divides(nn, y.denom()) {
        return Some(vec![]);
    }
    Some(if x == y { vec![(x, y)] } else { vec![(x.clone(), y.clone()), (y, x)] })
}

/// All rational `(x, y)` with denominators dividing `n` on the fiber over `m`.
///
/// Runs over `u = i/n` in the window from [`u_window`] (rounded outward) and
/// tests whether `u^2 - 4v(u)` is a rational square. On the three fibers with a
/// line component the excluded `u` is skipped; see [`line_component`].
pub fn fiber_enumerate(m: &Q, n: u64) -> Vec<FiberPoint> {
    assert!(n >= 1, "denominator bound must be positive");
    let bound = u_window(m) * Q::from_integer(BigInt::from(n));
    let imax = bound.ceil().to_integer().to_i64().expect("window fits in i64");
    let small = m.numer().to_i128().zip(m.denom().to_i128()).filter(|(a, b)| a.abs() < 1 << 40 && *b < 1 << 40);
    let mut pts: Vec<(Q, Q)> = (-imax..=imax)
        .into_par_iter()
        .flat_map_iter(|i| {
            let fast = small.and_then(|(mn, md)| points_at_fast(mn, md, i as i128, n as i128));
            fast.unwrap_or_else(|| points_at_slow(m, i, n))
        })
        .collect();
    pts.sort_by(|a, b| (&a.0 + &a.1).cmp(&(&b.0 + &b.1)).then_with(|| a.0.cmp(&b.0)));
    pts.into_iter()
        .map(|(x, y)| FiberPoint { m: m.clone(), x, y, provenance: Provenance::GenericEnumeration })
        .collect()
}

/// Count of points on a fiber together with the linear-bound certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmCount {
    pub m: String,
    pub n: u64,
    pub count: usize,
    pub certified_bound: String,
    pub within_bound: bool,
    /// `Some(u)` when the fiber contains the line `x + y = u` (excluded from `count`).
    pub line_component: Option<String>,
}

pub fn am_count(m: &Q, n: u64) -> AmCount {
    let count = fiber_enumerate(m, n).len();
    let bound = certified_bound(m, n);
    AmCount {
        m: fmt_q(m),
        n,
        count,
        within_bound: Q::from_integer(BigInt::from(count)) <= bound,
        certified_bound: fmt_q(&bound),
        line_component: line_component(m).map(|u| fmt_q(&u)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    YHalf,
    YThreehalf,
}

/// Members of the two infinite families on `y = -1/2` and `y = -3/2`.
///
/// `YHalf` takes `alpha` with `(m, x) = ((alpha+15)(alpha+16)/2, alpha/16)`,
/// `YThreehalf` takes `beta` with `(m, x) = ((beta^2+45beta+512)/6, beta/16)`.
pub fn special_fibers(kind: SpecialKind, param: i64) -> Result<FiberPoint> {
    let p = BigInt::from(param);
    let x = Q::new(p.clone(), BigInt::from(16));
    let (m, y, prov) = match kind {
        SpecialKind::YHalf => {
            if param % 8 == 0 {
                return Err(Error::Precondition(format!("alpha = {param} is divisible by 8")));
            }
            let m = Q::from_integer((&p + 15) * (&p + 16) / 2);
            (m, q(-1, 2), Provenance::YHalfFamily(param + 16))
        }
        SpecialKind::YThreehalf => {
            if param % 8 == 0 || param % 3 == 0 {
                return Err(Error::Precondition(format!("beta = {param} is divisible by 8 or 3")));
            }
            let m = Q::new(&p * &p + 45 * &p + 512, BigInt::from(6));
            (m, q(-3, 2), Provenance::YThreehalfFamily(param))
        }
    };
    FiberPoint::new(m, x, y, prov)
}

/// The `y = -1/2` family in the `s = alpha + 16` parameterization: `m = s(s-1)/2`.
pub fn y_half_member(s: i64) -> Result<FiberPoint> {
    special_fibers(SpecialKind::YHalf, s - 16)
}

/// The coordinate matrix taking `(x:y:z)` to `(U:V:W)`.
pub fn weierstrass_matrix(m: &Q) -> [[Q; 3]; 3] {
    let m2 = m * m;
    let m3 = &m2 * m;
    let a = qi(-24) * (qi(65) * &m2 - qi(24552) * m - qi(353648));
    let b = qi(6912) * m * (m - qi(248)) * (m - qi(496));
    let c = qi(-3) * (&m3 - qi(732) * &m2 + qi(97712) * m - qi(4243776));
    [
        [a.clone(), -b.clone(), qi(248)],
        [a, b, qi(248)],
        [c, Q::zero(), qi(372) - m],
    ]
}

/// `(A, B)` with `H = -V^2 W + U^3 + A U W^2 + B W^3`.
pub fn weierstrass_coefficients(m: &Q) -> (Q, Q) {
    let m2 = m * m;
    let m3 = &m2 * m;
    let a = qi(-27) * (&m3 - qi(844) * &m2 + qi(210992) * m + qi(1049536)) * (m + qi(124));
    let pw = |k: u32| -> Q { (0..k).fold(Q::one(), |acc, _| acc * m) };
    let b = qi(54)
        * (pw(6) - qi(1080) * pw(5) + qi(353904) * pw(4) - qi(78209280) * pw(3)
            + Q::from_integer(BigInt::from(16393117440i64)) * pw(2)
            + Q::from_integer(BigInt::from(465661052928i64)) * m
            + Q::from_integer(BigInt::from(1484665229312i64)));
    (a, b)
}

pub fn eval_h(m: &Q, u: &Q, v: &Q, w: &Q) -> Q {
    let (a, b) = weierstrass_coefficients(m);
    -(v * v * w) + u * u * u + a * u * w * w + b * w * w * w
}

/// `-16(4A^3 + 27B^2)` computed from the Weierstrass coefficients.
pub fn discriminant_direct(m: &Q) -> Q {
    let (a, b) = weierstrass_coefficients(m);
    qi(-16) * (qi(4) * &a * &a * &a + qi(27) * &b * &b)
}

/// The printed discriminant with quadratic factor `m^2 + (k/3) m + 8464/3`.
pub fn discriminant_printed(m: &Q, k: i64) -> Q {
    let pre = Q::from_integer(BigInt::from(2).pow(27) * BigInt::from(3).pow(13));
    let sq = |x: Q| &x * &x;
    pre * (m + qi(4)) * sq(m.clone()) * sq(m - qi(248)) * sq(m - qi(496)) * (m * m + q(k, 3) * m + q(8464, 3))
}

/// `1728 * 4A^3 / (4A^3 + 27B^2)`, `None` on singular fibers.
pub fn j_invariant_direct(m: &Q) -> Option<Q> {
    let (a, b) = weierstrass_coefficients(m);
    let a3 = qi(4) * &a * &a * &a;
    let den = &a3 + qi(27) * &b * &b;
    (!den.is_zero()).then(|| qi(1728) * a3 / den)
}

/// The printed `j`-invariant, `None` on singular fibers.
pub fn j_invariant_printed(m: &Q) -> Option<Q> {
    let sq = |x: Q| &x * &x;
    let cube = |x: Q| &x * &x * &x;
    let num = cube(m + qi(124)) * cube(m * m * m - qi(844) * m * m + qi(210992) * m + qi(1049536));
    let den = qi(32768 * 3)
        * sq(m.clone())
        * sq(m - qi(248))
        * sq(m - qi(496))
        * (m + qi(4))
        * (m * m + q(128, 3) * m + q(8464, 3));
    (!den.is_zero()).then(|| num / den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaVariant {
    Coefficient123,
    Coefficient128,
    Both,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassReport {
    pub on_surface: bool,
    pub on_curve: bool,
    pub delta_variant: DeltaVariant,
    pub j_matches: Option<bool>,
}

/// Maps `p` to Weierstrass coordinates and checks `H = 0`; also compares the
/// discriminant and `j`-invariant at `m` against their printed forms.
pub fn weierstrass_report(m: &Q, p: &FiberPoint) -> WeierstrassReport {
    let on_surface = &p.m == m && eval_eq1(m, &p.x, &p.y).is_zero();
    let t = weierstrass_matrix(m);
    let xyz = [p.x.clone(), p.y.clone(), Q::one()];
    let col = |j: usize| -> Q { (0..3).map(|i| &xyz[i] * &t[i][j]).sum() };
    let (u, v, w) = (col(0), col(1), col(2));
    let on_curve = eval_h(m, &u, &v, &w).is_zero();
    let d = discriminant_direct(m);
    let delta_variant = match (d == discriminant_printed(m, 123), d == discriminant_printed(m, 128)) {
        (true, true) => DeltaVariant::Both,
        (true, false) => DeltaVariant::Coefficient123,
        (false, true) => DeltaVariant::Coefficient128,
        (false, false) => DeltaVariant::Neither,
    };
    let j_matches = j_invariant_direct(m).zip(j_invariant_printed(m)).map(|(a, b)| a == b);
    WeierstrassReport { on_surface, on_curve, delta_variant, j_matches }
}

pub fn weierstrass_verify(m: &Q, p: &FiberPoint) -> bool {
    let r = weierstrass_report(m, p);
    r.on_surface && r.on_curve
}

/// The sections `±Q1, ±Q2, ±Q3, ±Q4` present on every fiber.
pub fn standard_sections(m: &Q) -> Vec<(Q, Q)> {
    let q4 = (-m / qi(16) - qi(1), -m / qi(16) - q(1, 2));
    let mut out = vec![];
    for (x, y) in [(q(1, 2), Q::zero()), (q(-1, 2), Q::zero()), (q(-3, 2), Q::zero()), q4] {
        out.push((y.clone(), x.clone()));
        out.push((x, y));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_lie_on_surface() {
        for m in [qi(0), qi(7), q(5, 3), qi(-100)] {
            for (x, y) in standard_sections(&m) {
                assert!(eval_eq1(&m, &x, &y).is_zero());
            }
        }
        assert!(eval_eq1(&qi(24), &q(-3, 5), &q(-2, 5)).is_zero());
    }

    #[test]
    fn m_of_examples() {
        assert_eq!(m_of(&(q(5, 16) - qi(1)), &q(-1, 2)).unwrap(), qi(10));
        assert_eq!(m_of(&q(-5, 4), &q(-3, 2)).unwrap(), qi(2));
        assert_eq!(m_of(&q(-1, 4), &q(-1, 4)).unwrap(), qi(248));
        assert!(m_of(&q(1, 2), &Q::zero()).is_err());
        let m = m_of(&q(1, 2), &q(3, 7)).unwrap();
        assert!(eval_eq1(&m, &q(1, 2), &q(3, 7)).is_zero());
    }

    #[test]
    fn quotient_v_examples() {
        assert!(quotient_v(&q(1, 2), &qi(7)).unwrap().is_zero());
        assert_eq!(quotient_v(&Q::zero(), &qi(100)).unwrap(), Q::new(24.into(), (100 - 372).into()));
        let m = qi(40);
        let u = -&m / qi(8) - q(3, 2);
        let v = (-&m / qi(16) - qi(1)) * (-&m / qi(16) - q(1, 2));
        assert_eq!(quotient_v(&u, &m).unwrap(), v);
        assert!(quotient_v(&q(-1, 2), &qi(248)).is_err());
    }

    #[test]
    fn fiber_24_over_5() {
        let pts = fiber_enumerate(&qi(24), 5);
        let pairs: Vec<_> = pts.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        assert!(pairs.contains(&(q(-3, 5), q(-2, 5))));
        assert!(pairs.contains(&(q(-2, 5), q(-3, 5))));
    }

    #[test]
    fn fast_and_slow_paths_agree() {
        let m = q(377, 1);
        for i in -300..300 {
            let a = points_at_fast(377, 1, i, 16).unwrap();
            let b = points_at_slow(&m, i as i64, 16);
            assert_eq!(a, b, "i = {i}");
        }
    }

    #[test]
    fn special_members() {
        let p = special_fibers(SpecialKind::YHalf, 25).unwrap();
        assert_eq!((p.m, p.x), (qi(820), q(25, 16)));
        assert_eq!(y_half_member(5).unwrap().m, qi(10));
        assert_eq!(special_fibers(SpecialKind::YThreehalf, 25).unwrap().m, qi(377));
        assert!(special_fibers(SpecialKind::YHalf, 24).is_err());
        assert!(special_fibers(SpecialKind::YThreehalf, 27).is_err());
    }

    #[test]
    fn weierstrass_checks() {
        let m = qi(100);
        let p = FiberPoint::new(m.clone(), q(1, 2), Q::zero(), Provenance::Manual).unwrap();
        assert!(weierstrass_verify(&m, &p));
        for m in [qi(7), qi(19), qi(1000)] {
            for (x, y) in [(q(-1, 2), Q::zero()), (q(-3, 2), Q::zero())] {
                let p = FiberPoint::new(m.clone(), x, y, Provenance::Manual).unwrap();
                let r = weierstrass_report(&m, &p);
                assert!(r.on_curve);
                assert_eq!(r.delta_variant, DeltaVariant::Coefficient128);
                assert_eq!(r.j_matches, Some(true));
            }
        }
        assert!(discriminant_printed(&qi(-4), 123).is_zero());
        assert!(discriminant_direct(&qi(-4)).is_zero());
    }

    #[test]
    fn line_fibers() {
        assert_eq!(line_component(&qi(248)), Some(q(-1, 2)));
        assert_eq!(line_component(&qi(0)), Some(q(-3, 2)));
        assert_eq!(line_component(&qi(7)), None);
        assert_eq!(line_component(&q(1, 2)), None);
        let m = qi(496);
        for x in [q(3, 7), q(-11, 5)] {
            assert!(eval_eq1(&m, &x, &(q(1, 2) - &x)).is_zero());
        }
    }
}
