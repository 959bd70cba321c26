//! Midpoint-radius arithmetic on fixed-point big integers.
//!
//! A [`Ball`] is `mid * 2^-prec` with an absolute error bound `rad`. Every
//! operation widens `rad` enough to cover truncation of the midpoint, so the
//! true value always lies in `[mid - rad, mid + rad]`.

use crate::rat::Q;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Round an f64 bound upward a little to absorb its own rounding.
fn up(x: f64) -> f64 {
    x * (1.0 + 4.0 * f64::EPSILON) + f64::MIN_POSITIVE
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    mid: BigInt,
    rad: f64,
    prec: u32,
}

impl Ball {
    fn ulp(prec: u32) -> f64 {
        2f64.powi(-(prec as i32))
    }

    pub fn zero(prec: u32) -> Self {
        Ball { mid: BigInt::zero(), rad: 0.0, prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Ball { mid: BigInt::from(n) << prec, rad: 0.0, prec }
    }

    pub fn from_q(x: &Q, prec: u32) -> Self {
        let num: BigInt = x.numer().clone() << prec;
        let (qt, r) = num.div_mod_floor(x.denom());
        let rad = if r.is_zero() { 0.0 } else { Self::ulp(prec) };
        Ball { mid: qt, rad, prec }
    }

    /// `n / 2^k`, exact.
    pub fn dyadic(n: i64, k: u32, prec: u32) -> Self {
        assert!(k <= prec);
        Ball { mid: BigInt::from(n) << (prec - k), rad: 0.0, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn rad(&self) -> f64 {
        self.rad
    }

    /// Midpoint as f64 (rounded).
    pub fn mid_f64(&self) -> f64 {
        let shift = self.mid.bits().saturating_sub(60);
        let top = (&self.mid >> shift).to_f64().unwrap();
        top * 2f64.powi(shift as i32 - self.prec as i32)
    }

    /// Upper bound on `|x|`.
    pub fn mag(&self) -> f64 {
        up(self.mid_f64().abs() * (1.0 + 1e-15) + self.rad)
    }

    /// Lower bound on `|x|`, zero if the ball contains 0.
    pub fn mig(&self) -> f64 {
        let m = self.mid_f64().abs() * (1.0 - 1e-15) - self.rad;
        if m > 0.0 {
            m
        } else {
            0.0
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.mig() == 0.0
    }

    pub fn is_positive(&self) -> bool {
        self.mid.sign() == Sign::Plus && self.mig() > 0.0
    }

    pub fn add_error(&self, e: f64) -> Self {
        Ball { mid: self.mid.clone(), rad: up(self.rad + e), prec: self.prec }
    }

    pub fn add(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        Ball { mid: &self.mid + &o.mid, rad: up(self.rad + o.rad), prec: self.prec }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        Ball { mid: &self.mid - &o.mid, rad: up(self.rad + o.rad), prec: self.prec }
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: -&self.mid, rad: self.rad, prec: self.prec }
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        let mid = (&self.mid * &o.mid) >> self.prec;
        let (a, b) = (self.mid_f64().abs() * (1.0 + 1e-15), o.mid_f64().abs() * (1.0 + 1e-15));
        let rad = a * o.rad + b * self.rad + self.rad * o.rad + Self::ulp(self.prec);
        Ball { mid, rad: up(rad), prec: self.prec }
    }

    pub fn mul_int(&self, n: i64) -> Ball {
        Ball { mid: &self.mid * n, rad: up(self.rad * (n.unsigned_abs() as f64)), prec: self.prec }
    }

    pub fn div_int(&self, n: i64) -> Ball {
        assert!(n != 0);
        let mid = self.mid.div_floor(&BigInt::from(n));
        let rad = self.rad / (n.unsigned_abs() as f64) + Self::ulp(self.prec);
        Ball { mid, rad: up(rad), prec: self.prec }
    }

    /// Division by `2^k`.
    pub fn shr(&self, k: u32) -> Ball {
        Ball { mid: &self.mid >> k, rad: up(self.rad * 2f64.powi(-(k as i32)) + Self::ulp(self.prec)), prec: self.prec }
    }

    pub fn div(&self, o: &Ball) -> Option<Ball> {
        let den = o.mig();
        if den == 0.0 {
            return None;
        }
        let mid = (&self.mid << self.prec).div_floor(&o.mid);
        let q = self.mid_f64().abs() / o.mid_f64().abs() * (1.0 + 1e-14);
        let rad = (self.rad + q * o.rad) / den + Self::ulp(self.prec);
        Some(Ball { mid, rad: up(rad), prec: self.prec })
    }

    /// Square root of a ball that is certainly positive.
    pub fn sqrt(&self) -> Option<Ball> {
        if !self.is_positive() {
            return None;
        }
        let mid = (&self.mid << self.prec).sqrt();
        let lo = self.mig().sqrt();
        let rad = self.rad / lo + 2.0 * Self::ulp(self.prec);
        Some(Ball { mid, rad: up(rad), prec: self.prec })
    }

    /// Nearest integer and an upper bound on the distance to it.
    pub fn nearest_integer(&self) -> (BigInt, f64) {
        let half = BigInt::one() << (self.prec - 1);
        let n = (&self.mid + &half) >> self.prec;
        let diff = &self.mid - (&n << self.prec);
        let d = Ball { mid: diff, rad: self.rad, prec: self.prec };
        (n, d.mag())
    }

    /// Decimal digits of the midpoint.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10).pow(digits as u32);
        let v = (&self.mid * &scale) >> self.prec;
        let neg = v.is_negative();
        let s = v.abs().to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (ip, fp) = s.split_at(s.len() - digits);
        format!("{}{}.{}", if neg { "-" } else { "" }, ip, fp)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +/- {:.3e}", self.to_decimal(30), self.rad)
    }
}

/// Complex ball as a pair of real balls.
#[derive(Clone, Debug, PartialEq)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        CBall { re, im }
    }

    pub fn real(re: Ball) -> Self {
        let p = re.prec();
        CBall { re, im: Ball::zero(p) }
    }

    pub fn zero(prec: u32) -> Self {
        CBall { re: Ball::zero(prec), im: Ball::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        CBall::real(Ball::from_int(1, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn add(&self, o: &CBall) -> CBall {
        CBall { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        CBall { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> CBall {
        CBall { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> CBall {
        CBall { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        CBall {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, b: &Ball) -> CBall {
        CBall { re: self.re.mul(b), im: self.im.mul(b) }
    }

    pub fn norm_sqr(&self) -> Ball {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn div(&self, o: &CBall) -> Option<CBall> {
        let n = o.norm_sqr();
        let z = self.mul(&o.conj());
        Some(CBall { re: z.re.div(&n)?, im: z.im.div(&n)? })
    }

    /// Upper bound on `|z|`.
    pub fn mag(&self) -> f64 {
        up(self.re.mag().hypot(self.im.mag()))
    }

    /// Widen both parts by `e`.
    pub fn add_error(&self, e: f64) -> CBall {
        CBall { re: self.re.add_error(e), im: self.im.add_error(e) }
    }

    pub fn rad(&self) -> f64 {
        self.re.rad().max(self.im.rad())
    }

    pub fn shr(&self, k: u32) -> CBall {
        CBall { re: self.re.shr(k), im: self.im.shr(k) }
    }

    /// `exp(z)` by scaling, Taylor series and repeated squaring.
    pub fn exp(&self) -> CBall {
        let prec = self.prec();
        let m = self.mag();
        let s = if m > 0.25 { (m / 0.25).log2().ceil() as u32 } else { 0 };
        let y = self.shr(s);
        let ym = y.mag();
        let mut term = CBall::one(prec);
        let mut sum = CBall::one(prec);
        let mut n = 1i64;
        // stop once |y|^n / n! is below the working precision
        let mut bound = 1.0f64;
        loop {
            term = y.mul(&term);
            term = CBall { re: term.re.div_int(n), im: term.im.div_int(n) };
            sum = sum.add(&term);
            bound *= ym / n as f64;
            n += 1;
            if bound < 2f64.powi(-(prec as i32) - 4) {
                break;
            }
        }
        // geometric tail since |y| <= 1/4
        let mut r = sum.add_error(2.0 * bound);
        for _ in 0..s {
            r = r.mul(&r);
        }
        r
    }

    pub fn to_string_digits(&self, digits: usize) -> String {
        format!("{} + {}i", self.re.to_decimal(digits), self.im.to_decimal(digits))
    }
}

/// `pi` from Machin's formula.
pub fn pi(prec: u32) -> Ball {
    let guard = 16;
    let p = prec + guard;
    let one = BigInt::one() << p;
    // arctan(1/k) = sum (-1)^n / ((2n+1) k^(2n+1))
    let atan_inv = |k: i64| -> (BigInt, u64) {
        let k2 = BigInt::from(k * k);
        let mut power = &one / k;
        let mut sum = BigInt::zero();
        let mut n = 0u64;
        while !power.is_zero() {
            let t = &power / (2 * n + 1);
            if n.is_multiple_of(2) {
                sum += t;
            } else {
                sum -= t;
            }
            power /= &k2;
            n += 1;
        }
        (sum, n)
    };
    let (a, na) = atan_inv(5);
    let (b, nb) = atan_inv(239);
    let v = a * 16 - b * 4;
    let err_units = (16 * (2 * na + 2) + 4 * (2 * nb + 2)) as f64;
    Ball { mid: v >> guard, rad: up(err_units * 2f64.powi(-(p as i32)) + Ball::ulp(prec)), prec }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn pi_digits() {
        let p = pi(256);
        assert!(p.to_decimal(40).starts_with("3.1415926535897932384626433832795028841971"));
        assert!(p.rad() < 1e-70);
    }

    #[test]
    fn exp_of_i_pi_is_minus_one() {
        let prec = 256;
        let z = CBall::new(Ball::zero(prec), pi(prec));
        let e = z.exp();
        let (n, d) = e.re.nearest_integer();
        assert_eq!(n, BigInt::from(-1));
        assert!(d < 1e-60);
        assert!(e.im.mag() < 1e-60);
    }

    #[test]
    fn arithmetic_encloses() {
        let prec = 200;
        let a = Ball::from_q(&q(1, 3), prec);
        let b = Ball::from_q(&q(3, 7), prec);
        let c = a.mul(&b).div(&b).unwrap();
        assert!(c.sub(&a).mag() < 1e-55);
        let s = Ball::from_int(2, prec).sqrt().unwrap();
        assert!(s.to_decimal(20).starts_with("1.41421356237309504880"));
        let (n, d) = Ball::from_q(&q(7, 2), prec).add(&Ball::from_q(&q(1, 10), prec)).nearest_integer();
        assert_eq!(n, BigInt::from(4));
        assert!((d - 0.4).abs() < 1e-12);
    }
}
