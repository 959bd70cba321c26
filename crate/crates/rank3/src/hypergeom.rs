//! `3F2` coefficients and their p-adic valuations.
//!
//! `B_n = (a1)_n (a2)_n (a3)_n / ((b1)_n (b2)_n n!)`. The valuation of the raw
//! coefficient of `f0` is computed by counting base-p carries, and checked
//! against a direct term-by-term Pochhammer valuation.

use crate::error::{Error, Result};
use crate::rat::{fmt_q, is_integer, q, vp, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;

/// Parameters `(a1, a2, a3; b1, b2)` of a `3F2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGParams {
    pub upper: [Q; 3],
    pub lower: [Q; 2],
}

impl HGParams {
    pub fn new(upper: [Q; 3], lower: [Q; 2]) -> Result<Self> {
        for b in &lower {
            if is_integer(b) && *b <= Q::zero() {
                return Err(Error::LowerParameter(fmt_q(b)));
            }
        }
        Ok(HGParams { upper, lower })
    }

    /// Parameters of the series multiplying `j^(c/24)` in `f0`.
    pub fn for_f0(h1: &Q, h2: &Q) -> Result<Self> {
        let c = crate::characters::central_charge(h1, h2);
        let c24 = &c / Q::from_integer(24.into());
        Self::new(
            [-&c24, q(1, 3) - &c24, q(2, 3) - &c24],
            [Q::one() - h1, Q::one() - h2],
        )
    }

    /// Parameters for `f1` (weight `ha`, other weight `hb`); swap for `f2`.
    ///
    /// Lower parameters are `1 + r1 - r0 = 1 + ha` and `1 + r1 - r2 = 1 + ha - hb`,
    /// the same pattern as `f0`.
    pub fn for_f1(ha: &Q, hb: &Q) -> Result<Self> {
        let t = (Q::from_integer(4.into()) * ha - Q::from_integer(2.into()) * hb) / Q::from_integer(6.into());
        Self::new(
            [&t + q(1, 6), &t + q(1, 2), &t + q(5, 6)],
            [Q::one() + ha, Q::one() + ha - hb],
        )
    }
}

/// `B_n` for a single index.
pub fn hg_coefficient(params: &HGParams, n: usize) -> Q {
    let mut acc = Q::one();
    for i in 0..n {
        let iq = Q::from_integer(BigInt::from(i));
        let mut num = Q::one();
        for a in &params.upper {
            num *= a + &iq;
        }
        if num.is_zero() {
            return Q::zero();
        }
        let mut den = Q::from_integer(BigInt::from(i + 1));
        for b in &params.lower {
            den *= b + &iq;
        }
        acc = acc * num / den;
    }
    acc
}

/// `B_0, ..., B_{n-1}` by the term ratio.
pub fn hg_coefficients(params: &HGParams, n: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(n);
    let mut acc = Q::one();
    for i in 0..n {
        out.push(acc.clone());
        if acc.is_zero() {
            continue;
        }
        let iq = Q::from_integer(BigInt::from(i));
        let mut num = Q::one();
        for a in &params.upper {
            num *= a + &iq;
        }
        let mut den = Q::from_integer(BigInt::from(i + 1));
        for b in &params.lower {
            den *= b + &iq;
        }
        acc = acc * num / den;
    }
    out
}

/// Eventually periodic base-p expansion of a p-integral rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicDigits {
    pub prime: u64,
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl PadicDigits {
    /// Long division `a/b` in base p; the state is the running numerator.
    pub fn from_rational(x: &Q, p: u64) -> Result<Self> {
        let pb = BigInt::from(p);
        let b = x.denom().clone();
        if (&b % &pb).is_zero() {
            return Err(Error::NotPIntegral { value: fmt_q(x), p });
        }
        let binv = mod_inverse(&(&b % &pb).to_u64().unwrap(), p);
        let mut a = x.numer().clone();
        let mut seen: HashMap<BigInt, usize> = HashMap::new();
        let mut digits = Vec::new();
        loop {
            if let Some(&start) = seen.get(&a) {
                return Ok(PadicDigits {
                    prime: p,
                    preperiod: digits[..start].to_vec(),
                    period: digits[start..].to_vec(),
                });
            }
            seen.insert(a.clone(), digits.len());
            let amod = a.mod_floor(&pb).to_u64().unwrap();
            let d = ((amod as u128 * binv as u128) % p as u128) as u64;
            digits.push(d);
            a = (a - &b * BigInt::from(d)) / &pb;
        }
    }

    pub fn digit(&self, i: usize) -> u64 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// The rational these digits represent.
    pub fn to_rational(&self) -> Q {
        let p = BigInt::from(self.prime);
        let mut pre = BigInt::zero();
        let mut pw = BigInt::one();
        for &d in &self.preperiod {
            pre += &pw * d;
            pw *= &p;
        }
        let mut per = BigInt::zero();
        let mut pw2 = BigInt::one();
        for &d in &self.period {
            per += &pw2 * d;
            pw2 *= &p;
        }
        // tail = p^L * per / (1 - p^T)
        Q::from_integer(pre) + Q::new(pw * per, BigInt::one() - pw2)
    }
}

fn mod_inverse(a: &u64, p: u64) -> u64 {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (p as i128, *a as i128);
    while nr != 0 {
        let qt = r / nr;
        (t, nt) = (nt, t - qt * nt);
        (r, nr) = (nr, r - qt * nr);
    }
    assert_eq!(r, 1, "not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

/// Base-p digits of a natural number, least significant first.
pub fn digits_of(mut k: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while k > 0 {
        out.push(k % p);
        k /= p;
    }
    out
}

/// Number of carries when adding `k` to the p-adic expansion of `alpha`.
pub fn carry_count(alpha: &Q, k: u64, p: u64) -> Result<u32> {
    let a = PadicDigits::from_rational(alpha, p)?;
    carries_with(&a, k, p)
}

fn carries_with(a: &PadicDigits, k: u64, p: u64) -> Result<u32> {
    let kd = digits_of(k, p);
    let settle = kd.len().max(a.preperiod.len());
    // past `settle` the digits of alpha repeat; a carry surviving a whole
    // period there survives forever
    let limit = settle + a.period.len() + 1;
    let mut carry = 0u64;
    let mut count = 0u32;
    let mut i = 0;
    while i < kd.len() || carry == 1 {
        if i >= limit {
            return Err(Error::InfiniteCarries);
        }
        let s = a.digit(i) + kd.get(i).copied().unwrap_or(0) + carry;
        carry = (s >= p) as u64;
        count += carry as u32;
        i += 1;
    }
    Ok(count)
}

/// The five arguments of the carry formula for `f0` with `x = h1-1`, `y = h2-1`.
pub fn carry_arguments(h1: &Q, h2: &Q) -> ([Q; 3], [Q; 2]) {
    let x = h1 - Q::one();
    let y = h2 - Q::one();
    let s = -(&x + &y) / Q::from_integer(3.into());
    (
        [&s - q(3, 2), &s - q(7, 6), &s - q(5, 6)],
        [-&x - Q::one(), -&y - Q::one()],
    )
}

/// `v_p(B_k)` for the raw coefficients of `f0`, by carry counting:
/// upper parameters contribute `c_p(a-1, k)` and lower ones `-c_p(b-1, k)`.
pub fn vp_coefficient(h1: &Q, h2: &Q, k: u64, p: u64) -> Result<i64> {
    let (up, low) = carry_arguments(h1, h2);
    let up: Vec<PadicDigits> = up.iter().map(|a| PadicDigits::from_rational(a, p)).collect::<Result<_>>()?;
    let low: Vec<PadicDigits> = low.iter().map(|a| PadicDigits::from_rational(a, p)).collect::<Result<_>>()?;
    let mut v = 0i64;
    for a in &up {
        v += carries_with(a, k, p)? as i64;
    }
    for b in &low {
        v -= carries_with(b, k, p)? as i64;
    }
    Ok(v)
}

/// Legendre's formula for `v_p(k!)`.
pub fn legendre(k: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut t = k / p;
    while t > 0 {
        v += t;
        t /= p;
    }
    v
}

/// `v_p(B_k)` computed factor by factor, without carries.
pub fn pochhammer_valuation_oracle(params: &HGParams, k: u64, p: u64) -> Result<i64> {
    for x in params.upper.iter().chain(params.lower.iter()) {
        if (x.denom() % BigInt::from(p)).is_zero() {
            return Err(Error::NotPIntegral { value: fmt_q(x), p });
        }
    }
    let poch = |a: &Q| -> Result<i64> {
        let mut v = 0;
        for j in 0..k {
            let t = a + Q::from_integer(BigInt::from(j));
            if t.is_zero() {
                return Err(Error::InfiniteCarries);
            }
            v += vp(&t, p);
        }
        Ok(v)
    };
    let mut v = 0i64;
    for a in &params.upper {
        v += poch(a)?;
    }
    for b in &params.lower {
        v -= poch(b)?;
    }
    Ok(v - legendre(k, p) as i64)
}

/// Zeroth p-adic digit of a p-integral rational.
pub fn zeroth_digit(x: &Q, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb);
    if d.is_zero() {
        return Err(Error::NotPIntegral { value: fmt_q(x), p });
    }
    let n = x.numer().mod_floor(&pb).to_u64().unwrap();
    let inv = mod_inverse(&d.to_u64().unwrap(), p);
    Ok(((n as u128 * inv as u128) % p as u128) as u64)
}

/// Digit sum of a natural number in base p.
pub fn digit_sum(k: &BigInt, p: u64) -> u64 {
    assert!(!k.is_negative());
    let pb = BigInt::from(p);
    let mut k = k.clone();
    let mut s = 0;
    while !k.is_zero() {
        let (qt, r) = k.div_rem(&pb);
        s += r.to_u64().unwrap();
        k = qt;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qi;

    #[test]
    fn coefficient_edge_cases() {
        let p = HGParams::new([q(1, 3), q(1, 2), q(2, 3)], [q(1, 4), q(3, 4)]).unwrap();
        assert_eq!(hg_coefficient(&p, 0), Q::one());
        let z = HGParams::new([Q::zero(), q(1, 2), q(2, 3)], [q(1, 4), q(3, 4)]).unwrap();
        assert!((1..6).all(|n| hg_coefficient(&z, n).is_zero()));
        assert_eq!(hg_coefficients(&p, 6), (0..6).map(|n| hg_coefficient(&p, n)).collect::<Vec<_>>());
        assert!(HGParams::new([q(1, 3), q(1, 2), q(2, 3)], [qi(-2), q(3, 4)]).is_err());
        assert!(HGParams::new([q(1, 3), q(1, 2), q(2, 3)], [Q::zero(), q(3, 4)]).is_err());
    }

    #[test]
    fn digits_round_trip() {
        for p in [5u64, 7, 11, 13] {
            for (n, d) in [(1, 2), (-1, 2), (-7, 6), (3, 1), (-4, 1), (22, 15), (0, 1)] {
                let x = q(n, d);
                if (d as u64).is_multiple_of(p) {
                    continue;
                }
                let digs = PadicDigits::from_rational(&x, p).unwrap();
                assert_eq!(digs.to_rational(), x, "{x} at {p}");
                assert!(digs.preperiod.iter().chain(&digs.period).all(|&g| g < p));
            }
        }
        assert!(PadicDigits::from_rational(&q(1, 7), 7).is_err());
    }

    #[test]
    fn one_half_has_one_carry() {
        for p in [5u64, 7, 11] {
            assert_eq!(carry_count(&q(1, 2), (p - 1) / 2, p).unwrap(), 1);
            // direct digit oracle: 1/2 = (p+1)/2 + (p-1)/2 p + ...
            let d = PadicDigits::from_rational(&q(1, 2), p).unwrap();
            assert_eq!(d.digit(0), p.div_ceil(2));
            assert_eq!(d.digit(3), (p - 1) / 2);
        }
        assert_eq!(carry_count(&Q::zero(), 12345, 7).unwrap(), 0);
    }

    #[test]
    fn infinite_carry_when_factor_vanishes() {
        assert_eq!(carry_count(&qi(-1), 1, 5), Err(Error::InfiniteCarries));
        assert_eq!(carry_count(&qi(-3), 2, 5).unwrap(), 0);
    }

    #[test]
    fn legendre_formula() {
        assert_eq!(legendre(100, 7), 16);
        let mut f = BigInt::one();
        for i in 1..=100u32 {
            f *= i;
        }
        assert_eq!(crate::rat::vp_int(&f, 7), 16);
    }

    #[test]
    fn beta_family_valuation() {
        // y = -3/2, x = beta/16 with beta = 25: 7 | beta + 24
        let h1 = q(25, 16) + Q::one();
        let h2 = q(-1, 2);
        assert_eq!(vp_coefficient(&h1, &h2, 3, 7).unwrap(), -1);
        assert_eq!(vp_coefficient(&h1, &h2, 0, 7).unwrap(), 0);
        let params = HGParams::for_f0(&h1, &h2).unwrap();
        assert_eq!(pochhammer_valuation_oracle(&params, 3, 7).unwrap(), -1);
    }

    #[test]
    fn zeroth_digit_matches_table() {
        // -y-1 with y = -1/5 has zeroth digit (24p-24)/30 for p = 1 mod 30
        for p in [31u64, 61, 151, 181, 211] {
            assert_eq!(zeroth_digit(&q(-4, 5), p).unwrap(), (24 * p - 24) / 30);
        }
    }
}
