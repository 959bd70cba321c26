//! Truncated q-expansions with a rational leading exponent.
//!
//! A [`QExpansion`] stores `q^r (c_0 + c_1 q + ... + c_{N-1} q^{N-1})` where
//! every stored coefficient is known exactly and nothing past `N` is known.
//! Arithmetic tracks how far the result is reliable; asking for a coefficient
//! beyond that is an error instead of a silent zero.

use crate::error::{Error, Result};
use crate::rat::{fmt_q, is_integer, parse_q, qi, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    leading_exponent: Q,
    coeffs: Vec<Q>,
}

impl QExpansion {
    pub fn new(leading_exponent: Q, coeffs: Vec<Q>) -> Self {
        QExpansion { leading_exponent, coeffs }
    }

    pub fn from_integers(leading_exponent: Q, coeffs: &[i64]) -> Self {
        Self::new(leading_exponent, coeffs.iter().map(|&c| qi(c)).collect())
    }

    /// The constant `c` known to `order` terms.
    pub fn constant(c: Q, order: usize) -> Self {
        let mut coeffs = vec![Q::zero(); order];
        if order > 0 {
            coeffs[0] = c;
        }
        Self::new(Q::zero(), coeffs)
    }

    pub fn leading_exponent(&self) -> &Q {
        &self.leading_exponent
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Q> {
        self.coeffs
    }

    /// Coefficient of `q^(leading_exponent + i)`.
    pub fn coeff(&self, i: usize) -> Result<&Q> {
        self.coeffs.get(i).ok_or(Error::BeyondOrder { index: i, order: self.order() })
    }

    /// Keep only the first `order` coefficients.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self::new(self.leading_exponent.clone(), self.coeffs[..n].to_vec())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    /// Multiply by `q^s`.
    pub fn shift(&self, s: &Q) -> Self {
        Self::new(&self.leading_exponent + s, self.coeffs.clone())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.leading_exponent.clone(), self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// Sum of two expansions whose exponents differ by an integer.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let diff = &other.leading_exponent - &self.leading_exponent;
        if !is_integer(&diff) {
            return Err(Error::ExponentMismatch(
                fmt_q(&self.leading_exponent),
                fmt_q(&other.leading_exponent),
            ));
        }
        let lead = if diff >= Q::zero() { self.leading_exponent.clone() } else { other.leading_exponent.clone() };
        // absolute exponent (relative to `lead`) up to which each side is known
        let off_a = usize_of(&(&self.leading_exponent - &lead));
        let off_b = usize_of(&(&other.leading_exponent - &lead));
        let end = (off_a + self.order()).min(off_b + other.order());
        let mut coeffs = vec![Q::zero(); end];
        for (i, c) in self.coeffs.iter().enumerate() {
            if off_a + i < end {
                coeffs[off_a + i] += c;
            }
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            if off_b + i < end {
                coeffs[off_b + i] += c;
            }
        }
        Ok(Self::new(lead, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product; the result is known to the shorter of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Q::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(&self.leading_exponent + &other.leading_exponent, coeffs)
    }

    /// Multiplicative inverse by Newton iteration `g <- g (2 - f g)`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.order();
        let c0 = self.coeffs.first().ok_or(Error::OrderTooSmall(1))?;
        if c0.is_zero() {
            return Err(Error::NotUnit);
        }
        let unit = Self::new(Q::zero(), self.coeffs.clone());
        let mut g = Self::new(Q::zero(), vec![c0.recip()]);
        let mut k = 1;
        while k < n {
            k = (2 * k).min(n);
            let fg = unit.truncate(k).mul(&pad(&g, k));
            let two_minus = Self::constant(qi(2), k).sub(&fg)?;
            g = pad(&g, k).mul(&two_minus);
        }
        Ok(Self::new(-&self.leading_exponent, g.coeffs))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `f^alpha` for a series with nonzero leading coefficient `c0`, where
    /// `c0^alpha` must be rational (it is 1 for every use in this crate).
    ///
    /// Uses the power recurrence `n c0 b_n = sum_k (alpha k - n + k) c_k b_{n-k}`.
    pub fn pow(&self, alpha: &Q) -> Result<Self> {
        let n = self.order();
        let c0 = self.coeffs.first().ok_or(Error::OrderTooSmall(1))?;
        if c0.is_zero() {
            return Err(Error::NotUnit);
        }
        let b0 = rational_power(c0, alpha)?;
        let mut b = Vec::with_capacity(n);
        b.push(b0);
        for m in 1..n {
            let mut acc = Q::zero();
            for k in 1..=m {
                let ck = &self.coeffs[k];
                if ck.is_zero() {
                    continue;
                }
                let w = alpha * Q::from_integer(BigInt::from(k)) - Q::from_integer(BigInt::from(m - k));
                acc += w * ck * &b[m - k];
            }
            b.push(acc / (c0 * Q::from_integer(BigInt::from(m))));
        }
        Ok(Self::new(&self.leading_exponent * alpha, b))
    }

    /// `q d/dq`.
    pub fn theta(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * (&self.leading_exponent + Q::from_integer(BigInt::from(i))))
            .collect();
        Self::new(self.leading_exponent.clone(), coeffs)
    }

    pub fn to_json(&self) -> QExpansionJson {
        QExpansionJson {
            leading_exponent: fmt_q(&self.leading_exponent),
            coeffs: self.coeffs.iter().map(fmt_q).collect(),
        }
    }

    pub fn from_json(j: &QExpansionJson) -> Result<Self> {
        let lead = parse_q(&j.leading_exponent)?;
        let coeffs = j.coeffs.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(lead, coeffs))
    }
}

/// Wire format: rationals as `"n/d"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QExpansionJson {
    pub leading_exponent: String,
    pub coeffs: Vec<String>,
}

fn usize_of(x: &Q) -> usize {
    use num_traits::ToPrimitive;
    x.to_integer().to_usize().expect("nonnegative integral offset")
}

fn pad(f: &QExpansion, order: usize) -> QExpansion {
    let mut c = f.coeffs.clone();
    c.resize(order, Q::zero());
    QExpansion::new(f.leading_exponent.clone(), c)
}

/// `c^alpha` when it is rational; only `c = 1` or integral `alpha` qualify here.
fn rational_power(c: &Q, alpha: &Q) -> Result<Q> {
    if c.is_one() {
        return Ok(Q::one());
    }
    if is_integer(alpha) {
        use num_traits::ToPrimitive;
        let e = alpha.to_integer().to_i32().ok_or(Error::Precondition("exponent too large".into()))?;
        return Ok(num_traits::pow::Pow::pow(c, e));
    }
    Err(Error::Precondition(format!("{} ^ {} is not rational", fmt_q(c), fmt_q(alpha))))
}

/// Divisor power sums `sigma_k(n)` for `n < order`.
pub fn divisor_sums(k: u32, order: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); order];
    for d in 1..order {
        let dk = BigInt::from(d).pow(k);
        let mut n = d;
        while n < order {
            s[n] += &dk;
            n += d;
        }
    }
    s
}

/// Level-one Eisenstein series `E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n`.
pub fn eisenstein(weight: u32, order: usize) -> Result<QExpansion> {
    if order == 0 {
        return Err(Error::OrderTooSmall(1));
    }
    let factor: i64 = match weight {
        2 => -24,
        4 => 240,
        6 => -504,
        w => return Err(Error::UnsupportedWeight(w)),
    };
    let sig = divisor_sums(weight - 1, order);
    let mut coeffs = Vec::with_capacity(order);
    coeffs.push(Q::one());
    for s in sig.into_iter().skip(1) {
        coeffs.push(Q::from_integer(s * factor));
    }
    Ok(QExpansion::new(Q::zero(), coeffs))
}

/// `E4^3 - E6^2 = 1728 Delta`, returned divided by `q` (a unit series
/// `1728 - 41472 q + ...`) and known to `order` terms.
fn delta1728_over_q(order: usize) -> QExpansion {
    let e4 = eisenstein(4, order + 1).expect("weight 4");
    let e6 = eisenstein(6, order + 1).expect("weight 6");
    let d = e4.mul(&e4).mul(&e4).sub(&e6.mul(&e6)).expect("same exponent");
    QExpansion::new(Q::zero(), d.coeffs[1..].to_vec())
}

/// The Hauptmodul `K = 1728/j = (E4^3 - E6^2)/E4^3 = 1728 q - 1285632 q^2 + ...`.
pub fn hauptmodul_k(order: usize) -> Result<QExpansion> {
    if order == 0 {
        return Err(Error::OrderTooSmall(1));
    }
    let e4 = eisenstein(4, order)?;
    let e4c = e4.mul(&e4).mul(&e4);
    let k = delta1728_over_q(order).div(&e4c)?;
    Ok(k.shift(&Q::one()))
}

/// The unit part `q j = 1 + 744 q + 196884 q^2 + ...`.
pub fn j_unit(order: usize) -> QExpansion {
    let e4 = eisenstein(4, order).expect("weight 4");
    let e4c = e4.mul(&e4).mul(&e4);
    e4c.div(&delta1728_over_q(order)).expect("unit").scale(&qi(1728))
}

/// `j^alpha = q^(-alpha) (1 + 744 q + ...)^alpha`.
pub fn j_power(alpha: &Q, order: usize) -> Result<QExpansion> {
    if order == 0 {
        return Err(Error::OrderTooSmall(1));
    }
    let u = j_unit(order).pow(alpha)?;
    Ok(QExpansion::new(-alpha, u.coeffs))
}

/// `D_k f = q df/dq - (k/12) E2 f`.
pub fn modular_derivative(f: &QExpansion, weight: &Q) -> Result<QExpansion> {
    if f.order() < 2 {
        return Err(Error::OrderTooSmall(2));
    }
    let e2 = eisenstein(2, f.order())?;
    let corr = e2.mul(f).scale(&(weight / qi(12)));
    f.theta().sub(&corr)
}

/// `D^n = D_{2n-2} o ... o D_2 o D_0` on a weight-0 expansion.
pub fn iterated_derivative(f: &QExpansion, n: usize) -> Result<QExpansion> {
    let mut g = f.clone();
    for i in 0..n {
        g = modular_derivative(&g, &qi(2 * i as i64))?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn ints(f: &QExpansion) -> Vec<BigInt> {
        f.coeffs().iter().map(|c| c.to_integer()).collect()
    }

    #[test]
    fn eisenstein_from_divisor_sums() {
        assert_eq!(ints(&eisenstein(4, 3).unwrap()), [1, 240, 2160].map(BigInt::from));
        assert_eq!(ints(&eisenstein(2, 3).unwrap()), [1, -24, -72].map(BigInt::from));
        assert_eq!(ints(&eisenstein(6, 3).unwrap()), [1, -504, -16632].map(BigInt::from));
        assert_eq!(eisenstein(4, 1).unwrap().coeffs(), &[Q::one()]);
        assert!(matches!(eisenstein(8, 3), Err(Error::UnsupportedWeight(8))));
    }

    #[test]
    fn hauptmodul_times_j_is_1728() {
        let k = hauptmodul_k(12).unwrap();
        assert_eq!(k.leading_exponent(), &Q::one());
        assert_eq!(k.coeff(0).unwrap(), &qi(1728));
        assert_eq!(k.coeff(1).unwrap(), &qi(-1285632));
        let j = j_power(&Q::one(), 12).unwrap();
        let prod = k.mul(&j);
        assert_eq!(prod.leading_exponent(), &Q::zero());
        assert_eq!(prod.coeff(0).unwrap(), &qi(1728));
        assert!(prod.coeffs()[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn j_expansion() {
        let j = j_power(&Q::one(), 4).unwrap();
        assert_eq!(j.leading_exponent(), &qi(-1));
        assert_eq!(ints(&j), [1, 744, 196884, 21493760].map(BigInt::from));
        let j0 = j_power(&Q::zero(), 5).unwrap();
        assert_eq!(ints(&j0), [1, 0, 0, 0, 0].map(BigInt::from));
    }

    #[test]
    fn fractional_j_power_squares_back() {
        let h = j_power(&q(1, 2), 10).unwrap();
        let sq = h.mul(&h);
        assert_eq!(sq, j_power(&Q::one(), 10).unwrap());
    }

    #[test]
    fn ramanujan_identity() {
        let e4 = eisenstein(4, 10).unwrap();
        let e6 = eisenstein(6, 10).unwrap();
        let d = modular_derivative(&e4, &qi(4)).unwrap();
        assert_eq!(d, e6.scale(&q(-1, 3)));
        let one = QExpansion::constant(Q::one(), 5);
        assert!(modular_derivative(&one, &Q::zero()).unwrap().coeffs().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn reading_past_order_is_an_error() {
        let e = eisenstein(4, 3).unwrap();
        assert_eq!(e.coeff(3), Err(Error::BeyondOrder { index: 3, order: 3 }));
    }

    #[test]
    fn non_integer_offset_is_rejected() {
        let a = QExpansion::from_integers(q(1, 2), &[1, 2]);
        let b = QExpansion::from_integers(Q::zero(), &[1, 2]);
        assert!(matches!(a.add(&b), Err(Error::ExponentMismatch(_, _))));
        let c = QExpansion::from_integers(q(3, 2), &[5, 7, 9]);
        let s = a.add(&c).unwrap();
        assert_eq!(s.leading_exponent(), &q(1, 2));
        assert_eq!(ints(&s), [1, 7].map(BigInt::from));
    }

    #[test]
    fn inverse_round_trip() {
        let e4 = eisenstein(4, 15).unwrap();
        let inv = e4.inverse().unwrap();
        let one = e4.mul(&inv);
        assert_eq!(one, QExpansion::constant(Q::one(), 15));
    }

    #[test]
    fn json_round_trip() {
        let f = QExpansion::new(q(-47, 48), vec![qi(1), q(785, 3), Q::zero()]);
        let j = f.to_json();
        assert_eq!(j.leading_exponent, "-47/48");
        assert_eq!(j.coeffs, vec!["1", "785/3", "0"]);
        let text = serde_json::to_string(&j).unwrap();
        let back: QExpansionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(QExpansion::from_json(&back).unwrap(), f);
    }
}
