//! Character vectors `(f0, f1, f2)` of the monic MLDE.
//!
//! Two independent routes: the closed hypergeometric formulas (a `3F2` in
//! `K = 1728/j` times a power of `j`) and a Frobenius recursion read off from
//!
//! ```text
//! theta^3 f - (1/2) E2 theta^2 f + ((1/24) E2^2 + (1/72 + a) E4) theta f + b E6 f = 0,
//! ```
//!
//! which is `(D^3 + a E4 D + b E6) f = 0` expanded with `theta E2 = (E2^2 - E4)/12`.

use crate::error::{Error, Result};
use crate::hypergeom::{hg_coefficients, HGParams};
use crate::qseries::{divisor_sums, hauptmodul_k, j_power, QExpansion, QExpansionJson};
use crate::rat::{fmt_q, frac, is_integer, lcm_big, q, qi, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::sync::{Arc, Mutex, OnceLock};

/// `c = 8 (h1 + h2 - 1/2)`.
pub fn central_charge(h1: &Q, h2: &Q) -> Q {
    qi(8) * (h1 + h2 - q(1, 2))
}

/// Effective central charge `c - 24 min(0, h1, h2)`.
pub fn effective_central_charge(h1: &Q, h2: &Q) -> Q {
    let hmin = [Q::zero(), h1.clone(), h2.clone()].into_iter().min().unwrap();
    central_charge(h1, h2) - qi(24) * hmin
}

/// Leading exponents `-c/24, h1 - c/24, h2 - c/24`.
pub fn indicial_roots(h1: &Q, h2: &Q) -> [Q; 3] {
    let r0 = -central_charge(h1, h2) / qi(24);
    [r0.clone(), &r0 + h1, &r0 + h2]
}

/// `(a, b)` with `x^3 - x^2/2 + (a + 1/18) x + b` vanishing at the indicial roots.
pub fn mlde_coefficients(h1: &Q, h2: &Q) -> Result<(Q, Q)> {
    let [r0, r1, r2] = indicial_roots(h1, h2);
    if r0 == r1 || r0 == r2 || r1 == r2 {
        return Err(Error::RepeatedRoots);
    }
    let e2 = &r0 * &r1 + &r0 * &r2 + &r1 * &r2;
    let e3 = &r0 * &r1 * &r2;
    Ok((e2 - q(1, 18), -e3))
}

/// `x^3 - x^2/2 + (a + 1/18) x + b`.
pub fn indicial_polynomial(a: &Q, b: &Q, x: &Q) -> Q {
    x * x * x - x * x / qi(2) + (a + q(1, 18)) * x + b
}

/// One candidate: weights, central charge, normalizations and MLDE data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSpec {
    pub h1: Q,
    pub h2: Q,
    pub c: Q,
    pub a1: Option<BigInt>,
    pub a2: Option<BigInt>,
    pub mlde_a: Q,
    pub mlde_b: Q,
}

impl CharacterSpec {
    /// Requires `h1`, `h2`, `0` pairwise distinct modulo 1.
    pub fn new(h1: Q, h2: Q) -> Result<Self> {
        let (f1, f2) = (frac(&h1), frac(&h2));
        if f1.is_zero() || f2.is_zero() || f1 == f2 {
            return Err(Error::NotDistinctModOne(fmt_q(&h1), fmt_q(&h2)));
        }
        let (mlde_a, mlde_b) = mlde_coefficients(&h1, &h2)?;
        let c = central_charge(&h1, &h2);
        Ok(CharacterSpec { h1, h2, c, a1: None, a2: None, mlde_a, mlde_b })
    }

    pub fn with_normalization(mut self, a1: impl Into<BigInt>, a2: impl Into<BigInt>) -> Self {
        self.a1 = Some(a1.into());
        self.a2 = Some(a2.into());
        self
    }

    pub fn roots(&self) -> [Q; 3] {
        indicial_roots(&self.h1, &self.h2)
    }

    pub fn c_tilde(&self) -> Q {
        effective_central_charge(&self.h1, &self.h2)
    }

    /// `A1`, `A2` with unknown values read as 1.
    pub fn normalization(&self) -> (BigInt, BigInt) {
        (
            self.a1.clone().unwrap_or_else(BigInt::one),
            self.a2.clone().unwrap_or_else(BigInt::one),
        )
    }

    /// The `q^1` coefficient of `f0`.
    pub fn m(&self) -> Q {
        crate::surface::m_of(&(&self.h1 - Q::one()), &(&self.h2 - Q::one())).unwrap_or_else(|_| Q::zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterVector {
    pub spec: CharacterSpec,
    pub f0: QExpansion,
    pub f1: QExpansion,
    pub f2: QExpansion,
}

impl CharacterVector {
    pub fn component(&self, i: usize) -> &QExpansion {
        match i {
            0 => &self.f0,
            1 => &self.f1,
            _ => &self.f2,
        }
    }

    pub fn to_json(&self) -> CharacterVectorJson {
        let (a1, a2) = (self.spec.a1.as_ref().map(|a| a.to_string()), self.spec.a2.as_ref().map(|a| a.to_string()));
        CharacterVectorJson {
            h1: fmt_q(&self.spec.h1),
            h2: fmt_q(&self.spec.h2),
            c: fmt_q(&self.spec.c),
            a1,
            a2,
            mlde_a: fmt_q(&self.spec.mlde_a),
            mlde_b: fmt_q(&self.spec.mlde_b),
            f0: self.f0.to_json(),
            f1: self.f1.to_json(),
            f2: self.f2.to_json(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterVectorJson {
    pub h1: String,
    pub h2: String,
    pub c: String,
    pub a1: Option<String>,
    pub a2: Option<String>,
    pub mlde_a: String,
    pub mlde_b: String,
    pub f0: QExpansionJson,
    pub f1: QExpansionJson,
    pub f2: QExpansionJson,
}

/// `sum_n B_n K^n` to `order` terms, with `K = q k~`.
///
/// Works over the integers: `B_n` and `k~` are cleared to a common
/// denominator, the powers `(q k~)^n` are accumulated exactly, and the one
/// division happens at the end.
fn compose_with_k(coeffs: &[Q], ktilde: &[Q], order: usize) -> Vec<Q> {
    let one = BigInt::one();
    let db = coeffs.iter().take(order).fold(one.clone(), |d, c| lcm_big(&d, c.denom()));
    let dk = ktilde.iter().take(order).fold(one.clone(), |d, c| lcm_big(&d, c.denom()));
    let scaled = |c: &Q, d: &BigInt| c.numer() * (d / c.denom());
    let b: Vec<BigInt> = coeffs.iter().take(order).map(|c| scaled(c, &db)).collect();
    let k: Vec<BigInt> = ktilde.iter().take(order).map(|c| scaled(c, &dk)).collect();
    let top = order.saturating_sub(1);
    // P holds (q k~ dk)^n; B_n P_n is weighted by dk^(top - n) to share the denominator
    let mut power = vec![BigInt::zero(); order];
    power[0] = one.clone();
    let mut acc = vec![BigInt::zero(); order];
    let dk_pows: Vec<BigInt> = std::iter::successors(Some(one), |x| Some(x * &dk)).take(order).collect();
    for (n, bn) in b.iter().enumerate() {
        if !bn.is_zero() {
            let w = bn * &dk_pows[top - n];
            for i in n..order {
                if !power[i].is_zero() {
                    acc[i] += &w * &power[i];
                }
            }
        }
        if n + 1 < order {
            let mut next = vec![BigInt::zero(); order];
            for i in n..order - 1 {
                if power[i].is_zero() {
                    continue;
                }
                for (j, kj) in k.iter().enumerate().take(order - 1 - i) {
                    next[i + j + 1] += &power[i] * kj;
                }
            }
            power = next;
        }
    }
    let den = db * &dk_pows[top];
    acc.into_iter().map(|a| Q::new(a, den.clone())).collect()
}

/// The character vector from the hypergeometric formulas.
pub fn character_vector(spec: &CharacterSpec, order: usize) -> Result<CharacterVector> {
    if order == 0 {
        return Err(Error::OrderTooSmall(1));
    }
    let k = hauptmodul_k(order)?;
    let ktilde = k.coeffs().to_vec();
    let (a1, a2) = spec.normalization();
    let (h1, h2) = (&spec.h1, &spec.h2);
    let build = |params: HGParams, alpha: Q, scale: Q| -> Result<QExpansion> {
        let b = hg_coefficients(&params, order);
        let series = compose_with_k(&b, &ktilde, order);
        let jp = j_power(&alpha, order)?;
        Ok(jp.mul(&QExpansion::new(Q::zero(), series)).scale(&scale))
    };
    let f0 = build(HGParams::for_f0(h1, h2)?, &spec.c / qi(24), Q::one())?;
    let f1 = build(
        HGParams::for_f1(h1, h2)?,
        (qi(2) * h2 - qi(4) * h1 - Q::one()) / qi(6),
        Q::from_integer(a1),
    )?;
    let f2 = build(
        HGParams::for_f1(h2, h1)?,
        (qi(2) * h1 - qi(4) * h2 - Q::one()) / qi(6),
        Q::from_integer(a2),
    )?;
    Ok(CharacterVector { spec: spec.clone(), f0, f1, f2 })
}

/// Character vector built coordinate by coordinate with the Frobenius recursion.
pub fn character_vector_frobenius(spec: &CharacterSpec, order: usize) -> Result<CharacterVector> {
    let (a1, a2) = spec.normalization();
    let r = spec.roots();
    let f0 = frobenius_solve(&spec.mlde_a, &spec.mlde_b, &r[0], order)?;
    let f1 = frobenius_solve(&spec.mlde_a, &spec.mlde_b, &r[1], order)?.scale(&Q::from_integer(a1));
    let f2 = frobenius_solve(&spec.mlde_a, &spec.mlde_b, &r[2], order)?.scale(&Q::from_integer(a2));
    Ok(CharacterVector { spec: spec.clone(), f0, f1, f2 })
}

/// The solution `q^exponent (1 + O(q))` of `(D^3 + a E4 D + b E6) f = 0`.
pub fn frobenius_solve(a: &Q, b: &Q, exponent: &Q, order: usize) -> Result<QExpansion> {
    let rec = Recurrence::new(a, b, exponent)?;
    let coeffs = rec.rational_coeffs(order)?;
    Ok(QExpansion::new(exponent.clone(), coeffs))
}

/// Integer tables of `E2, E4, E6, E2^2`, shared between threads.
#[derive(Debug)]
pub struct EisensteinTable {
    pub e2: Vec<i128>,
    pub e4: Vec<i128>,
    pub e6: Vec<i128>,
    pub e2sq: Vec<i128>,
}

impl EisensteinTable {
    fn build(order: usize) -> Self {
        let conv = |s: Vec<BigInt>, f: i128| -> Vec<i128> {
            s.into_iter()
                .enumerate()
                .map(|(n, x)| if n == 0 { 1 } else { x.to_i128().expect("divisor sum fits") * f })
                .collect()
        };
        let e2 = conv(divisor_sums(1, order), -24);
        let e4 = conv(divisor_sums(3, order), 240);
        let e6 = conv(divisor_sums(5, order), -504);
        let mut e2sq = vec![0i128; order];
        for (n, slot) in e2sq.iter_mut().enumerate() {
            *slot = (0..=n).map(|i| e2[i] * e2[n - i]).sum();
        }
        EisensteinTable { e2, e4, e6, e2sq }
    }

    /// A table with at least `order` entries.
    pub fn get(order: usize) -> Arc<EisensteinTable> {
        static CACHE: OnceLock<Mutex<Arc<EisensteinTable>>> = OnceLock::new();
        let cell = CACHE.get_or_init(|| Mutex::new(Arc::new(EisensteinTable::build(64))));
        let mut guard = cell.lock().unwrap();
        if guard.e2.len() < order {
            let n = order.max(2 * guard.e2.len());
            *guard = Arc::new(EisensteinTable::build(n));
        }
        guard.clone()
    }
}

/// The Frobenius recursion with all rational data cleared to integers.
///
/// With `s = sigma/D`, every coefficient polynomial is multiplied by a common
/// `W` so that `W Q_k(sigma/D)` is an integer polynomial in `sigma`.
#[derive(Clone, Debug)]
pub struct Recurrence {
    exponent: Q,
    rho: i128,
    den: i128,
    a3: i128,
    ca2: BigInt,
    ca1_h: i128,
    ca1_e4: BigInt,
    ca0: BigInt,
}

/// Result of scanning a coordinate for integrality and sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegralScan {
    Integral,
    NonIntegral { index: usize, denominator: BigInt, value: Q },
    Negative { index: usize },
}

impl Recurrence {
    pub fn new(a: &Q, b: &Q, exponent: &Q) -> Result<Self> {
        if !indicial_polynomial(a, b, exponent).is_zero() {
            return Err(Error::NotIndicialRoot(fmt_q(exponent)));
        }
        let den_big = exponent.denom().clone();
        let den = den_big.to_i128().ok_or(Error::Precondition("exponent denominator too large".into()))?;
        let rho = exponent.numer().to_i128().ok_or(Error::Precondition("exponent numerator too large".into()))?;
        let alpha = a + q(1, 72);
        let d3 = &den_big * &den_big * &den_big;
        let w = [
            d3.clone(),
            BigInt::from(2) * &den_big * &den_big,
            &den_big * BigInt::from(24).lcm(alpha.denom()),
            b.denom().clone(),
        ]
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x));
        let wq = Q::from_integer(w.clone());
        let dq = Q::from_integer(den_big.clone());
        let as_int = |x: Q| -> BigInt {
            debug_assert!(is_integer(&x));
            x.to_integer()
        };
        let a3 = as_int(&wq / Q::from_integer(d3)).to_i128().ok_or(Error::Precondition("scale too large".into()))?;
        let ca2 = as_int(&wq / (qi(2) * &dq * &dq));
        let ca1_h = as_int(&wq / (qi(24) * &dq)).to_i128().ok_or(Error::Precondition("scale too large".into()))?;
        let ca1_e4 = as_int(&alpha * &wq / &dq);
        let ca0 = as_int(b * &wq);
        Ok(Recurrence { exponent: exponent.clone(), rho, den, a3, ca2, ca1_h, ca1_e4, ca0 })
    }

    pub fn exponent(&self) -> &Q {
        &self.exponent
    }

    /// Per-index integer coefficient triples `(A2_k, A1_k, A0_k)`.
    fn weights(&self, order: usize) -> Vec<[BigInt; 3]> {
        let t = EisensteinTable::get(order);
        (0..order)
            .map(|k| {
                let a2 = -&self.ca2 * BigInt::from(t.e2[k]);
                let a1 = BigInt::from(self.ca1_h * t.e2sq[k]) + &self.ca1_e4 * BigInt::from(t.e4[k]);
                let a0 = &self.ca0 * BigInt::from(t.e6[k]);
                [a2, a1, a0]
            })
            .collect()
    }

    /// Fast path: the same weights as `i128` when they fit comfortably.
    fn small_weights(w: &[[BigInt; 3]]) -> Option<Vec<[i128; 3]>> {
        let cap = BigInt::from(1i128 << 100);
        w.iter()
            .map(|t| {
                if t.iter().all(|x| x.abs() < cap) {
                    Some([t[0].to_i128()?, t[1].to_i128()?, t[2].to_i128()?])
                } else {
                    None
                }
            })
            .collect()
    }

    fn sigma(&self, n: usize) -> i128 {
        self.rho + self.den * n as i128
    }

    /// `W P(sigma_n / D)` for the leading coefficient at step `n`.
    fn leading(&self, n: usize, w0: &[BigInt; 3]) -> BigInt {
        let s = BigInt::from(self.sigma(n));
        BigInt::from(self.a3) * &s * &s * &s + &w0[0] * &s * &s + &w0[1] * &s + &w0[2]
    }

    /// Runs the recursion; `visit(n, numerator_scaled, common_den)` may stop early.
    fn run<F>(&self, order: usize, mut visit: F) -> Result<()>
    where
        F: FnMut(usize, &BigInt, &BigInt) -> bool,
    {
        if order == 0 {
            return Ok(());
        }
        let w = self.weights(order);
        let small = Self::small_weights(&w);
        let mut l = BigInt::one();
        let mut nums: Vec<BigInt> = Vec::with_capacity(order);
        nums.push(BigInt::one());
        if !visit(0, &nums[0], &l) {
            return Ok(());
        }
        for n in 1..order {
            let mut t = BigInt::zero();
            match &small {
                Some(sw) => {
                    for k in 1..=n {
                        let c = &nums[n - k];
                        if c.is_zero() {
                            continue;
                        }
                        let s = self.sigma(n - k);
                        let [a2, a1, a0] = sw[k];
                        let wk = s
                            .checked_mul(s)
                            .and_then(|s2| a2.checked_mul(s2))
                            .and_then(|x| a1.checked_mul(s).and_then(|y| x.checked_add(y)))
                            .and_then(|x| x.checked_add(a0));
                        match wk {
                            Some(v) => t += c * v,
                            None => {
                                let sb = BigInt::from(s);
                                t += c * (BigInt::from(a2) * &sb * &sb + BigInt::from(a1) * &sb + BigInt::from(a0));
                            }
                        }
                    }
                }
                None => {
                    for k in 1..=n {
                        let c = &nums[n - k];
                        if c.is_zero() {
                            continue;
                        }
                        let sb = BigInt::from(self.sigma(n - k));
                        let [a2, a1, a0] = &w[k];
                        t += c * (a2 * &sb * &sb + a1 * &sb + a0);
                    }
                }
            }
            let lead = self.leading(n, &w[0]);
            if lead.is_zero() {
                return Err(Error::Resonance(fmt_q(&self.exponent)));
            }
            // c_n = -t / (l * lead)
            let mut num = -t;
            let mut den = &l * &lead;
            if den.is_negative() {
                num = -num;
                den = -den;
            }
            let g = num.gcd(&den);
            if !g.is_one() && !g.is_zero() {
                num /= &g;
                den /= &g;
            }
            if num.is_zero() {
                den = BigInt::one();
            }
            // bring everything to the common denominator lcm(l, den)
            let new_l = l.lcm(&den);
            if new_l != l {
                let f = &new_l / &l;
                for x in nums.iter_mut() {
                    *x *= &f;
                }
                l = new_l;
            }
            let scaled = num * (&l / &den);
            nums.push(scaled);
            if !visit(n, &nums[n], &l) {
                return Ok(());
            }
        }
        Ok(())
    }

    /// All coefficients as exact rationals.
    pub fn rational_coeffs(&self, order: usize) -> Result<Vec<Q>> {
        let mut out = Vec::with_capacity(order);
        self.run(order, |_, num, l| {
            out.push(Q::new(num.clone(), l.clone()));
            true
        })?;
        Ok(out)
    }

    /// Scan for the first non-integral or negative coefficient.
    pub fn integral_scan(&self, order: usize) -> Result<IntegralScan> {
        let mut verdict = IntegralScan::Integral;
        self.run(order, |n, num, l| {
            if !l.is_one() {
                let value = Q::new(num.clone(), l.clone());
                verdict = IntegralScan::NonIntegral { index: n, denominator: value.denom().clone(), value };
                return false;
            }
            if num.is_negative() {
                verdict = IntegralScan::Negative { index: n };
                return false;
            }
            true
        })?;
        Ok(verdict)
    }

    /// Index of the first negative coefficient, if any.
    pub fn first_negative(&self, order: usize) -> Result<Option<usize>> {
        let mut found = None;
        self.run(order, |n, num, _| {
            if num.is_negative() {
                found = Some(n);
                return false;
            }
            true
        })?;
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(f: &QExpansion) -> Vec<i64> {
        f.coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn central_charges_from_table() {
        assert_eq!(central_charge(&q(3, 16), &q(1, 2)), q(3, 2));
        assert_eq!(central_charge(&Q::zero(), &Q::zero()), qi(-4));
        assert_eq!(central_charge(&q(3, 2), &q(15, 16)), q(31, 2));
    }

    #[test]
    fn mlde_coefficients_back_substitute() {
        for (h1, h2) in [(q(1, 16), q(1, 2)), (q(-2, 7), q(-3, 7)), (q(3, 2), q(31, 16))] {
            let (a, b) = mlde_coefficients(&h1, &h2).unwrap();
            let roots = indicial_roots(&h1, &h2);
            assert_eq!(roots.iter().sum::<Q>(), q(1, 2));
            for r in &roots {
                assert!(indicial_polynomial(&a, &b, r).is_zero());
            }
        }
        let r = indicial_roots(&q(1, 16), &q(1, 2));
        assert_eq!(r, [q(-1, 48), q(1, 24), q(23, 48)]);
        let r = indicial_roots(&q(-2, 7), &q(-3, 7));
        assert_eq!(r, [q(17, 42), q(5, 42), q(-1, 42)]);
        assert_eq!(mlde_coefficients(&Q::zero(), &q(1, 2)), Err(Error::RepeatedRoots));
    }

    #[test]
    fn spec_rejects_congruent_weights() {
        assert!(CharacterSpec::new(q(1, 2), q(3, 2)).is_err());
        assert!(CharacterSpec::new(qi(1), q(3, 2)).is_err());
        assert!(CharacterSpec::new(q(3, 2), q(31, 16)).is_ok());
    }

    #[test]
    fn golden_first_row() {
        let spec = CharacterSpec::new(q(3, 2), q(31, 16)).unwrap().with_normalization(4371, 96256);
        let v = character_vector(&spec, 5).unwrap();
        assert_eq!(ints(&v.f0), [1, 0, 96256, 9646891, 366845011]);
        assert_eq!(ints(&v.f1)[..3], [4371, 1143745, 64680601]);
        assert_eq!(ints(&v.f2)[..3], [96256, 10602496, 420831232]);
        assert_eq!(v.f0.leading_exponent(), &(-&spec.c / qi(24)));
        let spec = CharacterSpec::new(q(3, 2), q(11, 16)).unwrap();
        let v = character_vector(&spec, 4).unwrap();
        assert_eq!(ints(&v.f0), [1, 270, 18171, 375741]);
    }

    #[test]
    fn recursion_agrees_with_hypergeometric_route() {
        for (h1, h2) in [(q(3, 2), q(31, 16)), (q(2, 5), q(3, 5)), (q(-2, 7), q(-3, 7)), (q(1, 16), q(1, 2))] {
            let spec = CharacterSpec::new(h1, h2).unwrap();
            let a = character_vector(&spec, 20).unwrap();
            let b = character_vector_frobenius(&spec, 20).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn frobenius_preconditions() {
        let (a, b) = mlde_coefficients(&q(3, 2), &q(31, 16)).unwrap();
        assert!(matches!(frobenius_solve(&a, &b, &q(1, 3), 5), Err(Error::NotIndicialRoot(_))));
        // roots 0, 1, -1/2: exponent 0 resonates with 1
        let roots = [Q::zero(), Q::one(), q(-1, 2)];
        let e2 = &roots[0] * &roots[1] + &roots[0] * &roots[2] + &roots[1] * &roots[2];
        let e3 = &roots[0] * &roots[1] * &roots[2];
        let (a, b) = (e2 - q(1, 18), -e3);
        assert!(matches!(frobenius_solve(&a, &b, &Q::zero(), 5), Err(Error::Resonance(_))));
        assert!(frobenius_solve(&a, &b, &Q::one(), 5).is_ok());
    }

    #[test]
    fn integral_scan_reports_first_failure() {
        let spec = CharacterSpec::new(q(25, 16) + Q::one(), q(-1, 2)).unwrap();
        let rec = Recurrence::new(&spec.mlde_a, &spec.mlde_b, &spec.roots()[0]).unwrap();
        match rec.integral_scan(40).unwrap() {
            IntegralScan::NonIntegral { index, denominator, .. } => {
                assert!(index <= 3);
                assert!(denominator > BigInt::one());
            }
            other => panic!("unexpected {other:?}"),
        }
        let spec = CharacterSpec::new(q(3, 5), q(2, 5)).unwrap();
        let rec = Recurrence::new(&spec.mlde_a, &spec.mlde_b, &spec.roots()[0]).unwrap();
        assert_eq!(rec.integral_scan(200).unwrap(), IntegralScan::Integral);
    }
}
