//! Primes in short windows `[X, rX]` for every reduced residue class, checked
//! by a segmented sieve, and the analytic lower bound that takes over for
//! large `X`.

use crate::error::{Error, Result};
use crate::rat::{fmt_q, q, Q};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

/// The threshold above which the analytic bound applies for modulus 30.
pub const X_PI_30: u64 = 789_693_271;
pub const C_PI_30: f64 = 0.0005661;

const SEGMENT: u64 = 1 << 21;

#[derive(Clone, Debug, PartialEq)]
pub struct WindowConfig {
    pub modulus: u64,
    pub ratio: Q,
    pub x_min: u64,
    pub x_max: u64,
    pub c_pi: Option<f64>,
    pub x_pi: Option<u64>,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig {
            modulus: 30,
            ratio: q(28, 27),
            x_min: 6496,
            x_max: 1_000_000,
            c_pi: Some(C_PI_30),
            x_pi: Some(X_PI_30),
        }
    }
}

impl WindowConfig {
    /// The full range up to the analytic threshold.
    pub fn full() -> Self {
        WindowConfig { x_max: X_PI_30, ..Default::default() }
    }

    /// Residues in `[0, modulus)` coprime to the modulus.
    pub fn residues(&self) -> Vec<u64> {
        (0..self.modulus).filter(|a| a.gcd(&self.modulus) == 1).collect()
    }

    fn validate(&self) -> Result<()> {
        if self.modulus == 0 {
            return Err(Error::Precondition("modulus must be positive".into()));
        }
        if self.ratio <= Q::one() {
            return Err(Error::Precondition(format!("ratio {} must exceed 1", fmt_q(&self.ratio))));
        }
        if self.x_max < self.x_min {
            return Err(Error::Precondition("x_max < x_min".into()));
        }
        Ok(())
    }

    fn ratio_parts(&self) -> (u128, u128) {
        (self.ratio.numer().to_u128().unwrap(), self.ratio.denom().to_u128().unwrap())
    }
}

/// Primes up to `n` by the sieve of Eratosthenes.
pub fn simple_sieve(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut comp = vec![false; n + 1];
    let mut out = vec![];
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes in `[lo, hi)` using base primes up to `sqrt(hi)`.
fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    if hi <= lo {
        return vec![];
    }
    let len = (hi - lo) as usize;
    let mut comp = vec![false; len];
    for &p in base {
        if p * p >= hi {
            break;
        }
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut j = start;
        while j < hi {
            comp[(j - lo) as usize] = true;
            j += p;
        }
    }
    (0..len).filter(|&i| !comp[i] && lo + i as u64 >= 2).map(|i| lo + i as u64).collect()
}

/// All primes in `[lo, hi)`.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    let base = simple_sieve((hi as f64).sqrt() as u64 + 1);
    let mut out = vec![];
    let mut a = lo;
    while a < hi {
        let b = (a + SEGMENT).min(hi);
        out.extend(sieve_segment(a, b, &base));
        a = b;
    }
    out
}

/// Independent check for small ranges.
pub fn trial_division_primes(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

/// One consecutive pair in a residue class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePair {
    pub q: u64,
    pub next: u64,
}

impl PrimePair {
    fn ratio(&self) -> f64 {
        self.next as f64 / self.q as f64
    }
}

#[derive(Clone, Debug, Default)]
struct ClassSummary {
    first: Option<u64>,
    last: Option<u64>,
    worst: Option<PrimePair>,
    pairs: u64,
}

#[derive(Clone, Debug)]
struct Summary {
    classes: Vec<ClassSummary>,
}

fn worse(a: Option<PrimePair>, b: Option<PrimePair>) -> Option<PrimePair> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.ratio() > x.ratio() { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Summary {
    fn empty(n: usize) -> Self {
        Summary { classes: vec![ClassSummary::default(); n] }
    }

    /// Pairs `(q, next)` with `q <= x_max` only.
    fn of(primes: &[u64], index: &[Option<usize>], modulus: u64, x_max: u64, n: usize) -> Self {
        let mut s = Summary::empty(n);
        for &p in primes {
            let Some(c) = index[(p % modulus) as usize] else { continue };
            let cs = &mut s.classes[c];
            if let Some(prev) = cs.last {
                if prev <= x_max {
                    cs.pairs += 1;
                    cs.worst = worse(cs.worst, Some(PrimePair { q: prev, next: p }));
                }
            } else {
                cs.first = Some(p);
            }
            cs.last = Some(p);
        }
        s
    }

    fn merge(self, right: Summary, x_max: u64) -> Summary {
        let classes = self
            .classes
            .into_iter()
            .zip(right.classes)
            .map(|(l, r)| {
                let mut worst = worse(l.worst, r.worst);
                let mut pairs = l.pairs + r.pairs;
                if let (Some(a), Some(b)) = (l.last, r.first) {
                    if a <= x_max {
                        pairs += 1;
                        worst = worse(worst, Some(PrimePair { q: a, next: b }));
                    }
                }
                ClassSummary { first: l.first.or(r.first), last: r.last.or(l.last), worst, pairs }
            })
            .collect();
        Summary { classes }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassCertificate {
    pub residue: u64,
    /// First class prime at or above `x_min`.
    pub first: Option<u64>,
    pub worst: Option<PrimePair>,
    pub max_ratio: f64,
    pub pairs: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub residue: u64,
    pub q: u64,
    /// `None` when no class prime was found up to the sieve limit.
    pub next: Option<u64>,
    /// An `X` whose window holds no prime of the class.
    pub x: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowReport {
    pub modulus: u64,
    pub ratio: String,
    pub x_min: u64,
    pub x_max: u64,
    pub pass: bool,
    pub classes: Vec<ClassCertificate>,
    pub counterexample: Option<Counterexample>,
}

/// Check every `X` in `[x_min, x_max]`: the window `[X, ratio X]` holds a prime of each reduced class.
///
/// Equivalent to: the first class prime is at most `ratio x_min`, and consecutive class
/// primes `q < q'` with `x_min <= q <= x_max` satisfy `q' <= ratio q`.
pub fn verify_windows(cfg: &WindowConfig) -> Result<WindowReport> {
    cfg.validate()?;
    let residues = cfg.residues();
    let mut index = vec![None; cfg.modulus as usize];
    for (i, &a) in residues.iter().enumerate() {
        index[a as usize] = Some(i);
    }
    let (num, den) = cfg.ratio_parts();
    let hi = ((cfg.x_max as u128 * num).div_ceil(den) as u64).saturating_add(2);
    let lo = cfg.x_min;
    let base = simple_sieve((hi as f64).sqrt() as u64 + 2);
    let starts: Vec<u64> = (lo..hi).step_by(SEGMENT as usize).collect();
    let n = residues.len();
    let summary = starts
        .par_iter()
        .map(|&a| {
            let b = (a + SEGMENT).min(hi);
            Summary::of(&sieve_segment(a, b, &base), &index, cfg.modulus, cfg.x_max, n)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Summary::empty(n), |acc, s| acc.merge(s, cfg.x_max));

    let mut classes = vec![];
    let mut counterexample: Option<Counterexample> = None;
    let exceeds = |p: u64, q: u64| (p as u128) * den > num * q as u128;
    for (i, cs) in summary.classes.iter().enumerate() {
        let residue = residues[i];
        let worst = cs.worst;
        classes.push(ClassCertificate {
            residue,
            first: cs.first,
            worst,
            max_ratio: worst.map_or(0.0, |w| w.ratio()),
            pairs: cs.pairs,
        });
        if counterexample.is_some() {
            continue;
        }
        match cs.first {
            None => {
                counterexample = Some(Counterexample { residue, q: lo, next: None, x: lo.to_string() });
            }
            Some(f) if exceeds(f, lo) => {
                counterexample = Some(Counterexample { residue, q: lo, next: Some(f), x: lo.to_string() });
            }
            _ => {}
        }
        if counterexample.is_none() {
            if let Some(w) = worst.filter(|w| exceeds(w.next, w.q)) {
                counterexample = Some(Counterexample { residue, q: w.q, next: Some(w.next), x: format!("{}/2", 2 * w.q + 1) });
            } else if let Some(last) = cs.last.filter(|&l| l <= cfg.x_max) {
                // no successor below the sieve limit, which is past ratio * last
                counterexample = Some(Counterexample { residue, q: last, next: None, x: format!("{}/2", 2 * last + 1) });
            }
        }
    }
    Ok(WindowReport {
        modulus: cfg.modulus,
        ratio: fmt_q(&cfg.ratio),
        x_min: cfg.x_min,
        x_max: cfg.x_max,
        pass: counterexample.is_none(),
        classes,
        counterexample,
    })
}

/// The consecutive-pair criterion on an explicit prime list: the first failing `(residue, q, q')`.
pub fn first_failing_pair(primes: &[u64], modulus: u64, ratio: &Q, x_min: u64) -> Option<(u64, u64, u64)> {
    let mut last: std::collections::HashMap<u64, u64> = Default::default();
    for &p in primes {
        let a = p % modulus;
        if a.gcd(&modulus) != 1 {
            continue;
        }
        if let Some(&prev) = last.get(&a) {
            if prev >= x_min && Q::from_integer(p.into()) > ratio * Q::from_integer(prev.into()) {
                return Some((a, prev, p));
            }
        }
        last.insert(a, p);
    }
    None
}

/// Whether `[x, ratio x]` holds a listed prime in the class of `residue`.
pub fn window_has_prime(primes: &[u64], modulus: u64, residue: u64, x: &Q, ratio: &Q) -> bool {
    let top = ratio * x;
    primes.iter().any(|&p| {
        let pq = Q::from_integer(p.into());
        p % modulus == residue && pq >= *x && pq <= top
    })
}

/// `Li(b) - Li(a) = integral of 1/log t over [a, b]`.
pub fn li_difference(a: f64, b: f64) -> f64 {
    // split into pieces so the quadrature sees a smooth, short integrand
    let pieces = 64;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let (x0, x1) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            quadrature::double_exponential::integrate(|t| 1.0 / t.ln(), x0, x1, 1e-10 * h).integral
        })
        .sum()
}

/// `Li(x) = integral of 1/log t over [2, x]`.
pub fn li(x: f64) -> f64 {
    li_difference(2.0, x)
}

pub fn euler_phi(n: u64) -> u64 {
    crate::rat::prime_factors(n).iter().fold(n, |acc, p| acc / p * (p - 1))
}

fn constants(cfg: &WindowConfig, x: f64) -> Result<(f64, f64)> {
    let (Some(c), Some(x_pi)) = (cfg.c_pi, cfg.x_pi) else {
        return Err(Error::Precondition(format!("no c_pi, x_pi supplied for modulus {}", cfg.modulus)));
    };
    if x < x_pi as f64 {
        return Err(Error::Precondition(format!("X = {x} is below x_pi = {x_pi}")));
    }
    Ok((c, cfg.ratio.numer().to_f64().unwrap() / cfg.ratio.denom().to_f64().unwrap()))
}

/// Lower bound on the number of class primes in `[X, rX]`:
/// `(Li(rX) - Li(X))/phi(q) - c X (r/(log X + log r)^2 + 1/(log X)^2)`.
pub fn analytic_lower_bound(x: f64, cfg: &WindowConfig) -> Result<f64> {
    let (c, r) = constants(cfg, x)?;
    let main = li_difference(x, r * x) / euler_phi(cfg.modulus) as f64;
    let lx = x.ln();
    Ok(main - c * x * (r / (lx + r.ln()).powi(2) + 1.0 / (lx * lx)))
}

/// The same bound with the error terms subtracted from each other, as displayed in print.
pub fn analytic_lower_bound_printed(x: f64, cfg: &WindowConfig) -> Result<f64> {
    let (c, r) = constants(cfg, x)?;
    let main = li_difference(x, r * x) / euler_phi(cfg.modulus) as f64;
    let lx = x.ln();
    Ok(main - c * x * (r / (lx + r.ln()).powi(2) - 1.0 / (lx * lx)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segmented_matches_trial_division() {
        assert_eq!(primes_in_range(0, 100_001), trial_division_primes(100_000));
        assert_eq!(primes_in_range(99_000, 100_000), trial_division_primes(100_000).into_iter().filter(|&p| p >= 99_000).collect::<Vec<_>>());
    }

    #[test]
    fn default_threshold_has_a_gap() {
        // 6991 and 7321 are consecutive primes = 1 mod 30, and 7321 > 28 * 6992 / 27
        let r = verify_windows(&WindowConfig::default()).unwrap();
        assert!(!r.pass);
        let ce = r.counterexample.unwrap();
        assert_eq!((ce.residue, ce.q, ce.next), (1, 6991, Some(7321)));
        assert_eq!(r.classes.len(), 8);
    }

    #[test]
    fn windows_pass_from_7060() {
        let r = verify_windows(&WindowConfig { x_min: 7060, ..Default::default() }).unwrap();
        assert!(r.pass, "{:?}", r.counterexample);
        assert!(r.classes.iter().all(|c| c.max_ratio <= 28.0 / 27.0));
        assert!(!verify_windows(&WindowConfig { x_min: 7059, ..Default::default() }).unwrap().pass);
    }

    #[test]
    fn tight_ratio_fails() {
        let cfg = WindowConfig { ratio: q(10001, 10000), ..Default::default() };
        let r = verify_windows(&cfg).unwrap();
        assert!(!r.pass);
        let ce = r.counterexample.unwrap();
        assert!(ce.next.is_some());
    }

    #[test]
    fn bertrand_modulus_one() {
        let cfg = WindowConfig { modulus: 1, ratio: q(2, 1), x_min: 2, x_max: 1_000_000, c_pi: None, x_pi: None };
        assert!(verify_windows(&cfg).unwrap().pass);
    }

    #[test]
    fn failing_pair_gives_empty_window() {
        // class 1 mod 30 with a deliberate gap: 31, 61, 151
        let primes = [31u64, 61, 151, 181];
        let ratio = q(2, 1);
        let (a, q0, _) = first_failing_pair(&primes, 30, &ratio, 31).unwrap();
        assert_eq!((a, q0), (1, 61));
        let x = Q::from_integer(q0.into()) + q(1, 2);
        assert!(!window_has_prime(&primes, 30, a, &x, &ratio));
        assert!(first_failing_pair(&[31, 61, 121, 181], 30, &ratio, 31).is_none());
    }

    #[test]
    fn analytic_bound() {
        let cfg = WindowConfig::default();
        assert_eq!(euler_phi(30), 8);
        let b = analytic_lower_bound(X_PI_30 as f64, &cfg).unwrap();
        assert!(b > 1e3, "{b}");
        let mut prev = b;
        for k in 1..6 {
            let v = analytic_lower_bound(X_PI_30 as f64 * (1 << k) as f64, &cfg).unwrap();
            assert!(v > prev);
            prev = v;
        }
        assert!(analytic_lower_bound(1e6, &cfg).is_err());
        // Li(x) - x/log x grows like x/log^2 x; compare at a known value
        assert!((li(1e6) - 78626.5).abs() < 1.0);
    }
}
