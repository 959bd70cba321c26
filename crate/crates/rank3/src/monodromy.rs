//! Admissible `rho(T)` exponent triples and the residue pairs `{h1, h2} mod 1`
//! they allow.

use crate::rat::{frac, q, Q};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleTag {
    Imprimitive { n: u32, k: u32 },
    Primitive { p: u32, r: u32 },
}

/// Three eigenphases in `[0, 1)`, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentTriple {
    pub r: [Q; 3],
    pub tag: TripleTag,
}

impl ExponentTriple {
    pub fn new(a: Q, b: Q, c: Q, tag: TripleTag) -> Self {
        let mut r = [frac(&a), frac(&b), frac(&c)];
        r.sort();
        ExponentTriple { r, tag }
    }

    pub fn is_distinct(&self) -> bool {
        self.r[0] != self.r[1] && self.r[1] != self.r[2]
    }

    /// `r0 + r1 + r2 mod 1`; equals `1/2` since `det rho(T) = -1`.
    pub fn sum_mod_one(&self) -> Q {
        frac(&(&self.r[0] + &self.r[1] + &self.r[2]))
    }

    /// The three residue pairs obtained by choosing which eigenphase is the vacuum's.
    pub fn residue_pairs(&self) -> [(Q, Q); 3] {
        let pair = |i: usize, j: usize, k: usize| normalize(&self.r[j] - &self.r[i], &self.r[k] - &self.r[i]);
        [pair(0, 1, 2), pair(1, 0, 2), pair(2, 0, 1)]
    }
}

/// Reduce mod 1 and order as `h1 >= h2`.
pub fn normalize(a: Q, b: Q) -> (Q, Q) {
    let (a, b) = (frac(&a), frac(&b));
    if a >= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// `{k/n, -k/2n, (n-k)/2n}` for even `n | 24`, `gcd(k, n) = 1`, as unordered sets.
pub fn imprimitive_triples() -> Vec<ExponentTriple> {
    let mut out: Vec<ExponentTriple> = vec![];
    for n in [2u32, 4, 6, 8, 12, 24] {
        for k in 1..n {
            if k.gcd(&n) != 1 {
                continue;
            }
            let (ni, ki) = (n as i64, k as i64);
            let t = ExponentTriple::new(q(ki, ni), q(-ki, 2 * ni), q(ni - ki, 2 * ni), TripleTag::Imprimitive { n, k });
            if !out.iter().any(|s| s.r == t.r) {
                out.push(t);
            }
        }
    }
    out
}

/// The twelve primitive triples.
pub fn primitive_triples() -> Vec<ExponentTriple> {
    let rows: [(u32, u32, [(i64, i64); 3]); 12] = [
        (5, 2, [(1, 2), (3, 10), (7, 10)]),
        (5, 2, [(1, 2), (1, 10), (9, 10)]),
        (5, 6, [(1, 6), (11, 30), (29, 30)]),
        (5, 6, [(1, 6), (17, 30), (23, 30)]),
        (5, 6, [(5, 6), (1, 30), (19, 30)]),
        (5, 6, [(5, 6), (7, 30), (13, 30)]),
        (7, 2, [(1, 14), (9, 14), (11, 14)]),
        (7, 2, [(3, 14), (5, 14), (13, 14)]),
        (7, 6, [(13, 42), (19, 42), (31, 42)]),
        (7, 6, [(25, 42), (37, 42), (1, 42)]),
        (7, 6, [(41, 42), (5, 42), (17, 42)]),
        (7, 6, [(11, 42), (23, 42), (29, 42)]),
    ];
    rows.iter()
        .map(|(p, r, t)| {
            let [a, b, c] = t.map(|(n, d)| q(n, d));
            ExponentTriple::new(a, b, c, TripleTag::Primitive { p: *p, r: *r })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DenominatorClass {
    Den5,
    Den7,
    Imprimitive,
}

impl DenominatorClass {
    pub fn from_denominator(n: u32) -> Option<Self> {
        match n {
            5 => Some(Self::Den5),
            7 => Some(Self::Den7),
            16 => Some(Self::Imprimitive),
            _ => None,
        }
    }

    /// The grid step: weights in this class are multiples of `1/modulus`.
    pub fn modulus(self) -> u32 {
        match self {
            Self::Den5 => 5,
            Self::Den7 => 7,
            Self::Imprimitive => 16,
        }
    }

    pub fn triples(self) -> Vec<ExponentTriple> {
        match self {
            Self::Den5 => primitive_triples().into_iter().filter(|t| matches!(t.tag, TripleTag::Primitive { p: 5, .. })).collect(),
            Self::Den7 => primitive_triples().into_iter().filter(|t| matches!(t.tag, TripleTag::Primitive { p: 7, .. })).collect(),
            Self::Imprimitive => imprimitive_triples(),
        }
    }

    /// A weight's denominator is allowed: exactly 5 or 7, or a proper divisor of 16 other than 1.
    pub fn admits_denominator(self, h: &Q) -> bool {
        let d = h.denom();
        match self {
            Self::Den5 => *d == 5.into(),
            Self::Den7 => *d == 7.into(),
            Self::Imprimitive => !d.is_one() && (num_bigint::BigInt::from(16) % d).is_zero(),
        }
    }
}

/// A residue pair with its multiplicity over (triple, vacuum choice).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePair {
    pub h1: Q,
    pub h2: Q,
    pub multiplicity: usize,
}

/// The admissible `{h1, h2} mod 1`, normalized `h1 >= h2`, in sorted order.
pub fn candidate_pairs(class: DenominatorClass) -> Vec<ResiduePair> {
    let mut counts: BTreeMap<(Q, Q), usize> = BTreeMap::new();
    for t in class.triples() {
        for p in t.residue_pairs() {
            *counts.entry(p).or_default() += 1;
        }
    }
    counts.into_iter().map(|((h1, h2), multiplicity)| ResiduePair { h1, h2, multiplicity }).collect()
}

/// Whether `(h1, h2)` reduces to an admissible residue pair of `class`.
pub fn is_admissible_pair(class: DenominatorClass, h1: &Q, h2: &Q) -> bool {
    let key = normalize(h1.clone(), h2.clone());
    candidate_pairs(class).iter().any(|p| (p.h1.clone(), p.h2.clone()) == key)
}

/// The three pair families `{-3k/2n, (n-3k)/2n}`, `{3k/2n, 1/2}`, `{(3k+n)/2n, 1/2}`.
pub fn imprimitive_pair_families() -> Vec<(Q, Q)> {
    let mut out = vec![];
    for n in [2i64, 4, 6, 8, 12, 24] {
        for k in 1..n {
            if k.gcd(&n) != 1 {
                continue;
            }
            out.push(normalize(q(-3 * k, 2 * n), q(n - 3 * k, 2 * n)));
            out.push(normalize(q(3 * k, 2 * n), q(1, 2)));
            out.push(normalize(q(3 * k + n, 2 * n), q(1, 2)));
        }
    }
    out.sort();
    out.dedup();
    out.retain(|(a, b)| !a.is_zero() && !b.is_zero() && a != b);
    out
}
