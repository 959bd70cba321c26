//! Simple Lie algebras: dimensions, explicit root systems, the count `N_G`
//! of positive roots `gamma` with `theta - gamma` a positive root, weight-2
//! dimensions of affine VOAs, and Levi-type decompositions of `V_1`.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    /// `A` needs rank >= 1, `B` >= 2, `C` >= 3, `D` >= 4; exceptional ranks are fixed.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E6 => rank == 6,
            Family::E7 => rank == 7,
            Family::E8 => rank == 8,
            Family::F4 => rank == 4,
            Family::G2 => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::Precondition(format!("{family:?} has no admissible rank {rank}")))
        }
    }

    pub fn exceptional(family: Family) -> Self {
        let rank = match family {
            Family::E6 => 6,
            Family::E7 => 7,
            Family::E8 => 8,
            Family::F4 => 4,
            Family::G2 => 2,
            _ => panic!("{family:?} is classical"),
        };
        SimpleType { family, rank }
    }

    pub fn dim(&self) -> usize {
        dim_of(self.family, self.rank)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A | Family::B | Family::C | Family::D => write!(f, "{:?}{}", self.family, self.rank),
            fam => write!(f, "{fam:?}"),
        }
    }
}

impl std::str::FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let ex = match s {
            "E6" => Some(Family::E6),
            "E7" => Some(Family::E7),
            "E8" => Some(Family::E8),
            "F4" => Some(Family::F4),
            "G2" => Some(Family::G2),
            _ => None,
        };
        if let Some(f) = ex {
            return Ok(SimpleType::exceptional(f));
        }
        let (head, tail) = s.split_at(1.min(s.len()));
        let family = match head {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            _ => return Err(Error::Parse(format!("unknown Lie type {s}"))),
        };
        let rank = tail.parse().map_err(|_| Error::Parse(format!("bad rank in {s}")))?;
        SimpleType::new(family, rank)
    }
}

fn dim_of(family: Family, l: usize) -> usize {
    match family {
        Family::A => l * l + 2 * l,
        Family::B | Family::C => 2 * l * l + l,
        Family::D => 2 * l * l - l,
        Family::E6 => 78,
        Family::E7 => 133,
        Family::E8 => 248,
        Family::F4 => 52,
        Family::G2 => 14,
    }
}

/// `(dim, rank)` from the closed forms.
pub fn dim_rank(t: SimpleType) -> (usize, usize) {
    (t.dim(), t.rank)
}

/// Roots in orthonormal coordinates, stored doubled so that half-integers are integral.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub roots: Vec<Vec<i32>>,
    pub positive: Vec<Vec<i32>>,
    pub theta: Vec<i32>,
}

fn unit(n: usize, i: usize, v: i32) -> Vec<i32> {
    let mut x = vec![0; n];
    x[i] = v;
    x
}

fn add(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `+-2e_i +- 2e_j` (doubled `+-e_i +- e_j`) for `i < j`.
fn pm_pairs(n: usize) -> Vec<Vec<i32>> {
    let mut out = vec![];
    for i in 0..n {
        for j in i + 1..n {
            for (s, t) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                out.push(add(&unit(n, i, s), &unit(n, j, t)));
            }
        }
    }
    out
}

fn e8_roots() -> Vec<Vec<i32>> {
    let mut out = pm_pairs(8);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            out.push((0..8).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
        }
    }
    out
}

fn perp(roots: &[Vec<i32>], to: &[Vec<i32>]) -> Vec<Vec<i32>> {
    roots.iter().filter(|r| to.iter().all(|u| dot(r, u) == 0)).cloned().collect()
}

/// All roots of a family at a rank, without the admissibility check (so `C2` is available).
pub fn roots_unchecked(family: Family, l: usize) -> Vec<Vec<i32>> {
    match family {
        Family::A => {
            let n = l + 1;
            let mut out = vec![];
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        out.push(sub(&unit(n, i, 2), &unit(n, j, 2)));
                    }
                }
            }
            out
        }
        Family::B | Family::C | Family::D => {
            let mut out = pm_pairs(l);
            let s = match family {
                Family::B => 2,
                Family::C => 4,
                _ => 0,
            };
            if s > 0 {
                for i in 0..l {
                    out.push(unit(l, i, s));
                    out.push(unit(l, i, -s));
                }
            }
            out
        }
        Family::E8 => e8_roots(),
        Family::E7 => {
            // orthogonal complement of one root of E8
            let e8 = e8_roots();
            perp(&e8, &[vec![0, 0, 0, 0, 0, 0, 2, 2]])
        }
        Family::E6 => {
            // orthogonal complement of an A2 inside E8
            let e8 = e8_roots();
            perp(&e8, &[vec![0, 0, 0, 0, 0, 0, 2, 2], vec![0, 0, 0, 0, 0, 2, -2, 0]])
        }
        Family::F4 => {
            let mut out = pm_pairs(4);
            for i in 0..4 {
                out.push(unit(4, i, 2));
                out.push(unit(4, i, -2));
            }
            for mask in 0u32..16 {
                out.push((0..4).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
            }
            out
        }
        Family::G2 => {
            let mut out = vec![];
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        out.push(sub(&unit(3, i, 2), &unit(3, j, 2)));
                    }
                }
                let long: Vec<i32> = (0..3).map(|k| if k == i { 4 } else { -2 }).collect();
                out.push(long.iter().map(|x| -x).collect());
                out.push(long);
            }
            out
        }
    }
}

impl RootSystem {
    pub fn new(t: SimpleType) -> Self {
        Self::unchecked(t.family, t.rank)
    }

    pub fn unchecked(family: Family, rank: usize) -> Self {
        let roots = roots_unchecked(family, rank);
        let n = roots[0].len();
        // a functional positive on a chamber; generic weights avoid ties
        let v: Vec<f64> = (0..n).map(|i| (n - i) as f64 * 1000.0 + ((i + 2) as f64).sqrt()).collect();
        let height = |r: &[i32]| r.iter().zip(&v).map(|(a, b)| *a as f64 * b).sum::<f64>();
        let positive: Vec<Vec<i32>> = roots.iter().filter(|r| height(r) > 0.0).cloned().collect();
        let theta = positive.iter().max_by(|a, b| height(a).total_cmp(&height(b))).unwrap().clone();
        RootSystem { family, rank, roots, positive, theta }
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.rank
    }

    /// Whether no positive root can be added to `theta`.
    pub fn theta_is_highest(&self) -> bool {
        let set: HashSet<&Vec<i32>> = self.roots.iter().collect();
        self.positive.iter().all(|a| !set.contains(&add(&self.theta, a)))
    }

    /// Number of positive `gamma` with `theta - gamma` a positive root.
    pub fn theta_count(&self) -> usize {
        let pos: HashSet<&Vec<i32>> = self.positive.iter().collect();
        self.positive.iter().filter(|g| pos.contains(&sub(&self.theta, g))).count()
    }

    /// `dim C_G(S_theta) = rank - 1 + #{roots orthogonal to theta}`.
    pub fn centralizer_dim(&self) -> usize {
        self.rank - 1 + self.roots.iter().filter(|r| dot(r, &self.theta) == 0).count()
    }
}

/// The centralizer of `S_theta`: `A1 + B_(l-2)` for `B_l`, `C_(l-1)` for `C_l`.
pub fn centralizer_dim_bc(family: Family, l: usize) -> Option<usize> {
    match family {
        Family::B if l >= 2 => Some(3 + dim_of(Family::B, l - 2)),
        Family::C if l >= 2 => Some(dim_of(Family::C, l - 1)),
        _ => None,
    }
}

/// `N = (dim G - dim C_G(S) - 3) / 2`.
pub fn theta_count_halfform(dim: usize, centralizer: usize) -> usize {
    (dim - centralizer - 3) / 2
}

/// `N_G` by brute force, checked against the half-dimension formula.
pub fn theta_count_unchecked(family: Family, l: usize) -> Result<usize> {
    let rs = RootSystem::unchecked(family, l);
    let brute = rs.theta_count();
    let cent = centralizer_dim_bc(family, l).unwrap_or_else(|| rs.centralizer_dim());
    let half = theta_count_halfform(dim_of(family, l), cent);
    if brute != half {
        return Err(Error::Mismatch(format!("N for {family:?}{l}: brute force {brute}, half-dimension formula {half}")));
    }
    Ok(brute)
}

pub fn theta_count(t: SimpleType) -> Result<usize> {
    theta_count_unchecked(t.family, t.rank)
}

/// `dim L(G, k)_2 = dim G + C(dim G + 1, 2) - [k = 1] (1 + N_G)`.
pub fn dim_weight2(t: SimpleType, level: u32) -> Result<usize> {
    if level == 0 {
        return Err(Error::Precondition("level must be positive".into()));
    }
    let d = t.dim();
    let base = d + d * (d + 1) / 2;
    Ok(if level == 1 { base - 1 - theta_count(t)? } else { base })
}

/// Weight-one Lie algebra: an abelian part of dimension `abelian` plus simple components.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Decomposition {
    pub abelian: usize,
    pub components: Vec<SimpleType>,
}

impl Decomposition {
    pub fn dim(&self) -> usize {
        self.abelian + self.components.iter().map(|c| c.dim()).sum::<usize>()
    }

    pub fn rank(&self) -> usize {
        self.abelian + self.components.iter().map(|c| c.rank).sum::<usize>()
    }

    pub fn contains(&self, types: &[SimpleType]) -> bool {
        let mut a = self.components.clone();
        let mut b = types.to_vec();
        a.sort();
        b.sort();
        a == b
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        if self.abelian > 0 {
            parts.push(format!("C^{}", self.abelian));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join("+"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankConstraint {
    Exactly(usize),
    AtMost(usize),
}

impl RankConstraint {
    fn allows(self, r: usize) -> bool {
        match self {
            RankConstraint::Exactly(n) => r == n,
            RankConstraint::AtMost(n) => r <= n,
        }
    }

    fn cap(self) -> usize {
        match self {
            RankConstraint::Exactly(n) | RankConstraint::AtMost(n) => n,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LeviConstraints {
    pub rank: Option<RankConstraint>,
    pub allow_abelian: bool,
    pub forbidden: BTreeSet<SimpleType>,
    pub cap: usize,
}

impl Default for LeviConstraints {
    fn default() -> Self {
        LeviConstraints { rank: None, allow_abelian: true, forbidden: BTreeSet::new(), cap: 10_000 }
    }
}

/// Every admissible simple type with `dim <= max_dim` and `rank <= max_rank`, by decreasing dimension.
pub fn simple_types_up_to(max_dim: usize, max_rank: usize) -> Vec<SimpleType> {
    let mut out = vec![];
    for (family, start) in [(Family::A, 1), (Family::B, 2), (Family::C, 3), (Family::D, 4)] {
        let mut l = start;
        while dim_of(family, l) <= max_dim && l <= max_rank {
            out.push(SimpleType { family, rank: l });
            l += 1;
        }
    }
    for f in [Family::E6, Family::E7, Family::E8, Family::F4, Family::G2] {
        let t = SimpleType::exceptional(f);
        if t.dim() <= max_dim && t.rank <= max_rank {
            out.push(t);
        }
    }
    out.sort_by(|a, b| b.dim().cmp(&a.dim()).then(a.cmp(b)));
    out
}

/// All decompositions of a reductive Lie algebra of dimension `target` allowed by `c`.
pub fn levi_search(target: usize, c: &LeviConstraints) -> Result<Vec<Decomposition>> {
    if target > c.cap {
        return Err(Error::Precondition(format!("target {target} exceeds cap {}", c.cap)));
    }
    let max_rank = c.rank.map_or(target, |r| r.cap());
    let types: Vec<SimpleType> =
        simple_types_up_to(target, max_rank).into_iter().filter(|t| !c.forbidden.contains(t)).collect();
    let mut out = vec![];
    let mut stack: Vec<SimpleType> = vec![];
    fn rec(
        types: &[SimpleType],
        from: usize,
        left: usize,
        rank: usize,
        max_rank: usize,
        c: &LeviConstraints,
        stack: &mut Vec<SimpleType>,
        out: &mut Vec<Decomposition>,
    ) {
        // close off with an abelian part of dimension `left`
        if (left == 0 || c.allow_abelian) && rank + left <= max_rank {
            let total = rank + left;
            if c.rank.is_none_or(|r| r.allows(total)) {
                out.push(Decomposition { abelian: left, components: stack.clone() });
            }
        }
        for i in from..types.len() {
            let t = types[i];
            if t.dim() > left || rank + t.rank > max_rank {
                continue;
            }
            stack.push(t);
            rec(types, i, left - t.dim(), rank + t.rank, max_rank, c, stack, out);
            stack.pop();
        }
    }
    rec(&types, 0, target, 0, max_rank, c, &mut stack, &mut out);
    out.sort();
    Ok(out)
}

/// Number of decompositions by a knapsack over (dimension, rank), independent of the search.
pub fn levi_count_oracle(target: usize, c: &LeviConstraints) -> u128 {
    let max_rank = c.rank.map_or(target, |r| r.cap());
    // ways[d][r]: multisets of simple types with total dim d and rank r
    let mut ways = vec![vec![0u128; max_rank + 1]; target + 1];
    ways[0][0] = 1;
    for t in simple_types_up_to(target, max_rank) {
        if c.forbidden.contains(&t) {
            continue;
        }
        let (d, r) = (t.dim(), t.rank);
        for dd in d..=target {
            for rr in r..=max_rank {
                ways[dd][rr] += ways[dd - d][rr - r];
            }
        }
    }
    let mut total = 0u128;
    for (d, row) in ways.iter().enumerate() {
        let ab = target - d;
        if ab > 0 && !c.allow_abelian {
            continue;
        }
        for (r, w) in row.iter().enumerate() {
            let rank = r + ab;
            if rank <= max_rank && c.rank.is_none_or(|x| x.allows(rank)) {
                total += w;
            }
        }
    }
    total
}

/// Ranks and dimensions of the simple Lie algebras as a markdown table.
pub fn dimension_table_markdown(max_rank: usize) -> String {
    let mut s = String::from("| type |");
    for l in 1..=max_rank {
        s.push_str(&format!(" {l} |"));
    }
    s.push_str(" dim |\n|---|");
    for _ in 0..=max_rank {
        s.push_str("---|");
    }
    s.push('\n');
    let forms = [
        (Family::A, 1, "l^2+2l"),
        (Family::B, 2, "2l^2+l"),
        (Family::C, 3, "2l^2+l"),
        (Family::D, 4, "2l^2-l"),
    ];
    for (family, start, form) in forms {
        s.push_str(&format!("| {family:?}_l |"));
        for l in 1..=max_rank {
            if l >= start {
                s.push_str(&format!(" {} |", dim_of(family, l)));
            } else {
                s.push_str("  |");
            }
        }
        s.push_str(&format!(" {form} |\n"));
    }
    let mut row = |name: &str, rank: usize, dim: usize| {
        s.push_str(&format!("| {name} |"));
        for l in 1..=max_rank {
            if l == rank {
                s.push_str(&format!(" {dim} |"));
            } else {
                s.push_str("  |");
            }
        }
        s.push_str("  |\n");
    };
    row("C", 1, 1);
    for f in [Family::G2, Family::F4, Family::E6, Family::E7, Family::E8] {
        let t = SimpleType::exceptional(f);
        row(&t.to_string(), t.rank, t.dim());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(dim_rank(t("B2")), (10, 2));
        assert_eq!(dim_rank(t("E8")), (248, 8));
        assert_eq!(dim_rank(t("A1")), (3, 1));
        assert!(SimpleType::new(Family::C, 2).is_err());
        assert!(SimpleType::new(Family::D, 3).is_err());
        assert!("X3".parse::<SimpleType>().is_err());
    }

    #[test]
    fn root_systems_match_dimensions() {
        let mut all: Vec<SimpleType> = simple_types_up_to(300, 10);
        all.extend([t("E7"), t("E8")]);
        for ty in all {
            let rs = RootSystem::new(ty);
            assert_eq!(rs.dim(), ty.dim(), "{ty}");
            assert_eq!(rs.positive.len() * 2, rs.roots.len());
            assert!(rs.theta_is_highest(), "{ty}");
        }
    }

    #[test]
    fn theta_counts() {
        for l in 2..=10 {
            let b = theta_count_unchecked(Family::B, l).unwrap();
            let c = theta_count_unchecked(Family::C, l).unwrap();
            assert_eq!(b, 4 * l - 6);
            assert_eq!(c, 2 * l - 2);
            assert_eq!(b - c + 4, 2 * l);
        }
        // 2 h^vee - 4 for the exceptional types
        for (ty, hv) in [("G2", 4), ("F4", 9), ("E6", 12), ("E7", 18), ("E8", 30)] {
            assert_eq!(theta_count(t(ty)).unwrap(), 2 * hv - 4, "{ty}");
        }
    }

    #[test]
    fn weight_two() {
        for l in 3..=10 {
            let b = dim_weight2(SimpleType::new(Family::B, l).unwrap(), 1).unwrap();
            for k in 1..=10 {
                let c = dim_weight2(SimpleType::new(Family::C, l).unwrap(), k).unwrap();
                assert!(c >= b);
                if k == 1 {
                    assert_eq!(c - b, 2 * l - 4);
                }
            }
        }
        let a = t("A1");
        assert!(dim_weight2(a, 2).unwrap() > dim_weight2(a, 1).unwrap());
    }

    #[test]
    fn levi_examples() {
        let c = LeviConstraints { rank: Some(RankConstraint::Exactly(12)), ..Default::default() };
        let r = levi_search(300, &c).unwrap();
        assert!(r.iter().any(|d| d.abelian == 0 && d.contains(&[t("F4"), t("E8")])));
        let c = LeviConstraints { rank: Some(RankConstraint::Exactly(1)), ..Default::default() };
        let r = levi_search(3, &c).unwrap();
        assert_eq!(r, vec![Decomposition { abelian: 0, components: vec![t("A1")] }]);
        let c = LeviConstraints { rank: Some(RankConstraint::AtMost(16)), ..Default::default() };
        let r = levi_search(248, &c).unwrap();
        assert!(r.iter().any(|d| d.abelian == 0 && d.contains(&[t("E8")])));
        assert!(r.iter().any(|d| d.abelian == 0 && d.contains(&[t("A1"), t("D11"), t("G2")])));
        assert_eq!(r.len() as u128, levi_count_oracle(248, &c));
    }

    #[test]
    fn markdown_table() {
        let md = dimension_table_markdown(10);
        assert!(md.contains("| A_l | 3 | 8 | 15 |"));
        assert!(md.contains(" 153 |"));
        assert!(md.contains("| E8 |"));
    }
}
