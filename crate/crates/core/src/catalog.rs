//! Unipotent parameters, their spin-lowest K-types, and parameter membership.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::chains::{parse_orbit_columns, validate_union, Chain, ChainUnion};
use crate::error::{Error, Result};
use crate::weights::{Family, GroupType, HalfInt, Weight};

/// Column sizes of a nilpotent orbit carrying a unipotent representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel(Chain);

impl OrbitLabel {
    pub fn from_chain(c: Chain) -> Result<Self> {
        c.validate()?;
        if c.is_a() {
            return Err(Error::InvalidOrbit(c.to_string()));
        }
        Ok(OrbitLabel(c))
    }

    /// Parses labels such as `[15,2]`, `[5,1]` or `[6,3,1]`.
    pub fn parse(family: Family, s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let cols: Vec<i64> = inner
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::InvalidOrbit(s.to_string())))
            .collect::<Result<_>>()?;
        if family == Family::D && cols.len() == 3 && cols[1] == 1 && cols[2] == 1 && cols[0] % 2 == 0 {
            return Err(Error::InducedNotUnipotent(s.to_string()));
        }
        let fam = family.to_string();
        let chain = parse_orbit_columns(&fam, &cols).ok_or_else(|| Error::InvalidOrbit(s.to_string()))?;
        OrbitLabel::from_chain(chain)
    }

    pub fn chain(&self) -> Chain {
        self.0
    }

    pub fn family(&self) -> Family {
        self.0.family().expect("orbit chains are not of type A")
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn columns(&self) -> Vec<i64> {
        match self.0 {
            Chain::B { k, n: 0 } => vec![2 * k + 1],
            Chain::B { k, n } => vec![2 * k + 1, 2 * n],
            Chain::CEven { n } | Chain::DEven { n } => vec![2 * n],
            Chain::COdd { n } => vec![2 * n - 1, 1],
            Chain::DMixed { n, k } => vec![2 * n, 2 * k - 1, 1],
            Chain::A { .. } => unreachable!(),
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.columns().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", cols.join(","))
    }
}

/// A Zhelobenko parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZhParam {
    pub lambda_l: Weight,
    pub lambda_r: Weight,
}

impl ZhParam {
    pub fn new(lambda_l: Weight, lambda_r: Weight) -> Result<Self> {
        let diff = lambda_l.checked_sub(&lambda_r)?;
        if !diff.is_integral() {
            return Err(Error::NonIntegral(diff.to_string()));
        }
        Ok(ZhParam { lambda_l, lambda_r })
    }

    pub fn group(&self) -> GroupType {
        self.lambda_l.group
    }

    pub fn columns(&self) -> Vec<(HalfInt, HalfInt)> {
        self.lambda_l.coords.iter().copied().zip(self.lambda_r.coords.iter().copied()).collect()
    }
}

/// The parameter of the unipotent representation attached to `o`.
pub fn unipotent_param(o: &OrbitLabel) -> ZhParam {
    let (l, r) = o.chain().zhelobenko_rows();
    let g = GroupType::new(o.family(), o.rank());
    ZhParam { lambda_l: Weight::new(g, l).expect("rank"), lambda_r: Weight::new(g, r).expect("rank") }
}

/// Spin-lowest K-type of the unipotent representation of a non-A chain, as
/// integer coordinates.
pub fn theta_o_coords(x: &Chain) -> Vec<i64> {
    match *x {
        Chain::B { k, n } => {
            let mut v: Vec<i64> = (0..n).flat_map(|j| [k + n - 1 - 2 * j; 2]).collect();
            v.extend(std::iter::repeat_n(0, (k - n) as usize));
            v
        }
        Chain::CEven { n } | Chain::DEven { n } => vec![0; n as usize],
        Chain::COdd { n } => {
            let mut v = vec![0; n as usize];
            v[0] = n;
            v
        }
        Chain::DMixed { n, k } => {
            let mut v: Vec<i64> = (n - k..n + k).rev().collect();
            v.extend(std::iter::repeat_n(0, (n - k) as usize));
            v
        }
        Chain::A { .. } => Vec::new(),
    }
}

/// Spin-lowest K-type of the unipotent representation attached to `o`.
pub fn theta_o(o: &OrbitLabel) -> Weight {
    let g = GroupType::new(o.family(), o.rank());
    Weight::from_ints(g, &theta_o_coords(&o.chain())).expect("rank")
}

/// All non-A chains of `family` with at most `max_len` coordinates.
pub fn x_chains(family: Family, max_len: usize) -> Vec<Chain> {
    let m = max_len as i64;
    let mut out = Vec::new();
    match family {
        Family::A => {}
        Family::B => {
            for k in 1..=m {
                for n in 0..=k.min(m - k) {
                    out.push(Chain::B { k, n });
                }
            }
        }
        Family::C => {
            for n in 1..=m {
                out.push(Chain::CEven { n });
                out.push(Chain::COdd { n });
            }
        }
        Family::D => {
            for n in 1..=m {
                out.push(Chain::DEven { n });
            }
            for n in 2..=m {
                for k in 2..=n.min(m - n) {
                    out.push(Chain::DMixed { n, k });
                }
            }
        }
    }
    out
}

/// A chain union has exactly one non-A chain and a connected linkage graph.
pub fn is_scattered(u: &ChainUnion) -> bool {
    u.x_chain.is_some() && u.is_interlaced()
}

/// Result of a membership search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Union(ChainUnion),
    NotInGhatD,
}

type Column = (HalfInt, HalfInt);

fn normalize(c: Column, signed: bool) -> Column {
    if signed {
        c.max((-c.0, -c.1))
    } else {
        c
    }
}

fn chain_columns(c: &Chain, signed: bool) -> BTreeMap<Column, usize> {
    let (l, r) = c.zhelobenko_rows();
    let mut m = BTreeMap::new();
    for col in l.into_iter().zip(r) {
        *m.entry(normalize(col, signed)).or_insert(0) += 1;
    }
    m
}

/// Every decomposition of `p` into chains of `g`, in canonical order.
pub fn decompose_parameter_all(p: &ZhParam, g: GroupType) -> Vec<ChainUnion> {
    if p.lambda_l.group != g || p.lambda_r.group != g {
        return Vec::new();
    }
    let signed = g.family != Family::A;
    let mut target: BTreeMap<Column, usize> = BTreeMap::new();
    for col in p.columns() {
        *target.entry(normalize(col, signed)).or_insert(0) += 1;
    }
    let max_abs = p
        .columns()
        .iter()
        .flat_map(|(a, b)| [a.abs().twice(), b.abs().twice()])
        .max()
        .unwrap_or(0);
    let min_small = if g.family == Family::A { 0 } else { 1 };
    let mut cands: Vec<Chain> = x_chains(g.family, g.rank);
    for big in min_small..=max_abs {
        for small in (min_small..=big).filter(|s| (big - s) % 2 == 0) {
            let c = Chain::A { big, small };
            if c.len() <= g.rank {
                cands.push(c);
            }
        }
    }
    let cand_cols: Vec<(Chain, BTreeMap<Column, usize>)> =
        cands.into_iter().map(|c| (c, chain_columns(&c, signed))).collect();

    let mut found = Vec::new();
    let mut chosen = Vec::new();
    search(&mut target, &cand_cols, &mut chosen, &mut found, g);
    found.sort();
    found.dedup();
    found
}

fn search(
    remaining: &mut BTreeMap<Column, usize>,
    cands: &[(Chain, BTreeMap<Column, usize>)],
    chosen: &mut Vec<Chain>,
    found: &mut Vec<ChainUnion>,
    g: GroupType,
) {
    let Some((&pivot, _)) = remaining.iter().next_back() else {
        if let Ok(u) = validate_union(g, chosen) {
            found.push(u);
        }
        return;
    };
    let have_x = chosen.iter().any(|c| !c.is_a());
    for (c, cols) in cands {
        if !cols.contains_key(&pivot) || (have_x && !c.is_a()) {
            continue;
        }
        if cols.iter().any(|(k, n)| remaining.get(k).copied().unwrap_or(0) < *n) {
            continue;
        }
        for (k, n) in cols {
            let e = remaining.get_mut(k).unwrap();
            *e -= n;
            if *e == 0 {
                remaining.remove(k);
            }
        }
        chosen.push(*c);
        search(remaining, cands, chosen, found, g);
        chosen.pop();
        for (k, n) in cols {
            *remaining.entry(*k).or_insert(0) += n;
        }
    }
}

/// Decomposes a parameter into chains, up to column permutation and joint
/// sign changes of columns.
pub fn decompose_parameter(p: &ZhParam, g: GroupType) -> Membership {
    match decompose_parameter_all(p, g).into_iter().next() {
        Some(u) => Membership::Union(u),
        None => Membership::NotInGhatD,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn param(f: Family, l: &[i64], r: &[i64]) -> ZhParam {
        let g = GroupType::new(f, l.len());
        let h = |v: &[i64]| Weight::new(g, v.iter().map(|&x| HalfInt::from_twice(x)).collect()).unwrap();
        ZhParam::new(h(l), h(r)).unwrap()
    }

    #[test]
    fn orbit_labels() {
        let o = OrbitLabel::parse(Family::B, "[15,2]").unwrap();
        assert_eq!(o.chain(), Chain::B { k: 7, n: 1 });
        assert_eq!(o.to_string(), "[15,2]");
        assert_eq!(OrbitLabel::parse(Family::C, "[5,1]").unwrap().chain(), Chain::COdd { n: 3 });
        assert_eq!(OrbitLabel::parse(Family::D, "[6,3,1]").unwrap().chain(), Chain::DMixed { n: 3, k: 2 });
        assert!(matches!(OrbitLabel::parse(Family::D, "[6,1,1]"), Err(Error::InducedNotUnipotent(_))));
        assert!(OrbitLabel::parse(Family::C, "[5]").is_err());
    }

    #[test]
    fn unipotent_params() {
        let p = unipotent_param(&OrbitLabel::parse(Family::C, "[4]").unwrap());
        assert_eq!(p.lambda_l.to_ints().unwrap(), vec![1, 2]);
        assert_eq!(p.lambda_l, p.lambda_r);
        let p = unipotent_param(&OrbitLabel::parse(Family::B, "[15,2]").unwrap());
        assert_eq!(p.lambda_l.twice(), vec![1, 3, 5, 7, 9, 11, 13, 2]);
        assert_eq!(p.lambda_l, p.lambda_r);
    }

    #[test]
    fn theta_o_table() {
        let t = |f, s| theta_o(&OrbitLabel::parse(f, s).unwrap()).to_ints().unwrap();
        assert_eq!(t(Family::B, "[15,2]"), vec![7, 7, 0, 0, 0, 0, 0, 0]);
        assert_eq!(t(Family::C, "[6]"), vec![0, 0, 0]);
        assert_eq!(t(Family::C, "[5,1]"), vec![3, 0, 0]);
        assert_eq!(t(Family::D, "[8]"), vec![0; 4]);
        assert_eq!(t(Family::D, "[6,3,1]"), vec![4, 3, 2, 1, 0]);
        assert_eq!(t(Family::B, "[9,4]"), vec![5, 5, 3, 3, 0, 0]);
    }

    #[test]
    fn membership_examples() {
        let g3 = GroupType::new(Family::C, 3);
        let even = param(Family::C, &[5, 3, 1], &[5, 3, 1]);
        assert_eq!(decompose_parameter(&even, g3), Membership::NotInGhatD);
        let p = param(Family::C, &[2, 4], &[2, 4]);
        let u = decompose_parameter(&p, GroupType::new(Family::C, 2));
        assert_eq!(u, Membership::Union(ChainUnion::parse("C[4]", None).unwrap()));
        let p = param(Family::C, &[2, 1, 3], &[-2, 1, 3]);
        let all = decompose_parameter_all(&p, g3);
        assert_eq!(all, vec![ChainUnion::parse("A(2,2)+C[3,1]", None).unwrap()]);
        // The same parameter with a column flipped and permuted.
        let p = param(Family::C, &[3, -2, 1], &[3, 2, 1]);
        assert_eq!(decompose_parameter_all(&p, g3).len(), 1);
    }

    #[test]
    fn scatteredness() {
        assert!(is_scattered(&ChainUnion::parse("A(2,2)+C[3,1]", None).unwrap()));
        assert!(!is_scattered(&ChainUnion::parse("A(5,5)+C[2]", None).unwrap()));
        assert!(is_scattered(&ChainUnion::parse("A(18,12)+A(8,8)+A(6,4)+B[15,2]", None).unwrap()));
        assert!(!is_scattered(&ChainUnion::parse("A(3,1)", Some(Family::C)).unwrap()));
    }

    #[test]
    fn x_chain_listing() {
        assert_eq!(x_chains(Family::B, 2).len(), 3);
        assert_eq!(x_chains(Family::D, 4), vec![
            Chain::DEven { n: 1 },
            Chain::DEven { n: 2 },
            Chain::DEven { n: 3 },
            Chain::DEven { n: 4 },
            Chain::DMixed { n: 2, k: 2 }
        ]);
    }
}
