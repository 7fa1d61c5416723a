//! Exhaustive census of scattered representations, the counting
//! recursions, and the rank-extension map.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::catalog::{is_scattered, x_chains};
use crate::chains::{chains_interlaced, validate_union, Chain, ChainUnion};
use crate::error::{Error, Result};
use crate::weights::{Family, GroupType};

/// Default cap on the rank accepted by the enumerator.
pub const DEFAULT_MAX_RANK: usize = 10;

/// All scattered representations of one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub group: GroupType,
    pub reps: Vec<ChainUnion>,
    pub count: usize,
}

/// Knobs for [`enumerate_scattered_with`].
#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    pub max_rank: usize,
    /// Largest coordinate allowed; defaults to `2 · rank`.
    pub coordinate_bound: Option<i64>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { max_rank: DEFAULT_MAX_RANK, coordinate_bound: None }
    }
}

/// Deterministic census order: `2λ` descending, then the union itself.
pub fn census_sort(reps: &mut [ChainUnion]) {
    reps.sort_by_cached_key(|u| (Reverse(u.two_lambda().twice()), u.clone()));
}

pub fn enumerate_scattered(g: GroupType) -> Result<CensusRow> {
    enumerate_scattered_with(g, EnumerationOptions::default())
}

pub fn enumerate_scattered_with(g: GroupType, opts: EnumerationOptions) -> Result<CensusRow> {
    if g.family == Family::A {
        return Err(Error::UnsupportedFamily(g.family.to_string()));
    }
    if g.rank > opts.max_rank {
        return Err(Error::RankTooLarge { rank: g.rank, max: opts.max_rank });
    }
    let bound = opts.coordinate_bound.unwrap_or(2 * g.rank as i64);
    if !(0..64).contains(&bound) {
        return Err(Error::PreconditionViolation(format!("coordinate bound {bound} outside 0..64")));
    }
    let all_a: Vec<Chain> = (1..=bound)
        .flat_map(|big| (1..=big).filter(move |s| (big - s) % 2 == 0).map(move |small| Chain::A { big, small }))
        .filter(|c| c.len() < g.rank)
        .collect();

    let mut reps: Vec<ChainUnion> = x_chains(g.family, g.rank)
        .into_par_iter()
        .filter(|x| x.max_coord() <= bound)
        .flat_map_iter(|x| {
            let xc = x.coordinates();
            let avail: Vec<(Chain, u64)> = all_a
                .iter()
                .filter(|a| a.coordinates().iter().all(|c| !xc.contains(c)))
                .map(|a| (*a, mask(&a.coordinates())))
                .collect();
            let mut out = Vec::new();
            let mut chosen = vec![x];
            collect(&avail, 0, mask(&xc), g.rank - x.len(), &mut chosen, &mut out, g);
            out
        })
        .collect();
    census_sort(&mut reps);
    reps.dedup();
    let count = reps.len();
    Ok(CensusRow { group: g, reps, count })
}

fn mask(coords: &[i64]) -> u64 {
    coords.iter().fold(0, |m, &c| m | (1u64 << c))
}

fn collect(
    avail: &[(Chain, u64)],
    start: usize,
    used: u64,
    remaining: usize,
    chosen: &mut Vec<Chain>,
    out: &mut Vec<ChainUnion>,
    g: GroupType,
) {
    if remaining == 0 {
        if chains_interlaced(chosen) {
            out.push(validate_union(g, chosen).expect("disjoint by construction"));
        }
        return;
    }
    for i in start..avail.len() {
        let (a, m) = avail[i];
        if a.len() > remaining || m & used != 0 {
            continue;
        }
        chosen.push(a);
        collect(avail, i + 1, used | m, remaining - a.len(), chosen, out, g);
        chosen.pop();
    }
}

/// Smallest rank covered by the counting recursion of each family.
pub fn first_rank(family: Family) -> usize {
    match family {
        Family::D => 3,
        _ => 2,
    }
}

/// Counts from the recursions, as `(rank, count)` pairs from the first
/// seeded rank up to `max_rank`.
pub fn count_table(family: Family, max_rank: usize) -> Result<Vec<(usize, u64)>> {
    let mut out: Vec<(usize, u64)> = Vec::new();
    match family {
        Family::A => return Err(Error::UnsupportedFamily("A".into())),
        Family::B | Family::C => {
            let mut v: u64 = if family == Family::B { 2 } else { 3 };
            for n in 2..=max_rank {
                out.push((n, v));
                v = 2 * v - u64::from(family == Family::B && n % 2 == 0);
            }
        }
        Family::D => {
            if max_rank >= 3 {
                out.push((3, 2));
            }
            let mut v: u64 = 5;
            for n in 4..=max_rank {
                out.push((n, v));
                v = 2 * v - u64::from(n % 2 == 0);
            }
        }
    }
    Ok(out)
}

/// The closed form `3 · 2^{n−2}` for type C.
pub fn c_closed_form(n: usize) -> u64 {
    3 * (1u64 << (n - 2))
}

/// Successors of a scattered union in the next rank.
///
/// With `M` the largest coordinate of `2λ` and `M'` the next one: grow the
/// chain holding `M` by `M + 2`; if `M' = M − 1` grow the chain holding `M'`
/// by `M + 1`, otherwise add the chain `{M − 1}`. Candidates that are not
/// valid chains or not interlaced are dropped; this removes the two B/D
/// exceptions automatically.
pub fn extend_rank(u: &ChainUnion) -> Result<Vec<ChainUnion>> {
    if !is_scattered(u) {
        return Err(Error::NotScattered(u.to_string()));
    }
    let chains = u.chains();
    let tl = u.two_lambda().to_ints().expect("integral");
    let big = tl[0];
    let next = tl.get(1).copied();
    let holder = |c: i64| chains.iter().position(|ch| ch.coordinates().contains(&c)).expect("present");
    let replaced = |i: usize, new: Chain| {
        let mut v = chains.clone();
        v[i] = new;
        v
    };
    let mut cands: Vec<Vec<Chain>> = Vec::new();
    let i = holder(big);
    if let Some(c) = grow(&chains[i], big + 2, u.group.family) {
        cands.push(replaced(i, c));
    }
    if next == Some(big - 1) {
        let j = holder(big - 1);
        if let Some(c) = grow(&chains[j], big + 1, u.group.family) {
            cands.push(replaced(j, c));
        }
    } else {
        let mut v = chains.clone();
        v.push(Chain::A { big: big - 1, small: big - 1 });
        cands.push(v);
    }
    let g = GroupType::new(u.group.family, u.group.rank + 1);
    let set: BTreeSet<ChainUnion> = cands
        .into_iter()
        .filter_map(|cs| validate_union(g, &cs).ok())
        .filter(is_scattered)
        .collect();
    let mut out: Vec<ChainUnion> = set.into_iter().collect();
    census_sort(&mut out);
    Ok(out)
}

fn grow(c: &Chain, coord: i64, family: Family) -> Option<Chain> {
    match *c {
        Chain::A { big, small } => (coord == big + 2).then_some(Chain::A { big: coord, small }),
        _ => {
            let mut want = c.coordinates();
            want.push(coord);
            want.sort_unstable_by(|a, b| b.cmp(a));
            x_chains(family, want.len()).into_iter().find(|x| x.coordinates() == want)
        }
    }
}
