//! Chains, linkage, interlacing and the data they determine.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::weights::{dominant_sort, Family, GroupType, HalfInt, Weight};

/// A single chain of coordinates.
///
/// Variants are ordered so that the derived `Ord` gives a deterministic
/// (but otherwise arbitrary) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chain {
    /// Type-A chain `{big, big-2, …, small}`.
    A { big: i64, small: i64 },
    /// Odd coordinates `2k-1, …, 1` together with even coordinates `2n, …, 2`.
    B { k: i64, n: i64 },
    /// `{2n, …, 2}`.
    CEven { n: i64 },
    /// `{2n-1, …, 1}`.
    COdd { n: i64 },
    /// `{2n-2, …, 0}`.
    DEven { n: i64 },
    /// `{2n-2, …, 0}` together with `{2k-1, …, 1}`.
    DMixed { n: i64, k: i64 },
}

impl Chain {
    /// Checks the parameter constraints of each variant.
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Chain::A { big, small } => big >= small && small >= 0 && (big - small) % 2 == 0,
            Chain::B { k, n } => k >= n && n >= 0 && k >= 1,
            Chain::CEven { n } | Chain::COdd { n } | Chain::DEven { n } => n >= 1,
            Chain::DMixed { n, k } => n >= k && k > 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidChain(format!("{self:?}")))
        }
    }

    pub fn is_a(&self) -> bool {
        matches!(self, Chain::A { .. })
    }

    /// Family of a non-A chain.
    pub fn family(&self) -> Option<Family> {
        match self {
            Chain::A { .. } => None,
            Chain::B { .. } => Some(Family::B),
            Chain::CEven { .. } | Chain::COdd { .. } => Some(Family::C),
            Chain::DEven { .. } | Chain::DMixed { .. } => Some(Family::D),
        }
    }

    /// Coordinates in strictly decreasing order.
    pub fn coordinates(&self) -> Vec<i64> {
        let mut v: Vec<i64> = match *self {
            Chain::A { big, small } => (0..=(big - small) / 2).map(|j| big - 2 * j).collect(),
            Chain::B { k, n } => (1..=k).map(|i| 2 * i - 1).chain((1..=n).map(|i| 2 * i)).collect(),
            Chain::CEven { n } => (1..=n).map(|i| 2 * i).collect(),
            Chain::COdd { n } => (1..=n).map(|i| 2 * i - 1).collect(),
            Chain::DEven { n } => (0..n).map(|i| 2 * i).collect(),
            Chain::DMixed { n, k } => (0..n).map(|i| 2 * i).chain((1..=k).map(|i| 2 * i - 1)).collect(),
        };
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn len(&self) -> usize {
        match *self {
            Chain::A { big, small } => ((big - small) / 2 + 1) as usize,
            Chain::B { k, n } => (k + n) as usize,
            Chain::CEven { n } | Chain::COdd { n } | Chain::DEven { n } => n as usize,
            Chain::DMixed { n, k } => (n + k) as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn max_coord(&self) -> i64 {
        self.coordinates()[0]
    }

    pub fn min_coord(&self) -> i64 {
        *self.coordinates().last().expect("chains are nonempty")
    }

    /// The two Zhelobenko rows `(λ_L, λ_R)`, column by column.
    pub fn zhelobenko_rows(&self) -> (Vec<HalfInt>, Vec<HalfInt>) {
        let h = HalfInt::from_twice;
        let halves = |k: i64| (1..=k).map(move |i| h(2 * i - 1));
        let ints = |from: i64, to: i64| (from..=to).map(HalfInt::from_int);
        match *self {
            Chain::A { big, small } => {
                let q = (big - small) / 2 + 1;
                let top = (0..q).map(|j| h(big - 2 * j)).collect();
                let bottom = (0..q).map(|j| h(-small - 2 * j)).collect();
                (top, bottom)
            }
            Chain::B { k, n } => {
                let row: Vec<HalfInt> = halves(k).chain(ints(1, n)).collect();
                (row.clone(), row)
            }
            Chain::CEven { n } => {
                let row: Vec<HalfInt> = ints(1, n).collect();
                (row.clone(), row)
            }
            Chain::COdd { n } => {
                let top: Vec<HalfInt> = halves(n).collect();
                let mut bottom = top.clone();
                bottom[0] = h(if n % 2 == 0 { 1 } else { -1 });
                (top, bottom)
            }
            Chain::DEven { n } => {
                let row: Vec<HalfInt> = ints(0, n - 1).collect();
                (row.clone(), row)
            }
            Chain::DMixed { n, k } => {
                let top: Vec<HalfInt> = ints(0, n - 1).chain(halves(k)).collect();
                let mut bottom = top.clone();
                bottom[n as usize] = h(if k % 2 == 0 { 1 } else { -1 });
                (top, bottom)
            }
        }
    }

    /// `(T + t) / 2` for an A-chain.
    pub fn a_character(&self) -> Option<i64> {
        match *self {
            Chain::A { big, small } => Some((big + small) / 2),
            _ => None,
        }
    }

    /// Brace notation, e.g. `{5 3 1}_C` or `{3 1}`.
    pub fn brace_notation(&self) -> String {
        let body: Vec<String> = self.coordinates().iter().map(|c| c.to_string()).collect();
        match self.family() {
            None => format!("{{{}}}", body.join(" ")),
            Some(f) => format!("{{{}}}_{}", body.join(" "), f),
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Chain::A { big, small } => write!(f, "A({big},{small})"),
            Chain::B { k, n: 0 } => write!(f, "B[{}]", 2 * k + 1),
            Chain::B { k, n } => write!(f, "B[{},{}]", 2 * k + 1, 2 * n),
            Chain::CEven { n } => write!(f, "C[{}]", 2 * n),
            Chain::COdd { n } => write!(f, "C[{},1]", 2 * n - 1),
            Chain::DEven { n } => write!(f, "D[{}]", 2 * n),
            Chain::DMixed { n, k } => write!(f, "D[{},{},1]", 2 * n, 2 * k - 1),
        }
    }
}

impl FromStr for Chain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("not a chain: {s:?}"));
        let nums = |inner: &str| -> Result<Vec<i64>> {
            inner.split(',').map(|x| x.parse::<i64>().map_err(|_| bad())).collect()
        };
        let (head, rest) = s.split_at(s.find(['(', '[']).ok_or_else(bad)?);
        let chain = match (head, rest.chars().next()) {
            ("A", Some('(')) => {
                let v = nums(rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?)?;
                match v[..] {
                    [big, small] => Chain::A { big, small },
                    _ => return Err(bad()),
                }
            }
            (fam @ ("B" | "C" | "D"), Some('[')) => {
                let v = nums(rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?)?;
                parse_orbit_columns(fam, &v).ok_or_else(bad)?
            }
            _ => return Err(bad()),
        };
        chain.validate()?;
        Ok(chain)
    }
}

/// Maps orbit column sizes to the matching chain.
pub(crate) fn parse_orbit_columns(fam: &str, v: &[i64]) -> Option<Chain> {
    let odd = |x: i64| x % 2 == 1;
    let even = |x: i64| x % 2 == 0 && x > 0;
    match (fam, v) {
        ("B", [a]) if odd(*a) && *a >= 3 => Some(Chain::B { k: (a - 1) / 2, n: 0 }),
        ("B", [a, 0]) if odd(*a) && *a >= 3 => Some(Chain::B { k: (a - 1) / 2, n: 0 }),
        ("B", [a, b]) if odd(*a) && even(*b) => Some(Chain::B { k: (a - 1) / 2, n: b / 2 }),
        ("C", [a]) if even(*a) => Some(Chain::CEven { n: a / 2 }),
        ("C", [a, 1]) if odd(*a) => Some(Chain::COdd { n: (a + 1) / 2 }),
        ("D", [a]) if even(*a) => Some(Chain::DEven { n: a / 2 }),
        ("D", [a, b, 1]) if even(*a) && odd(*b) && *b >= 3 => Some(Chain::DMixed { n: a / 2, k: (b + 1) / 2 }),
        _ => None,
    }
}

/// Whether two chains are linked.
pub fn is_linked(c1: &Chain, c2: &Chain) -> bool {
    let a = c1.coordinates();
    let b = c2.coordinates();
    if a.iter().any(|x| b.contains(x)) {
        return false;
    }
    let (big_m, small_m) = (a[0], *a.last().unwrap());
    let (big_n, small_n) = (b[0], *b.last().unwrap());
    if (big_m > big_n && big_n > small_m) || (big_n > big_m && big_m > small_n) {
        return true;
    }
    let one = Chain::A { big: 1, small: 1 };
    let special = |x: &Chain, y: &Chain| *x == one && matches!(y, Chain::CEven { .. });
    special(c1, c2) || special(c2, c1)
}

/// Whether the linkage graph of `chains` is connected.
pub fn chains_interlaced(chains: &[Chain]) -> bool {
    if chains.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; chains.len()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..chains.len() {
            if !seen[j] && is_linked(&chains[i], &chains[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Canonical order for A-chains: `T + t` descending, then `T` descending.
pub fn a_chain_order(x: &Chain, y: &Chain) -> std::cmp::Ordering {
    let key = |c: &Chain| match *c {
        Chain::A { big, small } => (-(big + small), -big),
        _ => (i64::MAX, i64::MAX),
    };
    key(x).cmp(&key(y))
}

/// A validated union of chains in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainUnion {
    pub group: GroupType,
    pub a_chains: Vec<Chain>,
    pub x_chain: Option<Chain>,
}

impl ChainUnion {
    /// Validates a raw chain list and puts it into canonical order.
    pub fn new(group: GroupType, chains: &[Chain]) -> Result<Self> {
        validate_union(group, chains)
    }

    /// All chains: A-chains first, then the X-chain.
    pub fn chains(&self) -> Vec<Chain> {
        let mut v = self.a_chains.clone();
        v.extend(self.x_chain);
        v
    }

    pub fn is_interlaced(&self) -> bool {
        chains_interlaced(&self.chains())
    }

    /// Number of coordinates carried by the A-chains.
    pub fn a_rank(&self) -> usize {
        self.a_chains.iter().map(Chain::len).sum()
    }

    /// `2λ`: all coordinates sorted in decreasing order.
    pub fn two_lambda(&self) -> Weight {
        let mut c: Vec<i64> = self.chains().iter().flat_map(Chain::coordinates).collect();
        c.sort_unstable_by(|a, b| b.cmp(a));
        Weight::from_ints(self.group, &c).expect("validated rank")
    }

    /// Concatenated Zhelobenko rows.
    pub fn zhelobenko_rows(&self) -> (Weight, Weight) {
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for c in self.chains() {
            let (t, b) = c.zhelobenko_rows();
            top.extend(t);
            bottom.extend(b);
        }
        (
            Weight::new(self.group, top).expect("validated rank"),
            Weight::new(self.group, bottom).expect("validated rank"),
        )
    }

    /// Lowest K-type `{λ_L − λ_R}`.
    pub fn lowest_k_type(&self) -> Weight {
        let (l, r) = self.zhelobenko_rows();
        dominant_sort(&l.checked_sub(&r).expect("same type"))
    }

    /// Brace notation, e.g. `{2} ∪ {3 1}_C`.
    pub fn brace_notation(&self) -> String {
        let parts: Vec<String> = self.chains().iter().map(Chain::brace_notation).collect();
        parts.join(" ∪ ")
    }

    /// Coordinate sets of all chains, tagged by family; convenient for
    /// order-insensitive comparisons.
    pub fn coordinate_sets(&self) -> BTreeSet<(Option<Family>, Vec<i64>)> {
        self.chains().iter().map(|c| (c.family(), c.coordinates())).collect()
    }

    /// Parses the `+`-separated grammar, inferring the group from the
    /// X-chain (or `fallback` when there is none).
    pub fn parse(s: &str, fallback: Option<Family>) -> Result<Self> {
        let chains: Vec<Chain> = s.split('+').map(str::parse).collect::<Result<_>>()?;
        let family = chains
            .iter()
            .find_map(Chain::family)
            .or(fallback)
            .ok_or_else(|| Error::Parse(format!("cannot infer the group of {s:?}")))?;
        let rank = chains.iter().map(Chain::len).sum();
        validate_union(GroupType::new(family, rank), &chains)
    }
}

impl fmt::Display for ChainUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chains().iter().map(Chain::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

/// Validates a raw chain list.
pub fn validate_union(group: GroupType, chains: &[Chain]) -> Result<ChainUnion> {
    for c in chains {
        c.validate()?;
    }
    let mut seen = BTreeSet::new();
    for c in chains {
        for x in c.coordinates() {
            if !seen.insert(x) {
                return Err(Error::DuplicateCoordinate(x));
            }
        }
    }
    let xs: Vec<Chain> = chains.iter().filter(|c| !c.is_a()).copied().collect();
    if xs.len() > 1 {
        return Err(Error::MultipleXChains);
    }
    if let Some(x) = xs.first() {
        if x.family() != Some(group.family) {
            return Err(Error::WrongFamily { chain: x.to_string(), family: group.family.to_string() });
        }
    }
    let total: usize = chains.iter().map(Chain::len).sum();
    if total != group.rank {
        return Err(Error::RankMismatch { expected: group.rank, found: total });
    }
    let mut a_chains: Vec<Chain> = chains.iter().filter(|c| c.is_a()).copied().collect();
    if group.family != Family::A && a_chains.iter().any(|c| c.min_coord() == 0) {
        return Err(Error::ZeroInAChain);
    }
    a_chains.sort_by(a_chain_order);
    Ok(ChainUnion { group, a_chains, x_chain: xs.first().copied() })
}

/// `(2λ, LKT)` of a union.
pub fn two_lambda_and_lkt(u: &ChainUnion) -> (Weight, Weight) {
    (u.two_lambda(), u.lowest_k_type())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(big: i64, small: i64) -> Chain {
        Chain::A { big, small }
    }

    fn halves(v: &[HalfInt]) -> Vec<i64> {
        v.iter().map(|x| x.twice()).collect()
    }

    fn worked_example() -> ChainUnion {
        let g = GroupType::new(Family::B, 15);
        validate_union(g, &[a(6, 4), Chain::B { k: 7, n: 1 }, a(8, 8), a(18, 12)]).unwrap()
    }

    #[test]
    fn coordinates_examples() {
        assert_eq!(Chain::B { k: 7, n: 1 }.coordinates(), vec![13, 11, 9, 7, 5, 3, 2, 1]);
        assert_eq!(a(18, 12).coordinates(), vec![18, 16, 14, 12]);
        assert_eq!(Chain::CEven { n: 3 }.coordinates(), vec![6, 4, 2]);
        assert_eq!(Chain::DMixed { n: 3, k: 2 }.coordinates(), vec![4, 3, 2, 1, 0]);
        assert_eq!(Chain::DEven { n: 2 }.coordinates(), vec![2, 0]);
    }

    #[test]
    fn rows_examples() {
        let (t, b) = Chain::COdd { n: 3 }.zhelobenko_rows();
        assert_eq!(halves(&t), vec![1, 3, 5]);
        assert_eq!(halves(&b), vec![-1, 3, 5]);
        let (t, b) = a(3, 1).zhelobenko_rows();
        assert_eq!(halves(&t), vec![3, 1]);
        assert_eq!(halves(&b), vec![-1, -3]);
        let (t, b) = Chain::B { k: 7, n: 1 }.zhelobenko_rows();
        assert_eq!(t, b);
        assert_eq!(halves(&t), vec![1, 3, 5, 7, 9, 11, 13, 2]);
        let (t, b) = Chain::DMixed { n: 2, k: 2 }.zhelobenko_rows();
        assert_eq!(halves(&t), vec![0, 2, 1, 3]);
        assert_eq!(halves(&b), vec![0, 2, 1, 3]);
    }

    #[test]
    fn linkage_examples() {
        assert!(is_linked(&a(18, 12), &Chain::B { k: 7, n: 1 }));
        assert!(is_linked(&a(1, 1), &Chain::CEven { n: 2 }));
        assert!(is_linked(&Chain::CEven { n: 2 }, &a(1, 1)));
        assert!(!is_linked(&a(8, 8), &a(6, 4)));
        assert!(!is_linked(&a(3, 1), &Chain::COdd { n: 2 }));
    }

    #[test]
    fn interlacing_examples() {
        let g3 = GroupType::new(Family::C, 3);
        assert!(validate_union(g3, &[a(2, 2), Chain::COdd { n: 2 }]).unwrap().is_interlaced());
        assert!(validate_union(g3, &[Chain::CEven { n: 3 }]).unwrap().is_interlaced());
        let g5 = GroupType::new(Family::C, 5);
        let u = validate_union(g5, &[a(6, 4), a(5, 3), Chain::CEven { n: 1 }]).unwrap();
        assert!(!u.is_interlaced());
    }

    #[test]
    fn two_lambda_examples() {
        let g3 = GroupType::new(Family::C, 3);
        let u = validate_union(g3, &[a(2, 2), Chain::COdd { n: 2 }]).unwrap();
        let (tl, lkt) = two_lambda_and_lkt(&u);
        assert_eq!(tl.to_ints().unwrap(), vec![3, 2, 1]);
        assert_eq!(lkt.to_ints().unwrap(), vec![2, 0, 0]);
        let u = validate_union(g3, &[Chain::COdd { n: 3 }]).unwrap();
        assert_eq!(u.lowest_k_type().to_ints().unwrap(), vec![1, 0, 0]);
        let u = worked_example();
        assert_eq!(
            u.two_lambda().to_ints().unwrap(),
            vec![18, 16, 14, 13, 12, 11, 9, 8, 7, 6, 5, 4, 3, 2, 1]
        );
        assert_eq!(u.lowest_k_type().to_ints().unwrap(), {
            let mut v = vec![15, 15, 15, 15, 8, 5, 5];
            v.extend([0; 8]);
            v
        });
    }

    #[test]
    fn validation_errors() {
        let g3 = GroupType::new(Family::C, 3);
        assert_eq!(validate_union(g3, &[a(3, 1), Chain::COdd { n: 2 }]), Err(Error::DuplicateCoordinate(3)));
        let g2 = GroupType::new(Family::C, 2);
        assert_eq!(
            validate_union(g2, &[Chain::CEven { n: 1 }, Chain::COdd { n: 1 }]),
            Err(Error::MultipleXChains)
        );
        assert!(matches!(
            validate_union(g3, &[Chain::CEven { n: 2 }]),
            Err(Error::RankMismatch { expected: 3, found: 2 })
        ));
        let d3 = GroupType::new(Family::D, 3);
        assert!(matches!(validate_union(d3, &[Chain::COdd { n: 0 }]), Err(Error::InvalidChain(_))));
        assert_eq!(validate_union(d3, &[a(4, 0)]).unwrap_err(), Error::ZeroInAChain);
        assert!(matches!(validate_union(g2, &[Chain::DEven { n: 2 }]), Err(Error::WrongFamily { .. })));
    }

    #[test]
    fn canonical_order() {
        let u = worked_example();
        assert_eq!(u.a_chains, vec![a(18, 12), a(8, 8), a(6, 4)]);
        assert_eq!(u.to_string(), "A(18,12)+A(8,8)+A(6,4)+B[15,2]");
    }

    #[test]
    fn grammar_round_trip() {
        for s in ["A(18,12)", "B[15,2]", "B[5]", "C[4]", "C[5,1]", "D[6]", "D[6,3,1]", "C[1,1]"] {
            let c: Chain = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert_eq!("B[5,0]".parse::<Chain>().unwrap(), Chain::B { k: 2, n: 0 });
        assert!("D[6,1,1]".parse::<Chain>().is_err());
        assert!("A(3,2)".parse::<Chain>().is_err());
        assert!("C[3]".parse::<Chain>().is_err());
        let u = ChainUnion::parse("A(18,12)+A(8,8)+A(6,4)+B[15,2]", None).unwrap();
        assert_eq!(u, worked_example());
        let u = ChainUnion::parse(" A(2,2) + C[3,1] ", None).unwrap();
        assert_eq!(u.to_string(), "A(2,2)+C[3,1]");
    }

    #[test]
    fn brace_notation() {
        let u = ChainUnion::parse("A(2,2)+C[3,1]", None).unwrap();
        assert_eq!(u.brace_notation(), "{2} ∪ {3 1}_C");
    }
}
