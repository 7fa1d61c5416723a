//! Partitions, skew tableaux and Littlewood–Richardson coefficients.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// An integer partition with zero parts removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts; trailing zeros are
    /// dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::PreconditionViolation(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary parts into a partition.
    pub fn from_multiset(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted")
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `i`-th part (zero beyond the length).
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<usize> {
        (0..n.max(self.len())).map(|i| self.part(i)).collect()
    }

    pub fn transpose(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width).map(|i| self.parts.iter().filter(|&&a| a >= i).count()).collect();
        Partition { parts }
    }

    /// Cellwise containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().enumerate().all(|(i, &p)| p <= self.parts[i])
    }

    pub fn all_of_size(n: usize, max_len: usize) -> Vec<Partition> {
        fn go(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                cur.push(p);
                go(rest - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, max_len, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(", "))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

pub fn transpose(p: &Partition) -> Partition {
    p.transpose()
}

/// Every prefix has at least as many `k` as `k + 1`.
pub fn is_lattice_word(word: &[usize]) -> bool {
    let mut counts: Vec<usize> = Vec::new();
    for &x in word {
        if x == 0 {
            return false;
        }
        if counts.len() < x {
            counts.resize(x, 0);
        }
        counts[x - 1] += 1;
        if x > 1 && counts[x - 1] > counts[x - 2] {
            return false;
        }
    }
    true
}

/// The word read backwards is a lattice word.
pub fn is_reverse_lattice_word(word: &[usize]) -> bool {
    let rev: Vec<usize> = word.iter().rev().copied().collect();
    is_lattice_word(&rev)
}

/// A filled skew diagram `outer / inner`; `rows[i]` lists the entries of
/// row `i` from left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewTableau {
    pub outer: Partition,
    pub inner: Partition,
    pub rows: Vec<Vec<usize>>,
}

impl SkewTableau {
    fn entry(&self, i: usize, j: usize) -> Option<usize> {
        let start = self.inner.part(i);
        if j < start {
            return None;
        }
        self.rows.get(i).and_then(|r| r.get(j - start)).copied()
    }

    /// Shape agrees with the filling, rows weakly increase, columns
    /// strictly increase.
    pub fn is_semistandard(&self) -> bool {
        if !self.outer.contains(&self.inner) || self.rows.len() < self.outer.len() {
            return false;
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.outer.part(i) - self.inner.part(i).min(self.outer.part(i)) {
                return false;
            }
            if row.contains(&0) || row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            if i > 0 {
                for (k, &x) in row.iter().enumerate() {
                    let j = self.inner.part(i) + k;
                    if let Some(above) = self.entry(i - 1, j) {
                        if above >= x {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Rows read from the bottom up, each from left to right.
    pub fn row_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flat_map(|r| r.iter().copied()).collect()
    }

    /// Number of entries equal to `1, 2, …`.
    pub fn content(&self) -> Vec<usize> {
        let mut c: Vec<usize> = Vec::new();
        for &x in self.rows.iter().flatten() {
            if c.len() < x {
                c.resize(x, 0);
            }
            c[x - 1] += 1;
        }
        c
    }

    /// Semistandard with a reverse-lattice row word.
    pub fn is_lr_tableau(&self) -> bool {
        self.is_semistandard() && is_reverse_lattice_word(&self.row_word())
    }
}

/// `c^{lam}_{mu, nu}`: the number of LR tableaux of shape `lam / mu` and
/// content `nu`.
pub fn lr_coefficient(mu: &Partition, nu: &Partition, lam: &Partition) -> u64 {
    if mu.size() + nu.size() != lam.size() || !lam.contains(mu) || !lam.contains(nu) {
        return 0;
    }
    let rows = lam.len();
    // Cells in reverse reading order: top to bottom, right to left.
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (mu.part(i)..lam.part(i)).rev().map(move |j| (i, j)))
        .collect();
    let width = lam.part(0);
    let mut grid = vec![vec![0usize; width]; rows];
    let mut counts = vec![0usize; nu.len() + 1];
    let mut total = 0u64;
    lr_fill(&cells, 0, mu, nu, lam, &mut grid, &mut counts, &mut total);
    total
}

#[allow(clippy::too_many_arguments)]
fn lr_fill(
    cells: &[(usize, usize)],
    idx: usize,
    mu: &Partition,
    nu: &Partition,
    lam: &Partition,
    grid: &mut [Vec<usize>],
    counts: &mut [usize],
    total: &mut u64,
) {
    if idx == cells.len() {
        *total += 1;
        return;
    }
    let (i, j) = cells[idx];
    let mut lo = 1;
    if i > 0 && j >= mu.part(i - 1) {
        lo = grid[i - 1][j] + 1;
    }
    let mut hi = nu.len();
    if j + 1 < lam.part(i) {
        hi = hi.min(grid[i][j + 1]);
    }
    for v in lo..=hi {
        if counts[v] >= nu.part(v - 1) || (v > 1 && counts[v] + 1 > counts[v - 1]) {
            continue;
        }
        grid[i][j] = v;
        counts[v] += 1;
        lr_fill(cells, idx + 1, mu, nu, lam, grid, counts, total);
        counts[v] -= 1;
        grid[i][j] = 0;
    }
}

/// Whether `c^{target}_{f_1, …, f_l} > 0` for the iterated product.
pub fn lr_positive_chain(target: &Partition, factors: &[Partition]) -> bool {
    let Some((first, rest)) = factors.split_first() else {
        return target.is_empty();
    };
    if factors.iter().map(Partition::size).sum::<usize>() != target.size() {
        return false;
    }
    let mut current: BTreeSet<Partition> = BTreeSet::new();
    if target.contains(first) {
        current.insert(first.clone());
    }
    for f in rest {
        let mut next = BTreeSet::new();
        for base in &current {
            for lam in between(base, target, base.size() + f.size()) {
                if lr_coefficient(base, f, &lam) > 0 {
                    next.insert(lam);
                }
            }
        }
        current = next;
    }
    current.contains(target)
}

/// Partitions `lam` with `low ⊆ lam ⊆ high` and `|lam| = size`.
fn between(low: &Partition, high: &Partition, size: usize) -> Vec<Partition> {
    fn go(i: usize, low: &Partition, high: &Partition, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == high.len() {
            if rest == 0 {
                out.push(Partition::new(cur.clone()).expect("decreasing"));
            }
            return;
        }
        let cap = cur.last().copied().unwrap_or(usize::MAX).min(high.part(i));
        let tail: usize = (i + 1..high.len()).map(|k| high.part(k).min(cap)).sum();
        for v in low.part(i)..=cap.min(rest) {
            if rest - v > tail {
                continue;
            }
            cur.push(v);
            go(i + 1, low, high, rest - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, low, high, size, &mut Vec::new(), &mut out);
    out
}

/// The explicit LR filling of the stacked skew shape `mu / theta`.
///
/// `nus` lists the staircase corrections in chain order; the nonzero row
/// lengths of `mu − theta`, read top to bottom, must be their
/// concatenation.
pub fn lemma_filling(theta: &[usize], mu: &[usize], nus: &[Vec<usize>]) -> Result<SkewTableau> {
    let inner = Partition::new(theta.to_vec())?;
    let outer = Partition::new(mu.to_vec())?;
    if theta.len() != mu.len() || !outer.contains(&inner) {
        return Err(Error::InvalidShape(format!("{mu:?} / {theta:?}")));
    }
    let row_sizes: Vec<usize> = mu.iter().zip(theta).map(|(m, t)| m - t).collect();
    let nonzero: Vec<usize> = row_sizes.iter().copied().filter(|&x| x > 0).collect();
    let concat: Vec<usize> = nus.iter().flatten().copied().collect();
    if nonzero != concat {
        return Err(Error::InvalidShape(format!("row sizes {row_sizes:?} do not match {nus:?}")));
    }
    // Column heights of T_t, the tableau built from the first t blocks.
    let mut prev = Partition::empty().transpose();
    let mut parts_so_far: Vec<usize> = Vec::new();
    let mut block_rows: Vec<Vec<usize>> = Vec::new();
    for nu in nus {
        parts_so_far.extend(nu.iter().copied());
        let cur = Partition::from_multiset(parts_so_far.clone()).transpose();
        let mut cols: Vec<(usize, usize)> = (0..cur.len())
            .map(|c| (prev.part(c), cur.part(c)))
            .filter(|(a, b)| b > a)
            .collect();
        cols.sort_by_key(|(a, b)| std::cmp::Reverse(b - a));
        for (k, &want) in nu.iter().enumerate() {
            let mut row: Vec<usize> =
                cols.iter().filter(|(a, b)| b - a > k).map(|(a, _)| a + k + 1).collect();
            if row.len() != want {
                return Err(Error::InvalidShape(format!("block {nu:?} does not match the column structure")));
            }
            row.sort_unstable();
            block_rows.push(row);
        }
        if cols.iter().any(|(a, b)| b - a > nu.len()) {
            return Err(Error::InvalidShape(format!("block {nu:?} is too short")));
        }
        prev = cur;
    }
    let mut it = block_rows.into_iter();
    let rows: Vec<Vec<usize>> =
        row_sizes.iter().map(|&s| if s == 0 { Vec::new() } else { it.next().expect("matched") }).collect();
    Ok(SkewTableau { outer, inner, rows })
}

/// Checks `{ℓ − p} = ℓ − pᵗ` for the staircase `ℓ = (m, …, 1)` and a
/// partition `p` with distinct positive parts and `p_1 ≤ m`.
pub fn eqpt_check(m: usize, p: &Partition) -> Result<bool> {
    if p.part(0) > m || p.len() > m {
        return Err(Error::PreconditionViolation(format!("{p} does not fit in {m} columns")));
    }
    if p.parts().windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::PreconditionViolation(format!("{p} has repeated parts")));
    }
    let ell: Vec<i64> = (1..=m as i64).rev().collect();
    let pp = p.padded(m);
    let pt = p.transpose().padded(m);
    let mut lhs: Vec<i64> = ell.iter().zip(&pp).map(|(l, x)| l - *x as i64).collect();
    lhs.sort_unstable_by(|a, b| b.cmp(a));
    let rhs: Vec<i64> = ell.iter().zip(&pt).map(|(l, x)| l - *x as i64).collect();
    let identity = lhs == rhs;

    // Cross-check on the diagram itself: cell (i, j) of ℓ (1-based) carries
    // the mark (m + 2) − (i + j); the row and column sizes of ℓ / p are
    // counted directly and must agree as multisets.
    let in_skew = |i: usize, j: usize| (m + 2).saturating_sub(i + j) >= 1 && j > pp[i - 1] && i + j <= m + 1;
    let mut rows: Vec<usize> = (1..=m).map(|i| (1..=m).filter(|&j| in_skew(i, j)).count()).collect();
    let mut cols: Vec<usize> = (1..=m).map(|j| (1..=m).filter(|&i| in_skew(i, j)).count()).collect();
    rows.sort_unstable();
    cols.sort_unstable();
    Ok(identity && rows == cols)
}

/// All partitions with distinct parts, each at most `m`.
pub fn strict_partitions(m: usize) -> Vec<Partition> {
    (0u32..(1u32 << m))
        .map(|bits| {
            let parts: Vec<usize> = (1..=m).rev().filter(|&k| bits & (1 << (k - 1)) != 0).collect();
            Partition::new(parts).expect("decreasing")
        })
        .collect()
}
