//! Exact half-integer weights for the classical root systems.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// Builds the half-integer `twice / 2`.
    pub fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn to_rational(self) -> Rational64 {
        Rational64::new(self.0, 2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInt::from_int).map_err(|_| bad()),
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                match q {
                    1 => Ok(HalfInt::from_int(p)),
                    2 => Ok(HalfInt(p)),
                    _ if q != 0 && (2 * p) % q == 0 => Ok(HalfInt(2 * p / q)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated list of half-integers such as `5/2,3/2,1/2`.
pub fn parse_half_list(s: &str) -> Result<Vec<HalfInt>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// A classical root system. For family `A` the rank is the number of
/// coordinates, i.e. the root system of `GL(rank)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupType {
    pub family: Family,
    pub rank: usize,
}

impl GroupType {
    pub fn new(family: Family, rank: usize) -> Self {
        GroupType { family, rank }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A weight vector tagged with its root system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    pub group: GroupType,
    pub coords: Vec<HalfInt>,
}

impl Weight {
    pub fn new(group: GroupType, coords: Vec<HalfInt>) -> Result<Self> {
        if coords.len() != group.rank {
            return Err(Error::LengthMismatch { expected: group.rank, found: coords.len() });
        }
        Ok(Weight { group, coords })
    }

    pub fn from_ints(group: GroupType, ints: &[i64]) -> Result<Self> {
        Weight::new(group, ints.iter().map(|&n| HalfInt::from_int(n)).collect())
    }

    pub fn zero(group: GroupType) -> Self {
        Weight { group, coords: vec![HalfInt::ZERO; group.rank] }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| c.to_int()).collect()
    }

    /// Doubled coordinates.
    pub fn twice(&self) -> Vec<i64> {
        self.coords.iter().map(|c| c.twice()).collect()
    }

    fn check_same(&self, other: &Weight) -> Result<()> {
        if self.group != other.group {
            return Err(Error::TypeMismatch(self.group.to_string(), other.group.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Weight) -> Result<Weight> {
        self.check_same(other)?;
        Ok(Weight {
            group: self.group,
            coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Weight) -> Result<Weight> {
        self.check_same(other)?;
        Ok(Weight {
            group: self.group,
            coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| a - b).collect(),
        })
    }

    /// Sum of the coordinates.
    pub fn size(&self) -> HalfInt {
        self.coords.iter().fold(HalfInt::ZERO, |acc, &c| acc + c)
    }

    /// Squared Euclidean norm.
    pub fn norm2(&self) -> Rational64 {
        let s: i64 = self.coords.iter().map(|c| c.twice() * c.twice()).sum();
        Rational64::new(s, 4)
    }

    pub fn is_dominant(&self) -> bool {
        let c = &self.coords;
        let n = c.len();
        let desc = |upto: usize| (1..upto).all(|i| c[i - 1] >= c[i]);
        match self.group.family {
            Family::A => desc(n),
            Family::B | Family::C => desc(n) && c.last().is_none_or(|x| *x >= HalfInt::ZERO),
            Family::D => {
                if n < 2 {
                    return true;
                }
                desc(n - 1) && c[n - 2] >= c[n - 1].abs()
            }
        }
    }

    /// Display form `(a, b, c)`.
    pub fn to_tuple_string(&self) -> String {
        let inner: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        format!("({})", inner.join(","))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tuple_string())
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

/// Half the sum of the positive roots.
pub fn rho(t: GroupType) -> Weight {
    let n = t.rank as i64;
    let twice: Vec<i64> = match t.family {
        Family::A => (0..n).map(|i| n - 1 - 2 * i).collect(),
        Family::B => (0..n).map(|i| 2 * (n - i) - 1).collect(),
        Family::C => (0..n).map(|i| 2 * (n - i)).collect(),
        Family::D => (0..n).map(|i| 2 * (n - 1 - i)).collect(),
    };
    Weight { group: t, coords: twice.into_iter().map(HalfInt::from_twice).collect() }
}

/// The unique dominant weight in the Weyl orbit of `eta`.
///
/// Type D uses the true `W(D_n)` orbit: an odd number of negative
/// coordinates leaves the smallest entry negative unless it is zero.
pub fn dominant_sort(eta: &Weight) -> Weight {
    let mut coords: Vec<HalfInt> = match eta.group.family {
        Family::A => eta.coords.clone(),
        _ => eta.coords.iter().map(|c| c.abs()).collect(),
    };
    coords.sort_by(|a, b| b.cmp(a));
    if eta.group.family == Family::D {
        let negatives = eta.coords.iter().filter(|c| **c < HalfInt::ZERO).count();
        if let Some(last) = coords.last_mut() {
            if negatives % 2 == 1 && *last != HalfInt::ZERO {
                *last = -*last;
            }
        }
    }
    Weight { group: eta.group, coords }
}

/// `‖{δ − ρ} + ρ‖²` in the Euclidean coordinate form.
pub fn spin_norm(delta: &Weight) -> Rational64 {
    let r = rho(delta.group);
    let shifted = dominant_sort(&delta.checked_sub(&r).expect("same type"));
    shifted.checked_add(&r).expect("same type").norm2()
}

/// Coefficients of `v` in the basis of simple roots (Bourbaki order).
/// Returns `None` for type A when `v` is not in the span of the roots.
pub fn simple_root_coefficients(v: &Weight) -> Option<Vec<Rational64>> {
    let n = v.len();
    let x: Vec<Rational64> = v.coords.iter().map(|c| c.to_rational()).collect();
    let mut s = Vec::with_capacity(n);
    let mut acc = Rational64::from_integer(0);
    for xi in &x {
        acc += xi;
        s.push(acc);
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let two = Rational64::from_integer(2);
    let out = match v.group.family {
        Family::A => {
            if s[n - 1] != Rational64::from_integer(0) {
                return None;
            }
            s[..n - 1].to_vec()
        }
        Family::B => s,
        Family::C => {
            let mut c = s[..n - 1].to_vec();
            c.push(s[n - 1] / two);
            c
        }
        Family::D => {
            if n < 2 {
                return (x[0] == Rational64::from_integer(0)).then(Vec::new);
            }
            let mut c = s[..n - 2].to_vec();
            c.push((s[n - 2] - x[n - 1]) / two);
            c.push(s[n - 1] / two);
            c
        }
    };
    Some(out)
}

/// Whether the dominant weight `mu` lies in the convex hull of the orbit of
/// the dominant weight `vertex`.
pub fn in_orbit_hull(mu: &Weight, vertex: &Weight) -> bool {
    let diff = match vertex.checked_sub(&dominant_sort(mu)) {
        Ok(d) => d,
        Err(_) => return false,
    };
    simple_root_coefficients(&diff)
        .is_some_and(|c| c.iter().all(|x| *x >= Rational64::from_integer(0)))
}

/// Unitarily small test: `mu` lies in the convex hull of `W · 2ρ`.
pub fn is_unitarily_small(mu: &Weight) -> bool {
    let r = rho(mu.group);
    let two_rho = r.checked_add(&r).expect("same type");
    in_orbit_hull(mu, &two_rho)
}

/// Pairings `⟨v, α_i^∨⟩` with the simple coroots (Bourbaki order).
pub fn to_fundamental(v: &Weight) -> Result<Vec<i64>> {
    let c = v.twice();
    let n = c.len();
    let mut out2: Vec<i64> = (1..n).map(|i| c[i - 1] - c[i]).collect();
    if n >= 1 {
        match v.group.family {
            Family::A => {}
            Family::B => out2.push(2 * c[n - 1]),
            Family::C => out2.push(c[n - 1]),
            Family::D => {
                if n >= 2 {
                    out2.push(c[n - 2] + c[n - 1]);
                }
            }
        }
    }
    if out2.iter().any(|x| x % 2 != 0) {
        return Err(Error::NonIntegral(v.to_string()));
    }
    Ok(out2.into_iter().map(|x| x / 2).collect())
}

/// Inverse of [`to_fundamental`] for B, C and D. For type A the last
/// coordinate is fixed to zero.
pub fn from_fundamental(t: GroupType, a: &[i64]) -> Result<Weight> {
    let n = t.rank;
    let expected = if t.family == Family::A { n.saturating_sub(1) } else { n };
    if a.len() != expected {
        return Err(Error::LengthMismatch { expected, found: a.len() });
    }
    // Work with doubled coordinates.
    let mut c = vec![0i64; n];
    if n == 0 {
        return Ok(Weight { group: t, coords: Vec::new() });
    }
    match t.family {
        Family::A => c[n - 1] = 0,
        Family::B => c[n - 1] = a[n - 1],
        Family::C => c[n - 1] = 2 * a[n - 1],
        Family::D => {
            if n == 1 {
                c[0] = 2 * a[0];
            } else {
                // c_{n-1} - c_n = 2 a_{n-1}, c_{n-1} + c_n = 2 a_n
                c[n - 1] = a[n - 1] - a[n - 2];
                c[n - 2] = a[n - 1] + a[n - 2];
            }
        }
    }
    let start = if t.family == Family::D && n >= 2 { n - 2 } else { n - 1 };
    for i in (0..start).rev() {
        c[i] = c[i + 1] + 2 * a[i];
    }
    Ok(Weight { group: t, coords: c.into_iter().map(HalfInt::from_twice).collect() })
}

/// Lexicographic comparison on coordinates.
pub fn lex_cmp(a: &Weight, b: &Weight) -> Ordering {
    a.coords.cmp(&b.coords)
}
