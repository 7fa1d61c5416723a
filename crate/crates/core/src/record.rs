//! Serializable per-representation records and the verification suite.

use std::cell::RefCell;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::catalog::is_scattered;
use crate::chains::ChainUnion;
use crate::enumerate::enumerate_scattered_with;
use crate::enumerate::EnumerationOptions;
use crate::error::{Error, Result};
use crate::oracle::{LeviShape, Oracle};
use crate::spin_lkt::{assemble_spin_lkt, verify_eq_par, SpinLktResult};
use crate::weights::{is_unitarily_small, spin_norm, Family, GroupType, HalfInt, Weight};

/// Largest rank at which the character oracle runs by default.
pub const ORACLE_MAX_RANK: usize = 4;

thread_local! {
    static ORACLE: RefCell<Oracle> = RefCell::new(Oracle::new());
}

/// Runs `f` with this thread's memoising oracle.
pub fn with_oracle<T>(f: impl FnOnce(&mut Oracle) -> T) -> T {
    ORACLE.with(|o| f(&mut o.borrow_mut()))
}

/// Multiplicity of the spin-lowest K-type, or a marker when not computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleOccurrence {
    Count(i64),
    Skipped,
}

impl Serialize for OracleOccurrence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OracleOccurrence::Count(n) => s.serialize_i64(*n),
            OracleOccurrence::Skipped => s.serialize_str("skipped"),
        }
    }
}

impl<'de> Deserialize<'de> for OracleOccurrence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(OracleOccurrence::Count(n)),
            Raw::S(s) if s == "skipped" => Ok(OracleOccurrence::Skipped),
            Raw::S(s) => Err(serde::de::Error::custom(format!("unexpected occurrence {s:?}"))),
        }
    }
}

impl fmt::Display for OracleOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleOccurrence::Count(n) => write!(f, "{n}"),
            OracleOccurrence::Skipped => f.write_str("skipped"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepRecord {
    pub family: Family,
    pub rank: usize,
    pub chains: String,
    pub two_lambda: Vec<HalfInt>,
    pub lkt: Vec<HalfInt>,
    pub spin_lkt: Vec<HalfInt>,
    pub unitarily_small: bool,
    pub certificate_ok: bool,
    pub oracle_occurrence: OracleOccurrence,
}

pub const TABLE_HEADER: [&str; 7] = ["chains", "2lambda", "lkt", "spin_lkt", "usmall", "cert", "oracle"];

fn tuple(v: &[HalfInt]) -> String {
    let parts: Vec<String> = v.iter().map(HalfInt::to_string).collect();
    format!("({})", parts.join(","))
}

impl RepRecord {
    /// Builds the record; the oracle runs when `rank <= oracle_max_rank`.
    pub fn build(u: &ChainUnion, oracle_max_rank: usize) -> Result<RepRecord> {
        let s = assemble_spin_lkt(u)?;
        let oracle_occurrence = if u.group.rank <= oracle_max_rank {
            OracleOccurrence::Count(occurrence(u, &s))
        } else {
            OracleOccurrence::Skipped
        };
        Ok(RepRecord {
            family: u.group.family,
            rank: u.group.rank,
            chains: u.to_string(),
            two_lambda: u.two_lambda().coords,
            lkt: u.lowest_k_type().coords,
            spin_lkt: s.mu.coords.clone(),
            unitarily_small: is_unitarily_small(&s.mu),
            certificate_ok: s.certificate_ok,
            oracle_occurrence,
        })
    }

    pub fn group(&self) -> GroupType {
        GroupType::new(self.family, self.rank)
    }

    pub fn table_cells(&self) -> [String; 7] {
        [
            self.chains.clone(),
            tuple(&self.two_lambda),
            tuple(&self.lkt),
            tuple(&self.spin_lkt),
            self.unitarily_small.to_string(),
            self.certificate_ok.to_string(),
            self.oracle_occurrence.to_string(),
        ]
    }
}

fn shape_of(u: &ChainUnion) -> LeviShape {
    LeviShape::new(u.group.family, u.a_rank(), u.group.rank - u.a_rank())
}

fn mu_ints(s: &SpinLktResult) -> Vec<i64> {
    s.mu.to_ints().expect("spin-lowest K-types are integral")
}

fn occurrence(u: &ChainUnion, s: &SpinLktResult) -> i64 {
    let shape = shape_of(u);
    with_oracle(|o| o.blattner_multiplicity(&shape, &s.theta_a, &s.theta_o, &mu_ints(s), false).total)
}

/// Checks run by [`verify_union`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// The Dirac certificate `{μ − ρ} + ρ = 2λ`.
    EqPar,
    /// `μ` lies in the hull of the orbit of `2ρ`.
    USmall,
    /// The alternating sum at `μ` is positive and agrees with restriction.
    Oracle,
    /// Higher cohomology layers contribute nothing.
    Vanishing,
    /// The degree-`k` witness exists.
    Witness,
    /// Bounded search for violations of the Dirac inequality.
    Dirac,
    /// `μ` is the only occurring K-type satisfying the certificate.
    Uniqueness,
}

impl Check {
    pub const ALL: [Check; 7] =
        [Check::EqPar, Check::USmall, Check::Oracle, Check::Vanishing, Check::Witness, Check::Dirac, Check::Uniqueness];

    pub fn name(self) -> &'static str {
        match self {
            Check::EqPar => "eqpar",
            Check::USmall => "usmall",
            Check::Oracle => "oracle",
            Check::Vanishing => "vanishing",
            Check::Witness => "witness",
            Check::Dirac => "dirac",
            Check::Uniqueness => "uniqueness",
        }
    }

    fn needs_oracle(self) -> bool {
        !matches!(self, Check::EqPar | Check::USmall)
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepVerification {
    pub family: Family,
    pub rank: usize,
    pub chains: String,
    pub spin_lkt: Vec<HalfInt>,
    pub outcomes: Vec<CheckOutcome>,
}

impl RepVerification {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != Status::Fail)
    }
}

fn outcome(check: Check, ok: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome { check, status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
}

/// Runs the requested checks on one scattered union. Oracle-backed checks
/// are skipped above `oracle_max_rank`.
pub fn verify_union(u: &ChainUnion, checks: &[Check], oracle_max_rank: usize) -> RepVerification {
    let mut outcomes = Vec::new();
    let result = if is_scattered(u) { assemble_spin_lkt(u) } else { Err(Error::NotScattered(u.to_string())) };
    let s = match result {
        Ok(s) => s,
        Err(e) => {
            return RepVerification {
                family: u.group.family,
                rank: u.group.rank,
                chains: u.to_string(),
                spin_lkt: Vec::new(),
                outcomes: checks.iter().map(|&c| outcome(c, false, e.to_string())).collect(),
            }
        }
    };
    let two_lambda = u.two_lambda();
    let shape = shape_of(u);
    let mu = mu_ints(&s);
    for &check in checks {
        if check.needs_oracle() && u.group.rank > oracle_max_rank {
            outcomes.push(CheckOutcome { check, status: Status::Skipped, detail: format!("rank > {oracle_max_rank}") });
            continue;
        }
        let o = match check {
            Check::EqPar => outcome(check, verify_eq_par(&s.mu, &two_lambda), ""),
            Check::USmall => outcome(check, is_unitarily_small(&s.mu), ""),
            Check::Oracle => with_oracle(|o| {
                let b = o.blattner_multiplicity(&shape, &s.theta_a, &s.theta_o, &mu, false).total;
                let f = o.frobenius_multiplicity(&shape, &s.theta_a, &s.theta_o, &mu);
                outcome(check, b >= 1 && b == f, format!("blattner {b}, restriction {f}"))
            }),
            Check::Vanishing => with_oracle(|o| {
                let full = o.blattner_multiplicity(&shape, &s.theta_a, &s.theta_o, &mu, true);
                let h0 = full.layers.get(&0).copied().unwrap_or(0);
                let higher = full.higher_layers();
                outcome(check, higher == 0 && full.total == h0, format!("H^0 {h0}, higher {higher}"))
            }),
            Check::Witness => with_oracle(|o| {
                let nus: Vec<Vec<i64>> = s.corrections.iter().map(|c| c.nu.clone()).collect();
                let want: usize = nus.iter().flatten().map(|&x| x as usize).sum();
                match o.h0_witness(&shape, &s.theta_a, &s.theta_o, &mu, &nus) {
                    Ok(w) => outcome(check, w.k == want, format!("k = {}, multiplicity {}", w.k, w.multiplicity)),
                    Err(e) => outcome(check, false, e.to_string()),
                }
            }),
            Check::Dirac | Check::Uniqueness => {
                let search = with_oracle(|o| {
                    o.dirac_search(&shape, &s.theta_a, &s.theta_o, &two_lambda, mu[0] + 1, mu.iter().sum::<i64>() + 2)
                });
                if check == Check::Dirac {
                    let bad = search.occurrences.iter().filter(|x| x.spin_norm < search.bound).count();
                    outcome(
                        check,
                        bad == 0 && spin_norm(&s.mu) == search.bound,
                        format!("{} K-types searched positive, {bad} below bound", search.occurrences.len()),
                    )
                } else {
                    let certified: Vec<&Vec<i64>> = search
                        .occurrences
                        .iter()
                        .map(|x| &x.mu)
                        .filter(|m| {
                            let w = Weight::from_ints(u.group, m).expect("rank");
                            verify_eq_par(&w, &two_lambda)
                        })
                        .collect();
                    outcome(check, certified == [&mu], format!("partial: {} certified candidate(s)", certified.len()))
                }
            }
        };
        outcomes.push(o);
    }
    RepVerification {
        family: u.group.family,
        rank: u.group.rank,
        chains: u.to_string(),
        spin_lkt: s.mu.coords,
        outcomes,
    }
}

/// Verifies every scattered representation of `family` up to `max_rank`.
pub fn verify_census(family: Family, max_rank: usize, checks: &[Check], oracle_max_rank: usize) -> Result<Vec<RepVerification>> {
    let lo = crate::enumerate::first_rank(family);
    let opts = EnumerationOptions { max_rank: max_rank.max(lo), ..EnumerationOptions::default() };
    let mut unions = Vec::new();
    for r in lo..=max_rank {
        unions.extend(enumerate_scattered_with(GroupType::new(family, r), opts)?.reps);
    }
    Ok(unions.par_iter().map(|u| verify_union(u, checks, oracle_max_rank)).collect())
}

/// Records for the whole census of `g`.
pub fn census_records(g: GroupType, opts: EnumerationOptions, oracle_max_rank: usize) -> Result<Vec<RepRecord>> {
    let row = enumerate_scattered_with(g, opts)?;
    row.reps.par_iter().map(|u| RepRecord::build(u, oracle_max_rank)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let u = ChainUnion::parse("A(2,2)+C[3,1]", None).unwrap();
        let r = RepRecord::build(&u, 4).unwrap();
        assert_eq!(r.oracle_occurrence, OracleOccurrence::Count(1));
        let js = serde_json::to_string(&r).unwrap();
        assert!(js.contains("\"spin_lkt\":[\"3\",\"2\",\"1\"]"));
        let back: RepRecord = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
        let r = RepRecord::build(&u, 2).unwrap();
        let js = serde_json::to_string(&r).unwrap();
        assert!(js.contains("\"oracle_occurrence\":\"skipped\""));
        assert_eq!(serde_json::from_str::<RepRecord>(&js).unwrap(), r);
    }

    #[test]
    fn verify_sp6() {
        let u = ChainUnion::parse("A(3,3)+C[4]", None).unwrap();
        let v = verify_union(&u, &Check::ALL, 4);
        assert!(v.passed(), "{v:?}");
    }
}
