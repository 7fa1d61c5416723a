use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use scattered_core::catalog::{decompose_parameter, is_scattered, Membership, ZhParam};
use scattered_core::chains::ChainUnion;
use scattered_core::enumerate::{count_table, enumerate_scattered_with, EnumerationOptions};
use scattered_core::partitions::{eqpt_check, lr_coefficient, Partition};
use scattered_core::record::{census_records, verify_census, Check, RepRecord, Status, TABLE_HEADER};
use scattered_core::weights::{parse_half_list, Family, GroupType, Weight};

#[derive(Parser)]
#[command(name = "scattered", version, about = "Scattered representations of complex classical groups")]
struct Cli {
    /// Largest rank any subcommand will search.
    #[arg(long, global = true, env = "SCATTER_MAX_RANK", default_value_t = 10)]
    rank_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List every scattered representation of one group.
    Enumerate {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Run the character oracle up to this rank.
        #[arg(long, default_value_t = scattered_core::record::ORACLE_MAX_RANK)]
        oracle_max_rank: usize,
        /// Largest chain coordinate searched (default: twice the rank).
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Counts from the recursions, optionally checked against the census.
    Count {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        max_rank: usize,
        /// Also run the brute-force census and compare.
        #[arg(long)]
        brute: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Spin-lowest K-type of a chain union, as a record.
    SpinLkt {
        /// Union such as "A(2,2)+C[3,1]".
        #[arg(long)]
        chains: String,
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        #[arg(long, default_value_t = scattered_core::record::ORACLE_MAX_RANK)]
        oracle_max_rank: usize,
        /// Print the intermediate vectors instead of the record.
        #[arg(long)]
        explain: bool,
    },
    /// Run verification checks over a census.
    Verify {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        max_rank: usize,
        /// Comma-separated subset of eqpar,usmall,oracle,vanishing,witness,dirac,uniqueness.
        #[arg(long, default_value = "eqpar,usmall,oracle,vanishing,dirac")]
        checks: String,
        #[arg(long, default_value_t = scattered_core::record::ORACLE_MAX_RANK)]
        oracle_max_rank: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Decide whether a Zhelobenko parameter is a union of chains.
    CheckParam {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda_l: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda_r: String,
    },
    /// Partition utilities.
    Lr {
        #[command(subcommand)]
        op: LrOp,
    },
}

#[derive(Subcommand)]
enum LrOp {
    /// Littlewood-Richardson coefficient c^lam_{mu,nu}.
    Coeff {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        lam: String,
    },
    /// Conjugate partition.
    Transpose {
        #[arg(long)]
        p: String,
    },
    /// Staircase identity for a strict partition.
    Eqpt {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: String,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

enum Failure {
    Usage(anyhow::Error),
    Verification,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn classical(f: Family) -> anyhow::Result<()> {
    if f == Family::A {
        bail!("family must be one of B, C, D");
    }
    Ok(())
}

fn cap(rank: usize, limit: usize) -> anyhow::Result<()> {
    if rank > limit {
        bail!("rank {rank} exceeds the cap {limit} (SCATTER_MAX_RANK)");
    }
    Ok(())
}

fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|s| s.to_string()).collect());
    for r in rows {
        out += &line(r.clone());
    }
    out
}

fn render_csv(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?)
}

fn render<T: serde::Serialize>(format: Format, json: &T, header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(json)? + "\n",
        Format::Table => render_table(header, rows),
        Format::Csv => render_csv(header, rows)?,
    })
}

fn run(cli: Cli) -> Result<String, Failure> {
    let limit = cli.rank_cap;
    match cli.command {
        Command::Enumerate { family, rank, format, oracle_max_rank, bound } => {
            classical(family)?;
            cap(rank, limit)?;
            let opts = EnumerationOptions { max_rank: limit, coordinate_bound: bound };
            let recs = census_records(GroupType::new(family, rank), opts, oracle_max_rank).map_err(anyhow::Error::from)?;
            let rows: Vec<Vec<String>> = recs.iter().map(|r| r.table_cells().to_vec()).collect();
            Ok(render(format, &recs, &TABLE_HEADER, &rows)?)
        }
        Command::Count { family, max_rank, brute, format } => {
            classical(family)?;
            cap(max_rank, limit)?;
            let table = count_table(family, max_rank).map_err(anyhow::Error::from)?;
            let mut rows = Vec::new();
            let mut json = Vec::new();
            let mut mismatch = false;
            for (n, c) in table {
                let mut row = vec![n.to_string(), c.to_string()];
                let mut entry = serde_json::json!({ "rank": n, "count": c });
                if brute {
                    let opts = EnumerationOptions { max_rank: limit, coordinate_bound: None };
                    let got = enumerate_scattered_with(GroupType::new(family, n), opts).map_err(anyhow::Error::from)?.count;
                    mismatch |= got as u64 != c;
                    row.push(got.to_string());
                    entry["census"] = got.into();
                }
                rows.push(row);
                json.push(entry);
            }
            let header: &[&str] = if brute { &["rank", "count", "census"] } else { &["rank", "count"] };
            let out = render(format, &json, header, &rows)?;
            if mismatch {
                print!("{out}");
                return Err(Failure::Verification);
            }
            Ok(out)
        }
        Command::SpinLkt { chains, family, oracle_max_rank, explain } => {
            let u = ChainUnion::parse(&chains, family).map_err(anyhow::Error::from)?;
            if explain {
                let s = scattered_core::spin_lkt::assemble_spin_lkt(&u).map_err(anyhow::Error::from)?;
                return Ok(serde_json::to_string_pretty(&s).map_err(anyhow::Error::from)? + "\n");
            }
            let rec = RepRecord::build(&u, oracle_max_rank).map_err(anyhow::Error::from)?;
            Ok(serde_json::to_string_pretty(&rec).map_err(anyhow::Error::from)? + "\n")
        }
        Command::Verify { family, max_rank, checks, oracle_max_rank, format } => {
            classical(family)?;
            cap(max_rank, limit)?;
            let checks: Vec<Check> =
                checks.split(',').map(str::parse).collect::<Result<_, _>>().map_err(anyhow::Error::from)?;
            let report = verify_census(family, max_rank, &checks, oracle_max_rank).map_err(anyhow::Error::from)?;
            let mut header = vec!["rank", "chains"];
            let names: Vec<String> = checks
                .iter()
                .map(|c| if *c == Check::Uniqueness { "uniqueness (partial)".to_string() } else { c.to_string() })
                .collect();
            header.extend(names.iter().map(String::as_str));
            let rows: Vec<Vec<String>> = report
                .iter()
                .map(|v| {
                    let mut r = vec![v.rank.to_string(), v.chains.clone()];
                    r.extend(v.outcomes.iter().map(|o| {
                        match o.status {
                            Status::Pass => "pass",
                            Status::Fail => "FAIL",
                            Status::Skipped => "skipped",
                        }
                        .to_string()
                    }));
                    r
                })
                .collect();
            let failed = report.iter().filter(|v| !v.passed()).count();
            let mut out = render(format, &report, &header, &rows)?;
            if format == Format::Table {
                out += &format!("{} representations, {} passed, {failed} failed\n", report.len(), report.len() - failed);
            }
            if failed > 0 {
                print!("{out}");
                return Err(Failure::Verification);
            }
            Ok(out)
        }
        Command::CheckParam { family, rank, lambda_l, lambda_r } => {
            classical(family)?;
            cap(rank, limit)?;
            let g = GroupType::new(family, rank);
            let weight = |s: &str| -> anyhow::Result<Weight> {
                Ok(Weight::new(g, parse_half_list(s).with_context(|| format!("parsing {s:?}"))?)?)
            };
            let p = ZhParam::new(weight(&lambda_l)?, weight(&lambda_r)?).map_err(anyhow::Error::from)?;
            Ok(match decompose_parameter(&p, g) {
                Membership::NotInGhatD => "not in Ghat^d\n".to_string(),
                Membership::Union(u) => {
                    let kind = if is_scattered(&u) { "scattered" } else { "not scattered" };
                    format!("in Ghat^d: {u}  {}  ({kind})\n", u.brace_notation())
                }
            })
        }
        Command::Lr { op } => {
            let part = |s: &str| s.parse::<Partition>().with_context(|| format!("parsing partition {s:?}"));
            Ok(match op {
                LrOp::Coeff { mu, nu, lam } => format!("{}\n", lr_coefficient(&part(&mu)?, &part(&nu)?, &part(&lam)?)),
                LrOp::Transpose { p } => format!("{}\n", part(&p)?.transpose()),
                LrOp::Eqpt { m, p } => format!("{}\n", eqpt_check(m, &part(&p)?).map_err(anyhow::Error::from)?),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
