//! Thin command-line front end over the library. Exit codes: 0 success /
//! all checks pass, 1 verification failure, 2 domain error, 3 resource cap.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use partition_asym::asym::{self, PMode};
use partition_asym::config::{OutputFormat, RunConfig};
use partition_asym::count::{PartSet, PartitionTable};
use partition_asym::error::{Error, Result};
use partition_asym::expansion::Expansion;
use partition_asym::ideals::oscillation::{
    oscillation_certificate, oscillation_sequence, zero_window_check_stages, OscillationParams,
};
use partition_asym::ideals::{self, Basis};
use partition_asym::report;
use partition_asym::verify;
use partition_asym::xreal::XReal;

#[derive(Parser)]
#[command(
    name = "partition-asym",
    version,
    about = "Exact and asymptotic restricted-partition counting",
    after_help = "Env overrides: PARTITION_ASYM_PRECISION_BITS, PARTITION_ASYM_EXACT_CAP.\n\
                  Exit codes: 0 ok, 1 verification failure, 2 domain error, 3 resource cap."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GlobalOpts {
    /// Working precision in bits (default 256).
    #[arg(long, global = true)]
    precision_bits: Option<usize>,
    /// Exact-count cap (default 100000).
    #[arg(long, global = true)]
    exact_cap: Option<u64>,
    /// Table output format.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Optional TOML config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    HrStrong,
    HrLeading,
}

impl From<ModeArg> for PMode {
    fn from(m: ModeArg) -> PMode {
        match m {
            ModeArg::Exact => PMode::Exact,
            ModeArg::HrStrong => PMode::HrStrong,
            ModeArg::HrLeading => PMode::HrLeading,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    HrLeading,
    LogHrLeading,
    HrStrong,
    Schur,
    CompSchur,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lemma32,
    Expansion,
    CohenRemmel,
    Oscillation,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact count: p(n), or restricted / avoiding / basis-avoiding counts.
    Count {
        n: u64,
        /// Forbidden parts, comma separated.
        #[arg(long, conflicts_with_all = ["allow", "basis"])]
        forbid: Option<String>,
        /// Allowed parts, comma separated.
        #[arg(long, conflicts_with = "basis")]
        allow: Option<String>,
        /// JSON file holding a forbidden basis (array of part arrays).
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Convergence table of exact p_{-S}(n) against the complementary Schur
    /// main term.
    Converge {
        /// Forbidden parts, comma separated (empty for none).
        #[arg(long, default_value = "")]
        s: String,
        /// Grid of n values, comma separated, ascending.
        #[arg(long)]
        grid: String,
        /// Source of the p(n) factor.
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
    },
    /// Evaluate one asymptotic formula at a point.
    Estimate {
        n: u64,
        #[arg(long, value_enum)]
        formula: FormulaArg,
        /// Allowed parts (for schur).
        #[arg(long)]
        allow: Option<String>,
        /// Forbidden parts (for comp-schur).
        #[arg(long)]
        forbid: Option<String>,
        /// p(n) factor source (for comp-schur).
        #[arg(long, value_enum, default_value = "exact")]
        p_mode: ModeArg,
    },
    /// Print the series-pipeline coefficients (and a residual when n and
    /// shift are given) as JSON.
    Expansion {
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long)]
        n: Option<u64>,
        /// The shift s in p(n-s).
        #[arg(long)]
        shift: Option<u64>,
    },
    /// Run a named verification suite; exit 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Restrict the oscillation suite to toy-scale exact checks.
        #[arg(long)]
        toy: bool,
    },
    /// Generate oscillation stages, window checks, and optionally the
    /// stage-1 certificate.
    Oscillate {
        /// Oscillation exponent epsilon in (0, 1].
        #[arg(long, default_value = "0.5")]
        epsilon: String,
        /// Surrogate threshold n_0.
        #[arg(long, default_value_t = 10_000)]
        n0: u64,
        #[arg(long, default_value_t = 2)]
        stages: usize,
        #[arg(long)]
        certificate: bool,
    },
    /// Fit the growth exponent of an avoiding-count table.
    Fit {
        /// Forbidden parts, comma separated (empty for unrestricted p(n)).
        #[arg(long, default_value = "")]
        forbid: String,
        /// Grid of n values (default: 9 geometric points in [2500, 40000]).
        #[arg(long)]
        grid: Option<String>,
    },
}

fn parse_parts(text: &str) -> Result<Vec<u64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::domain(format!("bad part value {p:?}")))
        })
        .collect()
}

fn parse_part_set(text: &str) -> Result<PartSet> {
    PartSet::new(parse_parts(text)?)
}

fn load_config(global: &GlobalOpts) -> Result<RunConfig> {
    let mut cfg = match &global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::domain(format!("cannot read config {path:?}: {e}")))?;
            RunConfig::from_toml(&text)?
        }
        None => RunConfig::default(),
    };
    cfg = cfg.apply_env()?;
    if let Some(p) = global.precision_bits {
        cfg.precision_bits = p;
    }
    if let Some(c) = global.exact_cap {
        cfg.exact_cap = c;
    }
    if let Some(f) = global.format {
        cfg.format = match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        };
    }
    if let Some(s) = global.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

#[derive(Serialize)]
struct ExpansionOutput {
    t: usize,
    precision_bits: usize,
    a_coeffs: Vec<XReal>,
    g_polys: Vec<Vec<XReal>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<ResidualOutput>,
}

#[derive(Serialize)]
struct ResidualOutput {
    n: u64,
    shift: u64,
    normalized_residual: XReal,
}

#[derive(Serialize)]
struct OscillateOutput {
    epsilon: XReal,
    surrogate_n0: u64,
    stages: Vec<partition_asym::ideals::oscillation::OscStage>,
    zero_windows: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<partition_asym::ideals::oscillation::OscCertificate>,
}

fn run(cli: Cli) -> Result<i32> {
    let cfg = load_config(&cli.global)?;
    let prec = cfg.precision_bits;
    let table = PartitionTable::with_cap(cfg.exact_cap);

    match cli.cmd {
        Cmd::Count {
            n,
            forbid,
            allow,
            basis,
        } => {
            let count = if let Some(path) = basis {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::domain(format!("cannot read basis {path:?}: {e}")))?;
                let basis: Basis = serde_json::from_str(&text)
                    .map_err(|e| Error::domain(format!("bad basis JSON: {e}")))?;
                ideals::basis_avoiding_count_ie(n, &basis, &table)?
            } else if let Some(allow) = allow {
                table.restricted_count(n, &parse_part_set(&allow)?)?
            } else if let Some(forbid) = forbid {
                table.avoiding_count_ie(n, &parse_part_set(&forbid)?)?
            } else {
                table.partition_count(n)?
            };
            println!("{count}");
        }
        Cmd::Converge { s, grid, mode } => {
            let s = parse_part_set(&s)?;
            let grid = parse_parts(&grid)?;
            let rows = asym::ratio_report(&grid, &s, mode.into(), &table, prec)?;
            let raw = report::raw_rows(&rows);
            match cfg.format {
                OutputFormat::Csv => print!("{}", report::ratio_table_to_csv(&raw)),
                OutputFormat::Json => print!("{}", report::ratio_table_to_json(&raw)),
            }
        }
        Cmd::Estimate {
            n,
            formula,
            allow,
            forbid,
            p_mode,
        } => {
            if n < 1 {
                return Err(Error::domain("estimate requires n >= 1"));
            }
            let value = match formula {
                FormulaArg::HrLeading => asym::hr_leading(n, prec),
                FormulaArg::LogHrLeading => asym::log_hr_leading(n, prec),
                FormulaArg::HrStrong => asym::hr_strong(n, prec),
                FormulaArg::Schur => {
                    let allow = allow
                        .ok_or_else(|| Error::domain("schur requires --allow"))?;
                    asym::schur_estimate(n, &parse_part_set(&allow)?, prec)?
                }
                FormulaArg::CompSchur => {
                    let forbid = forbid.unwrap_or_default();
                    asym::comp_schur_estimate(
                        n,
                        &parse_part_set(&forbid)?,
                        p_mode.into(),
                        &table,
                        prec,
                    )?
                }
            };
            println!("{}", value.to_decimal_string());
        }
        Cmd::Expansion { t, n, shift } => {
            let e = Expansion::new(t, prec)?;
            let residual = match (n, shift) {
                (Some(n), Some(s)) => Some(ResidualOutput {
                    n,
                    shift: s,
                    normalized_residual: e.verify(n, s, &table)?,
                }),
                (None, None) => None,
                _ => {
                    return Err(Error::domain(
                        "residual evaluation needs both --n and --shift",
                    ))
                }
            };
            let out = ExpansionOutput {
                t,
                precision_bits: prec,
                a_coeffs: e.a_coeffs().to_vec(),
                g_polys: (0..=t).map(|z| e.g_poly(z).coeffs().to_vec()).collect(),
                residual,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Cmd::Verify { suite, toy } => {
            let report = match suite {
                SuiteArg::Lemma32 => verify::suite_lemma32(cfg.seed),
                SuiteArg::Expansion => verify::suite_expansion(&table, prec)?,
                SuiteArg::CohenRemmel => verify::suite_cohen_remmel(&table)?,
                SuiteArg::Oscillation => verify::suite_oscillation(toy, &table, prec)?,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
            if !report.pass {
                return Ok(1);
            }
        }
        Cmd::Oscillate {
            epsilon,
            n0,
            stages,
            certificate,
        } => {
            let eps = XReal::parse_decimal(&epsilon, prec)?;
            let params = OscillationParams::new(eps.clone(), n0, prec)?;
            let seq = oscillation_sequence(&params, stages)?;
            let mut zero_windows = Vec::with_capacity(seq.len());
            for i in 1..=seq.len() {
                zero_windows.push(zero_window_check_stages(&seq, i, prec)?);
            }
            let certificate = if certificate {
                Some(oscillation_certificate(&params, &seq, 1, &table)?)
            } else {
                None
            };
            let out = OscillateOutput {
                epsilon: eps,
                surrogate_n0: n0,
                stages: seq,
                zero_windows,
                certificate,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Cmd::Fit { forbid, grid } => {
            let s = parse_part_set(&forbid)?;
            let grid = match grid {
                Some(g) => parse_parts(&g)?,
                None => vec![2500, 3536, 5000, 7071, 10000, 14142, 20000, 28284, 40000],
            };
            let mut counts = Vec::with_capacity(grid.len());
            for n in grid {
                counts.push((n, table.avoiding_count_ie(n, &s)?));
            }
            let fit = ideals::fit_growth_exponent(&counts, prec)?;
            println!("{}", serde_json::to_string_pretty(&fit).expect("serializable"));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
