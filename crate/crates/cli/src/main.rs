use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use indec_cli::commands::*;
use indec_cli::{exit_code, Report, EXIT_MISMATCH};
use indec_core::families::Family;
use indec_core::indecenum::Limits;
use indec_core::{Error, Result};

/// Indecomposable totally positive integers in real quadratic and
/// biquadratic fields.
#[derive(Parser)]
#[command(name = "indec", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Print the result as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print census rows as CSV.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Maximum lattice points per parallelepiped and per decomposition search.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Discriminant bound for `table` and `census`.
    #[arg(long, global = true)]
    max_disc: Option<u128>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Continued fraction and fundamental unit of Q(√D).
    Cf {
        d: u64,
        /// Also list best one-sided approximations with denominator at most T.
        #[arg(long, value_name = "T")]
        approx: Option<u64>,
    },
    /// Indecomposables of Q(√D).
    Quad { d: u64 },
    /// Units and indecomposables of Q(√p,√q).
    Biquad {
        p: u64,
        q: u64,
        /// Cross-check against the fundamental-parallelotope scan.
        #[arg(long)]
        oracle: bool,
    },
    /// ι for all biquadratic fields up to --max-disc (default 30000).
    Table,
    /// Verify a one-parameter family (f1, f2, f3) at parameter n.
    Family { which: String, n: u64 },
    /// Test whether indecomposables of the quadratic subfields stay indecomposable.
    Preserve { p: u64, q: u64 },
    /// Fields of degree 2^n with discriminant at most X.
    Census {
        n: u32,
        x: Option<u128>,
        /// Print statistics instead of the field list.
        #[arg(long)]
        stats: bool,
        /// Bound B on the odd partial quotients of the quadratic subfields.
        #[arg(long, value_name = "B", default_value_t = 10)]
        odd_max: u64,
        /// Count biquadratic fields with ι at most R (computes ι for every field).
        #[arg(long, value_name = "R")]
        iota_max: Option<usize>,
    },
    /// The constant C(R, m).
    Crm { r: u64, m: u64 },
    /// Rank bound 7·[O_K^×+ : (O_K^×)²]·ι(K), from a field or from given values.
    Rankbound {
        p: Option<u64>,
        q: Option<u64>,
        #[arg(long, requires = "index_squares", conflicts_with_all = ["p", "q"])]
        iota: Option<u64>,
        #[arg(long, requires = "iota")]
        index_squares: Option<u64>,
    },
    /// Re-render a JSON report read from standard input.
    #[command(hide = true)]
    Render,
}

fn run(cli: &Cli) -> Result<Report> {
    let mut limits = Limits::default();
    if let Some(b) = cli.budget {
        limits = Limits {
            points: b,
            search: b,
        };
    }
    if cli.csv && !matches!(cli.cmd, Cmd::Census { stats: false, .. }) {
        return Err(Error::InvalidInput(
            "--csv is only available for the census field list".into(),
        ));
    }
    match &cli.cmd {
        Cmd::Cf { d, approx } => cmd_cf(*d, *approx),
        Cmd::Quad { d } => cmd_quad(*d),
        Cmd::Biquad { p, q, oracle } => cmd_biquad(*p, *q, &limits, *oracle),
        Cmd::Table => {
            let x = cli.max_disc.unwrap_or(30_000);
            let x =
                u64::try_from(x).map_err(|_| Error::InvalidInput("--max-disc too large".into()))?;
            cmd_table(x, &limits)
        }
        Cmd::Family { which, n } => cmd_family(which.parse::<Family>()?, *n, &limits),
        Cmd::Preserve { p, q } => cmd_preserve(*p, *q, &limits),
        Cmd::Census {
            n,
            x,
            stats,
            odd_max,
            iota_max,
        } => {
            let x = x
                .or(cli.max_disc)
                .ok_or_else(|| Error::InvalidInput("census needs a discriminant bound".into()))?;
            let opts = stats.then_some(StatsOptions {
                b: *odd_max,
                r: *iota_max,
            });
            cmd_census(*n, x, opts, &limits)
        }
        Cmd::Crm { r, m } => cmd_crm(*r, *m),
        Cmd::Rankbound {
            p,
            q,
            iota,
            index_squares,
        } => match (p, q, iota, index_squares) {
            (Some(p), Some(q), None, None) => cmd_rankbound_field(*p, *q, &limits),
            (None, None, Some(i), Some(s)) => cmd_rankbound(*i, *s),
            _ => Err(Error::InvalidInput(
                "give either p q or --iota and --index-squares".into(),
            )),
        },
        Cmd::Render => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
            serde_json::from_str(&buf).map_err(|e| Error::InvalidInput(e.to_string()))
        }
    }
}

fn output(cli: &Cli, report: &Report) -> Result<String> {
    if cli.json {
        let mut s =
            serde_json::to_string_pretty(report).map_err(|e| Error::InvalidInput(e.to_string()))?;
        s.push('\n');
        Ok(s)
    } else if cli.csv {
        match report {
            Report::Census(c) => census_csv(c),
            _ => Err(Error::InvalidInput(
                "--csv is only available for census".into(),
            )),
        }
    } else {
        Ok(report.render())
    }
}

#[cfg(feature = "parallel")]
fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidInput("--jobs must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    if jobs == Some(0) {
        return Err(Error::InvalidInput("--jobs must be positive".into()));
    }
    Ok(f())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = with_jobs(cli.jobs, || run(&cli))
        .and_then(|r| r)
        .and_then(|r| Ok((output(&cli, &r)?, r)));
    match result {
        Ok((text, report)) => {
            print!("{text}");
            if report.verified() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
