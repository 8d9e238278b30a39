//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a failed verification or an I/O error,
//! 2 on a usage error or a violated parameter constraint.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{abramson_rhs, sbc_rhs, to_bound_result, BoundQuery, BoundResult, Capability, CodeGeometry};
use crate::sweep::{compute_surface, format_significant, InclusiveRange, SweepSpec};
use crate::verify::{run_suite, Limits, Suite};

pub const THREADS_ENV: &str = "MPBC_BOUNDS_THREADS";

const EXIT_OK: u8 = 0;
const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "mpbc-bounds", version, about = "Code-rate bounds for phased-burst and single-burst correcting codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one multiple phased-burst bound.
    Bound(BoundArgs),
    /// Evaluate the single burst correction bound.
    Sbc(SbcArgs),
    /// Sweep both bounds over an (M, symbols) grid.
    Sweep(SweepArgs),
    /// Run the exhaustive verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("capability").required(true).args(["u", "e", "full"])))]
struct BoundArgs {
    /// Number of subblocks.
    #[arg(long)]
    t: usize,
    /// Subblock length.
    #[arg(long)]
    v: usize,
    /// Maximum number of correctable subblocks.
    #[arg(long = "M")]
    m: usize,
    /// Maximum end-around burst length per subblock (gap-constrained bound).
    #[arg(long)]
    u: Option<usize>,
    /// Maximum correctable symbols per subblock (no gap constraint).
    #[arg(long = "E")]
    e: Option<usize>,
    /// Every subblock pattern correctable.
    #[arg(long)]
    full: bool,
}

#[derive(Args, Debug)]
struct SbcArgs {
    /// Block length.
    #[arg(long)]
    n: usize,
    /// Maximum correctable burst length.
    #[arg(long)]
    u: usize,
    /// Also print the classical n*2^(u-1)+1 bound and compare.
    #[arg(long)]
    abramson: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    v: usize,
    /// Range of M as `lo:hi`.
    #[arg(long, value_parser = parse_range)]
    m: InclusiveRange,
    /// Range of u (gap bound) and E (no-gap bound) as `lo:hi`.
    #[arg(long, value_parser = parse_range)]
    sym: InclusiveRange,
    /// Output file; the surface goes to stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads (overridden by MPBC_BOUNDS_THREADS).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SuiteArg {
    All,
    Combinatorics,
    Identities,
    Subblock,
    Theorem1,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Largest pattern length for the counting checks.
    #[arg(long, default_value_t = 14)]
    max_x: usize,
    /// Largest subblock length for the subblock and weight checks.
    #[arg(long, default_value_t = 12)]
    max_v: usize,
    /// Print every reconciliation report in full instead of one line each.
    #[arg(long)]
    verbose: bool,
}

fn parse_range(s: &str) -> Result<InclusiveRange, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Bound(a) => cmd_bound(a, out),
        Command::Sbc(a) => cmd_sbc(a, out),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Self {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

fn print_result(out: &mut dyn Write, r: &BoundResult) -> std::io::Result<()> {
    let q = &r.query;
    let cap = match q.capability {
        Capability::GapLimited { u } => format!("u={u}"),
        Capability::SymbolLimited { e } => format!("E={e}"),
        Capability::FullSubblock => "full".to_string(),
    };
    writeln!(
        out,
        "query: t={} v={} n={} M={} {cap}",
        q.geometry.t,
        q.geometry.v,
        q.geometry.n(),
        q.m
    )?;
    writeln!(out, "rhs: {}", r.rhs)?;
    writeln!(out, "min_redundancy: {}", r.min_redundancy)?;
    writeln!(out, "rate_upper: {}", format_significant(r.rate_upper, 12))
}

fn cmd_bound(a: BoundArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let capability = match (a.u, a.e, a.full) {
        (Some(u), None, false) => Capability::GapLimited { u },
        (None, Some(e), false) => Capability::SymbolLimited { e },
        _ => Capability::FullSubblock,
    };
    let query = BoundQuery::new(CodeGeometry::new(a.t, a.v)?, a.m, capability)?;
    print_result(out, &query.evaluate()?)?;
    Ok(EXIT_OK)
}

fn cmd_sbc(a: SbcArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let geometry = CodeGeometry::single(a.n)?;
    let query = BoundQuery::new(geometry, 1, Capability::GapLimited { u: a.u })?;
    let rhs = sbc_rhs(a.n, a.u)?;
    let result = to_bound_result(rhs, a.n, query)?;
    print_result(out, &result)?;
    if a.abramson {
        let classical = abramson_rhs(a.n, a.u)?;
        writeln!(out, "abramson_rhs: {classical}")?;
        let marker = if classical == result.rhs { "EQUAL" } else { "DIFFERS" };
        writeln!(out, "abramson: {marker}")?;
    }
    Ok(EXIT_OK)
}

fn thread_override(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| Failure {
                code: EXIT_USAGE,
                message: format!("{THREADS_ENV}={raw:?} is not a positive integer"),
            }),
        Err(_) => Ok(flag),
    }
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    let spec = SweepSpec {
        t: a.t,
        v: a.v,
        m_range: a.m,
        sym_range: a.sym,
        threads: thread_override(a.threads)?,
    };
    spec.validate()?;
    let surface = compute_surface(&spec)?;
    let write = |w: &mut dyn Write| match a.format {
        Format::Csv => surface.write_csv(w),
        Format::Json => surface.write_json(w),
    };
    match &a.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure {
                code: EXIT_FAILURE,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            write(&mut BufWriter::new(file))?;
            writeln!(out, "{}", surface.summary())?;
        }
        None => {
            write(out)?;
            writeln!(err, "{}", surface.summary())?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let suites: Vec<Suite> = match a.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Combinatorics => vec![Suite::Combinatorics],
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::Subblock => vec![Suite::Subblock],
        SuiteArg::Theorem1 => vec![Suite::Theorem1],
    };
    let limits = Limits {
        max_x: a.max_x,
        max_v: a.max_v,
    };
    let mut all_passed = true;
    for suite in suites {
        let outcome = run_suite(suite, limits)?;
        writeln!(out, "{outcome}")?;
        for f in &outcome.failures {
            writeln!(out, "  failed: {f}")?;
        }
        if !outcome.reports.is_empty() {
            let informational: Vec<_> = outcome
                .reports
                .iter()
                .filter(|r| !r.is_consistent())
                .collect();
            writeln!(
                out,
                "  reconciliation: {} reports, {} with discrepancies",
                outcome.reports.len(),
                informational.len()
            )?;
            for r in &outcome.reports {
                if a.verbose || !r.is_consistent() {
                    write!(out, "{r}")?;
                } else {
                    writeln!(out, "  {}", r.to_line())?;
                }
            }
        }
        all_passed &= outcome.passed();
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_FAILURE })
}
