//! Command-line front end for the uniformizer toolkit: tables, verification
//! suites and coefficient dumps, as text or JSON.

pub mod commands;
pub mod schema;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use uniformizer_core::padic::{check_odd_prime, max_precision};

pub use commands::{Done, Failure, Outcome, DEFAULT_PRECISION, HEAVY_DEGREE, TABLE_PRIMES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "uniformizer",
    version,
    about = "Explicit uniformizers of Q_p(zeta_{p^2}, p^{1/p})"
)]
pub struct Cli {
    /// Odd prime p.
    #[arg(long = "p", global = true)]
    pub p: Option<u64>,
    /// Cyclotomic level m.
    #[arg(long = "m", global = true, default_value_t = 2)]
    pub m: u32,
    /// Root level n (p^{1/p^n}).
    #[arg(long = "n", global = true, default_value_t = 1)]
    pub n: u32,
    /// p-adic precision N (digits kept modulo p^N).
    #[arg(long, global = true, env = "UNIFORMIZER_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Run norm determinants above the default size limit.
    #[arg(long, global = true)]
    pub heavy: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Print the simplified uniformizer (all five table primes without --p).
    Table,
    /// Run the congruence, expansion and uniformizer checks.
    Verify,
    /// Look for l with p || a_l and p !| l.
    Search {
        /// Scan every l < phi(p^m) instead of l < d.
        #[arg(long)]
        full_range: bool,
    },
    /// Dump a_l with case tags and congruence residues.
    Coeffs,
}

/// Validated settings shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub p: u64,
    pub m: u32,
    pub n: u32,
    pub precision: u32,
    pub format: Format,
    pub heavy: bool,
}

impl RunConfig {
    pub fn new(
        p: u64,
        m: u32,
        n: u32,
        precision: u32,
        format: Format,
        heavy: bool,
    ) -> Result<Self, Failure> {
        check_odd_prime(p)?;
        if precision < 2 || precision > max_precision(p) {
            return Err(Failure::Usage(format!(
                "precision must lie in [2, {}] for p = {p} (got {precision})",
                max_precision(p)
            )));
        }
        if m == 0 || n == 0 {
            return Err(Failure::Usage(String::from(
                "levels m and n must be at least 1",
            )));
        }
        Ok(RunConfig {
            p,
            m,
            n,
            precision,
            format,
            heavy,
        })
    }
}

/// Parses `args` and runs the command, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                Outcome::Usage
            } else {
                let _ = write!(out, "{text}");
                Outcome::Verified
            };
        }
    };
    let result = match (cli.command, cli.p) {
        (Command::Table, None) => commands::table_all(cli.precision, cli.format),
        (_, None) => Err(Failure::Usage(String::from("--p is required"))),
        (command, Some(p)) => RunConfig::new(p, cli.m, cli.n, cli.precision, cli.format, cli.heavy)
            .and_then(|config| match command {
                Command::Table => commands::table(&config),
                Command::Verify => commands::verify(&config),
                Command::Search { full_range } => commands::search(&config, full_range),
                Command::Coeffs => commands::coeffs(&config),
            }),
    };
    match result {
        Ok(done) => {
            let _ = out.write_all(done.stdout.as_bytes());
            let _ = err.write_all(done.stderr.as_bytes());
            done.outcome
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message());
            failure.outcome()
        }
    }
}
