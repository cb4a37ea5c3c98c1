use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use starconfig_cli::{exit_code, parse_input, run, Command, RunOptions, TutteCache, VIOLATION_EXIT};

#[derive(Parser)]
#[command(name = "starconfig", version, about = "Tutte polynomials and star configuration ideals of linear codes")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Matrix file (see README for the format).
    #[arg(global = true)]
    input: Option<PathBuf>,

    /// Use a built-in code instead of a file: e0 or b3.
    #[arg(long, global = true, value_name = "NAME")]
    example: Option<String>,

    /// Print the JSON report instead of tables.
    #[arg(long, global = true)]
    json: bool,

    /// Hilbert function window for the polynomial fit, as lo:hi.
    #[arg(long, global = true, value_parser = parse_window, value_name = "LO:HI")]
    window: Option<(usize, usize)>,

    /// Directory of the persistent Tutte cache.
    #[arg(long, global = true, env = "STARCONFIG_CACHE_DIR", value_name = "PATH")]
    cache_dir: Option<PathBuf>,

    /// Ignore the cache directory even if one is configured.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Refuse codes with more than this many columns.
    #[arg(long, global = true, default_value_t = starconfig::tutte::DEFAULT_EXHAUSTIVE_CAP)]
    max_n: usize,

    /// Include per-phase wall-clock times in the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Tutte polynomial by both engines.
    Tutte,
    /// Generalized Hamming weights by three routes, and Wei duality.
    Ghw,
    /// Height, degree, mu and Hilbert polynomial of every I_a.
    Profile,
    /// Minimal primes of low height of every I_a.
    Primes,
    /// Minimal number of generators of every I_a.
    Mu,
    /// Compare the formulas with the Hilbert function of each I_a.
    Verify,
    /// Colon ideal comparison table.
    Conjecture {
        /// Last degree of the table (default n + k + 1).
        #[arg(long)]
        t_max: Option<usize>,
    },
    /// Check the binomial identity for all alpha up to a bound.
    Identity {
        #[arg(long, default_value_t = 14)]
        max_alpha: u64,
    },
}

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = lo.parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi = hi.parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

fn real_main(cli: Cli) -> Result<i32> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let (cmd, t_max, max_alpha) = match cli.command {
        Cmd::Tutte => (Command::Tutte, None, 14),
        Cmd::Ghw => (Command::Ghw, None, 14),
        Cmd::Profile => (Command::Profile, None, 14),
        Cmd::Primes => (Command::Primes, None, 14),
        Cmd::Mu => (Command::Mu, None, 14),
        Cmd::Verify => (Command::Verify, None, 14),
        Cmd::Conjecture { t_max } => (Command::Conjecture, t_max, 14),
        Cmd::Identity { max_alpha } => (Command::Identity, None, max_alpha),
    };
    let code = match (&cli.example, &cli.input) {
        (Some(_), Some(_)) => bail!("give either an input file or --example, not both"),
        (Some(name), None) => Some(starconfig::examples::builtin(name).with_context(|| {
            format!("unknown example {name:?}; built-ins are {}", starconfig::examples::BUILTIN_NAMES.join(", "))
        })?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Some(parse_input(&text)?.code)
        }
        (None, None) => None,
    };
    let opts = RunOptions {
        window: cli.window,
        cache: if cli.no_cache { None } else { cli.cache_dir.map(TutteCache::new) },
        max_n: cli.max_n,
        t_max,
        max_alpha,
        timings: cli.timings,
    };
    let report = run(cmd, code.as_ref(), &opts)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.render());
    }
    let violations = report.violations();
    for v in &violations {
        eprintln!("check failed: {v}");
    }
    Ok(if violations.is_empty() { 0 } else { VIOLATION_EXIT })
}
