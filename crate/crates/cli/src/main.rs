mod bench;
mod format;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use omega_antichain::oracle::{
    abw_empty_oracle, classical_empty, include_oracle, universal_oracle, DEFAULT_CAP,
};
use omega_antichain::randgen::{tv_generate, TvParams};
use omega_antichain::{abw_empty, is_included, is_universal, Error, FixOptions, InvalidAutomaton, Nbw};
use thiserror::Error;

use crate::bench::Sweep;
use crate::format::{parse, serialize, Automaton, ParseError};

const CAP_VAR: &str = "ANTICHAIN_ORACLE_CAP";

/// Exit codes: 0 the property holds, 1 it does not, 2 usage, input or
/// oracle-disagreement errors, 3 timeout.
#[derive(Parser)]
#[command(name = "antichain", version, about = "Antichain decision procedures for Büchi automata")]
struct Cli {
    /// Cross-check the answer against the explicit construction (small inputs only).
    #[arg(long, global = true)]
    oracle: bool,
    /// Run the greatest fixed point to stabilisation even once the initial state is lost.
    #[arg(long, global = true)]
    no_early_stop: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Is every infinite word accepted by the NBW?
    Universal {
        file: PathBuf,
        /// Give up after this many seconds.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Is the language of the NBW or ABW empty?
    Empty {
        file: PathBuf,
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Is the language of the first NBW contained in that of the second?
    Include {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Print random NBW over {0, 1} with the given densities.
    Generate {
        #[arg(long)]
        size: usize,
        /// Transitions per letter, as a multiple of the size.
        #[arg(long = "r")]
        r: f64,
        /// Accepting states, as a fraction of the size.
        #[arg(long = "f")]
        f: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Write one file per automaton here instead of to stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Time universality over a grid of random automata.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long = "r", value_delimiter = ',', required = true)]
        r: Vec<f64>,
        #[arg(long = "f", value_delimiter = ',', required = true)]
        f: Vec<f64>,
        /// Instances per grid point, seeds 0 to samples - 1.
        #[arg(long, default_value_t = 100)]
        samples: u64,
        /// Per-instance limit in seconds.
        #[arg(long)]
        timeout: f64,
        /// CSV file, rows `n,r,f,seed,result,time_ms`.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Invalid(#[from] InvalidAutomaton),
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("oracle disagrees: antichain answer {fast}, explicit answer {slow}")]
    Disagreement { fast: bool, slow: bool },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Solver(Error::Timeout(_)) => 3,
            _ => 2,
        }
    }
}

impl From<omega_antichain::Timeout> for CliError {
    fn from(t: omega_antichain::Timeout) -> Self {
        CliError::Solver(Error::Timeout(t))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("antichain: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let opts = |timeout: Option<f64>| -> Result<FixOptions, CliError> {
        let deadline = timeout.map(seconds).transpose()?.map(|d| Instant::now() + d);
        Ok(FixOptions::default()
            .with_early_stop(!cli.no_early_stop)
            .with_deadline(deadline))
    };
    match &cli.command {
        Command::Universal { file, timeout } => {
            let nbw = read_nbw(file)?;
            let holds = is_universal(&nbw, &opts(*timeout)?)?;
            if cli.oracle {
                cross_check(holds, universal_oracle(&nbw, oracle_cap()?))?;
            }
            Ok(verdict(holds, "UNIVERSAL", "NOT_UNIVERSAL"))
        }
        Command::Empty { file, timeout } => {
            let holds = match read(file)? {
                Automaton::Nbw(nbw) => {
                    let holds = abw_empty(&nbw.to_abw(), &opts(*timeout)?)?;
                    if cli.oracle {
                        cross_check(holds, Ok(classical_empty(&nbw)))?;
                    }
                    holds
                }
                Automaton::Abw(abw) => {
                    let holds = abw_empty(&abw, &opts(*timeout)?)?;
                    if cli.oracle {
                        cross_check(holds, abw_empty_oracle(&abw, oracle_cap()?))?;
                    }
                    holds
                }
            };
            Ok(verdict(holds, "EMPTY", "NONEMPTY"))
        }
        Command::Include {
            left,
            right,
            timeout,
        } => {
            let a1 = read_nbw(left)?;
            let a2 = read_nbw(right)?;
            let holds = is_included(&a1, &a2, &opts(*timeout)?)?;
            if cli.oracle {
                cross_check(holds, include_oracle(&a1, &a2, oracle_cap()?))?;
            }
            Ok(verdict(holds, "INCLUDED", "NOT_INCLUDED"))
        }
        Command::Generate {
            size,
            r,
            f,
            seed,
            count,
            out_dir,
        } => {
            generate(*size, *r, *f, *seed, *count, out_dir.as_deref())?;
            Ok(0)
        }
        Command::Bench {
            sizes,
            r,
            f,
            samples,
            timeout,
            out,
            jobs,
        } => {
            let sweep = Sweep {
                sizes: sizes.clone(),
                rs: r.clone(),
                fs: f.clone(),
                samples: *samples,
                timeout: seconds(*timeout)?,
                jobs: *jobs,
                early_stop: !cli.no_early_stop,
            };
            sweep.validate()?;
            let mut csv = BufWriter::new(File::create(out).map_err(|source| CliError::File {
                path: out.clone(),
                source,
            })?);
            for summary in sweep.run(&mut csv)? {
                println!("{}", summary);
            }
            Ok(0)
        }
    }
}

fn seconds(s: f64) -> Result<Duration, CliError> {
    Duration::try_from_secs_f64(s)
        .map_err(|_| CliError::Usage(format!("timeout must be a nonnegative number of seconds, got {}", s)))
}

fn verdict(holds: bool, yes: &str, no: &str) -> u8 {
    println!("{}", if holds { yes } else { no });
    if holds {
        0
    } else {
        1
    }
}

fn oracle_cap() -> Result<usize, CliError> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::Usage(format!("{} must be a positive integer, got `{}`", CAP_VAR, v))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

/// An oracle that runs out of room is reported and otherwise ignored.
fn cross_check(fast: bool, slow: Result<bool, Error>) -> Result<(), CliError> {
    match slow {
        Ok(slow) if slow != fast => Err(CliError::Disagreement { fast, slow }),
        Ok(_) => Ok(()),
        Err(e @ Error::CapExceeded { .. }) => {
            eprintln!("antichain: oracle skipped: {} (raise {})", e, CAP_VAR);
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

fn read(path: &Path) -> Result<Automaton, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn read_nbw(path: &Path) -> Result<Nbw, CliError> {
    match read(path)? {
        Automaton::Nbw(nbw) => Ok(nbw),
        Automaton::Abw(_) => Err(CliError::Usage(format!(
            "{}: expected an nbw, found an abw",
            path.display()
        ))),
    }
}

fn generate(size: usize, r: f64, f: f64, seed: u64, count: u64, out_dir: Option<&Path>) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    for i in 0..count {
        let seed = seed
            .checked_add(i)
            .ok_or_else(|| CliError::Usage("seed range overflows".into()))?;
        let params = TvParams::new(size, r, f, seed);
        let nbw = tv_generate(&params)?;
        let text = format!(
            "# random nbw: size={} r={} f={} seed={}\n{}",
            size,
            r,
            f,
            seed,
            serialize(&Automaton::Nbw(nbw))
        );
        match out_dir {
            Some(dir) => {
                let path = dir.join(format!("tv_n{}_r{}_f{}_s{}.nbw", size, r, f, seed));
                fs::write(&path, text).map_err(|source| CliError::File { path, source })?;
            }
            None => {
                if i > 0 {
                    writeln!(stdout)?;
                }
                stdout.write_all(text.as_bytes())?;
            }
        }
    }
    Ok(())
}
