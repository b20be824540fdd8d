use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latcanon_cli::bench::{self, HEADER};
use latcanon_cli::commands::{self, Verdict};
use latcanon_cli::input::{parse_document, parse_polynomial};
use latcanon_cli::output::Format;
use latcanon_cli::selftest::{self, SelftestConfig};
use latcanon_cli::{CliError, Result};

/// Canonical forms of finite subsets of Z^d under integer affinities.
#[derive(Parser)]
#[command(name = "latcanon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical form of a point set ("-" reads stdin).
    Canon {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also print the affinity x -> Ax + b producing the form.
        #[arg(long)]
        witness: bool,
    },
    /// Decide whether two sets lie in one orbit; exit 0 if so, 1 if not.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Print an affinity mapping the first set onto the second.
        #[arg(long)]
        witness: bool,
    },
    /// Canonical form of a Laurent polynomial up to units and variable change.
    Laurent {
        input: PathBuf,
        /// Number of variables; defaults to the largest index used.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the randomized property suites.
    Selftest {
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        dims: Vec<usize>,
        /// Corrupt one comparison so the suites must fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Time canonical forms of random sets and print CSV.
    Bench {
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "1000,2000,4000,8000,16000"
        )]
        n: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 32)]
        bits: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Average over this many random inputs per size.
        #[arg(long, default_value_t = 1)]
        instances: usize,
        /// Time each input this many times and keep the fastest run.
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode> {
    let text = match cli.command {
        Command::Canon {
            input,
            format,
            witness,
        } => commands::canon(&parse_document(&read(&input)?)?, format, witness)?,
        Command::Equiv {
            first,
            second,
            witness,
        } => {
            let a = parse_document(&read(&first)?)?;
            let b = parse_document(&read(&second)?)?;
            let verdict = commands::equiv(&a, &b)?;
            write!(out, "{}", commands::verdict_text(&verdict, witness)).ok();
            return Ok(match verdict {
                Verdict::Equivalent(_) => ExitCode::SUCCESS,
                Verdict::NotEquivalent => ExitCode::from(1),
            });
        }
        Command::Laurent { input, dim, format } => {
            commands::laurent(&parse_polynomial(&read(&input)?, dim)?, format)?
        }
        Command::Selftest {
            trials,
            seed,
            dims,
            inject_fault,
        } => {
            if dims.is_empty() || dims.contains(&0) {
                return Err(
                    latcanon::Error::Precondition("dimensions must be positive".into()).into(),
                );
            }
            let report = selftest::run(&SelftestConfig {
                trials,
                seed,
                dims,
                inject_fault,
            });
            writeln!(out, "{report}").ok();
            return Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Bench {
            n,
            d,
            bits,
            seed,
            instances,
            repeat,
        } => {
            if d == 0 || !(1..=64).contains(&bits) {
                return Err(latcanon::Error::Precondition(
                    "need d >= 1 and 1 <= bits <= 64".into(),
                )
                .into());
            }
            writeln!(out, "{HEADER}").ok();
            for size in n {
                let row = bench::measure(size, d, bits, seed, instances, repeat)?;
                writeln!(out, "{}", row.csv()).ok();
                out.flush().ok();
            }
            return Ok(ExitCode::SUCCESS);
        }
    };
    write!(out, "{text}").ok();
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
