use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use heis8::certify::{list_checks, run, RunConfig, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "heis8-certify",
    version,
    about = "Exact certificates for the H8-invariant (2,2,2,2) complete intersection in P^7"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run certificates and report pass/fail.
    Verify {
        /// Comma-separated claim ids, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        checks: Vec<String>,
        /// Comma-separated primes, each congruent to 1 mod 8.
        #[arg(long, value_delimiter = ',', default_value = "17,41,73")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Base point (y1,y2,y3) on the minus plane.
        #[arg(
            long,
            value_delimiter = ',',
            num_args = 1,
            default_value = "1,2,3",
            allow_hyphen_values = true
        )]
        y: Vec<i64>,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Skip the membership solve over Q.
        #[arg(long)]
        fast: bool,
        /// Worker threads (default: one per logical processor).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print every claim id with its anchor phrase.
    List,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::List => {
            print!("{}", list_checks());
            ExitCode::SUCCESS
        }
        Command::Verify {
            checks,
            primes,
            seed,
            y,
            json,
            fast,
            jobs,
        } => {
            let Ok(y) = <[i64; 3]>::try_from(y.as_slice()) else {
                eprintln!("error: --y takes exactly three integers");
                return ExitCode::from(2);
            };
            let config = match RunConfig::new(&checks, &primes, seed, y, fast, jobs) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let report = run(&config);
            print!("{}", report.render_text());
            if let Some(path) = json {
                if let Err(e) = std::fs::write(&path, report.to_json() + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
    }
}
