use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quartic56::report::commands::{self, write_output, Output};
use quartic56::report::{Cache, Session};

/// Exact reconstruction and verification of a 56-line quartic model of the Fermat quartic.
#[derive(Parser)]
#[command(name = "quartic56", version)]
struct Cli {
    /// Directory for JSON reports.
    #[arg(long, global = true, default_value = "reports")]
    out: PathBuf,
    /// Directory for cached censuses; caching is off when omitted.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice, line, orbit, discriminant and group data of the Fermat quartic.
    Fermat,
    /// Classify the degree-4 classes of the given relative degree.
    Census {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..=6))]
        relative_degree: i64,
    },
    /// Count X56-configurations and evaluate one of them.
    Configs {
        /// Seven tags "i,mu,nu" separated by ';' (default: the built-in seed).
        #[arg(long)]
        seed_config: Option<String>,
    },
    /// Derive the quartic relation among the four cubics.
    DerivePsi,
    /// The 56 lines of the quartic model.
    LinesX56,
    /// Automorphisms of the quartic model.
    AutX56,
    /// Reductions modulo primes of Z[zeta_8].
    Reduce {
        /// Audit only the primes above this rational prime.
        #[arg(long)]
        prime: Option<u64>,
        /// Use every tracked ordering for the bad-prime bound.
        #[arg(long)]
        all_orderings: bool,
    },
    /// Run every acceptance check; exits nonzero on any failure.
    VerifyAll,
}

fn run(cli: &Cli) -> quartic56::Result<Output> {
    let cache = cli.cache_dir.as_deref().map(Cache::open).transpose()?;
    let s = Session::new(cache);
    match &cli.command {
        Command::Fermat => commands::fermat(&s),
        Command::Census { relative_degree } => commands::census(&s, *relative_degree),
        Command::Configs { seed_config } => commands::configs(&s, seed_config.as_deref()),
        Command::DerivePsi => commands::derive_psi(&s),
        Command::LinesX56 => commands::lines_x56(&s),
        Command::AutX56 => commands::aut_x56(&s),
        Command::Reduce { prime, all_orderings } => commands::reduce(&s, *prime, *all_orderings),
        Command::VerifyAll => commands::verify_all(&s).map(|(_, out)| out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    println!("{}", out.text);
    if let Err(e) = write_output(&cli.out, &out) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if out.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
