mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Outcome;

/// Exact clutter computations: generation, checks, decompositions.
#[derive(Parser, Debug)]
#[command(name = "clutterlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a Q_pq^F member as `<stem>.clt` and `<stem>.json`.
    Gen {
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
        /// none, caseI:all, caseI:1,3, caseII:all, caseII:2, custom:<file>
        #[arg(long = "f", default_value = "none")]
        f: String,
        /// Output path without extension; defaults to `q<p><q>_<f>`.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run one decision procedure on a clutter file.
    Check {
        which: CheckKind,
        path: PathBuf,
        /// Largest weight per vertex for the mengerian box.
        #[arg(long, default_value_t = 3)]
        wmax: u64,
        /// Largest odd submatrix order searched by the balanced check.
        #[arg(long, default_value_t = clutterlab::properties::DEFAULT_BALANCED_LIMIT)]
        balanced_limit: usize,
        /// Accept non-minimal edge lists and keep their minimal edges.
        #[arg(long)]
        hypergraph: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Decompose a weight vector on a generated Q_pq^F* file.
    Decompose {
        path: PathBuf,
        /// Comma-separated weights in universe order.
        #[arg(long, conflicts_with = "w_file", required_unless_present = "w_file")]
        w: Option<String>,
        /// File of `label=value` lines; missing labels are 0.
        #[arg(long)]
        w_file: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the verification matrix.
    VerifySuite {
        scale: ScaleArg,
        /// Substring filter on criterion keys.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = clutterlab::random::DEFAULT_SEED)]
        seed: u64,
        /// Print every detail line, not only the summary.
        #[arg(short, long)]
        verbose: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckKind {
    Konig,
    Pack,
    Ideal,
    Mengerian,
    Classify,
    #[value(name = "2part")]
    TwoPart,
    DeltaR,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScaleArg {
    Small,
    Full,
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("CLUTTERLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| format!("CLUTTERLAB_THREADS must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err("CLUTTERLAB_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Outcome::Error.code() } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(Outcome::Error.code());
    }
    let result = match cli.command {
        Command::Gen { p, q, f, out } => commands::gen(p, q, &f, out),
        Command::Check {
            which,
            path,
            wmax,
            balanced_limit,
            hypergraph,
            json,
        } => commands::check(which, &path, wmax, balanced_limit, hypergraph, json.as_deref()),
        Command::Decompose { path, w, w_file, json } => {
            commands::decompose(&path, w.as_deref(), w_file.as_deref(), json.as_deref())
        }
        Command::VerifySuite {
            scale,
            only,
            seed,
            verbose,
            json,
        } => {
            let scale = match scale {
                ScaleArg::Small => clutterlab::suite::Scale::Small,
                ScaleArg::Full => clutterlab::suite::Scale::Full,
            };
            commands::verify_suite(scale, only, seed, verbose, json.as_deref())
        }
    };
    match result {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Outcome::Error.code())
        }
    }
}
