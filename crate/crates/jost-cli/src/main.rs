use clap::{Parser, Subcommand};
use jost_cli::config::{CliError, Config};
use jost_cli::report::{render_text, run_report, write_report};
use jost_cli::sweep::{run_sweep, write_sweep, CSV_NAME, SIDECAR_NAME};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "jost",
    version,
    about = "Spectral pair of the hermitised half-line Schrödinger system"
)]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Overrides the seed in the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate dν/dλ and ψ on a λ-grid.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the self-check suites.
    Report {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load(path: &Path, seed: Option<u64>) -> Result<Config, CliError> {
    let mut cfg = Config::load(path)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Sweep { config, out } => {
            let cfg = load(&config, cli.seed)?;
            let res = run_sweep(&cfg)?;
            write_sweep(&res, &out)?;
            eprintln!(
                "{} rows, {} eigenvalues, {} excluded points -> {}, {}",
                res.rows.len(),
                res.sidecar.eigenvalues.len(),
                res.sidecar.excluded.len(),
                out.join(CSV_NAME).display(),
                out.join(SIDECAR_NAME).display()
            );
            if let Some(n) = res.sidecar.rows_over_tolerance.filter(|&n| n > 0) {
                eprintln!("warning: {n} rows exceed the cross-method tolerance");
            }
            Ok(true)
        }
        Command::Report { config, out } => {
            let cfg = load(&config, cli.seed)?;
            let rep = run_report(&cfg)?;
            write_report(&rep, &out)?;
            print!("{}", render_text(&rep));
            Ok(rep.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
