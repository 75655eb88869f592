use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gapgreedy_cli::{exit_code, run_and_write, setup, CliError, ConfigFile, Experiment, EXIT_CONFIG};

/// Runs one named experiment and writes `<experiment>.csv`, `<experiment>.json` and
/// `<experiment>.timing.json` into the output directory.
///
/// Exit status: 0 all checks pass, 1 some check fails, 2 configuration or runtime error,
/// 3 nothing fails but some check is inconclusive.
#[derive(Debug, Parser)]
#[command(name = "gapgreedy", version)]
struct Args {
    /// TOML configuration file; flags override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Experiment-specific size: largest index, largest m, or largest gap bound.
    #[arg(long)]
    dim: Option<u64>,
    /// Number of random samples or instances.
    #[arg(long)]
    budget: Option<u64>,
    /// Output directory for the report files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Gap rule, e.g. `identity`, `constant:2`, `periodic:1,2,2`.
    #[arg(long)]
    gap: Option<String>,
    /// Norm: kt, linf, l1, l2, lp:<p>, thm43, lemma58 or lemma510.
    #[arg(long)]
    norm: Option<String>,
    #[arg(long)]
    depth: Option<usize>,
    /// Load the construction from this JSON file instead of building it.
    #[arg(long)]
    construction: Option<PathBuf>,
    /// Write the construction the experiment uses to this JSON file and exit.
    #[arg(long)]
    save_construction: Option<PathBuf>,
    /// List the experiments and exit.
    #[arg(long)]
    list: bool,
}

impl Args {
    fn flags(&self) -> ConfigFile {
        ConfigFile {
            experiment: self.experiment.clone(),
            seed: self.seed,
            dim: self.dim,
            budget: self.budget,
            out: self.out.clone(),
            gap: self.gap.clone(),
            norm: self.norm.clone(),
            depth: self.depth,
            construction: self.construction.clone(),
            ..ConfigFile::default()
        }
    }
}

fn run(args: &Args) -> Result<u8, CliError> {
    if args.list {
        for e in Experiment::ALL {
            println!("{e}");
        }
        return Ok(0);
    }
    let file = args.config.as_deref().map(ConfigFile::load).transpose()?.unwrap_or_default();
    let cfg = file.overridden_by(args.flags()).resolve()?;
    if let Some(path) = &args.save_construction {
        setup::save_construction(&cfg, path)?;
        println!("wrote {}", path.display());
        return Ok(0);
    }
    let (report, seconds) = run_and_write(&cfg)?;
    print!("{}", report.to_table());
    println!("wrote {}/{}.{{csv,json}} in {seconds:.2} s", cfg.out.display(), cfg.experiment);
    Ok(exit_code(report.status()))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gapgreedy: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
