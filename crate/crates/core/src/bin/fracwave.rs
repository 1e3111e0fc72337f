use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use log::info;

use fracwave::studies::config::ConfigFile;
use fracwave::studies::{run_study, Study, StudyConfig};
use fracwave::{Error, Result};

/// Verification studies for time-fractional diffusion from delayed travelling waves.
#[derive(Debug, Parser)]
#[command(name = "fracwave", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Branch geometry summary per (s, N).
    Geometry,
    /// Delay error ε_N against its explicit bound.
    EpsilonSweep,
    /// Discrete superposition against the continuum limit at (L, T).
    Superpose,
    /// Caputo derivative by the direct and integrated-by-parts routes.
    CaputoCheck,
    /// Residual 𝓛u on a neighbourhood of (L, T).
    Residual,
    /// Scaled residual T^s 𝓛u(L, T) and its three terms per (s, mu).
    VerifyPde,
}

impl Command {
    fn study(&self) -> Study {
        match self {
            Command::Geometry => Study::Geometry,
            Command::EpsilonSweep => Study::EpsilonSweep,
            Command::Superpose => Study::SuperposeConvergence,
            Command::CaputoCheck => Study::CaputoCheck,
            Command::Residual => Study::ResidualSweep,
            Command::VerifyPde => Study::VerifyPde,
        }
    }
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Fractional orders, comma separated.
    #[arg(long = "s", global = true, value_delimiter = ',')]
    s: Option<Vec<f64>>,
    /// Branch counts, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    n_values: Option<Vec<usize>>,
    /// Base length L.
    #[arg(long, global = true)]
    big_l: Option<f64>,
    /// Wave speed c.
    #[arg(long, global = true)]
    c: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    a1: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    a2: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    a3: Option<f64>,
    /// Perturbation sizes, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    mu: Option<Vec<f64>>,
    #[arg(long, global = true)]
    quad_nodes: Option<usize>,
    /// `gauss_legendre` or `midpoint`.
    #[arg(long, global = true)]
    quad_scheme: Option<String>,
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    /// Diffusion coefficient override for the residual studies.
    #[arg(long, global = true, allow_negative_numbers = true)]
    kappa: Option<f64>,
    /// Flat TOML configuration file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path (default: standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn overrides(&self) -> ConfigFile {
        ConfigFile {
            s_values: self.s.clone(),
            n_values: self.n_values.clone(),
            big_l: self.big_l,
            c: self.c,
            a1: self.a1,
            a2: self.a2,
            a3: self.a3,
            mu_values: self.mu.clone(),
            quad_nodes: self.quad_nodes,
            quad_scheme: self.quad_scheme.clone(),
            abs_tol: self.abs_tol,
            kappa: self.kappa,
            out: self.out.clone(),
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let file = match &cli.common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let cfg = StudyConfig::resolve(cli.command.study(), file.merge(cli.common.overrides()))?;
    if cfg.kappa.is_none() && matches!(cfg.study, Study::ResidualSweep | Study::VerifyPde) {
        cfg.profile.warn_if_outside_regime();
    }
    info!("running {} with {:?}", cfg.study, cfg);
    let table = run_study(&cfg)?;
    match &cfg.output_path {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            let mut w = io::BufWriter::new(file);
            table.write_csv(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            table.write_csv(stdout.lock())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fracwave: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    e.exit_code() as u8
}
