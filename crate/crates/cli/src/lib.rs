//! Command-line front end for the `creutz` simulations: subcommands for
//! single quantities, figure presets and an oracle verification run.

pub mod commands;
pub mod config;
pub mod error;
pub mod figures;
pub mod output;
pub mod verify;

use clap::{Args, Parser, Subcommand};
use config::RunConfig;
use error::{CliError, Result, EXIT_OK, EXIT_USAGE};
use figures::FigureId;
use output::Table;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "creutz",
    version,
    about = "Creutz-ladder quench dynamics: echoes, zeros and speed limits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Band energies and gap over the momentum grid.
    Spectrum(Opts),
    /// Modes admitting an exact echo zero and their post-quench phases.
    Zeros(Opts),
    /// Loschmidt echo and rate function on a time grid.
    Le(Opts),
    /// Smallest post-quench phase with an exact zero, per size.
    DeltaC(Opts),
    /// Extremal first divergence times and their speed limits, per size.
    TauF(Opts),
    /// Quantum speed limit per size.
    Qsl(Opts),
    /// Mean and variance of the speed limit over a size sweep, per θ₁.
    QslSweep(Opts),
    /// Noiseless and noisy speed-limit bounds per size.
    Noise(Opts),
    /// Data behind one figure panel.
    Figure {
        /// fig2a|fig2b|fig2c|fig3|fig4a|fig4b|fig5a|fig5b|fig6a|fig6b|fig7a..fig7d|fig8a|fig8b
        fig_id: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Compare closed forms against brute-force linear algebra.
    Verify {
        #[command(flatten)]
        opts: Opts,
        /// Use the wrong branch of the Bogoliubov angle (negative test).
        #[arg(long, hide = true)]
        inject_wrong_branch: bool,
    },
}

/// Flags shared by every subcommand. Values stay textual here and are parsed
/// by [`RunConfig::set`], the same path the config file takes.
#[derive(Debug, Clone, Default, Args)]
pub struct Opts {
    /// Leg hopping amplitude.
    #[arg(long = "K", allow_hyphen_values = true)]
    pub hopping: Option<String>,
    /// Rung hopping amplitude.
    #[arg(long = "M", allow_hyphen_values = true)]
    pub vertical: Option<String>,
    /// Pre-quench phase (radians, or e.g. 0.25pi).
    #[arg(long, visible_alias = "theta", allow_hyphen_values = true)]
    pub theta1: Option<String>,
    /// Post-quench phase.
    #[arg(long, allow_hyphen_values = true)]
    pub theta2: Option<String>,
    /// Number of unit cells.
    #[arg(long = "L")]
    pub l: Option<String>,
    /// Smallest size of a sweep.
    #[arg(long = "L-min")]
    pub l_min: Option<String>,
    /// Largest size of a sweep (inclusive).
    #[arg(long = "L-max")]
    pub l_max: Option<String>,
    /// Size increment of a sweep.
    #[arg(long)]
    pub step: Option<String>,
    /// Single evaluation time.
    #[arg(long)]
    pub t: Option<String>,
    /// Start of the time grid.
    #[arg(long)]
    pub t_min: Option<String>,
    /// End of the time grid.
    #[arg(long)]
    pub t_max: Option<String>,
    /// Number of time samples, endpoints included.
    #[arg(long)]
    pub t_points: Option<String>,
    /// Evaluation time of the noisy bound (default: first divergence time).
    #[arg(long)]
    pub t_eval: Option<String>,
    /// Which extremal exact-zero quench to follow.
    #[arg(long, value_parser = ["max", "min"])]
    pub which: Option<String>,
    /// Noise half-width relative to |θ₂| (shifts uniform in ±fraction·|θ₂|).
    #[arg(long)]
    pub noise_fraction: Option<String>,
    /// Number of noise realizations.
    #[arg(long)]
    pub noise_count: Option<String>,
    /// Base RNG seed of the noise ensemble.
    #[arg(long)]
    pub seed: Option<String>,
    /// Averaging convention of size sweeps.
    #[arg(long, value_parser = ["paper", "sample-count"])]
    pub normalization: Option<String>,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<String>,
    /// Output format.
    #[arg(long, value_parser = ["csv", "json"])]
    pub format: Option<String>,
    /// Flat `key = value` settings file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

impl Opts {
    fn flag_config(&self) -> Result<RunConfig> {
        let pairs = [
            ("K", &self.hopping),
            ("M", &self.vertical),
            ("theta1", &self.theta1),
            ("theta2", &self.theta2),
            ("L", &self.l),
            ("L_min", &self.l_min),
            ("L_max", &self.l_max),
            ("step", &self.step),
            ("t", &self.t),
            ("t_min", &self.t_min),
            ("t_max", &self.t_max),
            ("t_points", &self.t_points),
            ("t_eval", &self.t_eval),
            ("which", &self.which),
            ("noise_fraction", &self.noise_fraction),
            ("noise_count", &self.noise_count),
            ("seed", &self.seed),
            ("normalization", &self.normalization),
            ("out", &self.out),
            ("format", &self.format),
        ];
        let mut cfg = RunConfig::default();
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, v)
                    .map_err(|e| CliError::usage(format!("--{}: {e}", key.replace('_', "-"))))?;
            }
        }
        Ok(cfg)
    }

    /// Config file settings overlaid by flags.
    pub fn resolve(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Ok(file.overlay(&self.flag_config()?))
    }
}

fn emit(table: &Table, cfg: &RunConfig) -> Result<()> {
    let bytes = table.render(cfg.format())?;
    match &cfg.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}

fn execute(command: Command) -> Result<()> {
    let (opts, figure) = match &command {
        Command::Figure { fig_id, opts } => (opts.clone(), Some(fig_id.parse::<FigureId>()?)),
        Command::Spectrum(o)
        | Command::Zeros(o)
        | Command::Le(o)
        | Command::DeltaC(o)
        | Command::TauF(o)
        | Command::Qsl(o)
        | Command::QslSweep(o)
        | Command::Noise(o) => (o.clone(), None),
        Command::Verify { opts, .. } => (opts.clone(), None),
    };
    let cfg = opts.resolve()?;
    let run = || -> Result<()> {
        let table = match &command {
            Command::Spectrum(_) => commands::spectrum(&cfg)?,
            Command::Zeros(_) => commands::zeros(&cfg)?,
            Command::Le(_) => commands::le(&cfg)?,
            Command::DeltaC(_) => commands::delta_c(&cfg)?,
            Command::TauF(_) => commands::tau_f(&cfg)?,
            Command::Qsl(_) => commands::qsl(&cfg)?,
            Command::QslSweep(_) => commands::qsl_sweep(&cfg)?,
            Command::Noise(_) => commands::noise(&cfg)?,
            Command::Figure { .. } => {
                let id = figure.expect("parsed above");
                let table = figures::generate(id, &cfg)?;
                return emit(&table, &id.defaults().overlay(&cfg));
            }
            Command::Verify {
                inject_wrong_branch,
                ..
            } => {
                let report = verify::run(
                    &cfg,
                    &verify::Options {
                        inject_wrong_branch: *inject_wrong_branch,
                    },
                )?;
                emit(&report.table(), &cfg)?;
                return report.into_result();
            }
        };
        emit(&table, &cfg)
    };
    match opts.threads {
        Some(0) => Err(CliError::usage("--threads must be positive")),
        Some(n) => creutz::par::with_threads(n, run),
        None => run(),
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        // The reader went away (e.g. `| head`); nothing left to report.
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
