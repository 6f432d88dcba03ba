//! Command-line front end for the correlation-dynamics library.
//!
//! Every subcommand reads one [`config::RunConfig`], built from an optional
//! INI file overlaid by flags, and writes either a table (CSV with a
//! `# key=value` header line, or JSON with a `meta` block) or a key-value
//! report.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod output;
pub mod plot;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use discord_core::scenarios::figures::Panel;
use discord_core::scenarios::Branch;
use discord_core::verify::{VerifyOptions, WeightFormula};
use discord_core::{BellCoefficients, PauliAxis};

use config::{parse_axis, parse_branch, parse_triple, FamilyName, Format, Mode, Overrides, RunConfig};
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "discord",
    version,
    about = "Discord and classical correlation of two decohering qubits"
)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bell coefficients and Bell-basis weights along the grid.
    Evolve,
    /// Mutual information, classical correlation and discord of one state.
    Correlations,
    /// I, C, D over the grid with the Markovian baseline.
    Trajectory,
    /// Table and gnuplot script for one panel of figures 1 to 3.
    Figure {
        /// Figure number, 1 to 3.
        id: u8,
        /// Panel: a, b, or c (figure 3 only).
        #[arg(value_parser = parse_panel)]
        panel: Panel,
    },
    /// Characteristic time of the sudden change.
    Tc,
    /// Cross-check every closed form against its numerical oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// INI configuration file; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Markovian decay rate a.
    #[arg(long = "a", global = true)]
    pub a: Option<f64>,
    /// Kernel amplitude A (defaults to a).
    #[arg(long = "A", global = true)]
    pub amplitude: Option<f64>,
    /// Kernel decay rate gamma (defaults to a).
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Use the Markovian decay p = exp(-2at) instead of the kernel.
    #[arg(long, global = true)]
    pub markovian: bool,
    /// Channel on qubit A: bitflip, bitphase or phaseflip.
    #[arg(long, global = true, value_parser = parse_axis)]
    pub channel_a: Option<PauliAxis>,
    /// Channel on qubit B: bitflip, bitphase or phaseflip.
    #[arg(long, global = true, value_parser = parse_axis)]
    pub channel_b: Option<PauliAxis>,
    /// Initial Bell coefficients c_x,c_y,c_z.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_triple,
          conflicts_with_all = ["family", "rho"])]
    pub c: Option<BellCoefficients>,
    /// Initial-state family.
    #[arg(long, global = true, value_enum, conflicts_with = "rho")]
    pub family: Option<FamilyName>,
    /// Family parameter: x, or c_x,c_y for sudden_change.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub family_param: Option<String>,
    /// Sign branch of the family: upper or lower.
    #[arg(long, global = true, value_parser = parse_branch)]
    pub branch: Option<Branch>,
    /// Density matrix as JSON {"re": 4x4, "im": 4x4}.
    #[arg(long, global = true, value_name = "FILE")]
    pub rho: Option<PathBuf>,
    /// End of the grid in units of 1/a.
    #[arg(long, global = true)]
    pub t_max: Option<f64>,
    /// Number of grid intervals.
    #[arg(long, global = true)]
    pub t_steps: Option<usize>,
    /// Add numerical oracles (bare flag: both; or analytic, oracle, both).
    #[arg(long, global = true, value_enum, num_args = 0..=1, default_missing_value = "both")]
    pub oracle: Option<Mode>,
    /// Output file; stdout when absent (figure: figure-<id><panel>.csv).
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print the resolved configuration as INI and exit.
    #[arg(long, global = true)]
    pub dump_config: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// ODE oracle step in units of 1/a.
    #[arg(long, default_value_t = VerifyOptions::default().ode_step)]
    pub ode_step: f64,
    /// Convolution oracle step in units of 1/a.
    #[arg(long, default_value_t = VerifyOptions::default().convolution_step)]
    pub convolution_step: f64,
    /// Random states for the channel check.
    #[arg(long, default_value_t = VerifyOptions::default().channel_samples)]
    pub samples: usize,
    /// Random states for the measurement-search check.
    #[arg(long, default_value_t = VerifyOptions::default().bruteforce_samples)]
    pub search_samples: usize,
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    pub seed: u64,
    /// Deliberately break a formula to confirm the harness notices.
    #[arg(long, value_enum)]
    pub mutate: Option<Mutation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mutation {
    /// Swap the c_y signs of the last two Bell weights.
    LambdaSign,
}

fn parse_panel(s: &str) -> Result<Panel, String> {
    s.parse().map_err(|e: discord_core::Error| e.to_string())
}

impl RunArgs {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            a: self.a,
            amplitude: self.amplitude,
            gamma: self.gamma,
            markovian: self.markovian.then_some(true),
            channel_a: self.channel_a,
            channel_b: self.channel_b,
            c: self.c,
            family: self.family,
            family_param: self.family_param.clone(),
            branch: self.branch,
            rho: self.rho.clone(),
            t_max: self.t_max,
            t_steps: self.t_steps,
            out: self.out.clone(),
            format: self.format,
            mode: self.oracle,
        }
    }

    pub fn resolve(&self) -> CliResult<RunConfig> {
        let file = match &self.config {
            Some(path) => config::load_ini(path)?,
            None => Overrides::default(),
        };
        self.overrides().over(file).resolve()
    }
}

impl VerifyArgs {
    pub fn options(&self) -> VerifyOptions {
        VerifyOptions {
            ode_step: self.ode_step,
            convolution_step: self.convolution_step,
            channel_samples: self.samples,
            bruteforce_samples: self.search_samples,
            seed: self.seed,
            weights: match self.mutate {
                Some(Mutation::LambdaSign) => WeightFormula::FlippedY,
                None => WeightFormula::Standard,
            },
            ..VerifyOptions::default()
        }
    }
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> CliResult<()> {
    if let Some(n) = cli.run.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Input(format!("threads: {e}")))?;
    }
    let config = cli.run.resolve()?;
    if cli.run.dump_config {
        return output::emit(&config.to_string(), None);
    }
    let out = config.out.as_deref();
    match &cli.command {
        Command::Evolve => output::emit(&commands::evolve(&config)?.render(config.format), out),
        Command::Trajectory => output::emit(&commands::trajectory_table(&config)?.render(config.format), out),
        Command::Correlations => output::emit(&commands::correlations(&config)?.render(config.format), out),
        Command::Tc => output::emit(&commands::characteristic(&config)?.render(config.format), out),
        Command::Figure { id, panel } => {
            let fig = commands::figure(&config, *id, *panel)?;
            output::emit(&fig.table, Some(&fig.csv_path))?;
            if let (Some(path), Some(script)) = (&fig.script_path, &fig.script) {
                output::emit(script, Some(path))?;
            }
            Ok(())
        }
        Command::Verify(args) => {
            let (text, checks) = commands::verify(&args.options());
            output::emit(&text, out)?;
            let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verify(failed.join("; ")))
            }
        }
    }
}
