//! One function per subcommand. Each returns what it would print so tests
//! can inspect the output without a process.

use std::path::{Path, PathBuf};

use discord_core::correlations::{
    classical_correlation_bruteforce, discord, relative_entropy_discord, CorrelationReport,
};
use discord_core::entropy::{qubit_entropy, von_neumann_entropy};
use discord_core::kernel::{crossing_times, p_oracle_ode};
use discord_core::scenarios::figures::{figure_data_with, FigureOptions, Panel};
use discord_core::scenarios::{
    characteristic_time, characteristic_time_closed_form, detect_kinks_series, make_family_state, trajectory,
    ChannelPair,
};
use discord_core::state::{bell_eigenvalues, bell_to_density, density_to_bell, partial_trace};
use discord_core::verify::{run_verification, Check, VerifyOptions};
use discord_core::{BellCoefficients, Decay, DensityMatrix, Qubit};

use crate::config::{Format, Mode, RunConfig, StateSpec};
use crate::error::{CliError, CliResult};
use crate::output::{Record, Table};
use crate::plot::gnuplot_script;

/// Residual off the Bell-diagonal form tolerated in a density-matrix file.
const BELL_DIAGONAL_TOL: f64 = 1e-9;

pub enum LoadedState {
    Bell(BellCoefficients),
    General(Box<DensityMatrix>),
}

fn read_rho(path: &Path) -> CliResult<DensityMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let rho: DensityMatrix = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: not a density matrix: {e}", path.display())))?;
    let diag = rho.validate();
    if !diag.passed {
        return Err(CliError::Input(format!("{}: {diag}", path.display())));
    }
    Ok(rho)
}

pub fn load_state(config: &RunConfig) -> CliResult<LoadedState> {
    match &config.state {
        StateSpec::Triple(c) => Ok(LoadedState::Bell(*c)),
        StateSpec::Family(f) => Ok(LoadedState::Bell(make_family_state(*f)?)),
        StateSpec::File(path) => {
            let rho = read_rho(path)?;
            let projection = density_to_bell(&rho);
            if projection.is_bell_diagonal(BELL_DIAGONAL_TOL) {
                Ok(LoadedState::Bell(projection.coefficients))
            } else {
                Ok(LoadedState::General(Box::new(rho)))
            }
        }
    }
}

fn bell_state(config: &RunConfig) -> CliResult<BellCoefficients> {
    match load_state(config)? {
        LoadedState::Bell(c) => Ok(c),
        LoadedState::General(_) => Err(CliError::Input(
            "this command needs a Bell-diagonal state; the density matrix has off-diagonal Bell components".into(),
        )),
    }
}

fn meta(command: &str, config: &RunConfig, c0: Option<BellCoefficients>) -> Vec<(String, String)> {
    let mut m = vec![("command".to_string(), command.to_string())];
    m.extend(config.describe());
    if let Some(c) = c0 {
        if !matches!(config.state, StateSpec::Triple(_)) {
            m.push(("c0".to_string(), format!("{},{},{}", c.x, c.y, c.z)));
        }
    }
    m
}

/// Closed-form and oracle `p` columns, each present when the mode asks for it.
type PColumns = (Option<Vec<f64>>, Option<Vec<f64>>);

fn p_columns(config: &RunConfig, decay: &Decay) -> CliResult<PColumns> {
    let grid = config.grid()?;
    let analytic = || grid.points().map(|t| decay.p(t)).collect::<Vec<_>>();
    let oracle = || -> CliResult<Vec<f64>> {
        match decay {
            Decay::Kernel(k) => Ok(p_oracle_ode(k, &grid)?),
            Decay::Markovian { .. } => Err(CliError::Input(
                "the oracle integrates a memory kernel; drop --markovian".into(),
            )),
        }
    };
    Ok(match config.mode {
        Mode::Analytic => (Some(analytic()), None),
        Mode::Oracle => (None, Some(oracle()?)),
        Mode::Both => (Some(analytic()), Some(oracle()?)),
    })
}

pub fn evolve(config: &RunConfig) -> CliResult<Table> {
    let c0 = bell_state(config)?;
    let decay = config.decay()?;
    let grid = config.grid()?;
    let (analytic, oracle) = p_columns(config, &decay)?;
    let driving = analytic.as_ref().or(oracle.as_ref()).expect("one p column");

    let mut columns: Vec<String> = ["a_t", "p"].map(String::from).to_vec();
    if config.mode == Mode::Both {
        columns.push("p_oracle".into());
    }
    columns.extend(["c_x", "c_y", "c_z", "l1", "l2", "l3", "l4"].map(String::from));

    let mut rows = Vec::with_capacity(grid.len());
    for (i, t) in grid.points().enumerate() {
        let p = driving[i];
        let c = config.channels.evolve(c0, p)?;
        let mut row = vec![config.a * t, p];
        if let (Mode::Both, Some(o)) = (config.mode, &oracle) {
            row.push(o[i]);
        }
        row.extend(c.to_array());
        row.extend(bell_eigenvalues(c));
        rows.push(row);
    }
    Ok(Table {
        meta: meta("evolve", config, Some(c0)),
        columns,
        rows,
    })
}

pub fn trajectory_table(config: &RunConfig) -> CliResult<Table> {
    let c0 = bell_state(config)?;
    let decay = config.decay()?;
    let traj = trajectory(c0, &decay, config.channels, &config.grid()?)?;
    let mut columns: Vec<String> = ["a_t", "p", "I", "C", "D", "C_markov", "D_markov"]
        .map(String::from)
        .to_vec();
    let oracle = match config.mode {
        Mode::Analytic => None,
        _ => {
            columns.push("p_oracle".into());
            p_columns(
                &RunConfig {
                    mode: Mode::Oracle,
                    ..config.clone()
                },
                &decay,
            )?
            .1
        }
    };
    let rows = traj
        .points
        .iter()
        .enumerate()
        .map(|(i, pt)| {
            let mut row = vec![
                config.a * pt.t,
                pt.p,
                pt.report.mutual_information,
                pt.report.classical,
                pt.report.discord,
                pt.markov_report.classical,
                pt.markov_report.discord,
            ];
            if let Some(o) = &oracle {
                row.push(o[i]);
            }
            row
        })
        .collect();
    Ok(Table {
        meta: meta("trajectory", config, Some(c0)),
        columns,
        rows,
    })
}

fn push_report(r: &mut Record, report: &CorrelationReport) {
    r.num("I", report.mutual_information)
        .num("C", report.classical)
        .num("D", report.discord)
        .num("lambda_max", report.lambda_max)
        .text("axis", report.axis.to_string());
}

pub fn correlations(config: &RunConfig) -> CliResult<Record> {
    let mut r = Record {
        meta: meta("correlations", config, None),
        ..Default::default()
    };
    let oracle = config.mode != Mode::Analytic;
    match load_state(config)? {
        LoadedState::Bell(c) => {
            r.num("c_x", c.x).num("c_y", c.y).num("c_z", c.z);
            let report = discord(c)?;
            if config.mode != Mode::Oracle {
                push_report(&mut r, &report);
            }
            if oracle {
                let search = classical_correlation_bruteforce(&bell_to_density(c));
                let rel = relative_entropy_discord(c)?;
                r.num("C_search", search.bits)
                    .num("theta", search.basis.theta)
                    .num("phi", search.basis.phi)
                    .num("D_relative_entropy", rel.bits)
                    .text("closest_classical_axis", rel.axis.to_string());
                if config.mode == Mode::Both {
                    r.num("C_gap", (search.bits - report.classical).abs())
                        .num("D_gap", (rel.bits - report.discord).abs());
                }
            }
        }
        LoadedState::General(rho) => {
            // no closed form off the Bell-diagonal manifold
            let s_ab = von_neumann_entropy(&rho)?;
            let i =
                qubit_entropy(&partial_trace(&rho, Qubit::B)) + qubit_entropy(&partial_trace(&rho, Qubit::A)) - s_ab;
            let search = classical_correlation_bruteforce(&rho);
            r.text("method", "measurement search")
                .num("I", i)
                .num("C", search.bits)
                .num("D", i - search.bits)
                .num("theta", search.basis.theta)
                .num("phi", search.basis.phi);
        }
    }
    Ok(r)
}

pub fn characteristic(config: &RunConfig) -> CliResult<Record> {
    if config.channels != ChannelPair::default() {
        return Err(CliError::Input(
            "the characteristic time is defined for bitflip on A and phaseflip on B".into(),
        ));
    }
    let c0 = bell_state(config)?;
    let decay = config.decay()?;
    let mut r = Record {
        meta: meta("tc", config, Some(c0)),
        ..Default::default()
    };
    r.num("c_x", c0.x).num("c_y", c0.y).num("c_z", c0.z);
    let Some(t_c) = characteristic_time(c0, &decay)? else {
        r.text("a_tc", "none");
        return Ok(r);
    };
    let ratio = c0.x.abs() / c0.y.abs();
    r.num("ratio", ratio).num("a_tc", config.a * t_c);
    if let Decay::Kernel(k) = decay {
        if k.is_symmetric() {
            r.num(
                "a_tc_closed_form",
                config.a * characteristic_time_closed_form(k.a(), ratio),
            );
        }
    }
    let grid = config.grid()?;
    let crossings = crossing_times(&decay, ratio, grid.t_max(), 64);
    r.list("a_t_crossings", crossings.iter().map(|t| config.a * t).collect());
    let traj = trajectory(c0, &decay, config.channels, &grid)?;
    let kinks = detect_kinks_series(&traj.times(), &traj.classical());
    r.list("a_t_kinks", kinks.iter().map(|t| config.a * t).collect());
    r.num("a_grid_step", config.a * grid.step());
    Ok(r)
}

pub struct FigureOutput {
    pub csv_path: PathBuf,
    pub script_path: Option<PathBuf>,
    pub table: String,
    pub script: Option<String>,
}

pub fn figure(config: &RunConfig, id: u8, panel: Panel) -> CliResult<FigureOutput> {
    let opts = FigureOptions {
        a: config.a,
        t_steps: config.t_steps,
        ..Default::default()
    };
    let fig = figure_data_with(id, panel, &opts)?;
    let mut meta = vec![("command".to_string(), "figure".to_string())];
    meta.extend(fig.meta.iter().map(|(k, v)| (k.to_string(), v.clone())));
    let table = Table {
        meta,
        columns: fig.columns.iter().map(|c| c.to_string()).collect(),
        rows: fig.rows,
    };
    let ext = match config.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let csv_path = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("figure-{id}{panel}.{ext}")));
    let (script_path, script) = match config.format {
        Format::Csv => {
            let name = csv_path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            (
                Some(csv_path.with_extension("gp")),
                Some(gnuplot_script(id, panel, &name)),
            )
        }
        Format::Json => (None, None),
    };
    Ok(FigureOutput {
        csv_path,
        script_path,
        table: table.render(config.format),
        script,
    })
}

pub fn verify(opts: &VerifyOptions) -> (String, Vec<Check>) {
    let checks = run_verification(opts);
    let mut text = String::new();
    for c in &checks {
        text.push_str(&c.to_string());
        text.push('\n');
    }
    (text, checks)
}
