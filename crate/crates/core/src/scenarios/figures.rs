//! Data tables for the three correlation-dynamics figures.
//!
//! Panels (a) use the `A = a = gamma` kernel over `a t in [0, 10]`, panels
//! (b) the strong-memory kernel `A = 10a`, `gamma = a/100` over
//! `a t in [0, 3]`. Panel 3(c) tabulates the characteristic time against
//! `c_y` at `c_x = c_z = 0.1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::kernel::{Decay, KernelParams};
use crate::state::BellCoefficients;

use super::{characteristic_time_for_ratio, make_family_state, trajectory, Branch, ChannelPair, InitialFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Panel {
    A,
    B,
    C,
}

impl fmt::Display for Panel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Panel::A => "a",
            Panel::B => "b",
            Panel::C => "c",
        })
    }
}

impl FromStr for Panel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Panel::A),
            "b" | "B" => Ok(Panel::B),
            "c" | "C" => Ok(Panel::C),
            _ => Err(Error::Domain(format!("unknown panel '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FigureOptions {
    /// Markovian rate; tables are in `a t` so it only fixes the unit.
    pub a: f64,
    pub t_steps: usize,
    /// Number of `c_y` samples in panel 3(c).
    pub tc_points: usize,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            a: 1.0,
            t_steps: 2000,
            tc_points: 180,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureTable {
    pub figure: u8,
    pub panel: Panel,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Parameters sufficient to regenerate the table.
    pub meta: Vec<(&'static str, String)>,
}

impl FigureTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

pub const TRAJECTORY_COLUMNS: [&str; 7] = ["a_t", "p", "I", "C", "D", "C_markov", "D_markov"];

/// Initial state shown in each figure.
pub fn figure_state(figure: u8) -> Result<BellCoefficients> {
    let family = match figure {
        1 => InitialFamily::Synchronized {
            x: 0.6,
            branch: Branch::Upper,
        },
        2 => InitialFamily::Proportional {
            x: 0.6,
            branch: Branch::Upper,
        },
        3 => InitialFamily::SuddenChange {
            c_x: 0.1,
            c_y: 0.16,
            branch: Branch::Upper,
        },
        _ => return Err(Error::Domain(format!("no figure {figure}"))),
    };
    make_family_state(family)
}

/// Kernel and `a t` range of a time-trajectory panel.
pub fn panel_kernel(panel: Panel, a: f64) -> Result<(KernelParams, f64)> {
    match panel {
        Panel::A => Ok((KernelParams::symmetric(a)?, 10.0)),
        Panel::B => Ok((KernelParams::strong_memory(a)?, 3.0)),
        Panel::C => Err(Error::Domain("panel c is not a time trajectory".into())),
    }
}

pub fn figure_data(figure: u8, panel: Panel) -> Result<FigureTable> {
    figure_data_with(figure, panel, &FigureOptions::default())
}

pub fn figure_data_with(figure: u8, panel: Panel, opts: &FigureOptions) -> Result<FigureTable> {
    if !(1..=3).contains(&figure) {
        return Err(Error::Domain(format!("no figure {figure}")));
    }
    match panel {
        Panel::C if figure == 3 => characteristic_time_table(opts),
        Panel::C => Err(Error::Domain(format!("figure {figure} has no panel c"))),
        _ => trajectory_table(figure, panel, opts),
    }
}

fn trajectory_table(figure: u8, panel: Panel, opts: &FigureOptions) -> Result<FigureTable> {
    let c0 = figure_state(figure)?;
    let (kernel, at_max) = panel_kernel(panel, opts.a)?;
    let grid = TimeGrid::new(at_max / opts.a, opts.t_steps)?;
    let traj = trajectory(c0, &Decay::Kernel(kernel), ChannelPair::default(), &grid)?;
    let rows = traj
        .points
        .iter()
        .map(|pt| {
            vec![
                opts.a * pt.t,
                pt.p,
                pt.report.mutual_information,
                pt.report.classical,
                pt.report.discord,
                pt.markov_report.classical,
                pt.markov_report.discord,
            ]
        })
        .collect();
    Ok(FigureTable {
        figure,
        panel,
        columns: TRAJECTORY_COLUMNS.to_vec(),
        rows,
        meta: vec![
            ("figure", figure.to_string()),
            ("panel", panel.to_string()),
            ("c", format!("{},{},{}", c0.x, c0.y, c0.z)),
            ("a", kernel.a().to_string()),
            ("A", kernel.amplitude().to_string()),
            ("gamma", kernel.gamma().to_string()),
            ("t_max", at_max.to_string()),
            ("t_steps", opts.t_steps.to_string()),
            ("channels", "bitflip,phaseflip".to_string()),
        ],
    })
}

/// `c_y = (20 + i) / 200` for `i = 1..=n` (a step of 0.005 when n = 180).
///
/// The characteristic time depends only on `r = c_x / c_y`, so rows with
/// `c_y > 0.8`, where `(0.1, c_y, 0.1)` stops being a state, carry the value
/// of the mirror state `(0.1, c_y, -0.1)`.
fn characteristic_time_table(opts: &FigureOptions) -> Result<FigureTable> {
    let kernel = KernelParams::symmetric(opts.a)?;
    let decay = Decay::Kernel(kernel);
    let n = opts.tc_points.max(1);
    let c_x = 0.1;
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let c_y = (20.0 + i as f64 * 180.0 / n as f64) / 200.0;
        let at_c = if c_y > c_x {
            opts.a * characteristic_time_for_ratio(&decay, c_x / c_y)?
        } else {
            0.0
        };
        rows.push(vec![c_y, at_c]);
    }
    Ok(FigureTable {
        figure: 3,
        panel: Panel::C,
        columns: vec!["c_y", "a_tc"],
        rows,
        meta: vec![
            ("figure", "3".to_string()),
            ("panel", "c".to_string()),
            ("c_x", "0.1".to_string()),
            ("c_z", "0.1".to_string()),
            ("a", kernel.a().to_string()),
            ("A", kernel.amplitude().to_string()),
            ("gamma", kernel.gamma().to_string()),
            ("tc_points", n.to_string()),
        ],
    })
}
