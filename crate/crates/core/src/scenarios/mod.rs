//! Initial-state families, time trajectories and the characteristic time of
//! the sudden change in decay rate.

pub mod figures;
pub mod kink;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{evolve_bell, LocalChannel};
use crate::correlations::{discord, CorrelationReport};
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::kernel::{solve_p_equals, Decay};
use crate::pauli::PauliAxis;
use crate::state::BellCoefficients;

pub use figures::{figure_data, figure_data_with, FigureOptions, FigureTable, Panel};
pub use kink::{detect_kink, detect_kink_series, detect_kinks_series};

/// Agreement required between the root finder and the closed-form
/// characteristic time, in units of `1/a`.
pub const TC_CLOSED_FORM_TOL: f64 = 1e-8;

/// Upper or lower choice of the `+-` signs in a family definition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Upper,
    Lower,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Upper => 1.0,
            Branch::Lower => -1.0,
        }
    }
}

/// The three initial-state families.
///
/// * `Synchronized`: `c_x = -+ c_z`, `c_y = +- c_x^2`, i.e. `(x, x^2, -x)`
///   (upper) or `(x, -x^2, x)` (lower). Discord and classical correlation
///   coincide along the whole trajectory.
/// * `Proportional`: `c_x = +- c_y`, `c_z = -+ 1`, i.e. `(x, x, -1)` or
///   `(x, -x, 1)`.
/// * `SuddenChange`: `c_z = +- c_x` with free `c_y`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum InitialFamily {
    Synchronized { x: f64, branch: Branch },
    Proportional { x: f64, branch: Branch },
    SuddenChange { c_x: f64, c_y: f64, branch: Branch },
}

pub fn make_family_state(f: InitialFamily) -> Result<BellCoefficients> {
    let check = |name: &str, v: f64| {
        if v.is_finite() && v.abs() <= 1.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!("{name} = {v} is outside [-1, 1]")))
        }
    };
    let c = match f {
        InitialFamily::Synchronized { x, branch } => {
            check("x", x)?;
            let s = branch.sign();
            BellCoefficients::new(x, s * x * x, -s * x)
        }
        InitialFamily::Proportional { x, branch } => {
            check("x", x)?;
            let s = branch.sign();
            BellCoefficients::new(x, s * x, -s)
        }
        InitialFamily::SuddenChange { c_x, c_y, branch } => {
            check("c_x", c_x)?;
            check("c_y", c_y)?;
            BellCoefficients::new(c_x, c_y, branch.sign() * c_x)
        }
    };
    c.check_physical(1e-12).map_err(|e| Error::Domain(e.to_string()))?;
    Ok(c)
}

/// Channel axes on qubits A and B; bit flip on A and phase flip on B by
/// default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelPair {
    pub a: PauliAxis,
    pub b: PauliAxis,
}

impl Default for ChannelPair {
    fn default() -> Self {
        Self {
            a: PauliAxis::X,
            b: PauliAxis::Z,
        }
    }
}

impl ChannelPair {
    pub fn evolve(&self, c0: BellCoefficients, p: f64) -> Result<BellCoefficients> {
        // |p| <= 1 is what keeps the Kraus mixture CPTP
        LocalChannel::new(self.a, p)?;
        let c = evolve_bell(c0, self.a, self.b, p);
        c.check_physical(1e-12)?;
        Ok(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub p: f64,
    pub coefficients: BellCoefficients,
    pub report: CorrelationReport,
    pub p_markov: f64,
    pub markov_coefficients: BellCoefficients,
    pub markov_report: CorrelationReport,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub initial: BellCoefficients,
    pub decay: Decay,
    pub channels: ChannelPair,
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.points.iter().map(|pt| pt.t).collect()
    }

    pub fn classical(&self) -> Vec<f64> {
        self.points.iter().map(|pt| pt.report.classical).collect()
    }

    pub fn discord(&self) -> Vec<f64> {
        self.points.iter().map(|pt| pt.report.discord).collect()
    }
}

/// Evolves `c0` over `grid` under `decay`, with the Markovian baseline of the
/// same rate alongside. Grid times are physical (not scaled by `a`).
pub fn trajectory(c0: BellCoefficients, decay: &Decay, channels: ChannelPair, grid: &TimeGrid) -> Result<Trajectory> {
    c0.check_physical(1e-12)?;
    let baseline = decay.markovian_baseline();
    let points = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let t = grid.at(i);
            let p = decay.p(t);
            let p_markov = baseline.p(t);
            let coefficients = channels.evolve(c0, p)?;
            let markov_coefficients = channels.evolve(c0, p_markov)?;
            Ok(TrajectoryPoint {
                t,
                p,
                coefficients,
                report: discord(coefficients)?,
                p_markov,
                markov_coefficients,
                markov_report: discord(markov_coefficients)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory {
        initial: c0,
        decay: *decay,
        channels,
        points,
    })
}

/// Closed-form characteristic time for the `A = a = gamma` kernel:
/// `a t_c = ln[(1 + sqrt(1 - r)) / r]`.
pub fn characteristic_time_closed_form(a: f64, ratio: f64) -> f64 {
    ((1.0 + (1.0 - ratio).sqrt()) / ratio).ln() / a
}

/// Time at which `|p| = ratio`, cross-checked against the closed forms when
/// the kernel admits one.
pub fn characteristic_time_for_ratio(decay: &Decay, ratio: f64) -> Result<f64> {
    let t = solve_p_equals(decay, ratio)?;
    let closed = match decay {
        Decay::Kernel(k) if k.is_symmetric() => Some(characteristic_time_closed_form(k.a(), ratio)),
        Decay::Markovian { a } => Some(-ratio.ln() / (2.0 * a)),
        Decay::Kernel(_) => None,
    };
    if let Some(closed) = closed {
        let gap = decay.rate() * (t - closed).abs();
        if gap > TC_CLOSED_FORM_TOL {
            return Err(Error::Inconsistent(format!(
                "root finder t_c = {t} disagrees with closed form {closed} (a*gap {gap:.3e})"
            )));
        }
    }
    Ok(t)
}

/// Time of the first switch of the dominant axis from y to x for a state
/// with `c_z = +- c_x` under bit flip on A and phase flip on B, where
/// `|p(t_c)| = |c_x| / |c_y|`. `None` when `|c_x| >= |c_y|` (no switch).
pub fn characteristic_time(c0: BellCoefficients, decay: &Decay) -> Result<Option<f64>> {
    if (c0.z.abs() - c0.x.abs()).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "characteristic time needs |c_z| = |c_x|, got c = ({}, {}, {})",
            c0.x, c0.y, c0.z
        )));
    }
    if c0.x == 0.0 || c0.x.abs() >= c0.y.abs() {
        return Ok(None);
    }
    characteristic_time_for_ratio(decay, c0.x.abs() / c0.y.abs()).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::correlation_bits;
    use crate::kernel::KernelParams;
    use approx::assert_abs_diff_eq;

    fn symmetric() -> Decay {
        Decay::Kernel(KernelParams::symmetric(1.0).unwrap())
    }

    #[test]
    fn family_examples() {
        let c = make_family_state(InitialFamily::Synchronized {
            x: 0.6,
            branch: Branch::Upper,
        })
        .unwrap();
        assert_eq!(c, BellCoefficients::new(0.6, 0.36, -0.6));
        let c = make_family_state(InitialFamily::Proportional {
            x: 0.6,
            branch: Branch::Upper,
        })
        .unwrap();
        assert_eq!(c, BellCoefficients::new(0.6, 0.6, -1.0));
        let c = make_family_state(InitialFamily::SuddenChange {
            c_x: 0.1,
            c_y: 0.16,
            branch: Branch::Upper,
        })
        .unwrap();
        assert_eq!(c, BellCoefficients::new(0.1, 0.16, 0.1));
        let c = make_family_state(InitialFamily::Synchronized {
            x: 0.5,
            branch: Branch::Lower,
        })
        .unwrap();
        assert_eq!(c, BellCoefficients::new(0.5, -0.25, 0.5));
    }

    #[test]
    fn family_domain_errors() {
        assert!(matches!(
            make_family_state(InitialFamily::Synchronized {
                x: 1.2,
                branch: Branch::Upper
            }),
            Err(Error::Domain(_))
        ));
        // (0.1, 0.9, 0.1) has a negative singlet weight
        assert!(matches!(
            make_family_state(InitialFamily::SuddenChange {
                c_x: 0.1,
                c_y: 0.9,
                branch: Branch::Upper
            }),
            Err(Error::Domain(_))
        ));
        assert!(make_family_state(InitialFamily::SuddenChange {
            c_x: 0.1,
            c_y: 0.9,
            branch: Branch::Lower
        })
        .is_ok());
    }

    #[test]
    fn trajectory_starts_at_initial_report() {
        let c0 = BellCoefficients::new(0.1, 0.16, 0.1);
        let grid = TimeGrid::new(1.0, 10).unwrap();
        let traj = trajectory(c0, &symmetric(), ChannelPair::default(), &grid).unwrap();
        assert_eq!(traj.points.len(), 11);
        assert_eq!(traj.points[0].report, discord(c0).unwrap());
        assert_eq!(traj.points[0].markov_report, discord(c0).unwrap());
    }

    #[test]
    fn synchronized_trajectory_has_equal_c_and_d() {
        let c0 = BellCoefficients::new(0.6, 0.36, -0.6);
        let grid = TimeGrid::new(10.0, 400).unwrap();
        let traj = trajectory(c0, &symmetric(), ChannelPair::default(), &grid).unwrap();
        for pt in &traj.points {
            assert_abs_diff_eq!(pt.report.discord, pt.report.classical, epsilon = 1e-9);
        }
    }

    #[test]
    fn proportional_trajectory_orders_c_above_d() {
        let c0 = BellCoefficients::new(0.6, 0.6, -1.0);
        let grid = TimeGrid::new(10.0, 400).unwrap();
        let traj = trajectory(c0, &symmetric(), ChannelPair::default(), &grid).unwrap();
        for pt in &traj.points {
            assert!(pt.report.classical >= pt.report.discord);
            assert_abs_diff_eq!(pt.report.classical, correlation_bits(pt.p), epsilon = 1e-9);
        }
    }

    #[test]
    fn characteristic_time_examples() {
        let t = characteristic_time(BellCoefficients::new(0.1, 0.16, 0.1), &symmetric())
            .unwrap()
            .unwrap();
        assert_abs_diff_eq!(t, 0.947710286158174, epsilon = 1e-9);

        let t = characteristic_time(BellCoefficients::new(0.1, 0.1000001, 0.1), &symmetric())
            .unwrap()
            .unwrap();
        assert!(t > 0.0 && t < 1e-2);

        assert_eq!(
            characteristic_time(BellCoefficients::new(0.2, 0.1, 0.2), &symmetric()).unwrap(),
            None
        );
        assert_eq!(
            characteristic_time(BellCoefficients::new(0.1, 0.1, -0.1), &symmetric()).unwrap(),
            None
        );
        assert!(characteristic_time(BellCoefficients::new(0.1, 0.16, 0.3), &symmetric()).is_err());
    }

    #[test]
    fn markovian_characteristic_time() {
        let decay = Decay::markovian(2.0).unwrap();
        let t = characteristic_time_for_ratio(&decay, 0.625).unwrap();
        assert_abs_diff_eq!(t, -(0.625f64).ln() / 4.0, epsilon = 1e-12);
    }
}
