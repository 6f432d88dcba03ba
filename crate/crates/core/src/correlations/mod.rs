//! Mutual information, classical correlation, discord and the
//! relative-entropy distance to the closest classical state.
//!
//! The closed forms for Bell-diagonal states live here; the
//! [`measurement`] module holds the brute-force route through explicit
//! projective measurements on qubit B.

pub mod measurement;

use serde::{Deserialize, Serialize};

use crate::entropy::{correlation_bits, relative_entropy, shannon_entropy};
use crate::error::Result;
use crate::pauli::PauliAxis;
use crate::state::{bell_eigenvalues, bell_to_density, BellCoefficients};

pub use measurement::{
    classical_correlation_bruteforce, classical_correlation_bruteforce_with, conditional_entropy, BruteForceConfig,
    BruteForceResult, MeasurementBasis,
};

/// Physicality slack used before evaluating entropies of a coefficient triple.
pub const PHYSICAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    #[serde(rename = "I")]
    pub mutual_information: f64,
    #[serde(rename = "C")]
    pub classical: f64,
    #[serde(rename = "D")]
    pub discord: f64,
    pub lambda_max: f64,
    pub axis: PauliAxis,
}

/// Closed-form classical correlation with the maximizing axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalCorrelation {
    pub bits: f64,
    pub lambda_max: f64,
    pub axis: PauliAxis,
}

/// `I = 2 + sum_i l_i log2 l_i` over the Bell-basis weights.
pub fn mutual_information(c: BellCoefficients) -> Result<f64> {
    c.check_physical(PHYSICAL_TOL)?;
    Ok(2.0 - shannon_entropy(&bell_eigenvalues(c))?)
}

/// `C = sum_{+-} (1 +- L)/2 log2(1 +- L)` with `L = max_a |c_a|`.
pub fn classical_correlation_analytic(c: BellCoefficients) -> ClassicalCorrelation {
    let (axis, lambda_max) = c.dominant();
    ClassicalCorrelation {
        bits: correlation_bits(lambda_max),
        lambda_max,
        axis,
    }
}

pub fn discord(c: BellCoefficients) -> Result<CorrelationReport> {
    let mutual_information = mutual_information(c)?;
    let classical = classical_correlation_analytic(c);
    Ok(CorrelationReport {
        mutual_information,
        classical: classical.bits,
        discord: mutual_information - classical.bits,
        lambda_max: classical.lambda_max,
        axis: classical.axis,
    })
}

/// Dephasing of `c` along its dominant axis.
pub fn closest_classical_state(c: BellCoefficients) -> BellCoefficients {
    c.project(c.dominant().0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelativeEntropyDiscord {
    pub bits: f64,
    pub axis: PauliAxis,
    /// `S(rho || rho_a)` for the dephasing along each of x, y, z.
    pub per_axis: [f64; 3],
}

/// Minimum relative entropy between the state and its three axis
/// dephasings, evaluated on the density matrices.
pub fn relative_entropy_discord(c: BellCoefficients) -> Result<RelativeEntropyDiscord> {
    c.check_physical(PHYSICAL_TOL)?;
    let rho = bell_to_density(c);
    let mut per_axis = [0.0; 3];
    for axis in PauliAxis::ALL {
        per_axis[axis.index()] = relative_entropy(&rho, &bell_to_density(c.project(axis)))?;
    }
    let mut best = PauliAxis::X;
    for axis in [PauliAxis::Y, PauliAxis::Z] {
        if per_axis[axis.index()] < per_axis[best.index()] {
            best = axis;
        }
    }
    Ok(RelativeEntropyDiscord {
        bits: per_axis[best.index()],
        axis: best,
        per_axis,
    })
}
