//! Classical correlation by explicit optimization over rank-1 projective
//! measurements `Pi_+- = (I +- n.sigma)/2` on qubit B.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::entropy::qubit_entropy;
use crate::pauli::{embed, Matrix2c, PauliAxis, Qubit, C64};
use crate::state::{partial_trace, DensityMatrix};

/// Measurement direction on the Bloch sphere of qubit B.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub fn along(axis: PauliAxis) -> Self {
        match axis {
            PauliAxis::X => Self::new(PI / 2.0, 0.0),
            PauliAxis::Y => Self::new(PI / 2.0, PI / 2.0),
            PauliAxis::Z => Self::new(0.0, 0.0),
        }
    }

    pub fn vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Angle between the measurement axis and `axis`, ignoring orientation.
    pub fn misalignment(&self, axis: PauliAxis) -> f64 {
        let cos = self.vector()[axis.index()].abs().min(1.0);
        cos.acos()
    }
}

/// Precomputed pieces of `Tr_B[(I (x) Pi) rho]` for fast evaluation.
struct ConditionalStates {
    rho_a: Matrix2c,
    /// `Tr_B[(I (x) sigma_k) rho]` for k = x, y, z
    moments: [Matrix2c; 3],
}

impl ConditionalStates {
    fn new(rho: &DensityMatrix) -> Self {
        let moments = PauliAxis::ALL.map(|axis| {
            let weighted = embed(&axis.matrix(), Qubit::B) * rho.matrix();
            partial_trace(&DensityMatrix::from_matrix(weighted), Qubit::B)
        });
        Self {
            rho_a: partial_trace(rho, Qubit::B),
            moments,
        }
    }

    fn conditional_entropy(&self, n: &MeasurementBasis) -> f64 {
        let v = n.vector();
        let shift = (self.moments[0] * C64::new(v[0], 0.0)
            + self.moments[1] * C64::new(v[1], 0.0)
            + self.moments[2] * C64::new(v[2], 0.0))
            * C64::new(0.5, 0.0);
        let half = self.rho_a * C64::new(0.5, 0.0);
        [half + shift, half - shift]
            .iter()
            .map(|branch| {
                let p = branch.trace().re;
                if p > 1e-12 {
                    p * qubit_entropy(branch)
                } else {
                    0.0
                }
            })
            .sum()
    }
}

/// `sum_i p_i S(rho_A^(i))` after measuring B along `n`.
pub fn conditional_entropy(rho: &DensityMatrix, n: &MeasurementBasis) -> f64 {
    ConditionalStates::new(rho).conditional_entropy(n)
}

/// Search resolution for [`classical_correlation_bruteforce_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BruteForceConfig {
    pub theta_points: usize,
    pub phi_points: usize,
    /// Angular step at which the local refinement stops.
    pub angular_tol: f64,
}

impl Default for BruteForceConfig {
    fn default() -> Self {
        Self {
            theta_points: 64,
            phi_points: 128,
            angular_tol: 1e-8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BruteForceResult {
    pub bits: f64,
    pub basis: MeasurementBasis,
    pub min_conditional_entropy: f64,
}

pub fn classical_correlation_bruteforce(rho: &DensityMatrix) -> BruteForceResult {
    classical_correlation_bruteforce_with(rho, &BruteForceConfig::default())
}

/// `S(rho_A) - min_n S(A|B_n)`: a `theta x phi` grid over
/// `[0, pi] x [0, 2pi)` followed by coordinate descent with step halving.
///
/// Rows of the grid are scanned in parallel; the minimum is reduced in grid
/// order so ties resolve to the lexicographically first cell.
pub fn classical_correlation_bruteforce_with(rho: &DensityMatrix, cfg: &BruteForceConfig) -> BruteForceResult {
    let states = ConditionalStates::new(rho);
    let n_theta = cfg.theta_points.max(2);
    let n_phi = cfg.phi_points.max(1);
    let d_theta = PI / (n_theta - 1) as f64;
    let d_phi = 2.0 * PI / n_phi as f64;

    let row_minima: Vec<(f64, MeasurementBasis)> = (0..n_theta)
        .into_par_iter()
        .map(|i| {
            let theta = i as f64 * d_theta;
            let mut best = (f64::INFINITY, MeasurementBasis::new(theta, 0.0));
            for j in 0..n_phi {
                let basis = MeasurementBasis::new(theta, j as f64 * d_phi);
                let value = states.conditional_entropy(&basis);
                if value < best.0 {
                    best = (value, basis);
                }
            }
            best
        })
        .collect();
    let (mut value, mut basis) =
        row_minima
            .into_iter()
            .fold((f64::INFINITY, MeasurementBasis::new(0.0, 0.0)), |acc, cand| {
                if cand.0 < acc.0 {
                    cand
                } else {
                    acc
                }
            });

    let (mut step_theta, mut step_phi) = (d_theta, d_phi);
    for _ in 0..100_000 {
        if step_theta < cfg.angular_tol && step_phi < cfg.angular_tol {
            break;
        }
        let candidates = [
            MeasurementBasis::new(basis.theta + step_theta, basis.phi),
            MeasurementBasis::new(basis.theta - step_theta, basis.phi),
            MeasurementBasis::new(basis.theta, basis.phi + step_phi),
            MeasurementBasis::new(basis.theta, basis.phi - step_phi),
        ];
        let mut moved = false;
        for cand in candidates {
            let v = states.conditional_entropy(&cand);
            if v < value {
                value = v;
                basis = cand;
                moved = true;
            }
        }
        if !moved {
            step_theta *= 0.5;
            step_phi *= 0.5;
        }
    }

    BruteForceResult {
        bits: qubit_entropy(&states.rho_a) - value,
        basis,
        min_conditional_entropy: value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::classical_correlation_analytic;
    use crate::state::{bell_states, bell_to_density, BellCoefficients};
    use approx::assert_abs_diff_eq;

    #[test]
    fn product_state_is_not_conditioned() {
        let a = Matrix2c::new(
            C64::new(0.8, 0.0),
            C64::new(0.1, 0.1),
            C64::new(0.1, -0.1),
            C64::new(0.2, 0.0),
        );
        let b = Matrix2c::new(
            C64::new(0.3, 0.0),
            C64::new(0.0, 0.2),
            C64::new(0.0, -0.2),
            C64::new(0.7, 0.0),
        );
        let rho = DensityMatrix::product(&a, &b);
        let s_a = qubit_entropy(&a);
        for basis in [MeasurementBasis::new(0.3, 1.1), MeasurementBasis::along(PauliAxis::Y)] {
            assert_abs_diff_eq!(conditional_entropy(&rho, &basis), s_a, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(classical_correlation_bruteforce(&rho).bits, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn singlet_measured_along_z_is_certain() {
        let rho = DensityMatrix::pure(&bell_states()[3]);
        assert_abs_diff_eq!(
            conditional_entropy(&rho, &MeasurementBasis::along(PauliAxis::Z)),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn dominant_axis_gives_analytic_value() {
        let c = BellCoefficients::new(0.1, 0.16, 0.1);
        let rho = bell_to_density(c);
        let along_y = conditional_entropy(&rho, &MeasurementBasis::along(PauliAxis::Y));
        assert_abs_diff_eq!(along_y, 1.0 - 0.018546, epsilon = 1e-6);
        assert_abs_diff_eq!(1.0 - along_y, classical_correlation_analytic(c).bits, epsilon = 1e-14);
    }

    #[test]
    fn bruteforce_examples() {
        assert_abs_diff_eq!(
            classical_correlation_bruteforce(&DensityMatrix::maximally_mixed()).bits,
            0.0,
            epsilon = 1e-14
        );
        let rho = bell_to_density(BellCoefficients::new(0.1, 0.16, 0.1));
        let r = classical_correlation_bruteforce(&rho);
        assert_abs_diff_eq!(r.bits, 0.018546, epsilon = 1e-6);
        assert!(r.basis.misalignment(PauliAxis::Y) < 1e-3);
        assert_abs_diff_eq!(r.min_conditional_entropy, 1.0 - r.bits, epsilon = 1e-14);
    }

    #[test]
    fn bruteforce_is_deterministic() {
        let rho = bell_to_density(BellCoefficients::new(-0.3, 0.2, 0.25));
        let a = classical_correlation_bruteforce(&rho);
        let b = classical_correlation_bruteforce(&rho);
        assert_eq!(a, b);
    }
}
