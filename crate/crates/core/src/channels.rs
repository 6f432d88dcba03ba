//! Local Pauli channels and their action on Bell-diagonal coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{embed, PauliAxis, Qubit, C64};
use crate::state::{BellCoefficients, DensityMatrix};

/// Pauli channel `rho -> (1+p)/2 rho + (1-p)/2 sigma rho sigma`.
///
/// Components of the Bloch vector orthogonal to `axis` are scaled by `p`,
/// the component along `axis` is kept.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalChannel {
    pub axis: PauliAxis,
    pub p: f64,
}

impl LocalChannel {
    pub fn new(axis: PauliAxis, p: f64) -> Result<Self> {
        if p.is_nan() || p.abs() > 1.0 {
            return Err(Error::NonCptp(p));
        }
        Ok(Self { axis, p })
    }

    pub fn bit_flip(p: f64) -> Result<Self> {
        Self::new(PauliAxis::X, p)
    }

    pub fn bit_phase_flip(p: f64) -> Result<Self> {
        Self::new(PauliAxis::Y, p)
    }

    pub fn phase_flip(p: f64) -> Result<Self> {
        Self::new(PauliAxis::Z, p)
    }
}

/// Applies `ch` to one qubit of `rho`.
pub fn apply_local_channel(rho: &DensityMatrix, qubit: Qubit, ch: &LocalChannel) -> Result<DensityMatrix> {
    if ch.p.is_nan() || ch.p.abs() > 1.0 {
        return Err(Error::NonCptp(ch.p));
    }
    let diag = rho.validate();
    if !diag.passed {
        return Err(Error::InvalidState(diag.to_string()));
    }
    Ok(apply_unchecked(rho, qubit, ch))
}

pub(crate) fn apply_unchecked(rho: &DensityMatrix, qubit: Qubit, ch: &LocalChannel) -> DensityMatrix {
    let sigma = embed(&ch.axis.matrix(), qubit);
    let m = rho.matrix();
    let keep = C64::new(0.5 * (1.0 + ch.p), 0.0);
    let flip = C64::new(0.5 * (1.0 - ch.p), 0.0);
    DensityMatrix::from_matrix(m * keep + sigma * m * sigma * flip)
}

/// Multipliers `(m_x, m_y, m_z)` with `c_a -> m_a c_a` when qubit A goes
/// through an `axis_a` channel with parameter `p_a` and qubit B through an
/// `axis_b` channel with `p_b`.
pub fn bloch_correlation_transfer_pair(axis_a: PauliAxis, p_a: f64, axis_b: PauliAxis, p_b: f64) -> [f64; 3] {
    PauliAxis::ALL.map(|component| {
        let on_a = if component == axis_a { 1.0 } else { p_a };
        let on_b = if component == axis_b { 1.0 } else { p_b };
        on_a * on_b
    })
}

/// [`bloch_correlation_transfer_pair`] with one shared `p`.
pub fn bloch_correlation_transfer(axis_a: PauliAxis, axis_b: PauliAxis, p: f64) -> [f64; 3] {
    bloch_correlation_transfer_pair(axis_a, p, axis_b, p)
}

/// Coefficient map for arbitrary channel axes on A and B.
pub fn evolve_bell(c0: BellCoefficients, axis_a: PauliAxis, axis_b: PauliAxis, p: f64) -> BellCoefficients {
    let m = bloch_correlation_transfer(axis_a, axis_b, p);
    BellCoefficients::new(m[0] * c0.x, m[1] * c0.y, m[2] * c0.z)
}

/// Bit flip on A and phase flip on B: `(p c_x, p^2 c_y, p c_z)`.
pub fn evolve_bell_bfpf(c0: BellCoefficients, p: f64) -> BellCoefficients {
    BellCoefficients::new(p * c0.x, p * p * c0.y, p * c0.z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{identity2, kron, Matrix2c};
    use crate::state::{bell_to_density, density_to_bell, max_abs_diff};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Image of the single-qubit operator `op` under `ch`, read off from the
    /// two-qubit map acting on `op (x) |e><e|`.
    fn single_qubit_image(ch: &LocalChannel, op: Matrix2c) -> Matrix2c {
        let e = Matrix2c::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let out = apply_unchecked(&DensityMatrix::from_matrix(kron(&op, &e)), Qubit::A, ch);
        Matrix2c::from_fn(|r, col| out.matrix()[(2 * r, 2 * col)])
    }

    #[test]
    fn basis_images_of_bit_and_phase_flip() {
        let p = 0.37;
        let x = PauliAxis::X.matrix();
        let y = PauliAxis::Y.matrix();
        let z = PauliAxis::Z.matrix();
        let id = identity2();
        let half = c(0.5, 0.0);
        let cp = c(p, 0.0);
        let ee = Matrix2c::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let eg = Matrix2c::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let ge = eg.transpose();
        let gg = Matrix2c::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));

        let bf = LocalChannel::bit_flip(p).unwrap();
        let expected_bf = [
            (ee, (id + z * cp) * half),
            (eg, (x + y * c(0.0, p)) * half),
            (ge, (x - y * c(0.0, p)) * half),
            (gg, (id - z * cp) * half),
        ];
        for (op, want) in expected_bf {
            assert!((single_qubit_image(&bf, op) - want).norm() < 1e-15);
        }

        let pf = LocalChannel::phase_flip(p).unwrap();
        let expected_pf = [
            (ee, (id + z) * half),
            (eg, (x + y * c(0.0, 1.0)) * c(p / 2.0, 0.0)),
            (ge, (x - y * c(0.0, 1.0)) * c(p / 2.0, 0.0)),
            (gg, (id - z) * half),
        ];
        for (op, want) in expected_pf {
            assert!((single_qubit_image(&pf, op) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn identity_at_p_one() {
        let rho = bell_to_density(BellCoefficients::new(0.3, -0.2, 0.5));
        for axis in PauliAxis::ALL {
            let out = apply_local_channel(&rho, Qubit::B, &LocalChannel::new(axis, 1.0).unwrap()).unwrap();
            assert!(max_abs_diff(out.matrix(), rho.matrix()) < 1e-16);
        }
    }

    #[test]
    fn full_bit_flip_mixes_excited_state() {
        let e = Matrix2c::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let other = Matrix2c::new(c(0.6, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.4, 0.0));
        let rho = DensityMatrix::product(&e, &other);
        let out = apply_local_channel(&rho, Qubit::A, &LocalChannel::bit_flip(0.0).unwrap()).unwrap();
        let want = DensityMatrix::product(&(identity2() * c(0.5, 0.0)), &other);
        assert!(max_abs_diff(out.matrix(), want.matrix()) < 1e-16);
    }

    #[test]
    fn phase_flip_leaves_diagonal_states() {
        let diag = nalgebra::Vector4::new(0.1, 0.2, 0.3, 0.4).map(|v| c(v, 0.0));
        let rho = DensityMatrix::from_matrix(nalgebra::Matrix4::from_diagonal(&diag));
        for p in [-1.0, -0.3, 0.0, 0.8] {
            for q in [Qubit::A, Qubit::B] {
                let out = apply_local_channel(&rho, q, &LocalChannel::phase_flip(p).unwrap()).unwrap();
                assert!(max_abs_diff(out.matrix(), rho.matrix()) < 1e-16);
            }
        }
    }

    #[test]
    fn rejects_non_cptp_and_invalid_states() {
        assert!(matches!(LocalChannel::bit_flip(1.01), Err(Error::NonCptp(_))));
        let rho = DensityMatrix::maximally_mixed();
        let ch = LocalChannel {
            axis: PauliAxis::X,
            p: -1.5,
        };
        assert!(matches!(
            apply_local_channel(&rho, Qubit::A, &ch),
            Err(Error::NonCptp(_))
        ));
        let bad = bell_to_density(BellCoefficients::new(1.0, 1.0, 1.0));
        assert!(matches!(
            apply_local_channel(&bad, Qubit::A, &LocalChannel::bit_flip(0.5).unwrap()),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn coefficient_map_examples() {
        let c0 = BellCoefficients::new(0.6, 0.36, -0.6);
        assert_eq!(evolve_bell_bfpf(c0, 1.0), c0);
        let zero = evolve_bell_bfpf(c0, 0.0);
        assert_eq!(zero.to_array().map(f64::abs), [0.0; 3]);

        // brute force through the two Kraus maps
        let rho = bell_to_density(c0);
        let rho = apply_local_channel(&rho, Qubit::A, &LocalChannel::bit_flip(0.5).unwrap()).unwrap();
        let rho = apply_local_channel(&rho, Qubit::B, &LocalChannel::phase_flip(0.5).unwrap()).unwrap();
        let brute = density_to_bell(&rho);
        assert!(brute.residual < 1e-15);
        for (got, want) in brute.coefficients.to_array().iter().zip([0.3, 0.09, -0.3]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
        let fast = evolve_bell_bfpf(c0, 0.5);
        assert_abs_diff_eq!(fast.x, 0.3, epsilon = 1e-16);
        assert_abs_diff_eq!(fast.y, 0.09, epsilon = 1e-16);
        assert_abs_diff_eq!(fast.z, -0.3, epsilon = 1e-16);
    }

    #[test]
    fn transfer_examples() {
        let p = -0.4;
        assert_eq!(bloch_correlation_transfer(PauliAxis::X, PauliAxis::Z, p), [p, p * p, p]);
        assert_eq!(
            bloch_correlation_transfer(PauliAxis::Z, PauliAxis::Z, p),
            [p * p, p * p, 1.0]
        );
        for a in PauliAxis::ALL {
            for b in PauliAxis::ALL {
                assert_eq!(bloch_correlation_transfer(a, b, 1.0), [1.0; 3]);
            }
        }
    }

    #[test]
    fn transfer_matches_kraus_for_every_pairing() {
        let c0 = BellCoefficients::new(0.2, -0.5, 0.1);
        let (pa, pb) = (0.7, -0.35);
        for axis_a in PauliAxis::ALL {
            for axis_b in PauliAxis::ALL {
                let rho = bell_to_density(c0);
                let rho = apply_local_channel(&rho, Qubit::A, &LocalChannel::new(axis_a, pa).unwrap()).unwrap();
                let rho = apply_local_channel(&rho, Qubit::B, &LocalChannel::new(axis_b, pb).unwrap()).unwrap();
                let brute = density_to_bell(&rho);
                let m = bloch_correlation_transfer_pair(axis_a, pa, axis_b, pb);
                assert!(brute.residual < 1e-15);
                for (i, got) in brute.coefficients.to_array().iter().enumerate() {
                    assert_abs_diff_eq!(*got, m[i] * c0.to_array()[i], epsilon = 1e-15);
                }
            }
        }
    }
}
