//! Two-qubit states: the Bell-diagonal coefficient triple and the general
//! 4x4 density matrix, with conversions between them.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::Vector4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{kron, Matrix2c, Matrix4c, PauliAxis, Qubit, C64};

/// Maximum entry-wise deviation from Hermiticity accepted for a state.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Maximum deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue accepted before a state is rejected.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

/// Correlation triple `(c_x, c_y, c_z)` of the Bell-diagonal state
/// `(I + sum_a c_a sigma_a (x) sigma_a) / 4`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct BellCoefficients {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BellCoefficients {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn get(self, axis: PauliAxis) -> f64 {
        self.to_array()[axis.index()]
    }

    /// Keeps only the component along `axis`.
    pub fn project(self, axis: PauliAxis) -> Self {
        let mut out = [0.0; 3];
        out[axis.index()] = self.get(axis);
        out.into()
    }

    /// Largest `|c_a|` and its axis; ties go to the earlier axis in x, y, z order.
    pub fn dominant(self) -> (PauliAxis, f64) {
        let mut best = (PauliAxis::X, self.x.abs());
        for axis in [PauliAxis::Y, PauliAxis::Z] {
            let v = self.get(axis).abs();
            if v > best.1 {
                best = (axis, v);
            }
        }
        best
    }

    /// Checks that every Bell-basis weight is non-negative within `tol`.
    pub fn check_physical(self, tol: f64) -> Result<()> {
        let lambdas = bell_eigenvalues(self);
        if let Some(min) = lambdas.iter().copied().reduce(f64::min) {
            if min < -tol {
                return Err(Error::InvalidState(format!(
                    "Bell coefficients ({}, {}, {}) give a negative Bell-basis weight {min:.6e}",
                    self.x, self.y, self.z
                )));
            }
        }
        if self.to_array().iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidState("non-finite Bell coefficient".into()));
        }
        Ok(())
    }

    pub fn is_physical(self) -> bool {
        self.check_physical(1e-12).is_ok()
    }
}

impl From<[f64; 3]> for BellCoefficients {
    fn from(c: [f64; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }
}

impl From<BellCoefficients> for [f64; 3] {
    fn from(c: BellCoefficients) -> Self {
        c.to_array()
    }
}

/// The four Bell states, in the order `Psi+, Phi+, Phi-, Psi-`.
pub fn bell_states() -> [Vector4<C64>; 4] {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    [
        Vector4::new(z, h, h, z),
        Vector4::new(h, z, z, h),
        Vector4::new(h, z, z, -h),
        Vector4::new(z, h, -h, z),
    ]
}

/// Bell-basis weights `(l_Psi+, l_Phi+, l_Phi-, l_Psi-)`.
pub fn bell_eigenvalues(c: BellCoefficients) -> [f64; 4] {
    let BellCoefficients { x, y, z } = c;
    [
        0.25 * (1.0 + x + y - z),
        0.25 * (1.0 + x - y + z),
        0.25 * (1.0 - x + y + z),
        0.25 * (1.0 - x - y - z),
    ]
}

/// Inverse of [`bell_eigenvalues`].
pub fn bell_from_eigenvalues(l: [f64; 4]) -> BellCoefficients {
    BellCoefficients::new(
        l[0] + l[1] - l[2] - l[3],
        l[0] - l[1] + l[2] - l[3],
        -l[0] + l[1] + l[2] - l[3],
    )
}

pub fn bell_to_density(c: BellCoefficients) -> DensityMatrix {
    let mut m = Matrix4c::identity();
    for axis in PauliAxis::ALL {
        m += axis.correlator() * C64::new(c.get(axis), 0.0);
    }
    DensityMatrix(m * C64::new(0.25, 0.0))
}

/// Bell-family projection of a density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellProjection {
    pub coefficients: BellCoefficients,
    /// Largest entry modulus of `rho - bell_to_density(coefficients)`.
    pub residual: f64,
}

impl BellProjection {
    pub fn is_bell_diagonal(&self, tol: f64) -> bool {
        self.residual <= tol
    }

    pub fn require(self, tol: f64) -> Result<BellCoefficients> {
        if self.is_bell_diagonal(tol) {
            Ok(self.coefficients)
        } else {
            Err(Error::InvalidState(format!(
                "state is not Bell-diagonal (residual {:.3e})",
                self.residual
            )))
        }
    }
}

pub fn density_to_bell(rho: &DensityMatrix) -> BellProjection {
    let c = BellCoefficients::new(
        rho.expectation(&PauliAxis::X.correlator()),
        rho.expectation(&PauliAxis::Y.correlator()),
        rho.expectation(&PauliAxis::Z.correlator()),
    );
    let residual = max_abs_diff(&rho.0, &bell_to_density(c).0);
    BellProjection {
        coefficients: c,
        residual,
    }
}

pub(crate) fn max_abs_diff(a: &Matrix4c, b: &Matrix4c) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Two-qubit density matrix in the `|ee>, |eg>, |ge>, |gg>` basis.
///
/// Construction does not validate; call [`DensityMatrix::validate`] or
/// [`validate_state`] where physicality matters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DensityMatrixRepr", into = "DensityMatrixRepr")]
pub struct DensityMatrix(Matrix4c);

impl DensityMatrix {
    pub fn from_matrix(m: Matrix4c) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix4c {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix4c {
        self.0
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix4c::identity() * C64::new(0.25, 0.0))
    }

    /// `|psi><psi|` for a normalized state vector.
    pub fn pure(psi: &Vector4<C64>) -> Self {
        Self(psi * psi.adjoint())
    }

    pub fn product(rho_a: &Matrix2c, rho_b: &Matrix2c) -> Self {
        Self(kron(rho_a, rho_b))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// `Re Tr(rho * op)`.
    pub fn expectation(&self, op: &Matrix4c) -> f64 {
        (self.0 * op).trace().re
    }

    pub fn spectral(&self) -> SpectralDecomposition {
        SpectralDecomposition::new(&self.0)
    }

    pub fn validate(&self) -> StateDiagnostics {
        validate_state(self)
    }

    /// Returns `self` when it passes validation, otherwise the failing diagnostics.
    pub fn checked(self) -> Result<Self> {
        let diag = self.validate();
        if diag.passed {
            Ok(self)
        } else {
            Err(Error::InvalidState(diag.to_string()))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DensityMatrixRepr {
    re: [[f64; 4]; 4],
    im: [[f64; 4]; 4],
}

impl From<DensityMatrix> for DensityMatrixRepr {
    fn from(rho: DensityMatrix) -> Self {
        let mut re = [[0.0; 4]; 4];
        let mut im = [[0.0; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                re[r][c] = rho.0[(r, c)].re;
                im[r][c] = rho.0[(r, c)].im;
            }
        }
        Self { re, im }
    }
}

impl TryFrom<DensityMatrixRepr> for DensityMatrix {
    type Error = String;

    fn try_from(repr: DensityMatrixRepr) -> std::result::Result<Self, Self::Error> {
        let m = Matrix4c::from_fn(|r, c| C64::new(repr.re[r][c], repr.im[r][c]));
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err("density matrix has non-finite entries".into());
        }
        Ok(Self(m))
    }
}

/// Eigen-decomposition of a Hermitian 4x4 matrix, eigenvalues descending.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: [f64; 4],
    /// Column `i` is the eigenvector of `eigenvalues[i]`.
    pub eigenvectors: Matrix4c,
}

impl SpectralDecomposition {
    /// Decomposes the Hermitian part `(m + m^dagger) / 2`.
    pub fn new(m: &Matrix4c) -> Self {
        let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
        let eig = herm.symmetric_eigen();
        let mut order = [0usize, 1, 2, 3];
        order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
        let eigenvalues = order.map(|i| eig.eigenvalues[i]);
        let eigenvectors = Matrix4c::from_fn(|r, c| eig.eigenvectors[(r, order[c])]);
        Self {
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn reconstruct(&self) -> Matrix4c {
        let d = Matrix4c::from_diagonal(&Vector4::from(self.eigenvalues.map(|l| C64::new(l, 0.0))));
        self.eigenvectors * d * self.eigenvectors.adjoint()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[3]
    }
}

/// Outcome of [`validate_state`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateDiagnostics {
    pub hermiticity_deviation: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
    pub passed: bool,
}

impl std::fmt::Display for StateDiagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "hermiticity deviation {:.3e}, trace deviation {:.3e}, min eigenvalue {:.6e} ({})",
            self.hermiticity_deviation,
            self.trace_deviation,
            self.min_eigenvalue,
            if self.passed { "valid" } else { "invalid" }
        )
    }
}

pub fn validate_state(rho: &DensityMatrix) -> StateDiagnostics {
    let m = rho.matrix();
    let hermiticity_deviation = max_abs_diff(m, &m.adjoint());
    let trace_deviation = (m.trace() - C64::new(1.0, 0.0)).norm();
    let min_eigenvalue = rho.spectral().min_eigenvalue();
    let finite = m.iter().all(|z| z.re.is_finite() && z.im.is_finite());
    StateDiagnostics {
        hermiticity_deviation,
        trace_deviation,
        min_eigenvalue,
        passed: finite
            && hermiticity_deviation <= HERMITICITY_TOL
            && trace_deviation <= TRACE_TOL
            && min_eigenvalue >= EIGENVALUE_FLOOR,
    }
}

/// Traces out `traced` and returns the reduced state of the other qubit.
pub fn partial_trace(rho: &DensityMatrix, traced: Qubit) -> Matrix2c {
    let m = rho.matrix();
    Matrix2c::from_fn(|r, c| match traced {
        Qubit::B => m[(2 * r, 2 * c)] + m[(2 * r + 1, 2 * c + 1)],
        Qubit::A => m[(r, c)] + m[(r + 2, c + 2)],
    })
}
