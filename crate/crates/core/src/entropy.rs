//! Entropies in bits.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::pauli::{Matrix2c, PauliAxis};
use crate::state::{DensityMatrix, EIGENVALUE_FLOOR};

/// Eigenvalues below this contribute nothing (`0 log 0 = 0`).
pub const ZERO_EIGENVALUE: f64 = 1e-15;

/// Weight outside the reference support tolerated by [`relative_entropy`].
pub const SUPPORT_TOL: f64 = 1e-9;

fn xlog2x(p: f64) -> f64 {
    if p < ZERO_EIGENVALUE {
        0.0
    } else {
        p * p.log2()
    }
}

fn clamp_probabilities(probs: &[f64]) -> Result<Vec<f64>> {
    if let Some(&bad) = probs.iter().find(|&&p| !p.is_finite() || p < EIGENVALUE_FLOOR) {
        return Err(Error::InvalidState(format!("negative or non-finite weight {bad:.6e}")));
    }
    Ok(probs.iter().map(|p| p.clamp(0.0, 1.0)).collect())
}

/// Shannon entropy of a probability vector.
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    let probs = clamp_probabilities(probs)?;
    Ok(-probs.iter().map(|&p| xlog2x(p)).sum::<f64>())
}

/// `-Tr(rho log2 rho)`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    shannon_entropy(&rho.spectral().eigenvalues)
}

/// `((1+u) log2(1+u) + (1-u) log2(1-u)) / 2` for `|u| <= 1`.
///
/// This is `1 - h((1+u)/2)` with `h` the binary entropy. Evaluated through
/// `ln_1p` so it stays accurate as `u -> 0`.
pub fn correlation_bits(u: f64) -> f64 {
    let u = u.abs();
    if u >= 1.0 {
        return 1.0;
    }
    if u < 1e-3 {
        // sum_k u^{2k} / (2k (2k - 1)), the closed form cancels here
        let u2 = u * u;
        return u2 * (0.5 + u2 * (1.0 / 12.0 + u2 * (1.0 / 30.0 + u2 / 56.0))) / LN_2;
    }
    ((1.0 + u) * u.ln_1p() + (1.0 - u) * (-u).ln_1p()) / (2.0 * LN_2)
}

/// Entropy of a (possibly unnormalized) positive 2x2 matrix after
/// normalization, computed from its Bloch vector length.
pub fn qubit_entropy(m: &Matrix2c) -> f64 {
    let tr = m.trace().re;
    if tr <= 0.0 {
        return 0.0;
    }
    let r = PauliAxis::ALL
        .iter()
        .map(|axis| ((m * axis.matrix()).trace().re / tr).powi(2))
        .sum::<f64>()
        .sqrt();
    1.0 - correlation_bits(r.min(1.0))
}

/// `Tr(rho log2 rho) - Tr(rho log2 sigma)`.
///
/// Fails with [`Error::Divergence`] when `rho` puts more than
/// [`SUPPORT_TOL`] weight on the kernel of `sigma`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let neg_entropy = -von_neumann_entropy(rho)?;
    let spec = sigma.spectral();
    if spec.min_eigenvalue() < EIGENVALUE_FLOOR {
        return Err(Error::InvalidState(format!(
            "reference state has eigenvalue {:.6e}",
            spec.min_eigenvalue()
        )));
    }
    let mut cross = 0.0;
    let mut outside = 0.0;
    for (j, &mu) in spec.eigenvalues.iter().enumerate() {
        let v = spec.eigenvectors.column(j);
        let weight = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
        if mu < ZERO_EIGENVALUE {
            outside += weight.max(0.0);
        } else {
            cross += weight * mu.min(1.0).log2();
        }
    }
    if outside > SUPPORT_TOL {
        return Err(Error::Divergence { weight: outside });
    }
    let d = neg_entropy - cross;
    // rounding can leave a tiny negative value for rho == sigma
    Ok(if d < 0.0 && d > -1e-12 { 0.0 } else { d })
}
