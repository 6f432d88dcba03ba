//! Numerical routes to `p(t)` that do not use the closed form.

use crate::error::{Error, Result};
use crate::grid::TimeGrid;

use super::KernelParams;

/// Largest grid step, in units of `1/a`, accepted by [`p_oracle_ode`].
pub const ODE_MAX_STEP: f64 = 0.01;
/// Largest grid step, in units of `1/a`, accepted by the convolution oracle.
pub const CONVOLUTION_MAX_STEP: f64 = 0.005;

/// RK4 sub-steps taken per grid interval.
const ODE_SUBSTEPS: usize = 4;
/// Corrector sweeps per convolution step.
const CORRECTOR_SWEEPS: usize = 3;

fn check_step(grid: &TimeGrid, a: f64, limit: f64) -> Result<()> {
    let step = grid.step();
    // small slack so that e.g. t_max = 10/a with 1000 steps is accepted
    if step * a > limit * (1.0 + 1e-9) {
        return Err(Error::StepTooLarge { step, limit: limit / a });
    }
    Ok(())
}

/// Integrates `p'' + (2a+gamma) p' + 2aA p = 0`, `p(0)=1`, `p'(0)=0` with
/// classical RK4 and returns `p` at every grid point.
///
/// This is the local form of the exponential-kernel convolution: with
/// `f(t) = int_0^t A e^{-(gamma+2a)s} p(t-s) ds` one has `p' = -2a f` and
/// `f' = A p - (gamma+2a) f`.
pub fn p_oracle_ode(k: &KernelParams, grid: &TimeGrid) -> Result<Vec<f64>> {
    check_step(grid, k.a(), ODE_MAX_STEP)?;
    let damping = 2.0 * k.damping();
    let stiffness = 2.0 * k.a() * k.amplitude();
    let rhs = |p: f64, q: f64| (q, -damping * q - stiffness * p);

    let h = grid.step() / ODE_SUBSTEPS as f64;
    let (mut p, mut q) = (1.0, 0.0);
    let mut out = Vec::with_capacity(grid.len());
    out.push(p);
    for _ in 0..grid.steps() {
        for _ in 0..ODE_SUBSTEPS {
            let k1 = rhs(p, q);
            let k2 = rhs(p + 0.5 * h * k1.0, q + 0.5 * h * k1.1);
            let k3 = rhs(p + 0.5 * h * k2.0, q + 0.5 * h * k2.1);
            let k4 = rhs(p + h * k3.0, q + h * k3.1);
            p += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            q += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        }
        out.push(p);
    }
    Ok(out)
}

/// Direct integration of the memory-kernel equation
/// `p'(t) = -2a int_0^t k(s) e^{-2as} p(t-s) ds` for the exponential kernel.
pub fn p_oracle_convolution(k: &KernelParams, grid: &TimeGrid) -> Result<Vec<f64>> {
    let (amp, gamma) = (k.amplitude(), k.gamma());
    p_oracle_convolution_with(k.a(), grid, |s| amp * (-gamma * s).exp())
}

/// Kernel-agnostic form of [`p_oracle_convolution`]: `kernel` is any memory
/// kernel `k(s)`, e.g. an interpolated table.
///
/// The convolution integral is discretized with the trapezoidal rule and
/// time stepping uses an Euler predictor followed by trapezoidal corrector
/// sweeps. Both are second order, so the scheme runs on the grid and on a
/// twice finer one and the two are Richardson-combined at the shared points.
/// Cost is quadratic in the number of points.
pub fn p_oracle_convolution_with<F>(a: f64, grid: &TimeGrid, kernel: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    check_step(grid, a, CONVOLUTION_MAX_STEP)?;
    let coarse = trapezoid_convolution(a, grid, &kernel);
    let fine = trapezoid_convolution(a, &grid.refined(2), &kernel);
    Ok(coarse
        .iter()
        .zip(fine.iter().step_by(2))
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect())
}

fn trapezoid_convolution<F>(a: f64, grid: &TimeGrid, kernel: &F) -> Vec<f64>
where
    F: Fn(f64) -> f64,
{
    let h = grid.step();
    let n = grid.len();
    // weighted kernel K(s) = k(s) e^{-2as} on the grid
    let weighted: Vec<f64> = grid.points().map(|s| kernel(s) * (-2.0 * a * s).exp()).collect();

    let mut p = Vec::with_capacity(n);
    p.push(1.0);
    // g_n = p'(t_n); the integral over [0, 0] vanishes
    let mut g_prev = 0.0;
    for step in 0..n - 1 {
        let next = step + 1;
        // trapezoid over s_j = j h for t_next, without the j = 0 term that
        // multiplies the unknown p(t_next)
        let mut history = 0.5 * weighted[next] * p[0];
        for j in 1..next {
            history += weighted[j] * p[next - j];
        }
        let derivative = |p_next: f64| -2.0 * a * h * (0.5 * weighted[0] * p_next + history);

        let p_now = p[step];
        let mut p_next = p_now + h * g_prev;
        let mut g_next = derivative(p_next);
        for _ in 0..CORRECTOR_SWEEPS {
            p_next = p_now + 0.5 * h * (g_prev + g_next);
            g_next = derivative(p_next);
        }
        p.push(p_next);
        g_prev = g_next;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{p_analytic, p_markovian};
    use approx::assert_abs_diff_eq;

    fn max_error(k: &KernelParams, grid: &TimeGrid, values: &[f64]) -> f64 {
        grid.points()
            .zip(values)
            .map(|(t, v)| (p_analytic(k, t) - v).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn ode_matches_symmetric_value() {
        let k = KernelParams::symmetric(1.0).unwrap();
        let grid = TimeGrid::new(1.0, 100).unwrap();
        let p = p_oracle_ode(&k, &grid).unwrap();
        assert_eq!(p[0], 1.0);
        assert_abs_diff_eq!(*p.last().unwrap(), 0.600423599106272, epsilon = 1e-6);
    }

    #[test]
    fn ode_tracks_strong_memory_kernel() {
        let k = KernelParams::strong_memory(1.0).unwrap();
        let grid = TimeGrid::new(10.0, 1000).unwrap();
        let p = p_oracle_ode(&k, &grid).unwrap();
        assert!(max_error(&k, &grid, &p) <= 1e-6);
    }

    #[test]
    fn convolution_matches_symmetric_value() {
        let k = KernelParams::symmetric(1.0).unwrap();
        let grid = TimeGrid::new(1.0, 200).unwrap();
        let p = p_oracle_convolution(&k, &grid).unwrap();
        assert_eq!(p[0], 1.0);
        assert_abs_diff_eq!(*p.last().unwrap(), 0.600423599106272, epsilon = 1e-4);
    }

    #[test]
    fn oversized_steps_are_rejected() {
        let k = KernelParams::symmetric(1.0).unwrap();
        let coarse = TimeGrid::new(10.0, 100).unwrap();
        assert!(matches!(p_oracle_ode(&k, &coarse), Err(Error::StepTooLarge { .. })));
        let medium = TimeGrid::new(10.0, 1000).unwrap();
        assert!(p_oracle_ode(&k, &medium).is_ok());
        assert!(matches!(
            p_oracle_convolution(&k, &medium),
            Err(Error::StepTooLarge { .. })
        ));
    }

    #[test]
    fn wide_flat_kernel_approaches_markovian() {
        // A = gamma = L gives a unit-weight kernel that narrows as L grows
        let a = 1.0;
        let grid = TimeGrid::new(2.0, 800).unwrap();
        let mut previous = f64::INFINITY;
        for width in [5.0, 20.0, 80.0] {
            let k = KernelParams::new(a, width, width).unwrap();
            let p = p_oracle_convolution(&k, &grid).unwrap();
            let gap = grid
                .points()
                .zip(&p)
                .map(|(t, v)| (v - p_markovian(a, t)).abs())
                .fold(0.0, f64::max);
            assert!(gap < previous, "gap {gap} did not shrink");
            previous = gap;
        }
        // the gap closes like 1/width
        assert!(previous < 0.03);
    }

    #[test]
    fn tabulated_kernel_reproduces_exponential() {
        // linear interpolation of a finely sampled table of the same kernel
        let k = KernelParams::symmetric(1.0).unwrap();
        let table: Vec<f64> = (0..=4000).map(|i| (-(i as f64) * 0.001).exp()).collect();
        let lookup = |s: f64| {
            let x = s / 0.001;
            let i = (x.floor() as usize).min(table.len() - 2);
            let f = x - i as f64;
            table[i] * (1.0 - f) + table[i + 1] * f
        };
        let grid = TimeGrid::new(3.0, 600).unwrap();
        let p = p_oracle_convolution_with(1.0, &grid, lookup).unwrap();
        assert!(max_error(&k, &grid, &p) <= 1e-4);
    }
}
