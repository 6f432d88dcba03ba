//! Cross-checks between every fast path and its independent route.

use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channels::{apply_local_channel, evolve_bell_bfpf, LocalChannel};
use crate::correlations::{
    classical_correlation_analytic, classical_correlation_bruteforce, discord, relative_entropy_discord,
};
use crate::grid::TimeGrid;
use crate::kernel::{p_analytic, p_oracle_convolution, p_oracle_ode, Decay, KernelParams};
use crate::pauli::Qubit;
use crate::sampling::random_bell_coefficients;
use crate::scenarios::{characteristic_time_closed_form, characteristic_time_for_ratio};
use crate::state::{bell_eigenvalues, bell_states, bell_to_density, density_to_bell, BellCoefficients};

/// Which Bell-basis weight formula the coefficient path uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightFormula {
    #[default]
    Standard,
    /// `l_{3,4} = (1 - c_x -+ c_y +- c_z)/4`, the variant with the sign of
    /// `c_y` flipped in the last two weights. Only useful to confirm that
    /// the harness catches it.
    FlippedY,
}

impl WeightFormula {
    pub fn weights(self, c: BellCoefficients) -> [f64; 4] {
        match self {
            WeightFormula::Standard => bell_eigenvalues(c),
            WeightFormula::FlippedY => {
                let BellCoefficients { x, y, z } = c;
                [
                    0.25 * (1.0 + x + y - z),
                    0.25 * (1.0 + x - y + z),
                    0.25 * (1.0 - x - y + z),
                    0.25 * (1.0 - x + y - z),
                ]
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Grid step of the ODE oracle in units of `1/a`.
    pub ode_step: f64,
    /// Grid step of the convolution oracle in units of `1/a`.
    pub convolution_step: f64,
    pub channel_samples: usize,
    pub bruteforce_samples: usize,
    pub discord_samples: usize,
    pub seed: u64,
    pub weights: WeightFormula,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            ode_step: 0.01,
            convolution_step: 0.005,
            channel_samples: 1000,
            bruteforce_samples: 500,
            discord_samples: 500,
            seed: 20_110_601,
            weights: WeightFormula::Standard,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: Option<String>,
}

impl Check {
    fn new(name: &'static str, discrepancy: f64, tolerance: f64) -> Self {
        Self {
            name,
            discrepancy,
            tolerance,
            passed: discrepancy <= tolerance,
            note: None,
        }
    }

    fn failed(name: &'static str, tolerance: f64, note: String) -> Self {
        Self {
            name,
            discrepancy: f64::INFINITY,
            tolerance,
            passed: false,
            note: Some(note),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<4} {:<40} max discrepancy {:>10.3e}  tolerance {:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.discrepancy,
            self.tolerance
        )?;
        if let Some(note) = &self.note {
            write!(f, "  ({note})")?;
        }
        Ok(())
    }
}

/// The three kernels the oracles are compared on, at `a = 1`.
pub fn reference_kernels() -> [KernelParams; 3] {
    [
        KernelParams::symmetric(1.0).expect("valid kernel"),
        KernelParams::strong_memory(1.0).expect("valid kernel"),
        KernelParams::critical(1.0).expect("valid kernel"),
    ]
}

fn grid_for_step(step: f64) -> crate::Result<TimeGrid> {
    TimeGrid::new(10.0, (10.0 / step).round().max(1.0) as usize)
}

fn kernel_oracle_check<F>(name: &'static str, step: f64, tolerance: f64, oracle: F) -> Check
where
    F: Fn(&KernelParams, &TimeGrid) -> crate::Result<Vec<f64>>,
{
    let grid = match grid_for_step(step) {
        Ok(g) => g,
        Err(e) => return Check::failed(name, tolerance, e.to_string()),
    };
    let mut worst: f64 = 0.0;
    for k in reference_kernels() {
        match oracle(&k, &grid) {
            Ok(values) => {
                for (t, v) in grid.points().zip(values) {
                    worst = worst.max((p_analytic(&k, t) - v).abs());
                }
            }
            Err(e) => return Check::failed(name, tolerance, e.to_string()),
        }
    }
    Check::new(name, worst, tolerance)
}

/// `max_t |p_analytic - (2e^{-at} - e^{-2at})|` for `A = a = gamma` on `a t in [0, 10]`.
pub fn closed_form_discrepancy() -> f64 {
    let k = KernelParams::symmetric(1.0).expect("valid kernel");
    let grid = TimeGrid::new(10.0, 2000).expect("valid grid");
    grid.points()
        .map(|t| (p_analytic(&k, t) - (2.0 * (-t).exp() - (-2.0 * t).exp())).abs())
        .fold(0.0, f64::max)
}

/// Largest gap between the Kraus route and the coefficient route, and the
/// most negative eigenvalue met along the Kraus route.
pub fn channel_path_discrepancy(samples: usize, seed: u64, weights: WeightFormula) -> crate::Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bells = bell_states();
    let mut worst: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    for _ in 0..samples {
        let c0 = random_bell_coefficients(&mut rng);
        let p: f64 = rng.random_range(-1.0..=1.0);
        let rho = bell_to_density(c0);
        let rho = apply_local_channel(&rho, Qubit::A, &LocalChannel::bit_flip(p)?)?;
        let rho = apply_local_channel(&rho, Qubit::B, &LocalChannel::phase_flip(p)?)?;

        let fast = evolve_bell_bfpf(c0, p);
        let projection = density_to_bell(&rho);
        for (got, want) in projection.coefficients.to_array().iter().zip(fast.to_array()) {
            worst = worst.max((got - want).abs());
        }
        worst = worst.max(projection.residual);
        for (psi, want) in bells.iter().zip(weights.weights(fast)) {
            let got = (psi.adjoint() * rho.matrix() * psi)[(0, 0)].re;
            worst = worst.max((got - want).abs());
        }
        min_eig = min_eig.min(rho.spectral().min_eigenvalue());
    }
    Ok((worst, min_eig))
}

/// Largest `|C_bruteforce - C_closed_form|` and the most negative discord.
pub fn bruteforce_discrepancy(samples: usize, seed: u64) -> crate::Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut min_discord = f64::INFINITY;
    for _ in 0..samples {
        let c = random_bell_coefficients(&mut rng);
        let brute = classical_correlation_bruteforce(&bell_to_density(c));
        worst = worst.max((brute.bits - classical_correlation_analytic(c).bits).abs());
        min_discord = min_discord.min(discord(c)?.discord);
    }
    Ok((worst, min_discord))
}

/// Largest `|D_rel - (I - C)|`, and the number of states with a strictly
/// dominant axis whose minimizing dephasing is a different axis.
pub fn relative_entropy_discrepancy(samples: usize, seed: u64) -> crate::Result<(f64, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut misaligned = 0;
    for _ in 0..samples {
        let c = random_bell_coefficients(&mut rng);
        let rel = relative_entropy_discord(c)?;
        worst = worst.max((rel.bits - discord(c)?.discord).abs());
        let mut mags = c.to_array().map(f64::abs);
        mags.sort_by(f64::total_cmp);
        if mags[2] - mags[1] >= 1e-3 && rel.axis != c.dominant().0 {
            misaligned += 1;
        }
    }
    Ok((worst, misaligned))
}

/// Largest `a |t_root - t_closed|` over a sweep of ratios for `A = a = gamma`.
pub fn characteristic_time_discrepancy() -> crate::Result<f64> {
    let decay = Decay::Kernel(KernelParams::symmetric(1.0)?);
    let mut worst: f64 = 0.0;
    for i in 1..20 {
        let r = i as f64 / 20.0;
        let t = characteristic_time_for_ratio(&decay, r)?;
        worst = worst.max((t - characteristic_time_closed_form(1.0, r)).abs());
    }
    Ok(worst)
}

fn from_result<T>(name: &'static str, tolerance: f64, r: crate::Result<T>, f: impl FnOnce(T) -> f64) -> Check {
    match r {
        Ok(v) => Check::new(name, f(v), tolerance),
        Err(e) => Check::failed(name, tolerance, e.to_string()),
    }
}

pub fn run_verification(opts: &VerifyOptions) -> Vec<Check> {
    let mut checks = vec![
        kernel_oracle_check("p(t): closed form vs RK4 ODE", opts.ode_step, 1e-6, p_oracle_ode),
        kernel_oracle_check(
            "p(t): closed form vs kernel convolution",
            opts.convolution_step,
            1e-4,
            p_oracle_convolution,
        ),
        Check::new("p(t): A=a=gamma partial fractions", closed_form_discrepancy(), 1e-12),
    ];

    let channel = channel_path_discrepancy(opts.channel_samples, opts.seed, opts.weights);
    checks.push(from_result(
        "channels: Kraus vs coefficient map",
        1e-12,
        channel.clone(),
        |v| v.0,
    ));
    checks.push(from_result("channels: evolved states positive", 1e-12, channel, |v| {
        (-v.1).max(0.0)
    }));

    let brute = bruteforce_discrepancy(opts.bruteforce_samples, opts.seed + 1);
    checks.push(from_result(
        "C: measurement search vs closed form",
        1e-5,
        brute.clone(),
        |v| v.0,
    ));
    checks.push(from_result("D: non-negative", 1e-12, brute, |v| (-v.1).max(0.0)));

    let rel = relative_entropy_discrepancy(opts.discord_samples, opts.seed + 2);
    let misaligned = rel.as_ref().map(|v| v.1).unwrap_or(0);
    let mut rel_check = from_result("D: relative entropy vs I - C", 1e-8, rel, |v| v.0);
    if misaligned > 0 {
        rel_check.passed = false;
        rel_check.note = Some(format!("{misaligned} states minimized off the dominant axis"));
    }
    checks.push(rel_check);

    checks.push(from_result(
        "t_c: root finder vs closed form",
        1e-8,
        characteristic_time_discrepancy(),
        |v| v,
    ));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flipped_weights_are_caught() {
        let (ok, _) = channel_path_discrepancy(50, 1, WeightFormula::Standard).unwrap();
        assert!(ok <= 1e-12);
        let (bad, _) = channel_path_discrepancy(50, 1, WeightFormula::FlippedY).unwrap();
        assert!(bad > 1e-3);
    }

    #[test]
    fn oversized_ode_step_fails_the_check() {
        let check = kernel_oracle_check("ode", 0.05, 1e-6, p_oracle_ode);
        assert!(!check.passed);
        assert!(check.note.unwrap().contains("exceeds"));
    }
}
