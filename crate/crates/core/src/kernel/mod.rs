//! The scalar decay function `p(t)` of the post-Markovian Pauli channel with
//! exponential memory kernel `k(t) = A exp(-gamma t)`.
//!
//! For this kernel the memory-kernel master equation reduces to the damped
//! oscillator `p'' + (2a + gamma) p' + 2aA p = 0` with `p(0) = 1`,
//! `p'(0) = 0`. [`p_analytic`] is its closed-form solution in every damping
//! regime; the [`oracle`] module integrates the same dynamics numerically
//! along two independent routes.

pub mod oracle;
pub mod roots;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use oracle::{p_oracle_convolution, p_oracle_convolution_with, p_oracle_ode};
pub use roots::{crossing_times, solve_p_equals};

/// Relative width of the critical band, `|omega0^2| <= CRITICAL_BAND * a^2`.
pub const CRITICAL_BAND: f64 = 1e-12;

/// Kernel triple: Markovian decay rate `a`, kernel amplitude `A` and kernel
/// decay rate `gamma`, all in units of inverse time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    a: f64,
    amplitude: f64,
    gamma: f64,
}

impl KernelParams {
    pub fn new(a: f64, amplitude: f64, gamma: f64) -> Result<Self> {
        let finite = a.is_finite() && amplitude.is_finite() && gamma.is_finite();
        if !finite || a <= 0.0 || amplitude <= 0.0 || gamma < 0.0 {
            return Err(Error::InvalidKernel(format!(
                "need a > 0, A > 0, gamma >= 0; got a={a}, A={amplitude}, gamma={gamma}"
            )));
        }
        Ok(Self { a, amplitude, gamma })
    }

    /// The `A = a = gamma` kernel.
    pub fn symmetric(a: f64) -> Result<Self> {
        Self::new(a, a, a)
    }

    /// The strong-memory kernel `A = 10a`, `gamma = a / 100`.
    pub fn strong_memory(a: f64) -> Result<Self> {
        Self::new(a, 10.0 * a, a / 100.0)
    }

    /// Kernel sitting exactly on the critical boundary for `gamma = 0`:
    /// `2aA = a^2`.
    pub fn critical(a: f64) -> Result<Self> {
        Self::new(a, a / 2.0, 0.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `A = a = gamma` to relative precision `1e-12`.
    pub fn is_symmetric(&self) -> bool {
        let close = |x: f64| (x - self.a).abs() <= 1e-12 * self.a;
        close(self.amplitude) && close(self.gamma)
    }

    /// `(2a + gamma) / 2`.
    pub(crate) fn damping(&self) -> f64 {
        (2.0 * self.a + self.gamma) / 2.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Oscillatory,
    Critical,
    Overdamped,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DampingRegime {
    pub regime: Regime,
    /// `omega0^2 = 2aA - ((2a + gamma)/2)^2`.
    pub omega0_squared: f64,
}

impl DampingRegime {
    /// `sqrt(|omega0^2|)`.
    pub fn frequency(&self) -> f64 {
        self.omega0_squared.abs().sqrt()
    }
}

pub fn omega0_squared(k: &KernelParams) -> DampingRegime {
    let beta = k.damping();
    let w2 = 2.0 * k.a * k.amplitude - beta * beta;
    let band = CRITICAL_BAND * k.a * k.a;
    let regime = if w2 > band {
        Regime::Oscillatory
    } else if w2 >= -band {
        Regime::Critical
    } else {
        Regime::Overdamped
    };
    DampingRegime {
        regime,
        omega0_squared: w2,
    }
}

/// Closed-form `p(t)`.
///
/// Oscillatory: `e^{-bt} (cos wt + (b/w) sin wt)` with `b = (2a+gamma)/2`.
/// Overdamped: the same with `cosh`/`sinh` and `w = |omega0|`.
/// Critical: `e^{-bt} (1 + bt)`.
pub fn p_analytic(k: &KernelParams, t: f64) -> f64 {
    let beta = k.damping();
    let regime = omega0_squared(k);
    let w = regime.frequency();
    match regime.regime {
        Regime::Oscillatory => (-beta * t).exp() * ((w * t).cos() + beta / w * (w * t).sin()),
        Regime::Critical => (-beta * t).exp() * (1.0 + beta * t),
        Regime::Overdamped => {
            // written with decaying exponentials only, since w < beta
            let slow = ((w - beta) * t).exp();
            let fast = (-(w + beta) * t).exp();
            0.5 * (slow + fast) + beta / w * 0.5 * (slow - fast)
        }
    }
}

/// Markovian decay `e^{-2at}` of the flipped Bloch components.
pub fn p_markovian(a: f64, t: f64) -> f64 {
    (-2.0 * a * t).exp()
}

/// Either the memory-kernel decay or its Markovian (delta-kernel) limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay {
    Kernel(KernelParams),
    Markovian { a: f64 },
}

impl Decay {
    pub fn markovian(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidKernel(format!("need a > 0, got {a}")));
        }
        Ok(Decay::Markovian { a })
    }

    pub fn p(&self, t: f64) -> f64 {
        match self {
            Decay::Kernel(k) => p_analytic(k, t),
            Decay::Markovian { a } => p_markovian(*a, t),
        }
    }

    /// The Markovian rate `a`, which sets the unit of time.
    pub fn rate(&self) -> f64 {
        match self {
            Decay::Kernel(k) => k.a(),
            Decay::Markovian { a } => *a,
        }
    }

    /// Markovian decay with the same rate.
    pub fn markovian_baseline(&self) -> Decay {
        Decay::Markovian { a: self.rate() }
    }
}
