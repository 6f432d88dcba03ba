//! Quantum and classical correlations of two qubits whose Bell-diagonal
//! state decoheres under a bit flip on one qubit and a phase flip on the
//! other, both driven by a post-Markovian exponential memory kernel.
//!
//! The crate is organised bottom-up:
//!
//! * [`state`] and [`entropy`]: Bell coefficients, density matrices,
//!   spectra and entropies.
//! * [`kernel`]: the decay function `p(t)` in closed form, its Markovian
//!   limit, two numerical oracles and level-crossing times.
//! * [`channels`]: local Pauli channels in Kraus form and the induced map on
//!   Bell coefficients.
//! * [`correlations`]: mutual information, classical correlation (closed
//!   form and measurement brute force), discord and relative-entropy
//!   discord.
//! * [`scenarios`]: the initial-state families, trajectories, the
//!   characteristic time of the sudden change and figure tables.
//! * [`verify`]: the cross-check harness that pits each fast path against
//!   its independent route.

pub mod channels;
pub mod correlations;
pub mod entropy;
pub mod error;
pub mod grid;
pub mod kernel;
pub mod pauli;
pub mod sampling;
pub mod scenarios;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use grid::TimeGrid;
pub use kernel::{Decay, KernelParams};
pub use pauli::{PauliAxis, Qubit};
pub use state::{BellCoefficients, DensityMatrix};
