//! Pauli operators on the ordered product basis `|ee>, |eg>, |ge>, |gg>`,
//! where `|e>` and `|g>` are the `+1` and `-1` eigenstates of `sigma_z`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

pub type C64 = Complex<f64>;
pub type Matrix2c = Matrix2<C64>;
pub type Matrix4c = Matrix4<C64>;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Pauli axis of a local channel or a correlation component.
///
/// A local channel along `X` is a bit flip, along `Y` a bit-phase flip and
/// along `Z` a phase flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn index(self) -> usize {
        match self {
            PauliAxis::X => 0,
            PauliAxis::Y => 1,
            PauliAxis::Z => 2,
        }
    }

    pub fn matrix(self) -> Matrix2c {
        match self {
            PauliAxis::X => Matrix2::new(ZERO, ONE, ONE, ZERO),
            PauliAxis::Y => Matrix2::new(ZERO, -I, I, ZERO),
            PauliAxis::Z => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        }
    }

    /// `sigma_axis (x) sigma_axis`.
    pub fn correlator(self) -> Matrix4c {
        kron(&self.matrix(), &self.matrix())
    }

    /// Channel name used on the command line.
    pub fn channel_name(self) -> &'static str {
        match self {
            PauliAxis::X => "bitflip",
            PauliAxis::Y => "bitphase",
            PauliAxis::Z => "phaseflip",
        }
    }

    pub fn from_channel_name(name: &str) -> Option<Self> {
        match name {
            "bitflip" => Some(PauliAxis::X),
            "bitphase" => Some(PauliAxis::Y),
            "phaseflip" => Some(PauliAxis::Z),
            _ => None,
        }
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PauliAxis::X => "x",
            PauliAxis::Y => "y",
            PauliAxis::Z => "z",
        })
    }
}

impl FromStr for PauliAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" => Ok(PauliAxis::X),
            "y" => Ok(PauliAxis::Y),
            "z" => Ok(PauliAxis::Z),
            _ => PauliAxis::from_channel_name(s).ok_or_else(|| format!("unknown axis '{s}'")),
        }
    }
}

/// One of the two qubits of the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Qubit {
    A,
    B,
}

pub fn identity2() -> Matrix2c {
    Matrix2c::identity()
}

/// Kronecker product `a (x) b`; `a` acts on the first (A) tensor factor.
pub fn kron(a: &Matrix2c, b: &Matrix2c) -> Matrix4c {
    Matrix4c::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Embeds a single-qubit operator on the given qubit of the pair.
pub fn embed(op: &Matrix2c, qubit: Qubit) -> Matrix4c {
    match qubit {
        Qubit::A => kron(op, &identity2()),
        Qubit::B => kron(&identity2(), op),
    }
}
