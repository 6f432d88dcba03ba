use crate::error::{Error, Result};

/// Uniform time grid `t_i = t_max * i / steps`, `i = 0..=steps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t_max: f64, steps: usize) -> Result<Self> {
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(Error::InvalidGrid(format!("t_max must be positive, got {t_max}")));
        }
        if steps == 0 {
            return Err(Error::InvalidGrid("grid needs at least one step".into()));
        }
        Ok(Self { t_max, steps })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.t_max / self.steps as f64
    }

    pub fn at(&self, i: usize) -> f64 {
        if i == self.steps {
            self.t_max
        } else {
            self.t_max * i as f64 / self.steps as f64
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.at(i))
    }

    /// Same grid with every interval split into `factor` pieces.
    pub fn refined(&self, factor: usize) -> Self {
        Self {
            t_max: self.t_max,
            steps: self.steps * factor.max(1),
        }
    }
}
