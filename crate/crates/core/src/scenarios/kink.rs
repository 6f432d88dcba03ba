//! Locating abrupt changes of slope in a sampled curve.
//!
//! A kink between two grid points shows up as an isolated spike in the
//! discrete second difference, of order `h * (jump in slope)`, while smooth
//! stretches give values of order `h^2 * C''` that vary slowly along the
//! grid. Each second difference is compared with the median magnitude of its
//! neighbours two to ten points away, which keeps slowly decaying curves from
//! triggering on their own curvature.

use super::Trajectory;

/// A spike must exceed this multiple of the local median.
pub const SPIKE_RATIO: f64 = 5.0;
/// Neighbours farther than this are not part of the local median.
const WINDOW: usize = 10;
/// Second differences below this fraction of the largest one are ignored.
const FLOOR: f64 = 1e-6;

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Times of every kink in `values`, one per cluster of adjacent spikes, in
/// increasing order.
pub fn detect_kinks_series(times: &[f64], values: &[f64]) -> Vec<f64> {
    let n = values.len().min(times.len());
    if n < 5 {
        return Vec::new();
    }
    // d2[k] is centred on index k + 1
    let d2: Vec<f64> = values[..n]
        .windows(3)
        .map(|w| (w[0] - 2.0 * w[1] + w[2]).abs())
        .collect();
    let largest = d2.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return Vec::new();
    }

    let mut spikes = Vec::new();
    let mut scratch = Vec::with_capacity(2 * WINDOW);
    for (k, &v) in d2.iter().enumerate() {
        if v < FLOOR * largest {
            continue;
        }
        scratch.clear();
        for offset in 2..=WINDOW {
            if k >= offset {
                scratch.push(d2[k - offset]);
            }
            if k + offset < d2.len() {
                scratch.push(d2[k + offset]);
            }
        }
        if scratch.is_empty() {
            continue;
        }
        if v > SPIKE_RATIO * median(&mut scratch) {
            spikes.push(k);
        }
    }

    let mut kinks = Vec::new();
    let mut i = 0;
    while i < spikes.len() {
        let mut best = spikes[i];
        let mut j = i + 1;
        while j < spikes.len() && spikes[j] - spikes[j - 1] <= 2 {
            if d2[spikes[j]] > d2[best] {
                best = spikes[j];
            }
            j += 1;
        }
        kinks.push(times[best + 1]);
        i = j;
    }
    kinks
}

/// First kink of `values` sampled at `times`.
pub fn detect_kink_series(times: &[f64], values: &[f64]) -> Option<f64> {
    detect_kinks_series(times, values).first().copied()
}

/// First kink in the classical correlation of a trajectory. Discord kinks at
/// the same times since mutual information is smooth.
pub fn detect_kink(traj: &Trajectory) -> Option<f64> {
    detect_kink_series(&traj.times(), &traj.classical())
}
