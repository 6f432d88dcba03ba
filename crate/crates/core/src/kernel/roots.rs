//! Crossing times of `|p(t)|` through a level.

use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::{omega0_squared, Decay, Regime};

/// Search horizon in units of `1/a`.
pub const HORIZON: f64 = 50.0;

fn scan_step(decay: &Decay) -> f64 {
    match decay {
        Decay::Kernel(k) => {
            let regime = omega0_squared(k);
            let smooth = 1.0 / (16.0 * k.a().max(k.damping()));
            match regime.regime {
                Regime::Oscillatory => (PI / (8.0 * regime.frequency())).min(smooth),
                _ => smooth,
            }
        }
        Decay::Markovian { a } => 1.0 / (16.0 * a),
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Every time in `(0, horizon]` at which `|p(t)| - target` changes sign,
/// in increasing order, up to `max_count` of them.
///
/// The scan resolves oscillation lobes at `pi / (8 omega0)`; a lobe that only
/// touches `target` without crossing it is not reported.
pub fn crossing_times(decay: &Decay, target: f64, horizon: f64, max_count: usize) -> Vec<f64> {
    let f = |t: f64| decay.p(t).abs() - target;
    let h = scan_step(decay);
    let mut out = Vec::new();
    let mut t0 = 0.0;
    let mut f0 = f(t0);
    let mut i = 0usize;
    while out.len() < max_count {
        i += 1;
        let t1 = (i as f64 * h).min(horizon);
        let f1 = f(t1);
        if f1 == 0.0 {
            out.push(t1);
        } else if f0 != 0.0 && (f0 > 0.0) != (f1 > 0.0) {
            out.push(bisect(f, t0, t1));
        }
        if t1 >= horizon {
            break;
        }
        t0 = t1;
        f0 = f1;
    }
    out
}

/// Smallest `t > 0` with `|p(t)| = target`, `0 < target < 1`.
pub fn solve_p_equals(decay: &Decay, target: f64) -> Result<f64> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::Domain(format!("target must lie in (0, 1), got {target}")));
    }
    let horizon = HORIZON / decay.rate();
    crossing_times(decay, target, horizon, 1)
        .first()
        .copied()
        .ok_or(Error::NotFound { target, horizon })
}
