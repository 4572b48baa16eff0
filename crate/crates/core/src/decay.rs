//! Long-term decay envelope of rotary position embeddings.
//!
//! For a model dimension `d` the rotary frequencies are
//! `theta_j = base^(-2j/d)`, `j = 0..d/2`. The relative bound on the rotary
//! inner product at distance `m` is the magnitude of the phasor sum
//! `sum_j exp(i m theta_j)`; dividing by `d/2` normalizes it to `c(0) = 1`.
//! The envelope oscillates, so decay is judged on windowed means.

use std::ops::RangeInclusive;

use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_BASE: f64 = 10_000.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayCurve {
    pub dim: usize,
    pub base: f64,
    /// `values[m]` is `c(m)` for `m` in `0..=max_dist`.
    pub values: Vec<f64>,
}

impl DecayCurve {
    pub fn max_dist(&self) -> usize {
        self.values.len() - 1
    }

    /// Mean of `c` over an inclusive window of distances.
    pub fn window_mean(&self, window: &RangeInclusive<usize>) -> f64 {
        let slice = &self.values[*window.start()..=*window.end()];
        slice.iter().sum::<f64>() / slice.len() as f64
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum DecayError {
    #[error("dimension {0} must be even and at least 2")]
    InvalidDimension(usize),
    #[error("base {0} must be finite and positive")]
    InvalidBase(f64),
    #[error("max distance must be at least 1")]
    InvalidMaxDistance,
    #[error("invalid windows {near:?} / {far:?}: {reason}")]
    InvalidWindow {
        near: RangeInclusive<usize>,
        far: RangeInclusive<usize>,
        reason: &'static str,
    },
}

/// Rotary frequencies in summation order.
pub fn frequencies(dim: usize, base: f64) -> Vec<f64> {
    (0..dim / 2)
        .map(|j| base.powf(-2.0 * j as f64 / dim as f64))
        .collect()
}

pub fn decay_curve(dim: usize, max_dist: usize, base: f64) -> Result<DecayCurve, DecayError> {
    if dim < 2 || !dim.is_multiple_of(2) {
        return Err(DecayError::InvalidDimension(dim));
    }
    if !(base.is_finite() && base > 0.0) {
        return Err(DecayError::InvalidBase(base));
    }
    if max_dist < 1 {
        return Err(DecayError::InvalidMaxDistance);
    }
    let thetas = frequencies(dim, base);
    let half = thetas.len() as f64;
    let values = (0..=max_dist)
        .map(|m| {
            if thetas.len() == 1 {
                // A single unit phasor: |exp(i m theta)| is exactly 1.
                return 1.0;
            }
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for &theta in &thetas {
                let (sin, cos) = (m as f64 * theta).sin_cos();
                re += cos;
                im += sin;
            }
            // Rounding can push a nearly aligned sum past d/2.
            (re.hypot(im) / half).min(1.0)
        })
        .collect();
    Ok(DecayCurve { dim, base, values })
}

/// True iff the mean over `near` is strictly greater than the mean over `far`.
pub fn check_decay(
    curve: &DecayCurve,
    near: RangeInclusive<usize>,
    far: RangeInclusive<usize>,
) -> Result<bool, DecayError> {
    let invalid = |reason| DecayError::InvalidWindow {
        near: near.clone(),
        far: far.clone(),
        reason,
    };
    if near.is_empty() || far.is_empty() {
        return Err(invalid("empty window"));
    }
    if *near.start() < 1 || *far.end() > curve.max_dist() || *near.end() > curve.max_dist() {
        return Err(invalid("window outside [1, max_dist]"));
    }
    if *near.end() >= *far.start() {
        return Err(invalid("near window must end before far window starts"));
    }
    Ok(curve.window_mean(&near) > curve.window_mean(&far))
}
