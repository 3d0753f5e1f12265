// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Interaction geometry and kick schedules.
//!
//! With `H_S = (Ω/2) h·σ̂` and coupling `α·σ̂ ⊗ O`, the coupling axis in the
//! interaction picture precesses as
//! `r(t) = (h·α) h + cos(Ωt)(α − (h·α) h) − sin(Ωt)(h × α)`.

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::pauli::require_unit;

/// Default tolerance on `|r(t_i) × r(t_j)|` for synchronised schedules.
pub const COMMUTE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InteractionGeometry {
    pub h: Vector3<f64>,
    pub alpha: Vector3<f64>,
    pub omega: f64,
}

impl InteractionGeometry {
    pub fn new(h: Vector3<f64>, alpha: Vector3<f64>, omega: f64) -> Result<Self> {
        require_unit(&h)?;
        require_unit(&alpha)?;
        if !omega.is_finite() || omega < 0.0 {
            return Err(Error::InvalidSchedule(format!(
                "qubit frequency {omega} must be finite and >= 0"
            )));
        }
        Ok(Self { h, alpha, omega })
    }

    pub fn r_of_t(&self, t: f64) -> Vector3<f64> {
        let par = self.h * self.h.dot(&self.alpha);
        let (s, c) = (self.omega * t).sin_cos();
        par + (self.alpha - par) * c - self.h.cross(&self.alpha) * s
    }

    pub fn axes(&self, times: &[f64]) -> Vec<Vector3<f64>> {
        times.iter().map(|&t| self.r_of_t(t)).collect()
    }
}

pub fn r_of_t(geom: &InteractionGeometry, t: f64) -> Vector3<f64> {
    geom.r_of_t(t)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KickSchedule {
    times: Vec<f64>,
    weights: Vec<f64>,
}

impl KickSchedule {
    /// Unit-weight schedule.
    pub fn new(times: Vec<f64>) -> Result<Self> {
        let n = times.len();
        Self::with_weights(times, vec![1.0; n])
    }

    /// Weights must be finite and non-negative; a zero weight switches a kick off.
    pub fn with_weights(times: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::InvalidSchedule("schedule needs at least one kick".into()));
        }
        if weights.len() != times.len() {
            return Err(Error::LengthMismatch {
                expected: times.len(),
                got: weights.len(),
            });
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidSchedule("kick times must be finite".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidSchedule("kick times must be strictly increasing".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidSchedule("kick weights must be finite and >= 0".into()));
        }
        Ok(Self { times, weights })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of kicks, `N + 1`.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// The first `n` kicks.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        let n = n.min(self.len());
        Self::with_weights(self.times[..n].to_vec(), self.weights[..n].to_vec())
    }
}

/// Common axis and signs of a synchronised schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct CommonAxis {
    pub axis: Vector3<f64>,
    pub signs: Vec<f64>,
}

/// Returns the reference axis `r(t₀)` and `f(t_k) = sign(r(t_k)·r(t₀))` when all
/// kick axes are pairwise parallel to within `tol`, otherwise `None`.
pub fn is_commuting_schedule(geom: &InteractionGeometry, sched: &KickSchedule, tol: f64) -> Option<CommonAxis> {
    let axes = geom.axes(sched.times());
    for i in 0..axes.len() {
        for j in 0..i {
            if axes[i].cross(&axes[j]).norm() > tol {
                return None;
            }
        }
    }
    let axis = axes[0];
    let signs = axes
        .iter()
        .map(|r| if r.dot(&axis) >= 0.0 { 1.0 } else { -1.0 })
        .collect();
    Some(CommonAxis { axis, signs })
}
