// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Smooth switchings `χ_δt(t) = Σ_k λ_k ξ((t − t_k)/δt)/δt` approaching the delta train.

use nalgebra::DMatrix;

use super::fock::{qubit_axis, FockSpec, Quadrature};
use super::{affine_from_joint, channel_distance, wrap_channel};
use crate::channels::{QubitChannel, QubitMap};
use crate::error::{Error, Result};
use crate::kicks::{InteractionGeometry, KickSchedule};
use crate::pauli::{AffineBlochMap, C64};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PulseShape {
    /// Unit-variance Gaussian in units of `δt`, cut at `±5δt`.
    #[default]
    Gaussian,
    /// Uniform on `[−δt/2, δt/2]`.
    Rectangular,
}

impl PulseShape {
    fn half_width(self) -> f64 {
        match self {
            PulseShape::Gaussian => 5.0,
            PulseShape::Rectangular => 0.5,
        }
    }

    /// Midpoints (in units of `δt`) and normalised weights of the step grid.
    fn grid(self, steps: usize) -> Vec<(f64, f64)> {
        let hw = self.half_width();
        let dx = 2.0 * hw / steps as f64;
        let mids: Vec<f64> = (0..steps).map(|i| -hw + (i as f64 + 0.5) * dx).collect();
        let raw: Vec<f64> = match self {
            PulseShape::Gaussian => mids.iter().map(|m| (-0.5 * m * m).exp()).collect(),
            PulseShape::Rectangular => vec![1.0; steps],
        };
        let total: f64 = raw.iter().sum();
        mids.into_iter().zip(raw.into_iter().map(|w| w / total)).collect()
    }
}

/// Time-ordered product of step unitaries `exp(−i c_j r(τ_j)·σ̂ ⊗ O(τ_j))` over each
/// pulse, with `Σ_j c_j = λ_k`.
pub fn nascent_delta_channel(
    spec: &FockSpec,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
    delta_t: f64,
    steps_per_kick: usize,
    shape: PulseShape,
) -> Result<QubitChannel> {
    if !(delta_t > 0.0) || steps_per_kick == 0 {
        return Err(Error::StepTooCoarse(format!(
            "need delta_t > 0 and at least one step, got {delta_t} and {steps_per_kick}"
        )));
    }
    let support = 2.0 * shape.half_width() * delta_t;
    if let Some(gap) = sched.times().windows(2).map(|w| w[1] - w[0]).reduce(f64::min) {
        if support >= gap {
            return Err(Error::StepTooCoarse(format!(
                "pulse support {support} overlaps the smallest kick gap {gap}"
            )));
        }
    }
    let fastest = geom.omega.max(spec.omega);
    if delta_t * fastest > 1.0 {
        return Err(Error::StepTooCoarse(format!(
            "delta_t = {delta_t} is not small against the period 2π/{fastest}"
        )));
    }

    let (rho_e, _) = spec.state();
    let quad = Quadrature::new(spec);
    let grid = shape.grid(steps_per_kick);
    let d = spec.dim;
    let mut u = DMatrix::<C64>::identity(2 * d, 2 * d);
    for (&tk, &wk) in sched.times().iter().zip(sched.weights()) {
        if wk == 0.0 {
            continue;
        }
        for &(m, frac) in &grid {
            let tau = tk + m * delta_t;
            u = quad.kick(&qubit_axis(geom, tau), tau, wk * frac).0 * u;
        }
    }
    Ok(wrap_channel(affine_from_joint(&u, &rho_e), spec, geom, sched))
}

/// Convergence table of nascent-delta channels against a reference channel.
#[derive(Clone, Debug, PartialEq)]
pub struct NascentStudy {
    /// `(δt, distance)` for successive halvings.
    pub rows: Vec<(f64, f64)>,
    /// Distance of the first-order Richardson estimate `2E(δt/2) − E(δt)` from the two finest steps.
    pub extrapolated: f64,
    pub monotone: bool,
}

impl NascentStudy {
    pub fn finest(&self) -> f64 {
        self.rows.last().map(|r| r.1).unwrap_or(f64::NAN)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn nascent_delta_study(
    spec: &FockSpec,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
    reference: &impl AsRef<QubitMap>,
    dt0: f64,
    halvings: usize,
    steps_per_kick: usize,
    shape: PulseShape,
) -> Result<NascentStudy> {
    let mut rows = Vec::with_capacity(halvings + 1);
    let mut maps: Vec<AffineBlochMap> = Vec::with_capacity(halvings + 1);
    let mut dt = dt0;
    for _ in 0..=halvings {
        let ch = nascent_delta_channel(spec, geom, sched, dt, steps_per_kick, shape)?;
        rows.push((dt, channel_distance(&ch, reference)));
        maps.push(ch.affine);
        dt *= 0.5;
    }
    let monotone = rows.windows(2).all(|w| w[1].1 < w[0].1);
    let extrapolated = match maps.as_slice() {
        [.., coarse, fine] => {
            let rich = AffineBlochMap::new(fine.a * 2.0 - coarse.a, fine.b * 2.0 - coarse.b);
            let mut probe = QubitChannel::identity();
            probe.0.affine = rich;
            channel_distance(&probe, reference)
        }
        _ => rows[0].1,
    };
    Ok(NascentStudy {
        rows,
        extrapolated,
        monotone,
    })
}
