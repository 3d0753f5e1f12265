// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed forms: one kick, two kicks in an even state, and pure dephasing.

use nalgebra::{Matrix3, Vector3};

use super::{ChannelMeta, QubitChannel, QubitMap, PARALLEL_TOL};
use crate::environment::{gaussian_char, GaussianEnvironment};
use crate::error::{Error, Result};
use crate::kicks::{is_commuting_schedule, InteractionGeometry, KickSchedule, COMMUTE_TOL};
use crate::pauli::{axis_pair_frame, AffineBlochMap, ChiMatrix, OperatorBasis, C64};

/// `γ₊₋ = ⟨e^{−2iλ O(t₀)}⟩ = exp(−2iλμ − 2λ²V)`.
pub fn single_kick_gamma(env: &dyn GaussianEnvironment, t0: f64, weight: f64) -> Result<C64> {
    gaussian_char(env, &[t0], &[2.0 * weight])
}

/// Phase damping about `r` with coherence factor `γ`:
/// `u ↦ (u·r) r + Re γ u_⊥ − Im γ (r × u)`.
pub(crate) fn phase_damping_affine(r: &Vector3<f64>, gamma: C64) -> AffineBlochMap {
    let proj = r * r.transpose();
    let cross = r.cross_matrix();
    let a = proj + (Matrix3::identity() - proj) * gamma.re - cross * gamma.im;
    AffineBlochMap::new(a, Vector3::zeros())
}

pub fn single_kick_channel(
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    t0: f64,
    weight: f64,
) -> Result<QubitChannel> {
    let r = geom.r_of_t(t0);
    let gamma = single_kick_gamma(env, t0, weight)?;
    let meta = ChannelMeta {
        times: vec![t0],
        weights: vec![weight],
        env_id: env.id(),
        axes: vec![r],
        condition: None,
    };
    Ok(QubitChannel(QubitMap::from_affine(
        phase_damping_affine(&r, gamma),
        OperatorBasis::pauli(),
        meta,
    )))
}

/// Parameters of the two-kick channel in the frame `e₁ = r₁`, `e₂ ∝ r₀ − (r₁·r₀) r₁`,
/// `e₃ ∝ r₁ × r₀`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoKickParams {
    /// `r₁·r₀`.
    pub alpha: f64,
    /// `e^{−2V₀}`.
    pub g: f64,
    /// `e^{−V₁}(cosh 2K₁₀ − α sinh 2K₁₀)`.
    pub h: C64,
    /// `|r₁ × r₀| e^{−V₁} sinh 2K₁₀`.
    pub k: C64,
    /// Rows are `e₁, e₂, e₃`.
    pub frame: Matrix3<f64>,
}

impl TwoKickParams {
    /// Requires an even environment and non-parallel axes; `sched` must hold two kicks.
    pub fn new(env: &dyn GaussianEnvironment, geom: &InteractionGeometry, sched: &KickSchedule) -> Result<Self> {
        if sched.len() != 2 {
            return Err(Error::LengthMismatch {
                expected: 2,
                got: sched.len(),
            });
        }
        if !env.is_even() {
            return Err(Error::NonEvenEnvironment);
        }
        let (t, w) = (sched.times(), sched.weights());
        let r0 = geom.r_of_t(t[0]);
        let r1 = geom.r_of_t(t[1]);
        let (e1, e2, e3) = axis_pair_frame(&r1, &r0, PARALLEL_TOL).ok_or(Error::ParallelAxes)?;
        let alpha = r1.dot(&r0);
        let sin = r1.cross(&r0).norm();
        let v0 = w[0] * w[0] * env.covariance(t[0], t[0])?.re;
        let v1 = w[1] * w[1] * env.covariance(t[1], t[1])?.re;
        let k10 = env.covariance(t[1], t[0])? * (w[0] * w[1]);
        let damp = (-v1).exp();
        let two_k = k10 * 2.0;
        let h = (two_k.cosh() - two_k.sinh() * alpha) * damp;
        let k = two_k.sinh() * (sin * damp);
        let frame = Matrix3::from_rows(&[e1.transpose(), e2.transpose(), e3.transpose()]);
        Ok(Self {
            alpha,
            g: (-2.0 * v0).exp(),
            h,
            k,
            frame,
        })
    }

    fn b_matrix(&self) -> Matrix3<f64> {
        let (h2, k2) = (self.h.norm_sqr(), self.k.norm_sqr());
        let hk = self.h * self.k.conj();
        Matrix3::new(1.0, 0.0, 0.0, 2.0 * hk.re, h2 - k2, 0.0, 0.0, 0.0, h2 + k2)
    }

    fn c_matrix(&self) -> Matrix3<f64> {
        let (a, g) = (self.alpha, self.g);
        let a2 = a * a;
        let off = a * (1.0 - a2).max(0.0).sqrt() * (1.0 - g);
        Matrix3::new(
            a2 + g * (1.0 - a2),
            off,
            0.0,
            off,
            g * a2 + (1.0 - a2),
            0.0,
            0.0,
            0.0,
            g,
        )
    }

    /// Constant shift `(0, 0, −2 Im(h k*))` in the adapted frame.
    fn shift(&self) -> Vector3<f64> {
        Vector3::new(0.0, 0.0, -2.0 * (self.h * self.k.conj()).im)
    }

    /// Channel `u ↦ B C u + b`, expressed in the lab frame.
    pub fn channel_affine(&self) -> AffineBlochMap {
        let q = self.frame;
        AffineBlochMap::new(
            q.transpose() * self.b_matrix() * self.c_matrix() * q,
            q.transpose() * self.shift(),
        )
    }

    /// Transition map from the first-kick channel to the two-kick channel, lab frame.
    pub fn transition_affine(&self) -> AffineBlochMap {
        let q = self.frame;
        AffineBlochMap::new(q.transpose() * self.b_matrix() * q, q.transpose() * self.shift())
    }

    /// χ-matrix of the transition map in the basis `{𝟙, e₁·σ̂, e₂·σ̂, e₃·σ̂}/√2`.
    pub fn transition_chi(&self) -> ChiMatrix {
        let (h, k) = (self.h, self.k);
        let (h2, k2) = (h.norm_sqr(), k.norm_sqr());
        let hkc = h * k.conj();
        let i = C64::new(0.0, 1.0);
        let z = C64::new(0.0, 0.0);
        let re = |x: f64| C64::new(x, 0.0);
        ChiMatrix::new(
            re(1.0 + h2),
            z,
            z,
            i * hkc,
            z,
            re(1.0 - h2),
            hkc,
            z,
            z,
            hkc.conj(),
            re(-k2),
            z,
            -i * hkc.conj(),
            z,
            z,
            re(k2),
        )
    }

    pub fn basis(&self) -> OperatorBasis {
        let r = |i: usize| self.frame.row(i).transpose();
        OperatorBasis::from_frame(&r(0), &r(1), &r(2)).unwrap_or_else(|_| OperatorBasis::pauli())
    }
}

pub fn two_kick_closed_form(
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    t0: f64,
    t1: f64,
) -> Result<QubitChannel> {
    two_kick_closed_form_scheduled(env, geom, &KickSchedule::new(vec![t0, t1])?)
}

pub fn two_kick_closed_form_scheduled(
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
) -> Result<QubitChannel> {
    let p = TwoKickParams::new(env, geom, sched)?;
    let meta = ChannelMeta {
        times: sched.times().to_vec(),
        weights: sched.weights().to_vec(),
        env_id: env.id(),
        axes: geom.axes(sched.times()),
        condition: None,
    };
    Ok(QubitChannel(QubitMap::from_affine(p.channel_affine(), p.basis(), meta)))
}

/// `γ₊₋ = ⟨exp(−2i Σ f_k λ_k O(t_k))⟩` for a synchronised schedule with signs `f`.
pub fn dephasing_gamma(env: &dyn GaussianEnvironment, sched: &KickSchedule, signs: &[f64]) -> Result<C64> {
    let coeffs: Vec<f64> = signs.iter().zip(sched.weights()).map(|(f, w)| 2.0 * f * w).collect();
    gaussian_char(env, sched.times(), &coeffs)
}

/// Pure dephasing about `r(t₀)` for schedules whose kick axes are all (anti)parallel.
pub fn dephasing_channel(
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
) -> Result<QubitChannel> {
    let common = is_commuting_schedule(geom, sched, COMMUTE_TOL).ok_or(Error::NonCommutingSchedule)?;
    let gamma = dephasing_gamma(env, sched, &common.signs)?;
    let meta = ChannelMeta {
        times: sched.times().to_vec(),
        weights: sched.weights().to_vec(),
        env_id: env.id(),
        axes: geom.axes(sched.times()),
        condition: None,
    };
    Ok(QubitChannel(QubitMap::from_affine(
        phase_damping_affine(&common.axis, gamma),
        OperatorBasis::pauli(),
        meta,
    )))
}
