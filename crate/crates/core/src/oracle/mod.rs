// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference channels on a truncated single-mode Fock space.
//!
//! The environment is one oscillator with `O(t) = (a e^{−iωt} + a† e^{iωt})/√2`,
//! prepared in a displaced Gibbs state. Joint unitaries are built from
//! Hermitian eigendecompositions and the qubit state is recovered by an exact
//! partial trace. Nothing here reuses the closed-form channel code.

mod distance;
mod fock;
mod nascent;

pub use distance::{channel_distance, channel_distance_seeded, DISTANCE_SEED};
pub use fock::{kick_unitary, quadrature_heisenberg, qubit_axis, FockSpec, JointOperator, Quadrature, TAIL_TOL};
pub use nascent::{nascent_delta_channel, nascent_delta_study, NascentStudy, PulseShape};

use nalgebra::{DMatrix, Matrix3, Vector3};

use crate::channels::{ChannelMeta, QubitChannel, QubitMap, PARALLEL_TOL};
use crate::error::{Error, Result};
use crate::kicks::{InteractionGeometry, KickSchedule};
use crate::pauli::{pauli, AffineBlochMap, Complex2x2, OperatorBasis, C64};

/// Largest affine change accepted between `dim` and `dim + DIM_STEP`.
pub const CONVERGENCE_TOL: f64 = 1e-8;
pub const DIM_STEP: usize = 10;

/// Oracle channel together with its truncation diagnostics.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub channel: QubitChannel,
    pub dim: usize,
    /// Largest entrywise change of the affine map under `dim → dim + 10`.
    pub change: f64,
    /// Environment tail mass at `dim`.
    pub tail: f64,
}

/// Evolves `ρ_Q ⊗ ρ_E` through `U` and traces out the oscillator.
pub(crate) fn reduced_output(u: &DMatrix<C64>, rho_q: &Complex2x2, rho_e: &DMatrix<C64>) -> Complex2x2 {
    let d = rho_e.nrows();
    let mut joint = DMatrix::<C64>::zeros(2 * d, 2 * d);
    for p in 0..2 {
        for q in 0..2 {
            let c = rho_q[(p, q)];
            if c != C64::new(0.0, 0.0) {
                joint.view_mut((p * d, q * d), (d, d)).copy_from(&(rho_e * c));
            }
        }
    }
    let out = u * joint * u.adjoint();
    let mut red = Complex2x2::zeros();
    for p in 0..2 {
        for q in 0..2 {
            red[(p, q)] = (0..d).map(|n| out[(p * d + n, q * d + n)]).sum();
        }
    }
    red
}

/// Affine map from the outputs on `𝟙/2` and `(𝟙 + σ_i)/2`.
pub(crate) fn affine_from_joint(u: &DMatrix<C64>, rho_e: &DMatrix<C64>) -> AffineBlochMap {
    let half = C64::new(0.5, 0.0);
    let bloch = |x: &Complex2x2| Vector3::from_fn(|i, _| (pauli(i) * x).trace().re);
    let b = bloch(&reduced_output(u, &(crate::pauli::identity() * half), rho_e));
    let mut a = Matrix3::zeros();
    for i in 0..3 {
        let rho = (crate::pauli::identity() + pauli(i)) * half;
        let col = bloch(&reduced_output(u, &rho, rho_e)) - b;
        a.set_column(i, &col);
    }
    AffineBlochMap::new(a, b)
}

pub(crate) fn wrap_channel(
    affine: AffineBlochMap,
    spec: &FockSpec,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
) -> QubitChannel {
    let axes: Vec<Vector3<f64>> = sched.times().iter().map(|&t| qubit_axis(geom, t)).collect();
    let n = axes.len();
    let basis = OperatorBasis::from_axes(&axes[n - 1], &axes[0], PARALLEL_TOL).unwrap_or_else(OperatorBasis::pauli);
    let meta = ChannelMeta {
        times: sched.times().to_vec(),
        weights: sched.weights().to_vec(),
        env_id: format!("fock({})", spec.env_id()),
        axes,
        condition: None,
    };
    QubitChannel(QubitMap::from_affine(affine, basis, meta))
}

/// Product of delta-kick unitaries at fixed truncation.
fn delta_affine(spec: &FockSpec, geom: &InteractionGeometry, sched: &KickSchedule) -> Result<(AffineBlochMap, f64)> {
    let (rho_e, tail) = spec.state();
    let quad = Quadrature::new(spec);
    let d = spec.dim;
    let mut u = DMatrix::<C64>::identity(2 * d, 2 * d);
    for (&t, &w) in sched.times().iter().zip(sched.weights()) {
        if w == 0.0 {
            continue;
        }
        let k = quad.kick(&qubit_axis(geom, t), t, w);
        u = k.0 * u;
    }
    Ok((affine_from_joint(&u, &rho_e), tail))
}

/// Oracle channel at `spec.dim`, checked against `spec.dim + 10`.
pub fn oracle_channel(spec: &FockSpec, geom: &InteractionGeometry, sched: &KickSchedule) -> Result<OracleResult> {
    let (a0, tail) = delta_affine(spec, geom, sched)?;
    let (a1, _) = delta_affine(&spec.with_dim(spec.dim + DIM_STEP), geom, sched)?;
    let change = a0.max_abs_diff(&a1);
    if change > CONVERGENCE_TOL || tail > TAIL_TOL {
        return Err(Error::TruncationNotConverged {
            dim: spec.dim,
            change,
            tail,
        });
    }
    Ok(OracleResult {
        channel: wrap_channel(a0, spec, geom, sched),
        dim: spec.dim,
        change,
        tail,
    })
}

/// Grows the truncation from `20 + 10 n̄` in steps of 10 until [`oracle_channel`] converges.
pub fn oracle_channel_adaptive(
    spec: &FockSpec,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
    max_dim: usize,
) -> Result<OracleResult> {
    let mut dim = spec.dim.max(FockSpec::starting_dim(spec.nbar));
    loop {
        let trial = spec.with_dim(dim);
        let (a0, tail) = delta_affine(&trial, geom, sched)?;
        let (a1, _) = delta_affine(&trial.with_dim(dim + DIM_STEP), geom, sched)?;
        let change = a0.max_abs_diff(&a1);
        if change <= CONVERGENCE_TOL && tail <= TAIL_TOL {
            return Ok(OracleResult {
                channel: wrap_channel(a0, &trial, geom, sched),
                dim,
                change,
                tail,
            });
        }
        if dim + DIM_STEP > max_dim {
            return Err(Error::TruncationNotConverged { dim, change, tail });
        }
        dim += DIM_STEP;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{dephasing_channel, single_kick_channel, two_kick_closed_form};
    use crate::environment::SingleModeThermal;
    use std::f64::consts::PI;

    #[test]
    fn single_kick_vacuum_matches() {
        let geom = InteractionGeometry::new(Vector3::z(), Vector3::x(), 1.0).unwrap();
        let spec = FockSpec::new(30, 1.0, 0.0, C64::new(0.0, 0.0)).unwrap();
        let sched = KickSchedule::new(vec![0.0]).unwrap();
        let res = oracle_channel(&spec, &geom, &sched).unwrap();
        let env = SingleModeThermal::vacuum(1.0).unwrap();
        let ana = single_kick_channel(&env, &geom, 0.0, 1.0).unwrap();
        assert!(channel_distance(&res.channel, &ana) < 1e-8);
    }

    #[test]
    fn two_kick_thermal_matches() {
        let geom = InteractionGeometry::new(Vector3::new(0.0, 0.6, 0.8), Vector3::x(), 1.3).unwrap();
        let spec = FockSpec::new(20, 0.9, 1.0, C64::new(0.0, 0.0)).unwrap();
        let sched = KickSchedule::new(vec![0.2, 1.0]).unwrap();
        let res = oracle_channel_adaptive(&spec, &geom, &sched, 200).unwrap();
        let env = SingleModeThermal::new(0.9, 1.0).unwrap();
        let ana = two_kick_closed_form(&env, &geom, 0.2, 1.0).unwrap();
        assert!(
            channel_distance(&res.channel, &ana) < 1e-8,
            "{}",
            channel_distance(&res.channel, &ana)
        );
    }

    #[test]
    fn synchronised_coherent_matches_dephasing() {
        let geom = InteractionGeometry::new(Vector3::z(), Vector3::x(), 1.0).unwrap();
        let alpha0 = C64::new(0.4, -0.2);
        let spec = FockSpec::new(30, 1.0, 0.0, alpha0).unwrap();
        let sched = KickSchedule::new(vec![0.3, 0.3 + PI, 0.3 + 2.0 * PI]).unwrap();
        let res = oracle_channel_adaptive(&spec, &geom, &sched, 200).unwrap();
        let env = SingleModeThermal::vacuum(1.0).unwrap().with_displacement(alpha0);
        let ana = dephasing_channel(&env, &geom, &sched).unwrap();
        assert!(channel_distance(&res.channel, &ana) < 1e-8);
    }

    #[test]
    fn coarse_truncation_is_reported() {
        let geom = InteractionGeometry::new(Vector3::z(), Vector3::x(), 1.0).unwrap();
        let spec = FockSpec::new(6, 1.0, 2.0, C64::new(0.0, 0.0)).unwrap();
        let sched = KickSchedule::new(vec![0.0]).unwrap();
        assert!(matches!(
            oracle_channel(&spec, &geom, &sched),
            Err(Error::TruncationNotConverged { .. })
        ));
    }
}
