// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::Vector3;
use rayon::prelude::*;

use super::gamma::gamma_from_moments;
use super::{ChannelMeta, QubitChannel, QubitMap, PARALLEL_TOL};
use crate::environment::{GaussianEnvironment, KickMoments};
use crate::error::{Error, Result};
use crate::kicks::{InteractionGeometry, KickSchedule};
use crate::pauli::{affine_from_chi, projector_unchecked, ChiMatrix, Complex2x2, OperatorBasis, C64};

/// Largest number of kicks enumerated without an explicit budget.
pub const DEFAULT_MAX_KICKS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Upper bound on `N + 1`; the sum has `4^{N+1}` terms.
    pub max_kicks: usize,
    pub parallel: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            max_kicks: DEFAULT_MAX_KICKS,
            parallel: false,
        }
    }
}

pub fn build_n_kick_channel(
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
) -> Result<QubitChannel> {
    build_n_kick_channel_with(env, geom, sched, BuildOptions::default())
}

/// Full enumeration over sign vectors.
///
/// Sign vector `s` is indexed by an integer whose bit `i` is set when `s_i = −1`.
/// The outer loop runs over `s`, the inner over `s′`, both in increasing order.
/// Each `s` contributes `c(s) ⊗ Σ_{s′} γ(s, s′) c(s′)*` with `c_a(s) = tr(B_a† Π_s)`;
/// contributions are summed in index order, so serial and parallel runs agree bit for bit.
pub fn build_n_kick_channel_with(
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
    opts: BuildOptions,
) -> Result<QubitChannel> {
    let n = sched.len();
    if n > opts.max_kicks {
        return Err(Error::TooManyKicks {
            kicks: n,
            max: opts.max_kicks,
        });
    }
    let axes = geom.axes(sched.times());
    let basis = OperatorBasis::from_axes(&axes[n - 1], &axes[0], PARALLEL_TOL).unwrap_or_else(OperatorBasis::pauli);
    let moments = KickMoments::new(env, sched.times(), sched.weights())?;

    let count = 1usize << n;
    let signs: Vec<Vec<f64>> = (0..count)
        .map(|idx| (0..n).map(|i| if idx >> i & 1 == 1 { -1.0 } else { 1.0 }).collect())
        .collect();
    let coeffs: Vec<[C64; 4]> = signs
        .iter()
        .map(|s| basis.coefficients(&projector_string(&axes, s)))
        .collect();

    let term = |si: usize| -> ChiMatrix {
        let mut row = [C64::new(0.0, 0.0); 4];
        for (sp, cp) in signs.iter().zip(&coeffs) {
            let g = gamma_from_moments(&moments, &signs[si], sp);
            for b in 0..4 {
                row[b] += g * cp[b].conj();
            }
        }
        let c = &coeffs[si];
        ChiMatrix::from_fn(|a, b| c[a] * row[b])
    };
    let partials: Vec<ChiMatrix> = if opts.parallel {
        (0..count).into_par_iter().map(term).collect()
    } else {
        (0..count).map(term).collect()
    };
    let chi = partials.iter().fold(ChiMatrix::zeros(), |acc, p| acc + p);

    let affine = affine_from_chi(&chi, &basis);
    let meta = ChannelMeta {
        times: sched.times().to_vec(),
        weights: sched.weights().to_vec(),
        env_id: env.id(),
        axes,
        condition: None,
    };
    Ok(QubitChannel(QubitMap {
        affine,
        chi,
        basis,
        meta,
    }))
}

/// `Π_s = P^{s_N}(t_N) ⋯ P^{s_0}(t_0)`.
fn projector_string(axes: &[Vector3<f64>], s: &[f64]) -> Complex2x2 {
    let mut prod = crate::pauli::identity();
    for (r, &si) in axes.iter().zip(s) {
        prod = projector_unchecked(r, si) * prod;
    }
    prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::SingleModeThermal;

    fn setup() -> (SingleModeThermal, InteractionGeometry, KickSchedule) {
        let env = SingleModeThermal::new(1.1, 0.4)
            .unwrap()
            .with_displacement(C64::new(0.2, -0.3));
        let h = Vector3::new(0.3, -0.5, 0.8).normalize();
        let a = Vector3::new(0.9, 0.1, -0.2).normalize();
        let geom = InteractionGeometry::new(h, a, 1.7).unwrap();
        let sched = KickSchedule::with_weights(vec![0.0, 0.5, 0.9, 1.6], vec![1.0, 0.7, 1.3, 0.9]).unwrap();
        (env, geom, sched)
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let (env, geom, sched) = setup();
        let serial = build_n_kick_channel(&env, &geom, &sched).unwrap();
        let par = build_n_kick_channel_with(
            &env,
            &geom,
            &sched,
            BuildOptions {
                parallel: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(serial, par);
    }

    #[test]
    fn channel_invariants() {
        let (env, geom, sched) = setup();
        let ch = build_n_kick_channel(&env, &geom, &sched).unwrap();
        assert!(ch.is_hermitian_chi(1e-12));
        assert!(ch.trace_defect() < 1e-12);
        let min = ch.chi.symmetric_eigenvalues().min();
        assert!(min > -1e-10, "min eigenvalue {min}");
    }

    #[test]
    fn zero_weights_give_identity() {
        let (env, geom, _) = setup();
        let sched = KickSchedule::with_weights(vec![0.0, 1.0], vec![0.0, 0.0]).unwrap();
        let ch = build_n_kick_channel(&env, &geom, &sched).unwrap();
        assert!(ch.affine.max_abs_diff(&crate::pauli::AffineBlochMap::identity()) < 1e-15);
    }

    #[test]
    fn budget_enforced() {
        let (env, geom, _) = setup();
        let sched = KickSchedule::new((0..11).map(f64::from).collect()).unwrap();
        assert!(matches!(
            build_n_kick_channel(&env, &geom, &sched),
            Err(Error::TooManyKicks { kicks: 11, max: 10 })
        ));
    }
}
