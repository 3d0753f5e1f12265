// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channels::QubitMap;

/// Seed of the fixed pure-state sample used by [`channel_distance`].
pub const DISTANCE_SEED: u64 = 0x005e_ed0f_d157;

fn probe_states(seed: u64) -> Vec<Vector3<f64>> {
    let mut v = vec![
        Vector3::x(),
        -Vector3::x(),
        Vector3::y(),
        -Vector3::y(),
        Vector3::z(),
        -Vector3::z(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let z: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let rho = (1.0 - z * z).max(0.0).sqrt();
        v.push(Vector3::new(rho * phi.cos(), rho * phi.sin(), z));
    }
    v
}

/// Largest output trace distance over the six axis states and 100 fixed random pure states.
pub fn channel_distance(c1: &impl AsRef<QubitMap>, c2: &impl AsRef<QubitMap>) -> f64 {
    channel_distance_seeded(c1, c2, DISTANCE_SEED)
}

/// [`channel_distance`] with a caller-chosen random sample.
pub fn channel_distance_seeded(c1: &impl AsRef<QubitMap>, c2: &impl AsRef<QubitMap>, seed: u64) -> f64 {
    let (m1, m2) = (c1.as_ref().affine, c2.as_ref().affine);
    probe_states(seed)
        .iter()
        .map(|u| 0.5 * ((m1.a - m2.a) * u + (m1.b - m2.b)).norm())
        .fold(0.0, f64::max)
}
