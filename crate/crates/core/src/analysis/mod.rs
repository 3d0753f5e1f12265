// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Scalar diagnostics, fixed points and divisibility verdicts.

mod divisibility;
mod fixed_point;

pub use divisibility::{
    chi_eigenvalues, chi_eigenvalues_two_kick, dephasing_divisibility, divisibility_report, is_cp, is_positive,
    two_kick_divisibility, ClosedFormParams, DivisibilityReport, Positivity, PositivityOptions, CP_TOL,
};
pub use fixed_point::{fixed_point, iterate_round, FixedPointResult};

use crate::channels::single_kick_channel;
use crate::environment::GaussianEnvironment;
use crate::error::{Error, Result};
use crate::kicks::InteractionGeometry;
use crate::pauli::{BlochVector, UNIT_TOL};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LogBase {
    #[default]
    E,
    Two,
}

impl LogBase {
    fn ln_scale(self) -> f64 {
        match self {
            LogBase::E => 1.0,
            LogBase::Two => std::f64::consts::LN_2,
        }
    }
}

/// `tr ρ² = (1 + |u|²)/2`.
pub fn purity(u: &BlochVector) -> f64 {
    0.5 * (1.0 + u.0.norm_squared())
}

/// Von Neumann entropy of `(𝟙 + u·σ̂)/2`, from the eigenvalues `(1 ± |u|)/2`.
pub fn entropy(u: &BlochVector, base: LogBase) -> f64 {
    let n = u.norm().min(1.0);
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.ln() };
    (term(0.5 * (1.0 + n)) + term(0.5 * (1.0 - n))) / base.ln_scale()
}

/// Purity after one unit kick in an even state:
/// `(1 + |u|² + (e^{−4V} − 1)|u × r(t₀)|²)/2`.
pub fn post_kick_purity(
    u: &BlochVector,
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    t0: f64,
) -> Result<f64> {
    if !env.is_even() {
        return Err(Error::NonEvenEnvironment);
    }
    let var = env.covariance(t0, t0)?.re;
    let perp = u.0.cross(&geom.r_of_t(t0)).norm_squared();
    Ok(0.5 * (1.0 + u.0.norm_squared() + ((-4.0 * var).exp() - 1.0) * perp))
}

/// Qubit-environment entanglement generated by one unit kick on a pure qubit
/// state, assuming the environment state is pure; equals the entropy of the
/// reduced output state.
pub fn entanglement_entropy(
    u: &BlochVector,
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    t0: f64,
    base: LogBase,
) -> Result<f64> {
    let n = u.norm();
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(Error::NonPureInput(n));
    }
    let ch = single_kick_channel(env, geom, t0, 1.0)?;
    Ok(entropy(&ch.affine.apply(u), base))
}

/// `½‖ρ₁ − ρ₂‖₁ = |u₁ − u₂|/2`.
pub fn trace_distance(u1: &BlochVector, u2: &BlochVector) -> f64 {
    0.5 * (u1.0 - u2.0).norm()
}
