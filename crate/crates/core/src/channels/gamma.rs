// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use crate::environment::{GaussianEnvironment, KickMoments};
use crate::error::{Error, Result};
use crate::kicks::KickSchedule;
use crate::pauli::C64;

/// `γ(s, s′)` together with the sign vectors it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaCoefficient {
    pub value: C64,
    pub s: Vec<i8>,
    pub sp: Vec<i8>,
}

/// Environment factor multiplying `Π_s ρ Π_{s′}†`.
///
/// `γ = exp(i Σ (s′_i − s_i) μ_i − ½ Σ (s′_i − s_i)² V_i
///         − Σ_i (s_i − s′_i) Σ_{j<i} [s_j K_ij − s′_j K_ji])`
/// with weight-scaled means `μ`, variances `V` and centred covariances `K`.
pub fn gamma_coefficient(
    env: &dyn GaussianEnvironment,
    sched: &KickSchedule,
    s: &[i8],
    sp: &[i8],
) -> Result<GammaCoefficient> {
    let n = sched.len();
    for v in [s, sp] {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    let moments = KickMoments::new(env, sched.times(), sched.weights())?;
    let sf: Vec<f64> = s.iter().map(|&x| f64::from(x.signum())).collect();
    let spf: Vec<f64> = sp.iter().map(|&x| f64::from(x.signum())).collect();
    Ok(GammaCoefficient {
        value: gamma_from_moments(&moments, &sf, &spf),
        s: s.to_vec(),
        sp: sp.to_vec(),
    })
}

pub fn gamma_from_moments(m: &KickMoments, s: &[f64], sp: &[f64]) -> C64 {
    let mut expo = C64::new(0.0, 0.0);
    for i in 0..m.len() {
        let d = s[i] - sp[i];
        if d == 0.0 {
            continue;
        }
        expo += C64::new(-0.5 * d * d * m.variance(i), -d * m.mean[i]);
        let mut inner = C64::new(0.0, 0.0);
        for j in 0..i {
            inner += m.cov[(i, j)] * s[j] - m.cov[(j, i)] * sp[j];
        }
        expo -= inner * d;
    }
    if expo == C64::new(0.0, 0.0) {
        return C64::new(1.0, 0.0);
    }
    expo.exp()
}
