// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::Matrix3;

use crate::channels::QubitMap;
use crate::error::{Error, Result};
use crate::pauli::BlochVector;

const SINGULAR: f64 = 1e-12;
const RESIDUAL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPointResult {
    pub u_f: BlochVector,
    /// Largest modulus among the eigenvalues of `A`.
    pub spectral_radius: f64,
    /// `|A u_f + b − u_f| ≤ 1e-10`.
    pub converged: bool,
    /// False when `𝟙 − A` is singular; `u_f` is then the minimum-norm member of the fixed family.
    pub unique: bool,
}

/// Solves `(𝟙 − A) u_f = b` for one round of kicks.
pub fn fixed_point(round: &impl AsRef<QubitMap>) -> Result<FixedPointResult> {
    let m = round.as_ref().affine;
    let spectral_radius = m.a.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lhs = Matrix3::identity() - m.a;
    let svd = lhs.svd(true, true);
    let smin = svd.singular_values.min();
    let unique = smin > SINGULAR * svd.singular_values.max().max(1.0);
    let u = if unique {
        lhs.lu().solve(&m.b).ok_or(Error::NonContractive)?
    } else {
        svd.solve(&m.b, SINGULAR).map_err(|_| Error::NonContractive)?
    };
    let residual = (m.a * u + m.b - u).norm();
    if !unique && residual > RESIDUAL {
        return Err(Error::NonContractive);
    }
    Ok(FixedPointResult {
        u_f: BlochVector(u),
        spectral_radius,
        converged: residual <= RESIDUAL,
        unique,
    })
}

/// Applies the round map `n` times starting from `u0`.
pub fn iterate_round(round: &impl AsRef<QubitMap>, u0: &BlochVector, n: usize) -> BlochVector {
    let m = round.as_ref().affine;
    (0..n).fold(*u0, |u, _| m.apply(&u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{two_kick_closed_form, QubitChannel};
    use crate::environment::{SingleModeThermal, WhiteKickKernel};
    use crate::kicks::InteractionGeometry;
    use nalgebra::Vector3;

    #[test]
    fn unital_contractive_has_origin() {
        let env = WhiteKickKernel::new(0.3).unwrap();
        let g = InteractionGeometry::new(Vector3::z(), Vector3::x(), 1.0).unwrap();
        let ch = two_kick_closed_form(&env, &g, 0.0, 1.0).unwrap();
        let fp = fixed_point(&ch).unwrap();
        assert!(fp.u_f.norm() < 1e-12);
        assert!(fp.unique && fp.converged && fp.spectral_radius < 1.0);
    }

    #[test]
    fn non_unital_two_kick() {
        let env = SingleModeThermal::new(1.0, 0.2).unwrap();
        let g = InteractionGeometry::new(Vector3::z(), Vector3::x(), 1.0).unwrap();
        let ch = two_kick_closed_form(&env, &g, 0.0, 0.9).unwrap();
        let fp = fixed_point(&ch).unwrap();
        assert!(fp.u_f.norm() > 1e-3);
        let it = iterate_round(&ch, &BlochVector::new(0.3, -0.2, 0.5), 1000);
        assert!((it.0 - fp.u_f.0).norm() < 1e-8);
        let axis = g.r_of_t(0.9).cross(&g.r_of_t(0.0)).normalize();
        assert!(fp.u_f.0.cross(&axis).norm() < 1e-10 * fp.u_f.norm().max(1.0));
    }

    #[test]
    fn identity_is_not_unique() {
        let fp = fixed_point(&QubitChannel::identity()).unwrap();
        assert!(!fp.unique);
        assert_eq!(fp.u_f.norm(), 0.0);
    }

    #[test]
    fn inconsistent_family_is_rejected() {
        let mut m = QubitChannel::identity();
        m.0.affine.b = Vector3::new(0.0, 0.0, 0.1);
        assert!(matches!(fixed_point(&m), Err(Error::NonContractive)));
    }
}
