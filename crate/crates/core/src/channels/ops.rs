// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::Matrix3;

use super::{ChannelMeta, QubitChannel, QubitMap, TransitionMap};
use crate::error::{Error, Result};
use crate::pauli::AffineBlochMap;

/// Smallest singular value of `A` (relative to the largest) accepted by [`invert_channel`].
pub const SINGULAR_TOL: f64 = 1e-12;

fn composed(later: &QubitMap, earlier: &QubitMap) -> QubitMap {
    let meta = ChannelMeta {
        times: later.meta.times.clone(),
        weights: later.meta.weights.clone(),
        env_id: later.meta.env_id.clone(),
        axes: later.meta.axes.clone(),
        condition: None,
    };
    QubitMap::from_affine(later.affine.after(&earlier.affine), later.basis.clone(), meta)
}

/// `later ∘ earlier`, with χ expressed in the basis of `later`.
///
/// Metadata is taken from `later`; callers composing channels on disjoint
/// schedules should overwrite it.
pub fn compose<M>(later: &M, earlier: &M) -> M
where
    M: AsRef<QubitMap> + From<QubitMap>,
{
    M::from(composed(later.as_ref(), earlier.as_ref()))
}

/// Composition of arbitrary maps, typed as a transition map.
pub fn compose_into_transition(later: &impl AsRef<QubitMap>, earlier: &impl AsRef<QubitMap>) -> TransitionMap {
    TransitionMap(composed(later.as_ref(), earlier.as_ref()))
}

/// Ratio of largest to smallest singular value; infinite for singular matrices.
pub fn condition_number(a: &Matrix3<f64>) -> f64 {
    let sv = a.singular_values();
    let (max, min) = (sv.max(), sv.min());
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// `(A⁻¹, −A⁻¹ b)`; generally not completely positive.
pub fn invert_channel(ch: &impl AsRef<QubitMap>) -> Result<TransitionMap> {
    let m = ch.as_ref();
    let sv = m.affine.a.singular_values();
    let (max, min) = (sv.max(), sv.min());
    if !(min > SINGULAR_TOL * max.max(1.0)) {
        return Err(Error::SingularChannel(min));
    }
    let inv = m.affine.a.try_inverse().ok_or(Error::SingularChannel(min))?;
    let affine = AffineBlochMap::new(inv, -(inv * m.affine.b));
    let mut meta = m.meta.clone();
    meta.condition = Some(max / min);
    Ok(TransitionMap(QubitMap::from_affine(affine, m.basis.clone(), meta)))
}

/// `Θ = longer ∘ shorter⁻¹`, so that `Θ ∘ shorter = longer`.
pub fn transition_map(longer: &QubitChannel, shorter: &QubitChannel) -> Result<TransitionMap> {
    let inv = invert_channel(shorter)?;
    let mut theta = composed(&longer.0, &inv.0);
    theta.meta.condition = inv.meta.condition;
    Ok(TransitionMap(theta))
}
