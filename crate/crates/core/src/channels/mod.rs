// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact qubit channels generated by delta kicks, and maps derived from them.
//!
//! A schedule of kicks at `t_0 < … < t_N` produces
//! `E(ρ) = Σ_{s,s′} γ(s, s′) Π_s ρ Π_{s′}†` with `Π_s = P^{s_N}(t_N) ⋯ P^{s_0}(t_0)`
//! and `P^±(t) = (𝟙 ± r(t)·σ̂)/2`. Every map carries both its affine Bloch form
//! and its χ-matrix `ρ ↦ Σ_ab χ_ab B_a ρ B_b†` in a declared operator basis.

mod closed;
mod gamma;
mod nkick;
mod ops;
mod textio;

use std::ops::Deref;

use nalgebra::Vector3;

use crate::pauli::{AffineBlochMap, ChiMatrix, OperatorBasis};

pub use closed::{
    dephasing_channel, dephasing_gamma, single_kick_channel, single_kick_gamma, two_kick_closed_form,
    two_kick_closed_form_scheduled, TwoKickParams,
};
pub use gamma::{gamma_coefficient, gamma_from_moments, GammaCoefficient};
pub use nkick::{build_n_kick_channel, build_n_kick_channel_with, BuildOptions, DEFAULT_MAX_KICKS};
pub use ops::{compose, compose_into_transition, condition_number, invert_channel, transition_map, SINGULAR_TOL};
pub use textio::{parse_map, write_map, MapKind};

/// Tolerance on `|r_N × r_0|` below which the axis-pair operator basis is not used.
pub const PARALLEL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ChannelMeta {
    pub times: Vec<f64>,
    pub weights: Vec<f64>,
    pub env_id: String,
    /// Interaction-picture coupling axes `r(t_k)`.
    pub axes: Vec<Vector3<f64>>,
    /// Condition number of the inverted affine part, set on maps built by inversion.
    pub condition: Option<f64>,
}

/// Affine form, χ-matrix and metadata shared by channels and transition maps.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitMap {
    pub affine: AffineBlochMap,
    pub chi: ChiMatrix,
    pub basis: OperatorBasis,
    pub meta: ChannelMeta,
}

impl QubitMap {
    pub fn from_affine(affine: AffineBlochMap, basis: OperatorBasis, meta: ChannelMeta) -> Self {
        let chi = crate::pauli::chi_from_affine(&affine, &basis);
        Self {
            affine,
            chi,
            basis,
            meta,
        }
    }

    pub fn identity() -> Self {
        Self::from_affine(
            AffineBlochMap::identity(),
            OperatorBasis::pauli(),
            ChannelMeta::default(),
        )
    }

    /// Same map with χ re-expressed in another basis.
    pub fn rebased(&self, basis: &OperatorBasis) -> Self {
        Self::from_affine(self.affine, basis.clone(), self.meta.clone())
    }

    pub fn is_hermitian_chi(&self, tol: f64) -> bool {
        (self.chi - self.chi.adjoint()).iter().all(|z| z.norm() <= tol)
    }

    pub fn trace_defect(&self) -> f64 {
        crate::pauli::trace_preservation_defect(&self.chi, &self.basis)
    }

    /// Largest entrywise difference of the affine parts and of the χ-matrices (after rebasing `other`).
    pub fn max_diff(&self, other: &QubitMap) -> f64 {
        let chi_other = if other.basis == self.basis {
            other.chi
        } else {
            crate::pauli::chi_from_affine(&other.affine, &self.basis)
        };
        let dchi = (self.chi - chi_other).iter().map(|z| z.norm()).fold(0.0, f64::max);
        self.affine.max_abs_diff(&other.affine).max(dchi)
    }
}

impl AsRef<QubitMap> for QubitMap {
    fn as_ref(&self) -> &QubitMap {
        self
    }
}

/// A completely positive, trace-preserving map produced by the environment.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitChannel(pub QubitMap);

/// A trace-preserving map connecting intermediate times; not necessarily CP.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMap(pub QubitMap);

macro_rules! map_newtype {
    ($t:ty) => {
        impl Deref for $t {
            type Target = QubitMap;
            fn deref(&self) -> &QubitMap {
                &self.0
            }
        }
        impl From<QubitMap> for $t {
            fn from(m: QubitMap) -> Self {
                Self(m)
            }
        }
        impl AsRef<QubitMap> for $t {
            fn as_ref(&self) -> &QubitMap {
                &self.0
            }
        }
    };
}

map_newtype!(QubitChannel);
map_newtype!(TransitionMap);

impl From<QubitChannel> for TransitionMap {
    fn from(c: QubitChannel) -> Self {
        Self(c.0)
    }
}

impl QubitChannel {
    pub fn identity() -> Self {
        Self(QubitMap::identity())
    }
}

impl TransitionMap {
    pub fn identity() -> Self {
        Self(QubitMap::identity())
    }
}
