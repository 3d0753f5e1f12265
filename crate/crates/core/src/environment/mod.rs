// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Gaussian environment models.
//!
//! Channel formulas consume the environment only through the mean
//! `⟨O(t)⟩` and the centred two-point function
//! `K(t, t′) = ⟨(O(t) − ⟨O(t)⟩)(O(t′) − ⟨O(t′)⟩)⟩`. Its real part is half the
//! anticommutator, its imaginary part carries the state-independent
//! commutator `C(t, t′) = [O(t), O(t′)] = 2i Im K(t, t′)`.

mod models;
mod tabulated;

pub use models::{MeanFunction, MeanShifted, SingleModeThermal, WhiteKickKernel};
pub use tabulated::TabulatedKernel;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::pauli::C64;

/// Gram-matrix PSD tolerance on eigenvalues.
pub const PSD_TOL: f64 = 1e-10;

pub trait GaussianEnvironment: Send + Sync {
    /// `⟨O(t)⟩`.
    fn mean(&self, t: f64) -> Result<f64>;
    /// Centred `⟨O(t) O(t′)⟩`.
    fn covariance(&self, t: f64, tp: f64) -> Result<C64>;
    /// True when the mean vanishes identically.
    fn is_even(&self) -> bool;
    /// Short human-readable identifier, recorded in channel metadata.
    fn id(&self) -> String;
}

impl<E: GaussianEnvironment + ?Sized> GaussianEnvironment for Box<E> {
    fn mean(&self, t: f64) -> Result<f64> {
        (**self).mean(t)
    }

    fn covariance(&self, t: f64, tp: f64) -> Result<C64> {
        (**self).covariance(t, tp)
    }

    fn is_even(&self) -> bool {
        (**self).is_even()
    }

    fn id(&self) -> String {
        (**self).id()
    }
}

pub fn covariance(env: &dyn GaussianEnvironment, t: f64, tp: f64) -> Result<C64> {
    env.covariance(t, tp)
}

/// `C(t, t′) = 2i Im K(t, t′)`; purely imaginary and antisymmetric.
pub fn commutator_c(env: &dyn GaussianEnvironment, t: f64, tp: f64) -> Result<C64> {
    let k = env.covariance(t, tp)?;
    Ok(C64::new(0.0, 2.0 * k.im))
}

/// `⟨exp(−i Σ_k c_k O(t_k))⟩ = exp(−i Σ c_k μ_k − ½ Σ_jk c_j c_k Re K(t_j, t_k))`.
pub fn gaussian_char(env: &dyn GaussianEnvironment, times: &[f64], coeffs: &[f64]) -> Result<C64> {
    if times.len() != coeffs.len() {
        return Err(Error::LengthMismatch {
            expected: times.len(),
            got: coeffs.len(),
        });
    }
    let mut phase = 0.0;
    let mut quad = 0.0;
    for (j, (&tj, &cj)) in times.iter().zip(coeffs).enumerate() {
        if cj == 0.0 {
            continue;
        }
        phase += cj * env.mean(tj)?;
        quad += cj * cj * env.covariance(tj, tj)?.re;
        for (&tk, &ck) in times[..j].iter().zip(coeffs) {
            if ck != 0.0 {
                quad += 2.0 * cj * ck * env.covariance(tj, tk)?.re;
            }
        }
    }
    Ok(C64::new(-0.5 * quad, -phase).exp())
}

/// Expectation of the ordered product `e^{−i c₁ O(τ₁)} e^{−i c₂ O(τ₂)} ⋯` (leftmost first).
///
/// Repeated application of `e^{−iA} e^{−iB} = e^{−[A,B]/2} e^{−i(A+B)}` gives
/// `exp(−i Σ c_k μ_k − ½ Σ_k c_k² K_kk − Σ_{k<l} c_k c_l K(τ_k, τ_l))`.
pub fn ordered_product_expectation(env: &dyn GaussianEnvironment, factors: &[(f64, f64)]) -> Result<C64> {
    let mut expo = C64::new(0.0, 0.0);
    for (k, &(tk, ck)) in factors.iter().enumerate() {
        expo += C64::new(-0.5 * ck * ck * env.covariance(tk, tk)?.re, -ck * env.mean(tk)?);
        for &(tl, cl) in &factors[k + 1..] {
            expo -= env.covariance(tk, tl)? * (ck * cl);
        }
    }
    Ok(expo.exp())
}

/// `M_ij = K(t_i, t_j)`.
pub fn gram_matrix(env: &dyn GaussianEnvironment, times: &[f64]) -> Result<DMatrix<C64>> {
    let n = times.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = env.covariance(times[i], times[j])?;
        }
    }
    Ok(m)
}

/// Checks Hermiticity, real non-negative diagonal and eigenvalues `≥ −tol`.
pub fn validate_gram(m: &DMatrix<C64>, tol: f64) -> Result<()> {
    let n = m.nrows();
    for i in 0..n {
        let d = m[(i, i)];
        if d.im.abs() > tol || d.re < -tol {
            return Err(Error::InvalidEnvironment(format!("diagonal entry {i} is {d}")));
        }
        for j in 0..i {
            let dev = (m[(i, j)] - m[(j, i)].conj()).norm();
            if dev > tol {
                return Err(Error::InvalidEnvironment(format!(
                    "covariance not Hermitian at ({i},{j}), deviation {dev:.3e}"
                )));
            }
        }
    }
    if n == 0 {
        return Ok(());
    }
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let min = herm.symmetric_eigenvalues().min();
    if min < -tol {
        return Err(Error::InvalidEnvironment(format!(
            "covariance has negative eigenvalue {min:.3e}"
        )));
    }
    Ok(())
}

/// Means and centred covariances at the kick times, each scaled by the kick weights.
#[derive(Clone, Debug)]
pub struct KickMoments {
    pub mean: DVector<f64>,
    pub cov: DMatrix<C64>,
}

impl KickMoments {
    pub fn new(env: &dyn GaussianEnvironment, times: &[f64], weights: &[f64]) -> Result<Self> {
        if times.len() != weights.len() {
            return Err(Error::LengthMismatch {
                expected: times.len(),
                got: weights.len(),
            });
        }
        let n = times.len();
        let mut mean = DVector::zeros(n);
        let mut cov = DMatrix::zeros(n, n);
        for i in 0..n {
            mean[i] = weights[i] * env.mean(times[i])?;
            for j in 0..n {
                cov[(i, j)] = env.covariance(times[i], times[j])? * (weights[i] * weights[j]);
            }
        }
        Ok(Self { mean, cov })
    }

    pub fn len(&self) -> usize {
        self.mean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mean.is_empty()
    }

    pub fn variance(&self, i: usize) -> f64 {
        self.cov[(i, i)].re
    }
}
