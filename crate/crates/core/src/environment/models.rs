// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::SQRT_2;

use super::GaussianEnvironment;
use crate::error::{Error, Result};
use crate::pauli::C64;

/// One harmonic mode of frequency `ω`, coupled through the quadrature
/// `O(t) = (a e^{−iωt} + a† e^{iωt})/√2`, in a (possibly displaced) thermal state.
///
/// With this normalisation `⟨O²⟩ = ½` in the vacuum and
/// `K(t, t′) = ½[(2n̄+1) cos ω(t−t′) − i sin ω(t−t′)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleModeThermal {
    pub omega: f64,
    pub nbar: f64,
    pub displacement: C64,
}

impl SingleModeThermal {
    pub fn new(omega: f64, nbar: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidEnvironment(format!(
                "mode frequency must be positive, got {omega}"
            )));
        }
        if !(nbar >= 0.0 && nbar.is_finite()) {
            return Err(Error::InvalidEnvironment(format!(
                "mean occupation must be >= 0, got {nbar}"
            )));
        }
        Ok(Self {
            omega,
            nbar,
            displacement: C64::new(0.0, 0.0),
        })
    }

    pub fn vacuum(omega: f64) -> Result<Self> {
        Self::new(omega, 0.0)
    }

    /// Gibbs state at inverse temperature `β`: `n̄ = 1/(e^{βω} − 1)`.
    pub fn from_beta(omega: f64, beta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::InvalidEnvironment(format!(
                "inverse temperature must be positive, got {beta}"
            )));
        }
        Self::new(omega, 1.0 / (beta * omega).exp_m1())
    }

    pub fn with_displacement(mut self, alpha0: C64) -> Self {
        self.displacement = alpha0;
        self
    }
}

impl GaussianEnvironment for SingleModeThermal {
    fn mean(&self, t: f64) -> Result<f64> {
        Ok(SQRT_2 * (self.displacement * C64::new(0.0, -self.omega * t).exp()).re)
    }

    fn covariance(&self, t: f64, tp: f64) -> Result<C64> {
        let phase = self.omega * (t - tp);
        Ok(C64::new(
            0.5 * (2.0 * self.nbar + 1.0) * phase.cos(),
            -0.5 * phase.sin(),
        ))
    }

    fn is_even(&self) -> bool {
        self.displacement == C64::new(0.0, 0.0)
    }

    fn id(&self) -> String {
        format!(
            "thermal(omega={},nbar={},alpha0={}{:+}i)",
            self.omega, self.nbar, self.displacement.re, self.displacement.im
        )
    }
}

/// Kicks that see mutually uncorrelated environment observables:
/// `K(t, t′) = v` if `t = t′`, else `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct WhiteKickKernel {
    pub variance: f64,
}

impl WhiteKickKernel {
    pub fn new(variance: f64) -> Result<Self> {
        if !(variance >= 0.0 && variance.is_finite()) {
            return Err(Error::InvalidEnvironment(format!(
                "variance must be >= 0, got {variance}"
            )));
        }
        Ok(Self { variance })
    }
}

impl GaussianEnvironment for WhiteKickKernel {
    fn mean(&self, _t: f64) -> Result<f64> {
        Ok(0.0)
    }

    fn covariance(&self, t: f64, tp: f64) -> Result<C64> {
        Ok(if t == tp {
            C64::new(self.variance, 0.0)
        } else {
            C64::new(0.0, 0.0)
        })
    }

    fn is_even(&self) -> bool {
        true
    }

    fn id(&self) -> String {
        format!("white(variance={})", self.variance)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeanFunction {
    Constant(f64),
    /// `amplitude · cos(frequency · t + phase)`.
    Cosine {
        amplitude: f64,
        frequency: f64,
        phase: f64,
    },
}

impl MeanFunction {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            MeanFunction::Constant(c) => c,
            MeanFunction::Cosine {
                amplitude,
                frequency,
                phase,
            } => amplitude * (frequency * t + phase).cos(),
        }
    }

    fn is_zero(&self) -> bool {
        match *self {
            MeanFunction::Constant(c) => c == 0.0,
            MeanFunction::Cosine { amplitude, .. } => amplitude == 0.0,
        }
    }
}

/// Adds a mean function to another environment; centred covariances are unchanged.
pub struct MeanShifted<E> {
    pub base: E,
    pub shift: MeanFunction,
}

impl<E: GaussianEnvironment> MeanShifted<E> {
    pub fn new(base: E, shift: MeanFunction) -> Self {
        Self { base, shift }
    }
}

impl<E: GaussianEnvironment> GaussianEnvironment for MeanShifted<E> {
    fn mean(&self, t: f64) -> Result<f64> {
        Ok(self.base.mean(t)? + self.shift.eval(t))
    }

    fn covariance(&self, t: f64, tp: f64) -> Result<C64> {
        self.base.covariance(t, tp)
    }

    fn is_even(&self) -> bool {
        self.base.is_even() && self.shift.is_zero()
    }

    fn id(&self) -> String {
        format!("shifted({},{:?})", self.base.id(), self.shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displaced_mean() {
        let a0 = C64::from_polar(0.7, 0.4);
        let env = SingleModeThermal::new(2.0, 0.0).unwrap().with_displacement(a0);
        for t in [0.0, 0.3, 1.7] {
            let want = SQRT_2 * 0.7 * (2.0 * t - 0.4f64).cos();
            assert!((env.mean(t).unwrap() - want).abs() < 1e-14);
        }
        assert!(!env.is_even());
    }

    #[test]
    fn beta_conversion() {
        let env = SingleModeThermal::from_beta(1.0, 2.0f64.ln()).unwrap();
        assert!((env.nbar - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SingleModeThermal::new(0.0, 0.0).is_err());
        assert!(SingleModeThermal::new(1.0, -0.1).is_err());
        assert!(WhiteKickKernel::new(-1.0).is_err());
    }
}
