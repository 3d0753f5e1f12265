// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector, Vector3};

use crate::environment::SingleModeThermal;
use crate::error::{Error, Result};
use crate::kicks::InteractionGeometry;
use crate::pauli::{pauli, sigma_dot, Complex2x2, C64};

/// Largest environment population allowed outside the truncation.
pub const TAIL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct FockSpec {
    pub dim: usize,
    pub omega: f64,
    pub nbar: f64,
    pub displacement: C64,
}

impl FockSpec {
    pub fn new(dim: usize, omega: f64, nbar: f64, displacement: C64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidEnvironment(format!(
                "Fock dimension must be >= 2, got {dim}"
            )));
        }
        SingleModeThermal::new(omega, nbar)?;
        Ok(Self {
            dim,
            omega,
            nbar,
            displacement,
        })
    }

    pub fn from_thermal(env: &SingleModeThermal, dim: usize) -> Result<Self> {
        Self::new(dim, env.omega, env.nbar, env.displacement)
    }

    pub fn with_dim(&self, dim: usize) -> Self {
        Self { dim, ..self.clone() }
    }

    /// `20 + 10 n̄`, rounded up to an integer.
    pub fn starting_dim(nbar: f64) -> usize {
        20 + (10.0 * nbar).ceil() as usize
    }

    pub fn env_id(&self) -> String {
        format!(
            "dim={},omega={},nbar={},alpha0={}{:+}i",
            self.dim, self.omega, self.nbar, self.displacement.re, self.displacement.im
        )
    }

    /// Truncated, renormalised state `D(α₀) ρ_th D(α₀)†` and its tail mass: the larger of
    /// the discarded trace and the population of the two highest levels.
    pub fn state(&self) -> (DMatrix<C64>, f64) {
        let d = self.dim;
        let q = if self.nbar == 0.0 {
            0.0
        } else {
            self.nbar / (self.nbar + 1.0)
        };
        let pops: Vec<f64> = (0..d).map(|n| (1.0 - q) * q.powi(n as i32)).collect();
        let disp = displacement_matrix(d, self.displacement);
        let mut rho = DMatrix::<C64>::zeros(d, d);
        for (j, &p) in pops.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let col = disp.column(j);
            rho += col * col.adjoint() * C64::new(p, 0.0);
        }
        let tr: f64 = (0..d).map(|n| rho[(n, n)].re).sum();
        let top = rho[(d - 1, d - 1)].re + rho[(d - 2, d - 2)].re;
        let tail = (1.0 - tr).abs().max(top);
        rho /= C64::new(tr, 0.0);
        (rho, tail)
    }

    /// Truncated annihilation operator.
    pub fn annihilation(&self) -> DMatrix<C64> {
        let d = self.dim;
        DMatrix::from_fn(d, d, |m, n| {
            if n == m + 1 {
                C64::new((n as f64).sqrt(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }
}

/// Exact matrix elements `⟨m|D(α)|n⟩` for `m, n < dim`, via associated Laguerre polynomials.
pub(crate) fn displacement_matrix(dim: usize, alpha: C64) -> DMatrix<C64> {
    let x = alpha.norm_sqr();
    let pref = (-0.5 * x).exp();
    DMatrix::from_fn(dim, dim, |m, n| {
        let (lo, hi) = (m.min(n), m.max(n));
        let k = hi - lo;
        // sqrt(lo!/hi!)
        let ratio: f64 = (lo + 1..=hi).map(|j| 1.0 / (j as f64).sqrt()).product();
        let base = if m >= n { alpha } else { -alpha.conj() };
        let pow = if k == 0 {
            C64::new(1.0, 0.0)
        } else {
            base.powu(k as u32)
        };
        pow * (pref * ratio * laguerre(lo, k as f64, x))
    })
}

fn laguerre(n: usize, k: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 + k - x);
    if n == 0 {
        return prev;
    }
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + k - x) * cur - (jf + k) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `O(t) = (a e^{−iωt} + a† e^{iωt})/√2` on the truncated space.
pub fn quadrature_heisenberg(spec: &FockSpec, t: f64) -> DMatrix<C64> {
    let a = spec.annihilation();
    let ph = C64::new(0.0, -spec.omega * t).exp();
    (a.clone() * ph + a.adjoint() * ph.conj()) * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
}

/// Interaction-picture coupling axis from the qubit propagator
/// `U_S(t) = exp(−i (Ω/2) t h·σ̂)`, obtained by conjugating `α·σ̂`.
pub fn qubit_axis(geom: &InteractionGeometry, t: f64) -> Vector3<f64> {
    let hs = sigma_dot(&geom.h) * C64::new(0.5 * geom.omega, 0.0);
    let eig = hs.symmetric_eigen();
    let phases = eig.eigenvalues.map(|e| C64::new(0.0, -e * t).exp());
    let us: Complex2x2 = eig.eigenvectors * Complex2x2::from_diagonal(&phases) * eig.eigenvectors.adjoint();
    let op = us.adjoint() * sigma_dot(&geom.alpha) * us;
    Vector3::from_fn(|i, _| 0.5 * (pauli(i) * op).trace().re)
}

/// Operator on qubit ⊗ oscillator, index `2·q + n` ordered qubit-major (`q·dim + n`).
#[derive(Clone, Debug, PartialEq)]
pub struct JointOperator(pub DMatrix<C64>);

impl JointOperator {
    /// `‖U†U − 𝟙‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.0.nrows();
        (self.0.adjoint() * &self.0 - DMatrix::<C64>::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// `P⁺ ⊗ B + P⁻ ⊗ B†` with `P^± = (𝟙 ± r·σ̂)/2`.
fn controlled(r: &Vector3<f64>, b: &DMatrix<C64>) -> JointOperator {
    let d = b.nrows();
    let half = C64::new(0.5, 0.0);
    let plus = (crate::pauli::identity() + sigma_dot(r)) * half;
    let minus = (crate::pauli::identity() - sigma_dot(r)) * half;
    let bd = b.adjoint();
    let mut u = DMatrix::<C64>::zeros(2 * d, 2 * d);
    for p in 0..2 {
        for q in 0..2 {
            let blk = b * plus[(p, q)] + &bd * minus[(p, q)];
            u.view_mut((p * d, q * d), (d, d)).copy_from(&blk);
        }
    }
    JointOperator(u)
}

/// `exp(−i w r·σ̂ ⊗ O) = P⁺ ⊗ e^{−iwO} + P⁻ ⊗ e^{+iwO}` for Hermitian `O`.
pub fn kick_unitary(r: &Vector3<f64>, o: &DMatrix<C64>, weight: f64) -> Result<JointOperator> {
    let dev = (o - o.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if dev > 1e-12 {
        return Err(Error::NonHermitianO(dev));
    }
    let eig = o.clone().symmetric_eigen();
    let ph = eig.eigenvalues.map(|e| C64::new(0.0, -weight * e).exp());
    let b = &eig.eigenvectors * DMatrix::from_diagonal(&ph) * eig.eigenvectors.adjoint();
    Ok(controlled(r, &b))
}

/// Cached eigendecomposition of `X = (a + a†)/√2`, giving
/// `e^{−icO(t)} = Φ(t) V e^{−ic x} V† Φ(t)†` with `Φ(t) = diag(e^{iωnt})`.
pub struct Quadrature {
    vecs: DMatrix<C64>,
    vals: DVector<f64>,
    omega: f64,
}

impl Quadrature {
    pub fn new(spec: &FockSpec) -> Self {
        let eig = quadrature_heisenberg(spec, 0.0).symmetric_eigen();
        Self {
            vecs: eig.eigenvectors,
            vals: eig.eigenvalues,
            omega: spec.omega,
        }
    }

    pub fn exp(&self, t: f64, c: f64) -> DMatrix<C64> {
        let d = self.vals.len();
        let ph = self.vals.map(|e| C64::new(0.0, -c * e).exp());
        let core = &self.vecs * DMatrix::from_diagonal(&ph) * self.vecs.adjoint();
        DMatrix::from_fn(d, d, |m, n| {
            core[(m, n)] * C64::new(0.0, self.omega * t * (m as f64 - n as f64)).exp()
        })
    }

    pub fn kick(&self, r: &Vector3<f64>, t: f64, c: f64) -> JointOperator {
        controlled(r, &self.exp(t, c))
    }
}
