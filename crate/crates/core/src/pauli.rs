// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense 2×2 operator algebra for a single qubit.
//!
//! Everything on the qubit side of the library reduces to 2×2 complex
//! matrices, real Bloch vectors and affine maps `u ↦ A u + b` between them.
//! This module also holds the conversions between the affine (Bloch) picture
//! and the χ-matrix picture `ρ ↦ Σ_ab χ_ab B_a ρ B_b†` in an orthonormal
//! operator basis `{B_a}` (inner product `⟨X, Y⟩ = tr(Y† X)`).

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Complex2x2 = Matrix2<C64>;
pub type ChiMatrix = Matrix4<C64>;

/// Tolerance on `| |r| - 1 |` for axes and on basis orthonormality.
pub const UNIT_TOL: f64 = 1e-12;
/// Tolerance on Hermiticity and unit trace of density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn identity() -> Complex2x2 {
    Complex2x2::identity()
}

pub fn sigma_x() -> Complex2x2 {
    Complex2x2::new(ZERO, ONE, ONE, ZERO)
}

pub fn sigma_y() -> Complex2x2 {
    Complex2x2::new(ZERO, -I, I, ZERO)
}

pub fn sigma_z() -> Complex2x2 {
    Complex2x2::new(ONE, ZERO, ZERO, -ONE)
}

/// `σ_x`, `σ_y`, `σ_z` for `i = 0, 1, 2`.
pub fn pauli(i: usize) -> Complex2x2 {
    match i {
        0 => sigma_x(),
        1 => sigma_y(),
        2 => sigma_z(),
        _ => panic!("pauli index {i} out of range"),
    }
}

/// `v · σ̂` for a real vector.
pub fn sigma_dot(v: &Vector3<f64>) -> Complex2x2 {
    Complex2x2::new(
        C64::new(v.z, 0.0),
        C64::new(v.x, -v.y),
        C64::new(v.x, v.y),
        C64::new(-v.z, 0.0),
    )
}

/// `v · σ̂` for complex coefficients (used for linear extension to non-Hermitian operators).
pub fn sigma_dot_c(v: &Vector3<C64>) -> Complex2x2 {
    Complex2x2::new(v.z, v.x - I * v.y, v.x + I * v.y, -v.z)
}

/// Decomposes `X = (x₀ 𝟙 + x·σ̂)/2`, returning `(x₀, x)` with `x₀ = tr X`, `x_i = tr(X σ_i)`.
pub fn pauli_components(x: &Complex2x2) -> (C64, Vector3<C64>) {
    let tr = x[(0, 0)] + x[(1, 1)];
    let cx = x[(0, 1)] + x[(1, 0)];
    let cy = I * (x[(0, 1)] - x[(1, 0)]);
    let cz = x[(0, 0)] - x[(1, 1)];
    (tr, Vector3::new(cx, cy, cz))
}

pub fn is_hermitian(x: &Complex2x2, tol: f64) -> bool {
    hermiticity_defect(x) <= tol
}

fn hermiticity_defect(x: &Complex2x2) -> f64 {
    (x - x.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Real Bloch vector of a qubit state `ρ = (𝟙 + u·σ̂)/2`.
///
/// Vectors with `|u| > 1` are representable; transition maps may send
/// physical states there, and detecting that is the point of P-checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector(pub Vector3<f64>);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self(Vector3::new(x, y, z))
    }

    pub fn zero() -> Self {
        Self(Vector3::zeros())
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_physical(&self, tol: f64) -> bool {
        self.norm() <= 1.0 + tol
    }

    pub fn vector(&self) -> &Vector3<f64> {
        &self.0
    }
}

impl From<Vector3<f64>> for BlochVector {
    fn from(v: Vector3<f64>) -> Self {
        Self(v)
    }
}

pub fn bloch_to_density(u: &BlochVector) -> Complex2x2 {
    (identity() + sigma_dot(&u.0)) * C64::new(0.5, 0.0)
}

pub fn density_to_bloch(rho: &Complex2x2) -> Result<BlochVector> {
    let defect = hermiticity_defect(rho);
    if defect > DENSITY_TOL {
        return Err(Error::NonHermitian(defect));
    }
    let (tr, comps) = pauli_components(rho);
    if (tr - ONE).norm() > DENSITY_TOL {
        return Err(Error::NonUnitTrace(tr.re));
    }
    Ok(BlochVector(comps.map(|c| c.re)))
}

pub fn require_unit(r: &Vector3<f64>) -> Result<()> {
    let n = r.norm();
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(Error::NonUnitVector(n));
    }
    Ok(())
}

/// Eigenprojector `(𝟙 + s r·σ̂)/2` of the Pauli observable `r·σ̂`, `s = ±1`.
pub fn projector(r: &Vector3<f64>, s: i8) -> Result<Complex2x2> {
    require_unit(r)?;
    Ok(projector_unchecked(r, f64::from(s.signum())))
}

pub(crate) fn projector_unchecked(r: &Vector3<f64>, s: f64) -> Complex2x2 {
    (identity() + sigma_dot(&(r * s))) * C64::new(0.5, 0.0)
}

/// Unit vectors `(e₂, e₃)` completing the unit vector `r` to a right-handed frame.
pub fn orthonormal_completion(r: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let seed = if r.x.abs() <= r.y.abs() && r.x.abs() <= r.z.abs() {
        Vector3::x()
    } else if r.y.abs() <= r.z.abs() {
        Vector3::y()
    } else {
        Vector3::z()
    };
    let e2 = (seed - r * r.dot(&seed)).normalize();
    let e3 = r.cross(&e2);
    (e2, e3)
}

/// Affine action `u ↦ A u + b` of a trace-preserving qubit map on Bloch vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineBlochMap {
    pub a: Matrix3<f64>,
    pub b: Vector3<f64>,
}

impl AffineBlochMap {
    pub fn new(a: Matrix3<f64>, b: Vector3<f64>) -> Self {
        Self { a, b }
    }

    pub fn identity() -> Self {
        Self::new(Matrix3::identity(), Vector3::zeros())
    }

    pub fn apply(&self, u: &BlochVector) -> BlochVector {
        BlochVector(self.a * u.0 + self.b)
    }

    /// `self ∘ earlier`.
    pub fn after(&self, earlier: &AffineBlochMap) -> AffineBlochMap {
        AffineBlochMap::new(self.a * earlier.a, self.a * earlier.b + self.b)
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        self.b.amax() <= tol
    }

    /// Largest entrywise difference of `A` and `b`.
    pub fn max_abs_diff(&self, other: &AffineBlochMap) -> f64 {
        (self.a - other.a).amax().max((self.b - other.b).amax())
    }

    /// Linear extension to an arbitrary 2×2 operator.
    pub fn act_on(&self, x: &Complex2x2) -> Complex2x2 {
        let (tr, comps) = pauli_components(x);
        let ac = self.a.map(|v| C64::new(v, 0.0));
        let bc = self.b.map(|v| C64::new(v, 0.0));
        let out = ac * comps + bc * tr;
        (identity() * tr + sigma_dot_c(&out)) * C64::new(0.5, 0.0)
    }

    /// Pauli transfer matrix `R` with `R₀₀ = 1`, `R_i0 = b_i`, `R_ij = A_ij`.
    pub fn transfer_matrix(&self) -> Matrix4<f64> {
        let mut r = Matrix4::zeros();
        r[(0, 0)] = 1.0;
        for i in 0..3 {
            r[(i + 1, 0)] = self.b[i];
            for j in 0..3 {
                r[(i + 1, j + 1)] = self.a[(i, j)];
            }
        }
        r
    }
}

pub fn apply_affine(m: &AffineBlochMap, u: &BlochVector) -> BlochVector {
    m.apply(u)
}

/// Orthonormal operator basis `B₀..B₃` under `⟨X, Y⟩ = tr(Y† X)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorBasis {
    elems: [Complex2x2; 4],
}

impl OperatorBasis {
    pub fn new(elems: [Complex2x2; 4]) -> Result<Self> {
        for a in 0..4 {
            for b in 0..4 {
                let ip = (elems[b].adjoint() * elems[a]).trace();
                let want = if a == b { ONE } else { ZERO };
                if (ip - want).norm() > UNIT_TOL {
                    return Err(Error::InvalidBasis(format!("entry ({a},{b}) is {ip}")));
                }
            }
        }
        Ok(Self { elems })
    }

    /// `{𝟙, σ_x, σ_y, σ_z}/√2`.
    pub fn pauli() -> Self {
        let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            elems: [identity() * s, sigma_x() * s, sigma_y() * s, sigma_z() * s],
        }
    }

    /// Basis built on a right-handed real frame `(e₁, e₂, e₃)`: `{𝟙, e₁·σ̂, e₂·σ̂, e₃·σ̂}/√2`.
    pub fn from_frame(e1: &Vector3<f64>, e2: &Vector3<f64>, e3: &Vector3<f64>) -> Result<Self> {
        let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new([identity() * s, sigma_dot(e1) * s, sigma_dot(e2) * s, sigma_dot(e3) * s])
    }

    /// Basis adapted to a pair of kick axes: `e₁ = r_last`, `e₂ ∝ r_first − (r_last·r_first) r_last`,
    /// `e₃ ∝ r_last × r_first`. Returns `None` when the axes are parallel to within `tol`.
    pub fn from_axes(r_last: &Vector3<f64>, r_first: &Vector3<f64>, tol: f64) -> Option<Self> {
        let (e1, e2, e3) = axis_pair_frame(r_last, r_first, tol)?;
        Self::from_frame(&e1, &e2, &e3).ok()
    }

    /// Basis with `B₁ = r·σ̂/√2` plus an orthonormal completion.
    pub fn with_axis(r: &Vector3<f64>) -> Self {
        let (e2, e3) = orthonormal_completion(r);
        Self::from_frame(r, &e2, &e3).unwrap_or_else(|_| Self::pauli())
    }

    pub fn elements(&self) -> &[Complex2x2; 4] {
        &self.elems
    }

    /// Expansion coefficients `c_a = tr(B_a† X)`.
    pub fn coefficients(&self, x: &Complex2x2) -> [C64; 4] {
        let mut c = [ZERO; 4];
        for (ca, b) in c.iter_mut().zip(self.elems.iter()) {
            *ca = (b.adjoint() * x).trace();
        }
        c
    }
}

/// Right-handed frame `(e₁, e₂, e₃)` attached to two non-parallel axes.
pub fn axis_pair_frame(
    r_last: &Vector3<f64>,
    r_first: &Vector3<f64>,
    tol: f64,
) -> Option<(Vector3<f64>, Vector3<f64>, Vector3<f64>)> {
    let cross = r_last.cross(r_first);
    let cn = cross.norm();
    if cn <= tol {
        return None;
    }
    let e1 = *r_last;
    let e2 = (r_first - r_last * r_last.dot(r_first)) / cn;
    let e3 = cross / cn;
    Some((e1, e2, e3))
}

/// χ-matrix of a linear map given by its action on operators.
///
/// Uses the Choi operator `J = Σ_ij Φ(|i⟩⟨j|) ⊗ |i⟩⟨j|` and `χ_ab = ⟨⟨B_a|J|B_b⟩⟩`
/// with row-stacked vectorisation.
pub fn chi_from_action<F>(action: F, basis: &OperatorBasis) -> ChiMatrix
where
    F: Fn(&Complex2x2) -> Complex2x2,
{
    let mut choi = Matrix4::<C64>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let mut e = Complex2x2::zeros();
            e[(i, j)] = ONE;
            let out = action(&e);
            for k in 0..2 {
                for l in 0..2 {
                    choi[(2 * k + i, 2 * l + j)] = out[(k, l)];
                }
            }
        }
    }
    let vecs: Vec<[C64; 4]> = basis
        .elements()
        .iter()
        .map(|b| [b[(0, 0)], b[(0, 1)], b[(1, 0)], b[(1, 1)]])
        .collect();
    let mut chi = ChiMatrix::zeros();
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = ZERO;
            for p in 0..4 {
                for q in 0..4 {
                    acc += vecs[a][p].conj() * choi[(p, q)] * vecs[b][q];
                }
            }
            chi[(a, b)] = acc;
        }
    }
    chi
}

pub fn chi_from_affine(map: &AffineBlochMap, basis: &OperatorBasis) -> ChiMatrix {
    chi_from_action(|x| map.act_on(x), basis)
}

/// `Σ_ab χ_ab B_a X B_b†`.
pub fn apply_chi(chi: &ChiMatrix, basis: &OperatorBasis, x: &Complex2x2) -> Complex2x2 {
    let b = basis.elements();
    let mut out = Complex2x2::zeros();
    for p in 0..4 {
        let left = b[p] * x;
        for q in 0..4 {
            if chi[(p, q)] != ZERO {
                out += left * b[q].adjoint() * chi[(p, q)];
            }
        }
    }
    out
}

/// Affine Bloch action of the map with χ-matrix `chi`. Assumes Hermiticity preservation;
/// the trace-preservation defect is dropped (inputs are always trace preserving here).
pub fn affine_from_chi(chi: &ChiMatrix, basis: &OperatorBasis) -> AffineBlochMap {
    let half = identity() * C64::new(0.5, 0.0);
    let b = pauli_components(&apply_chi(chi, basis, &half)).1.map(|c| c.re);
    let mut a = Matrix3::zeros();
    for j in 0..3 {
        let out = apply_chi(chi, basis, &(pauli(j) * C64::new(0.5, 0.0)));
        let comps = pauli_components(&out).1;
        for i in 0..3 {
            a[(i, j)] = comps[i].re;
        }
    }
    AffineBlochMap::new(a, b)
}

/// `‖Σ_ab χ_ab B_b† B_a − 𝟙‖_max`.
pub fn trace_preservation_defect(chi: &ChiMatrix, basis: &OperatorBasis) -> f64 {
    let b = basis.elements();
    let mut acc = Complex2x2::zeros();
    for p in 0..4 {
        for q in 0..4 {
            acc += b[q].adjoint() * b[p] * chi[(p, q)];
        }
    }
    (acc - identity()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn close(a: &Complex2x2, b: &Complex2x2, tol: f64) -> bool {
        (a - b).iter().all(|z| z.norm() <= tol)
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn bloch_to_density_examples() {
        let half = identity() * c(0.5, 0.0);
        assert!(close(&bloch_to_density(&BlochVector::zero()), &half, 1e-15));
        let up = Complex2x2::new(c(1.0, 0.0), ZERO, ZERO, ZERO);
        assert!(close(&bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0)), &up, 1e-15));
        let plus = Complex2x2::new(c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0));
        assert!(close(&bloch_to_density(&BlochVector::new(1.0, 0.0, 0.0)), &plus, 1e-15));
    }

    #[test]
    fn density_to_bloch_examples() {
        let u = density_to_bloch(&(identity() * c(0.5, 0.0))).unwrap();
        assert_eq!(u, BlochVector::zero());
        let up = Complex2x2::new(c(1.0, 0.0), ZERO, ZERO, ZERO);
        assert_eq!(density_to_bloch(&up).unwrap(), BlochVector::new(0.0, 0.0, 1.0));
        let y = Complex2x2::new(c(0.5, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.5, 0.0));
        let u = density_to_bloch(&y).unwrap();
        assert_relative_eq!(u.0, Vector3::new(0.0, 1.0, 0.0), epsilon = 1e-15);
    }

    #[test]
    fn density_to_bloch_rejects_bad_input() {
        let nh = Complex2x2::new(c(0.5, 0.0), c(0.3, 0.0), ZERO, c(0.5, 0.0));
        assert!(matches!(density_to_bloch(&nh), Err(Error::NonHermitian(_))));
        let tr2 = identity();
        assert!(matches!(density_to_bloch(&tr2), Err(Error::NonUnitTrace(_))));
    }

    #[test]
    fn projector_examples() {
        let z = Vector3::z();
        let up = Complex2x2::new(c(1.0, 0.0), ZERO, ZERO, ZERO);
        let dn = Complex2x2::new(ZERO, ZERO, ZERO, c(1.0, 0.0));
        assert!(close(&projector(&z, 1).unwrap(), &up, 1e-15));
        assert!(close(&projector(&z, -1).unwrap(), &dn, 1e-15));
        let plus = Complex2x2::new(c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0));
        assert!(close(&projector(&Vector3::x(), 1).unwrap(), &plus, 1e-15));
        assert!(matches!(
            projector(&Vector3::new(1.0, 1.0, 0.0), 1),
            Err(Error::NonUnitVector(_))
        ));
    }

    #[test]
    fn projectors_are_complementary() {
        let r = Vector3::new(0.3, -0.4, 0.5).normalize();
        let p = projector(&r, 1).unwrap();
        let m = projector(&r, -1).unwrap();
        assert!(close(&(p * p), &p, 1e-15));
        assert!(close(&(p * m), &Complex2x2::zeros(), 1e-14));
        assert!(close(&(p + m), &identity(), 1e-15));
        assert!(is_hermitian(&p, 1e-15));
    }

    #[test]
    fn apply_affine_examples() {
        let u = BlochVector::new(0.3, 0.0, 0.0);
        assert_eq!(apply_affine(&AffineBlochMap::identity(), &u), u);
        let constant = AffineBlochMap::new(Matrix3::zeros(), Vector3::new(0.0, 0.0, 0.5));
        assert_eq!(apply_affine(&constant, &u), BlochVector::new(0.0, 0.0, 0.5));
        let e = (-1.0f64).exp();
        let damp = AffineBlochMap::new(Matrix3::from_diagonal(&Vector3::new(e, e, 1.0)), Vector3::zeros());
        let out = apply_affine(&damp, &BlochVector::new(1.0, 0.0, 0.0));
        assert_relative_eq!(out.0, Vector3::new(e, 0.0, 0.0), epsilon = 1e-15);
    }

    #[test]
    fn bases_are_orthonormal() {
        let r1 = Vector3::new(0.2, 0.9, -0.1).normalize();
        let r0 = Vector3::new(-0.5, 0.1, 0.7).normalize();
        assert!(OperatorBasis::from_axes(&r1, &r0, 1e-12).is_some());
        assert!(OperatorBasis::from_axes(&r1, &(-r1), 1e-12).is_none());
        let b = OperatorBasis::with_axis(&r0);
        assert!(OperatorBasis::new(*b.elements()).is_ok());
        assert!(OperatorBasis::new(*OperatorBasis::pauli().elements()).is_ok());
    }

    #[test]
    fn identity_chi_is_two_on_b0() {
        for basis in [
            OperatorBasis::pauli(),
            OperatorBasis::with_axis(&Vector3::new(0.0, 0.6, 0.8)),
        ] {
            let chi = chi_from_affine(&AffineBlochMap::identity(), &basis);
            assert!((chi[(0, 0)] - c(2.0, 0.0)).norm() < 1e-14);
            let rest: f64 = chi.iter().map(|z| z.norm()).sum::<f64>() - 2.0;
            assert!(rest.abs() < 1e-13);
        }
    }

    #[test]
    fn chi_affine_round_trip() {
        let a = Matrix3::new(0.5, 0.1, -0.2, 0.0, 0.3, 0.1, 0.05, -0.1, 0.7);
        let m = AffineBlochMap::new(a, Vector3::new(0.1, -0.05, 0.2));
        let r1 = Vector3::new(0.2, 0.9, -0.1).normalize();
        let r0 = Vector3::new(-0.5, 0.1, 0.7).normalize();
        let basis = OperatorBasis::from_axes(&r1, &r0, 1e-12).unwrap();
        let chi = chi_from_affine(&m, &basis);
        assert!((chi - chi.adjoint()).camax() < 1e-14);
        assert!(trace_preservation_defect(&chi, &basis) < 1e-14);
        let back = affine_from_chi(&chi, &basis);
        assert!(back.max_abs_diff(&m) < 1e-14);
    }

    proptest::proptest! {
        #[test]
        fn density_round_trip(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
            let u = BlochVector::new(x, y, z);
            let back = density_to_bloch(&bloch_to_density(&u)).unwrap();
            proptest::prop_assert!((back.0 - u.0).amax() < 1e-12);
        }

        #[test]
        fn affine_preserves_trace(v in proptest::collection::vec(-2.0f64..2.0, 15)) {
            let a = Matrix3::from_row_slice(&v[..9]);
            let m = AffineBlochMap::new(a, Vector3::new(v[9], v[10], v[11]));
            let out = bloch_to_density(&m.apply(&BlochVector::new(v[12], v[13], v[14])));
            proptest::prop_assert!((out.trace() - ONE).norm() < 1e-14);
        }
    }
}
