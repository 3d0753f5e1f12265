// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{Quaternion, UnitQuaternion, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channels::{build_n_kick_channel, transition_map, QubitMap, TransitionMap, TwoKickParams};
use crate::environment::GaussianEnvironment;
use crate::error::{Error, Result};
use crate::kicks::{InteractionGeometry, KickSchedule};
use crate::pauli::{BlochVector, C64};
use crate::textfmt::fmt_f64;

/// Default tolerance on negative χ eigenvalues.
pub const CP_TOL: f64 = 1e-10;

/// Eigenvalues of the Hermitian part of χ, in decreasing order.
pub fn chi_eigenvalues(map: &impl AsRef<QubitMap>) -> [f64; 4] {
    let chi = map.as_ref().chi;
    let herm = (chi + chi.adjoint()) * C64::new(0.5, 0.0);
    let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    [ev[0], ev[1], ev[2], ev[3]]
}

/// Closed-form eigenvalues `(λ⁽¹⁾, λ⁽²⁾, λ⁽³⁾, λ⁽⁴⁾)` of the two-kick transition-map χ:
/// `λ⁽¹˒²⁾ = p ± √(p² − |k|²)` with `p = (1 + |h|² + |k|²)/2` and
/// `λ⁽³˒⁴⁾ = q ± √(q² + |k|²)` with `q = (1 − |h|² − |k|²)/2`.
pub fn chi_eigenvalues_two_kick(h: C64, k: C64) -> [f64; 4] {
    let k2 = k.norm_sqr();
    let h2 = h.norm_sqr();
    let p = 0.5 * (1.0 + h2 + k2);
    let q = 0.5 * (1.0 - h2 - k2);
    let rp = (p * p - k2).max(0.0).sqrt();
    let rq = (q * q + k2).sqrt();
    // λ⁽²⁾ λ⁽¹⁾ = |k|² and λ⁽³⁾ λ⁽⁴⁾ = −|k|² avoid cancellation in the small roots.
    let l1 = p + rp;
    let l2 = if l1 > 0.0 { k2 / l1 } else { 0.0 };
    let (l3, l4) = if q >= 0.0 {
        let big = q + rq;
        (big, if big > 0.0 { -k2 / big } else { 0.0 })
    } else {
        let small = q - rq;
        (-k2 / small, small)
    };
    [l1, l2, l3, l4]
}

/// `min eig χ ≥ −tol`.
pub fn is_cp(map: &impl AsRef<QubitMap>, tol: f64) -> bool {
    chi_eigenvalues(map)[3] >= -tol
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PositivityOptions {
    pub tol: f64,
    pub n_samples: usize,
    /// Random rotation of the sample grid; `None` keeps the canonical grid.
    pub seed: Option<u64>,
}

impl Default for PositivityOptions {
    fn default() -> Self {
        Self {
            tol: CP_TOL,
            n_samples: 10_000,
            seed: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Positivity {
    pub positive: bool,
    /// First pure input whose image leaves the Bloch ball.
    pub witness: Option<BlochVector>,
    /// Largest image norm seen.
    pub max_norm: f64,
}

fn fibonacci_sphere(n: usize, rot: &UnitQuaternion<f64>) -> impl Iterator<Item = Vector3<f64>> + '_ {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n).map(move |i| {
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
        let rho = (1.0 - z * z).max(0.0).sqrt();
        let (s, c) = (golden * i as f64).sin_cos();
        rot * Vector3::new(rho * c, rho * s, z)
    })
}

/// Uniformly random rotation (Shoemake's construction).
fn random_rotation(seed: u64) -> UnitQuaternion<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let tau = std::f64::consts::TAU;
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    UnitQuaternion::from_quaternion(Quaternion::new(
        a * (tau * u2).sin(),
        a * (tau * u2).cos(),
        b * (tau * u3).sin(),
        b * (tau * u3).cos(),
    ))
}

/// Positivity is decided on pure inputs: the last kick axis first, then a
/// Fibonacci grid of `n_samples` unit vectors.
pub fn is_positive(map: &impl AsRef<QubitMap>, opts: &PositivityOptions) -> Positivity {
    let m = map.as_ref();
    let rot = opts.seed.map(random_rotation).unwrap_or_else(UnitQuaternion::identity);
    let analytic = m.meta.axes.last().copied();
    let mut out = Positivity {
        positive: true,
        witness: None,
        max_norm: 0.0,
    };
    for u in analytic.into_iter().chain(fibonacci_sphere(opts.n_samples, &rot)) {
        let n = (m.affine.a * u + m.affine.b).norm();
        out.max_norm = out.max_norm.max(n);
        if n > 1.0 + opts.tol && out.witness.is_none() {
            out.positive = false;
            out.witness = Some(BlochVector(u));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormParams {
    pub alpha: f64,
    pub g: f64,
    pub abs_h: f64,
    pub abs_k: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisibilityReport {
    /// Decreasing order.
    pub chi_eigenvalues: [f64; 4],
    pub cp_divisible: bool,
    pub p_divisible: bool,
    pub witness: Option<BlochVector>,
    pub closed_form_params: Option<ClosedFormParams>,
}

impl DivisibilityReport {
    pub fn to_text(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let mut s = String::from("divisibility report\n");
        s += &format!("  CP-divisible: {}\n", yes(self.cp_divisible));
        s += &format!("  P-divisible:  {}\n", yes(self.p_divisible));
        s += "  chi eigenvalues:";
        for l in self.chi_eigenvalues {
            s += &format!(" {}", fmt_f64(l));
        }
        s.push('\n');
        match self.witness {
            Some(w) => {
                s += &format!(
                    "  witness: ({}, {}, {})\n",
                    fmt_f64(w.0.x),
                    fmt_f64(w.0.y),
                    fmt_f64(w.0.z)
                )
            }
            None => s += "  witness: none\n",
        }
        if let Some(p) = self.closed_form_params {
            s += &format!(
                "  two-kick parameters: alpha={} g={} |h|={} |k|={}\n",
                fmt_f64(p.alpha),
                fmt_f64(p.g),
                fmt_f64(p.abs_h),
                fmt_f64(p.abs_k)
            );
        }
        s
    }

    /// `key=value` lines; see the README for the schema.
    pub fn to_key_values(&self) -> String {
        let mut s = format!("cp_divisible={}\np_divisible={}\n", self.cp_divisible, self.p_divisible);
        for (i, l) in self.chi_eigenvalues.iter().enumerate() {
            s += &format!("chi_eigenvalue_{}={}\n", i + 1, fmt_f64(*l));
        }
        match self.witness {
            Some(w) => s += &format!("witness={} {} {}\n", fmt_f64(w.0.x), fmt_f64(w.0.y), fmt_f64(w.0.z)),
            None => s += "witness=none\n",
        }
        if let Some(p) = self.closed_form_params {
            s += &format!(
                "alpha={}\ng={}\nabs_h={}\nabs_k={}\n",
                fmt_f64(p.alpha),
                fmt_f64(p.g),
                fmt_f64(p.abs_h),
                fmt_f64(p.abs_k)
            );
        }
        s
    }
}

/// Numerical verdicts for an arbitrary transition map.
pub fn divisibility_report(theta: &TransitionMap, cp_tol: f64, opts: &PositivityOptions) -> DivisibilityReport {
    let pos = is_positive(theta, opts);
    DivisibilityReport {
        chi_eigenvalues: chi_eigenvalues(theta),
        cp_divisible: is_cp(theta, cp_tol),
        p_divisible: pos.positive,
        witness: pos.witness,
        closed_form_params: None,
    }
}

/// Builds `Θ = E₁₀ ∘ E₀⁻¹` for a two-kick schedule and reports on it. Closed-form
/// parameters are attached when the environment is even and the axes are not parallel.
pub fn two_kick_divisibility(
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
    cp_tol: f64,
    opts: &PositivityOptions,
) -> Result<(TransitionMap, DivisibilityReport)> {
    if sched.len() != 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            got: sched.len(),
        });
    }
    let long = build_n_kick_channel(env, geom, sched)?;
    let short = build_n_kick_channel(env, geom, &sched.prefix(1)?)?;
    let theta = transition_map(&long, &short)?;
    let mut report = divisibility_report(&theta, cp_tol, opts);
    report.closed_form_params = TwoKickParams::new(env, geom, sched).ok().map(|p| ClosedFormParams {
        alpha: p.alpha,
        g: p.g,
        abs_h: p.h.norm(),
        abs_k: p.k.norm(),
    });
    Ok((theta, report))
}

/// Verdict for the dephasing transition map from `n` to `m` kicks, whose χ
/// eigenvalues are `1 ± |γ_m/γ_n|, 0, 0`.
pub fn dephasing_divisibility(gamma_m: C64, gamma_n: C64, tol: f64) -> Result<DivisibilityReport> {
    let gn = gamma_n.norm();
    if gn == 0.0 {
        return Err(Error::SingularChannel(0.0));
    }
    let q = gamma_m.norm() / gn;
    let ok = q <= 1.0 + tol;
    let mut ev = [1.0 + q, 1.0 - q, 0.0, 0.0];
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(DivisibilityReport {
        chi_eigenvalues: ev,
        cp_divisible: ok,
        p_divisible: ok,
        witness: None,
        closed_form_params: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{build_n_kick_channel, QubitChannel};
    use crate::environment::{SingleModeThermal, WhiteKickKernel};

    fn close4(a: [f64; 4], b: [f64; 4], tol: f64) -> bool {
        a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn closed_form_examples() {
        assert!(close4(
            chi_eigenvalues_two_kick(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
            [2.0, 0.0, 0.0, 0.0],
            1e-15
        ));
        let l = chi_eigenvalues_two_kick(C64::new(1.2, 0.3), C64::new(0.0, 0.0));
        assert!((l[3] - (1.0 - 1.53)).abs() < 1e-15);
        let l = chi_eigenvalues_two_kick(C64::new(0.4, 0.1), C64::new(1e-5, 1e-6));
        assert!(l[3] < 0.0);
    }

    #[test]
    fn identity_and_channels_are_cp_and_positive() {
        let id = QubitChannel::identity();
        assert!(is_cp(&id, CP_TOL));
        let p = is_positive(&id, &PositivityOptions::default());
        assert!(p.positive && p.witness.is_none());
        let env = SingleModeThermal::new(1.0, 0.5).unwrap();
        let g = InteractionGeometry::new(Vector3::z(), Vector3::new(0.6, 0.0, 0.8), 1.3).unwrap();
        let ch = build_n_kick_channel(&env, &g, &KickSchedule::new(vec![0.0, 0.4, 1.0]).unwrap()).unwrap();
        assert!(is_cp(&ch, CP_TOL));
        assert!(
            is_positive(
                &ch,
                &PositivityOptions {
                    seed: Some(3),
                    ..Default::default()
                }
            )
            .positive
        );
    }

    #[test]
    fn correlated_two_kick_is_not_divisible() {
        let env = SingleModeThermal::new(1.0, 0.3).unwrap();
        let g = InteractionGeometry::new(Vector3::z(), Vector3::x(), 1.0).unwrap();
        let sched = KickSchedule::new(vec![0.0, 0.7]).unwrap();
        let (theta, rep) = two_kick_divisibility(&env, &g, &sched, CP_TOL, &PositivityOptions::default()).unwrap();
        assert!(!rep.cp_divisible && !rep.p_divisible);
        assert_eq!(rep.witness.unwrap().0, g.r_of_t(0.7));
        let p = TwoKickParams::new(&env, &g, &sched).unwrap();
        let want = chi_eigenvalues_two_kick(p.h, p.k);
        let mut want_sorted = want;
        want_sorted.sort_by(|a, b| b.total_cmp(a));
        assert!(close4(chi_eigenvalues(&theta), want_sorted, 1e-10));
        let img = theta.affine.apply(&rep.witness.unwrap()).norm();
        assert!((img * img - (1.0 + 4.0 * (p.h * p.k).norm_sqr())).abs() < 1e-12);
        assert!(rep.to_key_values().contains("cp_divisible=false"));
        assert!(rep.to_text().contains("CP-divisible: no"));
    }

    #[test]
    fn uncorrelated_two_kick_is_divisible() {
        let env = WhiteKickKernel::new(0.4).unwrap();
        let g = InteractionGeometry::new(Vector3::z(), Vector3::x(), 1.0).unwrap();
        let sched = KickSchedule::new(vec![0.0, 0.7]).unwrap();
        let (_, rep) = two_kick_divisibility(&env, &g, &sched, CP_TOL, &PositivityOptions::default()).unwrap();
        assert!(rep.cp_divisible && rep.p_divisible);
        assert_eq!(rep.closed_form_params.unwrap().abs_k, 0.0);
    }

    #[test]
    fn dephasing_examples() {
        let g = C64::new(0.3, 0.1);
        let r = dephasing_divisibility(g, g, CP_TOL).unwrap();
        assert!(r.cp_divisible && close4(r.chi_eigenvalues, [2.0, 0.0, 0.0, 0.0], 1e-15));
        let r = dephasing_divisibility(C64::new(0.0, 0.0), g, CP_TOL).unwrap();
        assert!(r.cp_divisible && close4(r.chi_eigenvalues, [1.0, 1.0, 0.0, 0.0], 1e-15));
        let r = dephasing_divisibility(C64::new(0.5, 0.0), C64::new(0.4, 0.0), CP_TOL).unwrap();
        assert!(!r.cp_divisible && !r.p_divisible);
        assert!(matches!(
            dephasing_divisibility(g, C64::new(0.0, 0.0), CP_TOL),
            Err(Error::SingularChannel(_))
        ));
    }
}
