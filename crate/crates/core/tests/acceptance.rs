// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::time::Instant;

use deltakick::analysis::{
    chi_eigenvalues, chi_eigenvalues_two_kick, entropy, fixed_point, is_cp, is_positive, iterate_round, trace_distance,
    LogBase, PositivityOptions, CP_TOL,
};
use deltakick::channels::{
    build_n_kick_channel, compose, dephasing_channel, dephasing_gamma, single_kick_channel, transition_map,
    two_kick_closed_form_scheduled, QubitChannel, TwoKickParams,
};
use deltakick::environment::{GaussianEnvironment, MeanFunction, MeanShifted, SingleModeThermal, WhiteKickKernel};
use deltakick::kicks::{is_commuting_schedule, InteractionGeometry, KickSchedule, COMMUTE_TOL};
use deltakick::oracle::{channel_distance, nascent_delta_study, oracle_channel_adaptive, FockSpec, PulseShape};
use deltakick::pauli::{BlochVector, C64};
use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn unit(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let s = (1.0 - z * z).sqrt();
    Vector3::new(s * phi.cos(), s * phi.sin(), z)
}

fn ball(rng: &mut ChaCha8Rng) -> BlochVector {
    let r = rng.random::<f64>().cbrt();
    BlochVector(unit(rng) * r)
}

fn geometry(rng: &mut ChaCha8Rng) -> InteractionGeometry {
    InteractionGeometry::new(unit(rng), unit(rng), rng.random_range(0.3..2.0)).unwrap()
}

fn schedule(rng: &mut ChaCha8Rng, n: usize) -> KickSchedule {
    let mut t = rng.random_range(0.0..1.0);
    let mut times = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for _ in 0..n {
        times.push(t);
        weights.push(rng.random_range(0.3..1.0));
        t += rng.random_range(0.1..1.5);
    }
    KickSchedule::with_weights(times, weights).unwrap()
}

fn thermal(rng: &mut ChaCha8Rng, nbar: f64) -> SingleModeThermal {
    SingleModeThermal::new(rng.random_range(0.5..2.0), nbar).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut max_dim = 0;
    let n_inst = 60;
    for i in 0..n_inst {
        let kicks = 1 + i % 4;
        let env = match (i / 4) % 5 {
            0 => thermal(&mut rng, 0.0),
            1 => thermal(&mut rng, 0.5),
            2 => thermal(&mut rng, 2.0),
            3 => thermal(&mut rng, 0.0).with_displacement(C64::from_polar(
                rng.random_range(0.2..1.0),
                rng.random_range(0.0..2.0 * PI),
            )),
            _ => thermal(&mut rng, 0.5).with_displacement(C64::from_polar(
                rng.random_range(0.2..0.8),
                rng.random_range(0.0..2.0 * PI),
            )),
        };
        let geom = geometry(&mut rng);
        let sched = schedule(&mut rng, kicks);
        let analytic = build_n_kick_channel(&env, &geom, &sched).map_err(|e| e.to_string())?;
        let spec = FockSpec::from_thermal(&env, FockSpec::starting_dim(env.nbar)).map_err(|e| e.to_string())?;
        let res = oracle_channel_adaptive(&spec, &geom, &sched, 200).map_err(|e| format!("instance {i}: {e}"))?;
        worst = worst.max(channel_distance(&analytic, &res.channel));
        max_dim = max_dim.max(res.dim);
    }
    let secs = start.elapsed().as_secs_f64();
    let detail = format!(
        "{n_inst} instances, max distance {worst:.2e} (tol 1e-8), max Fock dim {max_dim}, {secs:.1} s (limit 120 s)"
    );
    if worst <= 1e-8 && secs <= 120.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn closed_form_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut worst2, mut worst1) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let env = {
            let nbar = rng.random_range(0.0..2.0);
            thermal(&mut rng, nbar)
        };
        let geom = geometry(&mut rng);
        let sched = schedule(&mut rng, 2);
        let enumerated = build_n_kick_channel(&env, &geom, &sched).map_err(|e| e.to_string())?;
        let closed = two_kick_closed_form_scheduled(&env, &geom, &sched).map_err(|e| e.to_string())?;
        worst2 = worst2
            .max(enumerated.max_diff(&closed))
            .max(closed.max_diff(&enumerated));

        let one = KickSchedule::with_weights(vec![sched.times()[0]], vec![sched.weights()[0]]).unwrap();
        let enumerated = build_n_kick_channel(&env, &geom, &one).map_err(|e| e.to_string())?;
        let closed = single_kick_channel(&env, &geom, one.times()[0], one.weights()[0]).map_err(|e| e.to_string())?;
        worst1 = worst1
            .max(enumerated.max_diff(&closed))
            .max(closed.max_diff(&enumerated));
    }
    let detail = format!("100 instances, two-kick max entry diff {worst2:.2e}, single-kick {worst1:.2e} (tol 1e-12)");
    if worst2 <= 1e-12 && worst1 <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn factorization_limit() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 1..=5 {
        for _ in 0..10 {
            let env = WhiteKickKernel::new(rng.random_range(0.1..1.5)).unwrap();
            let geom = geometry(&mut rng);
            let sched = schedule(&mut rng, n);
            let full = build_n_kick_channel(&env, &geom, &sched).map_err(|e| e.to_string())?;
            let mut acc = QubitChannel::identity();
            for (&t, &w) in sched.times().iter().zip(sched.weights()) {
                let step = single_kick_channel(&env, &geom, t, w).map_err(|e| e.to_string())?;
                acc = compose(&step, &acc);
            }
            worst = worst.max(full.max_diff(&acc));
            count += 1;
        }
    }
    let detail = format!("{count} white-kernel schedules with 1-5 kicks, max diff {worst:.2e} (tol 1e-12)");
    if worst <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

struct TwoKickInstance {
    theta: deltakick::channels::TransitionMap,
    params: TwoKickParams,
}

fn two_kick_instances() -> Vec<TwoKickInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut out = Vec::new();
    while out.len() < 120 {
        // every sixth instance uses an uncorrelated environment, for which k = 0
        let env: Box<dyn GaussianEnvironment> = if out.len() % 6 == 5 {
            Box::new(WhiteKickKernel::new(rng.random_range(0.1..1.0)).unwrap())
        } else {
            let nbar = rng.random_range(0.0..2.0);
            Box::new(thermal(&mut rng, nbar))
        };
        let env = env.as_ref();
        let geom = geometry(&mut rng);
        let sched = schedule(&mut rng, 2);
        let Ok(params) = TwoKickParams::new(env, &geom, &sched) else {
            continue;
        };
        let long = build_n_kick_channel(env, &geom, &sched).unwrap();
        let short = build_n_kick_channel(env, &geom, &sched.prefix(1).unwrap()).unwrap();
        let Ok(theta) = transition_map(&long, &short) else {
            continue;
        };
        out.push(TwoKickInstance { theta, params });
    }
    out
}

fn chi_eigenvalue_formulas(inst: &[TwoKickInstance]) -> Outcome {
    let mut worst = 0.0f64;
    let mut sign_failures = 0;
    for x in inst {
        let mut closed = chi_eigenvalues_two_kick(x.params.h, x.params.k);
        closed.sort_by(|a, b| b.total_cmp(a));
        let numeric = chi_eigenvalues(&x.theta);
        for (a, b) in closed.iter().zip(&numeric) {
            worst = worst.max((a - b).abs());
        }
        if x.params.k.norm() > 0.0 && !(numeric[3] < -1e-12 || x.params.k.norm() < 1e-6) {
            sign_failures += 1;
        }
    }
    let detail = format!(
        "{} instances, max |closed - numeric| {worst:.2e} (tol 1e-10), lambda4 sign failures {sign_failures}",
        inst.len()
    );
    if worst <= 1e-10 && sign_failures == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn divisibility_equivalence(inst: &[TwoKickInstance]) -> Outcome {
    let opts = PositivityOptions {
        tol: CP_TOL,
        n_samples: 10_000,
        seed: Some(5),
    };
    let mut disagreements = 0;
    let mut non_cp = 0;
    for x in inst {
        let cp = is_cp(&x.theta, CP_TOL);
        let p = is_positive(&x.theta, &opts).positive;
        non_cp += usize::from(!cp);
        disagreements += usize::from(cp != p);
    }
    let detail = format!(
        "{} instances ({non_cp} non-CP), CP vs P disagreements {disagreements}",
        inst.len()
    );
    if disagreements == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn dephasing_divisibility_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut checked, mut mismatches, mut growths, mut ties) = (0, 0, 0, 0);
    let mut run =
        |env: &dyn GaussianEnvironment, geom: &InteractionGeometry, sched: &KickSchedule, n: usize, m: usize| {
            let common = is_commuting_schedule(geom, sched, COMMUTE_TOL).expect("synchronised schedule");
            let gn = dephasing_gamma(env, &sched.prefix(n).unwrap(), &common.signs[..n]).unwrap();
            let gm = dephasing_gamma(env, &sched.prefix(m).unwrap(), &common.signs[..m]).unwrap();
            let short = build_n_kick_channel(env, geom, &sched.prefix(n).unwrap()).unwrap();
            let long = build_n_kick_channel(env, geom, &sched.prefix(m).unwrap()).unwrap();
            let Ok(theta) = transition_map(&long, &short) else {
                return;
            };
            if (gm.norm() - gn.norm()).abs() < 1e-9 {
                ties += 1;
                return;
            }
            checked += 1;
            let by_gamma = gm.norm() <= gn.norm();
            growths += usize::from(!by_gamma);
            mismatches += usize::from(is_cp(&theta, CP_TOL) != by_gamma);
        };

    for _ in 0..60 {
        let kicks = rng.random_range(2..=9);
        let env = {
            let nbar = rng.random_range(0.0..1.0);
            thermal(&mut rng, nbar)
        };
        let omega = rng.random_range(0.3..2.0);
        let (geom, times) = if rng.random::<bool>() {
            // coupling along the free axis: any times commute
            let h = unit(&mut rng);
            let g = InteractionGeometry::new(h, h, omega).unwrap();
            let mut t = 0.0;
            let times: Vec<f64> = (0..kicks)
                .map(|_| {
                    let x = t;
                    t += rng.random_range(0.1..1.0);
                    x
                })
                .collect();
            (g, times)
        } else {
            // perpendicular coupling: kicks on half periods flip the axis
            let h = unit(&mut rng);
            let a = {
                let v = unit(&mut rng);
                (v - h * h.dot(&v)).normalize()
            };
            let g = InteractionGeometry::new(h, a, omega).unwrap();
            let mut k = 0u32;
            let times: Vec<f64> = (0..kicks)
                .map(|_| {
                    let x = f64::from(k) * PI / omega;
                    k += rng.random_range(1..=2);
                    x
                })
                .collect();
            (g, times)
        };
        let weights: Vec<f64> = (0..kicks).map(|_| rng.random_range(0.2..0.6)).collect();
        let sched = KickSchedule::with_weights(times, weights).unwrap();
        let n = rng.random_range(1..kicks);
        let m = rng.random_range(n + 1..=kicks);
        run(&env, &geom, &sched, n, m);
    }
    // spin echo: a flip half a qubit period later undoes the first kick once the mode returns
    let env = SingleModeThermal::new(1.0, 0.3).unwrap();
    let geom = InteractionGeometry::new(Vector3::z(), Vector3::x(), 0.5).unwrap();
    let sched = KickSchedule::with_weights(vec![0.0, 2.0 * PI], vec![0.5, 0.5]).unwrap();
    run(&env, &geom, &sched, 1, 2);

    let detail = format!(
        "{checked} transitions ({growths} with |gamma_m| > |gamma_n|, {ties} ties skipped), mismatches {mismatches}"
    );
    if mismatches == 0 && growths > 0 && checked >= 50 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn nascent_delta() -> Outcome {
    let start = Instant::now();
    let env = SingleModeThermal::vacuum(1.0).unwrap();
    let geom = InteractionGeometry::new(Vector3::z(), Vector3::x(), 1.0).unwrap();
    let sched = KickSchedule::new(vec![1.0]).unwrap();
    let reference = single_kick_channel(&env, &geom, 1.0, 1.0).map_err(|e| e.to_string())?;
    let spec = FockSpec::from_thermal(&env, 30).map_err(|e| e.to_string())?;
    let study = nascent_delta_study(&spec, &geom, &sched, &reference, 0.2, 9, 100, PulseShape::Gaussian)
        .map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let (dt, d) = *study.rows.last().unwrap();
    let detail = format!(
        "{} steps from dt 0.2 to {dt:.2e}, finest distance {d:.2e} (tol 1e-4), monotone {}, {secs:.1} s (limit 60 s)",
        study.rows.len(),
        study.monotone
    );
    if study.monotone && d < 1e-4 && secs <= 60.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn unitality_entropy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut unital: Vec<QubitChannel> = Vec::new();
    for _ in 0..4 {
        let env = {
            let nbar = rng.random_range(0.0..2.0);
            thermal(&mut rng, nbar)
        };
        let geom = geometry(&mut rng);
        unital.push(single_kick_channel(&env, &geom, rng.random_range(0.0..3.0), 1.0).unwrap());
        let h = unit(&mut rng);
        let g = InteractionGeometry::new(h, h, 1.0).unwrap();
        unital.push(dephasing_channel(&env, &g, &schedule(&mut rng, 4)).unwrap());
        let white = WhiteKickKernel::new(rng.random_range(0.1..1.0)).unwrap();
        unital.push(build_n_kick_channel(&white, &geom, &schedule(&mut rng, 3)).unwrap());
    }
    let mut violations = 0;
    let mut worst_b = 0.0f64;
    for ch in &unital {
        worst_b = worst_b.max(ch.affine.b.amax());
        for _ in 0..1000 {
            let u = ball(&mut rng);
            let v = ch.affine.apply(&u);
            if entropy(&v, LogBase::E) < entropy(&u, LogBase::E) - 1e-12 {
                violations += 1;
            }
        }
    }
    let mut decrease = None;
    'search: for _ in 0..20 {
        let env = {
            let nbar = rng.random_range(0.0..1.0);
            thermal(&mut rng, nbar)
        };
        let geom = geometry(&mut rng);
        let ch = build_n_kick_channel(&env, &geom, &schedule(&mut rng, 2)).unwrap();
        for _ in 0..1000 {
            let u = ball(&mut rng);
            let drop = entropy(&u, LogBase::E) - entropy(&ch.affine.apply(&u), LogBase::E);
            if drop > 1e-6 {
                decrease = Some(drop);
                break 'search;
            }
        }
    }
    let detail = format!(
        "{} unital channels x 1000 states (max |b| {worst_b:.1e}), entropy violations {violations}, non-unital decrease {}",
        unital.len(),
        decrease.map_or("none".into(), |d| format!("{d:.3e}"))
    );
    if violations == 0 && decrease.is_some() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn contractivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut channels: Vec<QubitChannel> = Vec::new();
    for kicks in 1..=4 {
        for nbar in [0.0, 0.5, 2.0] {
            let env = thermal(&mut rng, nbar);
            let geom = geometry(&mut rng);
            channels.push(build_n_kick_channel(&env, &geom, &schedule(&mut rng, kicks)).unwrap());
            let shifted = env.clone().with_displacement(C64::new(0.4, -0.3));
            channels.push(build_n_kick_channel(&shifted, &geom, &schedule(&mut rng, kicks)).unwrap());
        }
        let white = WhiteKickKernel::new(0.7).unwrap();
        channels.push(build_n_kick_channel(&white, &geometry(&mut rng), &schedule(&mut rng, kicks)).unwrap());
    }
    let env = thermal(&mut rng, 0.5);
    let geom = geometry(&mut rng);
    let sched = schedule(&mut rng, 2);
    channels.push(two_kick_closed_form_scheduled(&env, &geom, &sched).unwrap());
    channels.push(single_kick_channel(&env, &geom, 0.3, 0.8).unwrap());
    let h = unit(&mut rng);
    channels.push(
        dephasing_channel(
            &env,
            &InteractionGeometry::new(h, h, 1.0).unwrap(),
            &schedule(&mut rng, 5),
        )
        .unwrap(),
    );

    let mut worst = f64::NEG_INFINITY;
    for ch in &channels {
        for _ in 0..1000 {
            let (u1, u2) = (ball(&mut rng), ball(&mut rng));
            let d_in = trace_distance(&u1, &u2);
            let d_out = trace_distance(&ch.affine.apply(&u1), &ch.affine.apply(&u2));
            worst = worst.max(d_out - d_in);
        }
    }
    let detail = format!(
        "{} channels x 1000 pairs, max (D_out - D_in) {worst:.2e} (tol 1e-12)",
        channels.len()
    );
    if worst <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fixed_points() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut worst_eq, mut worst_it) = (0.0f64, 0.0f64);
    let mut contractive = 0;
    let mut total = 0;
    while total < 80 {
        let env = {
            let nbar = rng.random_range(0.0..1.0);
            thermal(&mut rng, nbar)
        };
        let geom = geometry(&mut rng);
        let round = build_n_kick_channel(&env, &geom, &{
            let n = rng.random_range(1..=4);
            schedule(&mut rng, n)
        })
        .unwrap();
        total += 1;
        let Ok(fp) = fixed_point(&round) else { continue };
        if fp.unique {
            let resid = (round.affine.apply(&fp.u_f).0 - fp.u_f.0).amax();
            worst_eq = worst_eq.max(resid);
        }
        if fp.spectral_radius < 0.97 {
            contractive += 1;
            let it = iterate_round(&round, &ball(&mut rng), 1000);
            worst_it = worst_it.max((it.0 - fp.u_f.0).amax());
        }
    }
    let detail = format!(
        "{total} rounds, residual {worst_eq:.2e} (tol 1e-10); {contractive} contractive, iteration gap {worst_it:.2e} (tol 1e-8)"
    );
    if worst_eq <= 1e-10 && worst_it <= 1e-8 && contractive >= 30 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sorted_singular_values(ch: &QubitChannel) -> [f64; 3] {
    let mut s: Vec<f64> = ch.affine.a.singular_values().iter().copied().collect();
    s.sort_by(f64::total_cmp);
    [s[0], s[1], s[2]]
}

fn singular_value_change(
    env: &SingleModeThermal,
    shift: MeanFunction,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
) -> f64 {
    let base = build_n_kick_channel(env, geom, sched).unwrap();
    let shifted = build_n_kick_channel(&MeanShifted::new(env.clone(), shift), geom, sched).unwrap();
    let (a, b) = (sorted_singular_values(&base), sorted_singular_values(&shifted));
    a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn random_shift(rng: &mut ChaCha8Rng, constant: bool) -> MeanFunction {
    if constant {
        MeanFunction::Constant(rng.random_range(-1.0..1.0))
    } else {
        MeanFunction::Cosine {
            amplitude: rng.random_range(0.1..1.5),
            frequency: rng.random_range(0.2..3.0),
            phase: rng.random_range(0.0..2.0 * PI),
        }
    }
}

/// Each kick's mean is a rotation about that kick's own axis. The first and last
/// rotations move to the outside of the channel, so the invariance is exact for one
/// or two kicks and for synchronised schedules; interior rotations of longer generic
/// schedules do change the singular values, which is reported alongside.
fn mean_shift_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    let mut count = 0;
    for i in 0..60 {
        let env = {
            let nbar = rng.random_range(0.0..2.0);
            thermal(&mut rng, nbar)
        };
        let shift = random_shift(&mut rng, i % 2 == 0);
        let (geom, sched) = if i % 3 == 2 {
            let h = unit(&mut rng);
            let g = InteractionGeometry::new(h, h, rng.random_range(0.3..2.0)).unwrap();
            (g, {
                let n = rng.random_range(3..=6);
                schedule(&mut rng, n)
            })
        } else {
            (geometry(&mut rng), schedule(&mut rng, 1 + i % 3))
        };
        worst = worst.max(singular_value_change(&env, shift, &geom, &sched));
        count += 1;
    }
    let mut interior = 0.0f64;
    for _ in 0..10 {
        let env = thermal(&mut rng, 0.5);
        let shift = random_shift(&mut rng, false);
        let geom = geometry(&mut rng);
        let sched = schedule(&mut rng, 3);
        interior = interior.max(singular_value_change(&env, shift, &geom, &sched));
    }
    let detail = format!(
        "{count} instances (1-2 kicks, synchronised up to 6), max singular-value change {worst:.2e} (tol 1e-10); \
         generic 3-kick schedules change by up to {interior:.2e}"
    );
    if worst <= 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; a name filter that matches nothing skips the suite.
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !filter.is_empty() && !filter.iter().any(|f| "acceptance".contains(f.as_str())) {
        return;
    }
    let instances = two_kick_instances();
    let criteria: Vec<Check> = vec![
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("closed-form consistency", Box::new(closed_form_consistency)),
        ("factorization limit", Box::new(factorization_limit)),
        (
            "chi eigenvalue formulas",
            Box::new(|| chi_eigenvalue_formulas(&instances)),
        ),
        (
            "two-kick divisibility equivalence",
            Box::new(|| divisibility_equivalence(&instances)),
        ),
        ("dephasing divisibility", Box::new(dephasing_divisibility_check)),
        ("nascent-delta convergence", Box::new(nascent_delta)),
        ("unitality and entropy", Box::new(unitality_entropy)),
        ("contractivity", Box::new(contractivity)),
        ("fixed point", Box::new(fixed_points)),
        ("mean-shift invariance", Box::new(mean_shift_invariance)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
