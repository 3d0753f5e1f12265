// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use rayon::prelude::*;

use super::config::{Model, Quantity, RunConfig, SweepParameter};
use super::output::{fmt_num, write_atomic, Csv, KeyValues};
use super::CliError;
use crate::analysis::{
    chi_eigenvalues, dephasing_divisibility, divisibility_report, entropy, fixed_point, iterate_round, purity,
    two_kick_divisibility, DivisibilityReport, LogBase, PositivityOptions,
};
use crate::channels::{
    build_n_kick_channel_with, dephasing_gamma, gamma_from_moments, transition_map, write_map, BuildOptions, MapKind,
    QubitChannel,
};
use crate::environment::{GaussianEnvironment, KickMoments};
use crate::error::{Error, Result};
use crate::kicks::{is_commuting_schedule, InteractionGeometry, KickSchedule, COMMUTE_TOL};
use crate::oracle::{
    channel_distance_seeded, nascent_delta_study, oracle_channel, FockSpec, PulseShape, DIM_STEP, DISTANCE_SEED,
};
use crate::pauli::BlochVector;
use crate::textfmt::fmt_f64;

/// Configuration merged with command-line overrides.
pub struct Settings {
    pub cfg: RunConfig,
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub log_base: LogBase,
    pub tol: f64,
    pub max_kicks: usize,
}

impl Settings {
    fn build_opts(&self) -> BuildOptions {
        BuildOptions {
            max_kicks: self.max_kicks,
            parallel: false,
        }
    }

    fn positivity(&self) -> PositivityOptions {
        PositivityOptions {
            tol: self.tol,
            n_samples: self.cfg.analysis.samples,
            seed: self.seed,
        }
    }

    fn require_schedule(&self) -> Result<KickSchedule> {
        self.cfg
            .schedule()?
            .ok_or_else(|| Error::Config("this command needs at least one kick in schedule.times".into()))
    }
}

fn vec_str(u: &BlochVector) -> String {
    format!("{} {} {}", fmt_f64(u.0.x), fmt_f64(u.0.y), fmt_f64(u.0.z))
}

fn trajectory(
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    sched: Option<&KickSchedule>,
    u0: &BlochVector,
    s: &Settings,
) -> Result<(QubitChannel, Csv)> {
    let mut csv = Csv::new(["kick_index", "t", "u_x", "u_y", "u_z", "purity", "entropy"]);
    let row = |k: usize, t: f64, u: &BlochVector| {
        vec![
            k.to_string(),
            fmt_num(t),
            fmt_num(u.0.x),
            fmt_num(u.0.y),
            fmt_num(u.0.z),
            fmt_num(purity(u)),
            fmt_num(entropy(u, s.log_base)),
        ]
    };
    let Some(sched) = sched else {
        csv.push(row(0, 0.0, u0));
        return Ok((QubitChannel::identity(), csv));
    };
    csv.push(row(0, sched.times()[0], u0));
    let mut last = QubitChannel::identity();
    for k in 1..=sched.len() {
        last = build_n_kick_channel_with(env, geom, &sched.prefix(k)?, s.build_opts())?;
        csv.push(row(k, sched.times()[k - 1], &last.affine.apply(u0)));
    }
    Ok((last, csv))
}

pub fn simulate(s: &Settings) -> std::result::Result<String, CliError> {
    let env = s.cfg.environment()?;
    let geom = s.cfg.geometry()?;
    let sched = s.cfg.schedule()?;
    let u0 = s.cfg.initial_state()?;
    let (channel, csv) = trajectory(env.as_ref(), &geom, sched.as_ref(), &u0, s)?;
    write_atomic(&s.out, "channel.txt", &write_map(&channel, MapKind::Channel))?;
    write_atomic(&s.out, "trajectory.csv", &csv.render())?;
    let mut msg = format!("wrote {} trajectory rows to {}\n", csv.len(), s.out.display());
    let fin = channel.affine.apply(&u0);
    msg += &format!("final u = ({})\npurity = {}\n", vec_str(&fin), fmt_f64(purity(&fin)));
    if s.cfg.analysis.entropy {
        msg += &format!("entropy = {}\n", fmt_f64(entropy(&fin, s.log_base)));
    }
    if let Some(sched) = sched.as_ref() {
        if s.cfg.analysis.fixed_point {
            msg += &fixed_point_summary(&channel, &u0)?;
        }
        if s.cfg.analysis.divisibility && sched.len() >= 2 {
            msg += &divisibility_reports(env.as_ref(), &geom, sched, s)?.0;
        }
        if s.cfg.analysis.oracle_check {
            let (text, passed) = oracle_report(&geom, sched, &channel, s)?;
            msg += &text;
            if !passed {
                return Err(CliError::OracleTolerance(msg));
            }
        }
    }
    Ok(msg)
}

fn fixed_point_summary(round: &QubitChannel, u0: &BlochVector) -> Result<String> {
    let fp = fixed_point(round)?;
    let it = iterate_round(round, u0, 1000);
    Ok(format!(
        "fixed point u_f = ({})\nspectral radius = {}\nunique = {}\nconverged = {}\n|iterate_1000 - u_f| = {}\n",
        vec_str(&fp.u_f),
        fmt_f64(fp.spectral_radius),
        fp.unique,
        fp.converged,
        fmt_f64((it.0 - fp.u_f.0).norm())
    ))
}

pub fn fixed_point_cmd(s: &Settings) -> std::result::Result<String, CliError> {
    let env = s.cfg.environment()?;
    let geom = s.cfg.geometry()?;
    let sched = s.require_schedule()?;
    let u0 = s.cfg.initial_state()?;
    let round = build_n_kick_channel_with(env.as_ref(), &geom, &sched, s.build_opts())?;
    let fp = fixed_point(&round)?;
    let it = iterate_round(&round, &u0, 1000);
    let mut kv = KeyValues::default();
    kv.put_f64("u_f_x", fp.u_f.0.x)
        .put_f64("u_f_y", fp.u_f.0.y)
        .put_f64("u_f_z", fp.u_f.0.z)
        .put_f64("u_f_norm", fp.u_f.norm())
        .put_f64("spectral_radius", fp.spectral_radius)
        .put("unique", fp.unique)
        .put("converged", fp.converged)
        .put_f64("iterate_distance", (it.0 - fp.u_f.0).norm());
    write_atomic(&s.out, "fixed_point.kv", &kv.render())?;
    Ok(fixed_point_summary(&round, &u0)?)
}

/// One report per consecutive transition; keys are prefixed `stepK.` when there is more than one.
fn divisibility_reports(
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
    s: &Settings,
) -> Result<(String, String)> {
    if sched.len() == 2 {
        let (_, rep) = two_kick_divisibility(env, geom, sched, s.tol, &s.positivity())?;
        return Ok((rep.to_text(), rep.to_key_values()));
    }
    let mut text = String::new();
    let mut kv = String::new();
    let mut prev = build_n_kick_channel_with(env, geom, &sched.prefix(1)?, s.build_opts())?;
    let (mut all_cp, mut all_p) = (true, true);
    for k in 2..=sched.len() {
        let next = build_n_kick_channel_with(env, geom, &sched.prefix(k)?, s.build_opts())?;
        let theta = transition_map(&next, &prev)?;
        let rep = divisibility_report(&theta, s.tol, &s.positivity());
        all_cp &= rep.cp_divisible;
        all_p &= rep.p_divisible;
        text += &format!("step {} -> {} kicks\n{}", k - 1, k, rep.to_text());
        for line in rep.to_key_values().lines() {
            kv += &format!("step{}.{line}\n", k - 1);
        }
        prev = next;
    }
    text += &format!("overall: CP-divisible {all_cp}, P-divisible {all_p}\n");
    kv = format!("cp_divisible={all_cp}\np_divisible={all_p}\n{kv}");
    Ok((text, kv))
}

fn dephasing_report(
    env: &dyn GaussianEnvironment,
    geom: &InteractionGeometry,
    sched: &KickSchedule,
    n: usize,
    m: usize,
    tol: f64,
) -> Result<DivisibilityReport> {
    if !(1 <= n && n < m && m <= sched.len()) {
        return Err(Error::Config(format!(
            "dephasing pair needs 1 <= n < m <= {} kicks, got n={n}, m={m}",
            sched.len()
        )));
    }
    let common = is_commuting_schedule(geom, sched, COMMUTE_TOL).ok_or(Error::NonCommutingSchedule)?;
    let gn = dephasing_gamma(env, &sched.prefix(n)?, &common.signs[..n])?;
    let gm = dephasing_gamma(env, &sched.prefix(m)?, &common.signs[..m])?;
    dephasing_divisibility(gm, gn, tol)
}

pub fn divisibility(s: &Settings) -> std::result::Result<String, CliError> {
    let env = s.cfg.environment()?;
    let geom = s.cfg.geometry()?;
    let sched = s.require_schedule()?;
    let (text, kv) = if let Some(pair) = s.cfg.dephasing {
        let rep = dephasing_report(env.as_ref(), &geom, &sched, pair.n, pair.m, s.tol)?;
        (rep.to_text(), rep.to_key_values())
    } else {
        if sched.len() < 2 {
            return Err(Error::Config("divisibility needs at least two kicks or a [dephasing] pair".into()).into());
        }
        divisibility_reports(env.as_ref(), &geom, &sched, s)?
    };
    write_atomic(&s.out, "divisibility.txt", &text)?;
    write_atomic(&s.out, "divisibility.kv", &kv)?;
    Ok(text)
}

fn apply_parameter(cfg: &mut RunConfig, p: SweepParameter, v: f64) -> Result<()> {
    match p {
        SweepParameter::Gap => {
            let t0 = cfg.schedule.times.first().copied().unwrap_or(0.0);
            cfg.schedule.times = vec![t0, t0 + v];
            if let Some(w) = cfg.schedule.weights.as_mut() {
                w.resize(2, 1.0);
            }
        }
        SweepParameter::Nbar => {
            if !matches!(cfg.environment.model, Model::Thermal) {
                return Err(Error::Config("sweeping nbar needs the thermal model".into()));
            }
            cfg.environment.beta = None;
            cfg.environment.nbar = Some(v);
        }
        SweepParameter::Omega => cfg.geometry.omega = v,
        SweepParameter::EnvOmega => {
            if !matches!(cfg.environment.model, Model::Thermal) {
                return Err(Error::Config("sweeping env_omega needs the thermal model".into()));
            }
            cfg.environment.omega = Some(v);
        }
        SweepParameter::Variance => {
            if !matches!(cfg.environment.model, Model::White) {
                return Err(Error::Config("sweeping variance needs the white model".into()));
            }
            cfg.environment.variance = Some(v);
        }
    }
    Ok(())
}

fn point_quantities(cfg: &RunConfig, quantities: &[Quantity], s: &Settings) -> Result<Vec<f64>> {
    let env = cfg.environment()?;
    let geom = cfg.geometry()?;
    let sched = cfg
        .schedule()?
        .ok_or_else(|| Error::Config("sweep needs at least one kick".into()))?;
    let u0 = cfg.initial_state()?;
    let opts = s.build_opts();
    let mut channel: Option<QubitChannel> = None;
    let mut get_channel = || -> Result<QubitChannel> {
        if channel.is_none() {
            channel = Some(build_n_kick_channel_with(env.as_ref(), &geom, &sched, opts)?);
        }
        Ok(channel.clone().expect("channel built above"))
    };
    let mut out = Vec::with_capacity(quantities.len());
    for q in quantities {
        let v = match q {
            Quantity::GammaAbs => {
                let m = KickMoments::new(env.as_ref(), sched.times(), sched.weights())?;
                let plus = vec![1.0; sched.len()];
                let minus = vec![-1.0; sched.len()];
                gamma_from_moments(&m, &plus, &minus).norm()
            }
            Quantity::Purity => purity(&get_channel()?.affine.apply(&u0)),
            Quantity::Entropy => entropy(&get_channel()?.affine.apply(&u0), s.log_base),
            Quantity::Lambda4 => {
                if sched.len() < 2 {
                    f64::NAN
                } else {
                    let prev = build_n_kick_channel_with(env.as_ref(), &geom, &sched.prefix(sched.len() - 1)?, opts)?;
                    match transition_map(&get_channel()?, &prev) {
                        Ok(theta) => chi_eigenvalues(&theta)[3],
                        Err(Error::SingularChannel(_)) => f64::NAN,
                        Err(e) => return Err(e),
                    }
                }
            }
            Quantity::FixedPointNorm => match fixed_point(&get_channel()?) {
                Ok(fp) => fp.u_f.norm(),
                Err(Error::NonContractive) => f64::NAN,
                Err(e) => return Err(e),
            },
            Quantity::Commuting => {
                if is_commuting_schedule(&geom, &sched, COMMUTE_TOL).is_some() {
                    1.0
                } else {
                    0.0
                }
            }
        };
        out.push(v);
    }
    Ok(out)
}

pub fn sweep(s: &Settings) -> std::result::Result<String, CliError> {
    let sw = s
        .cfg
        .sweep
        .clone()
        .ok_or_else(|| Error::Config("sweep needs a [sweep] section".into()))?;
    if sw.quantities.is_empty() {
        return Err(Error::Config("sweep.quantities is empty".into()).into());
    }
    let first = sw.first().values()?;
    let second = match &sw.second {
        Some(a) => Some((a.parameter, a.values()?)),
        None => None,
    };
    let mut points: Vec<(f64, Option<f64>)> = Vec::new();
    for &x in &first {
        match &second {
            Some((_, ys)) => points.extend(ys.iter().map(|&y| (x, Some(y)))),
            None => points.push((x, None)),
        }
    }

    let rows: Vec<Result<Vec<f64>>> = points
        .par_iter()
        .map(|&(x, y)| {
            let mut cfg = s.cfg.clone();
            apply_parameter(&mut cfg, sw.parameter, x)?;
            if let (Some((p, _)), Some(y)) = (&second, y) {
                apply_parameter(&mut cfg, *p, y)?;
            }
            match point_quantities(&cfg, &sw.quantities, s) {
                Ok(v) => Ok(v),
                // A grid point outside the model's domain (e.g. coincident kicks) yields a row of NaNs.
                Err(Error::InvalidSchedule(_) | Error::InvalidEnvironment(_) | Error::NonUnitVector(_)) => {
                    Ok(vec![f64::NAN; sw.quantities.len()])
                }
                Err(e) => Err(e),
            }
        })
        .collect();

    let name = |p: SweepParameter| {
        match p {
            SweepParameter::Gap => "gap",
            SweepParameter::Nbar => "nbar",
            SweepParameter::Omega => "omega",
            SweepParameter::EnvOmega => "env_omega",
            SweepParameter::Variance => "variance",
        }
        .to_string()
    };
    let mut header = vec![name(sw.parameter)];
    if let Some((p, _)) = &second {
        header.push(name(*p));
    }
    header.extend(sw.quantities.iter().map(|q| q.column().to_string()));
    let mut csv = Csv::new(header);
    for ((x, y), r) in points.iter().zip(rows) {
        let mut row = vec![*x];
        row.extend(y);
        row.extend(r?);
        csv.push_f64(&row);
    }
    write_atomic(&s.out, "sweep.csv", &csv.render())?;
    Ok(format!(
        "wrote {} sweep rows to {}\n",
        csv.len(),
        s.out.join("sweep.csv").display()
    ))
}

/// Runs the Fock oracle; returns the report text and whether the distance met the tolerance.
fn oracle_report(
    geom: &InteractionGeometry,
    sched: &KickSchedule,
    analytic: &QubitChannel,
    s: &Settings,
) -> Result<(String, bool)> {
    let base = s.cfg.fock_spec()?;
    let seed = s.seed.unwrap_or(DISTANCE_SEED);
    let mut table = Csv::new(["dim", "change", "tail"]);
    let fixed = s.cfg.oracle.dim.is_some();
    let mut dim = base.dim;
    let result = loop {
        match oracle_channel(&base.with_dim(dim), geom, sched) {
            Ok(r) => {
                table.push_f64(&[r.dim as f64, r.change, r.tail]);
                break r;
            }
            Err(Error::TruncationNotConverged { dim: d, change, tail }) => {
                table.push_f64(&[d as f64, change, tail]);
                if fixed || dim + DIM_STEP > s.cfg.oracle.max_dim {
                    write_atomic(&s.out, "oracle_convergence.csv", &table.render())?;
                    return Err(Error::TruncationNotConverged { dim: d, change, tail });
                }
                dim += DIM_STEP;
            }
            Err(e) => return Err(e),
        }
    };
    let distance = channel_distance_seeded(analytic, &result.channel, seed);
    let tol = s.cfg.oracle.tolerance;
    let passed = distance <= tol;
    let mut kv = KeyValues::default();
    kv.put_f64("distance", distance)
        .put("dim", result.dim)
        .put_f64("change", result.change)
        .put_f64("tail", result.tail)
        .put_f64("tolerance", tol)
        .put("passed", passed);
    let mut text = format!(
        "oracle distance = {}\ndim = {}\nconvergence table:\n{}",
        fmt_f64(distance),
        result.dim,
        table.render()
    );
    write_atomic(&s.out, "oracle_convergence.csv", &table.render())?;

    if s.cfg.oracle.nascent {
        let o = &s.cfg.oracle;
        let spec: FockSpec = base.with_dim(result.dim);
        let study = nascent_delta_study(
            &spec,
            geom,
            sched,
            analytic,
            o.nascent_dt0,
            o.nascent_halvings,
            o.nascent_steps,
            PulseShape::from(o.shape),
        )?;
        let mut csv = Csv::new(["delta_t", "distance"]);
        for &(dt, d) in &study.rows {
            csv.push_f64(&[dt, d]);
        }
        write_atomic(&s.out, "nascent.csv", &csv.render())?;
        kv.put("nascent_monotone", study.monotone)
            .put_f64("nascent_finest", study.finest())
            .put_f64("nascent_extrapolated", study.extrapolated);
        text += &format!(
            "nascent-delta convergence:\n{}monotone = {}\nextrapolated distance = {}\n",
            csv.render(),
            study.monotone,
            fmt_f64(study.extrapolated)
        );
    }
    write_atomic(&s.out, "oracle_check.kv", &kv.render())?;
    Ok((text, passed))
}

pub fn oracle_check(s: &Settings) -> std::result::Result<String, CliError> {
    let geom = s.cfg.geometry()?;
    let sched = s.require_schedule()?;
    let env = s.cfg.thermal()?;
    let analytic = build_n_kick_channel_with(&env, &geom, &sched, s.build_opts())?;
    let (text, passed) = oracle_report(&geom, &sched, &analytic, s)?;
    if passed {
        Ok(text)
    } else {
        Err(CliError::OracleTolerance(text))
    }
}
