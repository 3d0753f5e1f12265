// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use deltakick::analysis::{two_kick_divisibility, PositivityOptions, CP_TOL};
use deltakick::channels::build_n_kick_channel;
use deltakick::environment::SingleModeThermal;
use deltakick::kicks::{InteractionGeometry, KickSchedule};
use nalgebra::Vector3;

fn main() -> deltakick::Result<()> {
    let env = SingleModeThermal::new(1.0, 0.5)?;
    let geom = InteractionGeometry::new(Vector3::z(), Vector3::x(), 1.3)?;
    let sched = KickSchedule::with_weights(vec![0.0, 0.8], vec![0.6, 0.6])?;

    let channel = build_n_kick_channel(&env, &geom, &sched)?;
    println!("A = {}, b = {}", channel.affine.a, channel.affine.b);

    let (_theta, report) = two_kick_divisibility(&env, &geom, &sched, CP_TOL, &PositivityOptions::default())?;
    print!("{}", report.to_text());
    Ok(())
}
