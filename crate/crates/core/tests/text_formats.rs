// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use deltakick::channels::{build_n_kick_channel, invert_channel, parse_map, write_map, MapKind};
use deltakick::environment::{GaussianEnvironment, SingleModeThermal, TabulatedKernel};
use deltakick::kicks::{InteractionGeometry, KickSchedule};
use nalgebra::Vector3;

fn geometry() -> InteractionGeometry {
    InteractionGeometry::new(Vector3::new(0.0, 0.6, 0.8), Vector3::x(), 1.1).unwrap()
}

#[test]
fn channel_file_round_trips_exactly() {
    let env = SingleModeThermal::new(1.4, 0.7).unwrap();
    let sched = KickSchedule::with_weights(vec![0.1, 0.9, 1.6], vec![0.5, 0.7, 0.4]).unwrap();
    let ch = build_n_kick_channel(&env, &geometry(), &sched).unwrap();
    let text = write_map(&ch, MapKind::Channel);
    let (kind, back) = parse_map(&text).unwrap();
    assert_eq!(kind, MapKind::Channel);
    assert_eq!(back, ch.0);
    assert_eq!(write_map(&back, kind), text);

    let inv = invert_channel(&ch).unwrap();
    let (kind, back) = parse_map(&write_map(&inv, MapKind::Transition)).unwrap();
    assert_eq!(kind, MapKind::Transition);
    assert_eq!(back.meta.condition, inv.meta.condition);
}

#[test]
fn tabulated_kernel_reproduces_thermal_channel() {
    let env = SingleModeThermal::new(0.9, 0.3).unwrap();
    let sched = KickSchedule::new(vec![0.0, 0.7]).unwrap();
    let table = TabulatedKernel::sample(&env, sched.times()).unwrap();
    let reparsed = TabulatedKernel::parse(&table.to_text()).unwrap();
    assert_eq!(reparsed.id(), table.id());

    let a = build_n_kick_channel(&env, &geometry(), &sched).unwrap();
    let b = build_n_kick_channel(&reparsed, &geometry(), &sched).unwrap();
    assert!(a.max_diff(&b) < 1e-14);
}

#[test]
fn malformed_inputs_report_line_numbers() {
    let err = parse_map("kind: channel\nenv: x\ntimes: zero\n").unwrap_err();
    assert!(err.to_string().contains("line"), "{err}");
    assert!(TabulatedKernel::parse("times: 0 1\ncovariance:\n1 0\n").is_err());
}
