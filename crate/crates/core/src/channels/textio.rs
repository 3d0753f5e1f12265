// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Plain-text form of a qubit map.
//!
//! ```text
//! # deltakick qubit map
//! kind: channel                  # or: transition
//! env: thermal(omega=1,nbar=0,alpha0=0+0i)
//! times: t_0 ... t_N
//! weights: w_0 ... w_N
//! condition: c                   # optional
//! axes:
//! x y z                          # N+1 rows, r(t_k)
//! basis:
//! b00 b01 b10 b11                # 4 rows, one 2x2 element each, row-major, a+bi
//! chi:
//! c00 c01 c02 c03                # 4 rows, a+bi
//! A:
//! a00 a01 a02                    # 3 rows
//! b: b0 b1 b2
//! ```
//!
//! Reals use 17 significant digits so that a write/parse cycle is lossless.

use nalgebra::{Matrix3, Vector3};

use super::{ChannelMeta, QubitMap};
use crate::error::{Error, Result};
use crate::pauli::{AffineBlochMap, ChiMatrix, Complex2x2, OperatorBasis, C64};
use crate::textfmt::{fmt_c64, fmt_f64, parse_c64, parse_f64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Channel,
    Transition,
}

impl MapKind {
    fn as_str(self) -> &'static str {
        match self {
            MapKind::Channel => "channel",
            MapKind::Transition => "transition",
        }
    }
}

fn join_f64(v: impl IntoIterator<Item = f64>) -> String {
    v.into_iter().map(fmt_f64).collect::<Vec<_>>().join(" ")
}

fn join_c64(v: impl IntoIterator<Item = C64>) -> String {
    v.into_iter().map(fmt_c64).collect::<Vec<_>>().join(" ")
}

pub fn write_map(map: &QubitMap, kind: MapKind) -> String {
    let mut out = String::from("# deltakick qubit map\n");
    out += &format!("kind: {}\n", kind.as_str());
    out += &format!("env: {}\n", map.meta.env_id);
    out += &format!("times: {}\n", join_f64(map.meta.times.iter().copied()));
    out += &format!("weights: {}\n", join_f64(map.meta.weights.iter().copied()));
    if let Some(c) = map.meta.condition {
        out += &format!("condition: {}\n", fmt_f64(c));
    }
    out += "axes:\n";
    for r in &map.meta.axes {
        out += &join_f64(r.iter().copied());
        out.push('\n');
    }
    out += "basis:\n";
    for b in map.basis.elements() {
        out += &join_c64([b[(0, 0)], b[(0, 1)], b[(1, 0)], b[(1, 1)]]);
        out.push('\n');
    }
    out += "chi:\n";
    for i in 0..4 {
        out += &join_c64((0..4).map(|j| map.chi[(i, j)]));
        out.push('\n');
    }
    out += "A:\n";
    for i in 0..3 {
        out += &join_f64((0..3).map(|j| map.affine.a[(i, j)]));
        out.push('\n');
    }
    out += &format!("b: {}\n", join_f64(map.affine.b.iter().copied()));
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Option<&'a str> {
        for (i, raw) in self.inner.by_ref() {
            let l = raw.trim();
            if !l.is_empty() && !l.starts_with('#') {
                self.line = i + 1;
                return Some(l);
            }
        }
        None
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            msg: msg.into(),
        }
    }

    fn expect(&mut self) -> Result<&'a str> {
        self.next().ok_or_else(|| self.err("unexpected end of input"))
    }

    fn reals(&self, s: &str, n: Option<usize>) -> Result<Vec<f64>> {
        let v = s
            .split_whitespace()
            .map(|t| parse_f64(t).ok_or_else(|| self.err(format!("cannot parse '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        match n {
            Some(n) if v.len() != n => Err(self.err(format!("expected {n} values, found {}", v.len()))),
            _ => Ok(v),
        }
    }

    fn complexes(&self, s: &str, n: usize) -> Result<Vec<C64>> {
        let v = s
            .split_whitespace()
            .map(|t| parse_c64(t).ok_or_else(|| self.err(format!("cannot parse '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        if v.len() != n {
            return Err(self.err(format!("expected {n} values, found {}", v.len())));
        }
        Ok(v)
    }

    fn row_reals(&mut self, n: usize) -> Result<Vec<f64>> {
        let l = self.expect()?;
        self.reals(l, Some(n))
    }

    fn row_complexes(&mut self, n: usize) -> Result<Vec<C64>> {
        let l = self.expect()?;
        self.complexes(l, n)
    }

    fn header_reals(&mut self, key: &str, n: Option<usize>) -> Result<Vec<f64>> {
        let l = self.header(key)?;
        self.reals(l, n)
    }

    fn header(&mut self, key: &str) -> Result<&'a str> {
        let l = self.expect()?;
        l.strip_prefix(key)
            .and_then(|r| r.strip_prefix(':'))
            .map(str::trim)
            .ok_or_else(|| self.err(format!("expected '{key}:'")))
    }
}

pub fn parse_map(text: &str) -> Result<(MapKind, QubitMap)> {
    let mut it = Lines {
        inner: text.lines().enumerate(),
        line: 0,
    };
    let kind = match it.header("kind")? {
        "channel" => MapKind::Channel,
        "transition" => MapKind::Transition,
        other => return Err(it.err(format!("unknown map kind '{other}'"))),
    };
    let env_id = it.header("env")?.to_string();
    let times = it.header_reals("times", None)?;
    let weights = it.header_reals("weights", Some(times.len()))?;

    let mut condition = None;
    let mut next = it.expect()?;
    if let Some(c) = next.strip_prefix("condition:") {
        condition = Some(it.reals(c, Some(1))?[0]);
        next = it.expect()?;
    }
    if next != "axes:" {
        return Err(it.err("expected 'axes:'"));
    }
    let mut axes = Vec::with_capacity(times.len());
    for _ in 0..times.len() {
        let v = it.row_reals(3)?;
        axes.push(Vector3::new(v[0], v[1], v[2]));
    }

    if !it.header("basis")?.is_empty() {
        return Err(it.err("unexpected data after 'basis:'"));
    }
    let mut elems = [Complex2x2::zeros(); 4];
    for e in &mut elems {
        let v = it.row_complexes(4)?;
        *e = Complex2x2::new(v[0], v[1], v[2], v[3]);
    }
    let basis = OperatorBasis::new(elems)?;

    if !it.header("chi")?.is_empty() {
        return Err(it.err("unexpected data after 'chi:'"));
    }
    let mut chi = ChiMatrix::zeros();
    for i in 0..4 {
        for (j, z) in it.row_complexes(4)?.into_iter().enumerate() {
            chi[(i, j)] = z;
        }
    }

    if !it.header("A")?.is_empty() {
        return Err(it.err("unexpected data after 'A:'"));
    }
    let mut a = Matrix3::zeros();
    for i in 0..3 {
        for (j, x) in it.row_reals(3)?.into_iter().enumerate() {
            a[(i, j)] = x;
        }
    }
    let b = it.header_reals("b", Some(3))?;
    if it.next().is_some() {
        return Err(it.err("trailing content"));
    }

    let meta = ChannelMeta {
        times,
        weights,
        env_id,
        axes,
        condition,
    };
    let map = QubitMap {
        affine: AffineBlochMap::new(a, Vector3::new(b[0], b[1], b[2])),
        chi,
        basis,
        meta,
    };
    Ok((kind, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{build_n_kick_channel, invert_channel};
    use crate::environment::SingleModeThermal;
    use crate::kicks::{InteractionGeometry, KickSchedule};

    #[test]
    fn round_trip_is_exact() {
        let env = SingleModeThermal::new(1.2, 0.4)
            .unwrap()
            .with_displacement(C64::new(0.1, 0.2));
        let geom = InteractionGeometry::new(Vector3::z(), Vector3::new(0.8, 0.0, 0.6), 1.3).unwrap();
        let ch = build_n_kick_channel(&env, &geom, &KickSchedule::new(vec![0.0, 0.7, 1.5]).unwrap()).unwrap();
        let text = write_map(&ch, MapKind::Channel);
        let (kind, back) = parse_map(&text).unwrap();
        assert_eq!(kind, MapKind::Channel);
        assert_eq!(back, ch.0);

        let inv = invert_channel(&ch).unwrap();
        let (kind, back) = parse_map(&write_map(&inv, MapKind::Transition)).unwrap();
        assert_eq!(kind, MapKind::Transition);
        assert_eq!(back, inv.0);
    }

    #[test]
    fn reports_line_of_error() {
        let env = SingleModeThermal::vacuum(1.0).unwrap();
        let geom = InteractionGeometry::new(Vector3::z(), Vector3::x(), 1.0).unwrap();
        let ch = build_n_kick_channel(&env, &geom, &KickSchedule::new(vec![0.0]).unwrap()).unwrap();
        let text = write_map(&ch, MapKind::Channel).replace("A:\n", "A:\n1 2\n");
        let err = parse_map(&text).unwrap_err();
        assert!(matches!(err, Error::Parse { line, .. } if line > 10), "{err}");
        assert!(parse_map("kind: channel\n").is_err());
    }
}
