// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Number formatting shared by every text output: 17 significant digits,
//! `.` decimal separator, complex numbers as `a+bi`.

use crate::pauli::C64;

pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        // avoid "-0" round-trip surprises
        return format!("{:.16e}", 0.0f64);
    }
    format!("{x:.16e}")
}

pub fn fmt_c64(z: C64) -> String {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", fmt_f64(z.re), sign, fmt_f64(im.abs()))
}

pub fn parse_f64(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok()
}

/// Parses `a+bi`, `a-bi`, a bare real `a`, or a bare imaginary `bi`.
pub fn parse_c64(s: &str) -> Option<C64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return parse_f64(s).map(|re| C64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = parse_f64(&body[..k])?;
            let im = parse_f64(&body[k..])?;
            Some(C64::new(re, im))
        }
        None => {
            let im = if body.is_empty() || body == "+" {
                1.0
            } else if body == "-" {
                -1.0
            } else {
                parse_f64(body)?
            };
            Some(C64::new(0.0, im))
        }
    }
}
