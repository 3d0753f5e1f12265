// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! User-supplied correlators on a finite time grid.
//!
//! File grammar (line oriented, `#` starts a comment line):
//!
//! ```text
//! times: t_0 t_1 ... t_{n-1}        # strictly increasing reals
//! mean: m_0 m_1 ... m_{n-1}         # optional; defaults to zeros
//! covariance:
//! K_00 K_01 ... K_0(n-1)            # one row per line, entries a+bi
//! ...
//! ```
//!
//! Values of `times:` and `mean:` may continue on following lines until the
//! next header.

use std::path::Path;

use nalgebra::DMatrix;

use super::{validate_gram, GaussianEnvironment, PSD_TOL};
use crate::error::{Error, Result};
use crate::pauli::C64;
use crate::textfmt::{fmt_c64, fmt_f64, parse_c64, parse_f64};

#[derive(Clone, Debug)]
pub struct TabulatedKernel {
    times: Vec<f64>,
    means: Vec<f64>,
    cov: DMatrix<C64>,
}

impl TabulatedKernel {
    pub fn new(times: Vec<f64>, means: Vec<f64>, cov: DMatrix<C64>) -> Result<Self> {
        let n = times.len();
        if n == 0 {
            return Err(Error::InvalidEnvironment("tabulated kernel has no times".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidEnvironment(
                "tabulated times must be strictly increasing".into(),
            ));
        }
        if means.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: means.len(),
            });
        }
        if cov.nrows() != n || cov.ncols() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: cov.nrows(),
            });
        }
        validate_gram(&cov, PSD_TOL)?;
        Ok(Self { times, means, cov })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    fn index(&self, t: f64) -> Result<usize> {
        let tol = 1e-12 * t.abs().max(1.0);
        let pos = self.times.partition_point(|&x| x < t - tol);
        match self.times.get(pos) {
            Some(&x) if (x - t).abs() <= tol => Ok(pos),
            _ => Err(Error::TimeNotInTable(t)),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Times,
            Mean,
            Cov,
        }
        let mut section = Section::None;
        let mut times = Vec::new();
        let mut means: Option<Vec<f64>> = None;
        let mut rows: Vec<Vec<C64>> = Vec::new();
        let mut seen_cov = false;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let line_no = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut rest = line;
            if let Some(r) = line.strip_prefix("times:") {
                section = Section::Times;
                rest = r;
            } else if let Some(r) = line.strip_prefix("mean:") {
                section = Section::Mean;
                means.get_or_insert_with(Vec::new);
                rest = r;
            } else if let Some(r) = line.strip_prefix("covariance:") {
                section = Section::Cov;
                seen_cov = true;
                rest = r;
            }
            let parse_err = |tok: &str| Error::Parse {
                line: line_no,
                msg: format!("cannot parse '{tok}'"),
            };
            match section {
                Section::None => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "expected 'times:' header".into(),
                    })
                }
                Section::Times => {
                    for tok in rest.split_whitespace() {
                        times.push(parse_f64(tok).ok_or_else(|| parse_err(tok))?);
                    }
                }
                Section::Mean => {
                    let m = means.as_mut().expect("mean section initialised");
                    for tok in rest.split_whitespace() {
                        m.push(parse_f64(tok).ok_or_else(|| parse_err(tok))?);
                    }
                }
                Section::Cov => {
                    if rest.trim().is_empty() {
                        continue;
                    }
                    let row = rest
                        .split_whitespace()
                        .map(|tok| parse_c64(tok).ok_or_else(|| parse_err(tok)))
                        .collect::<Result<Vec<_>>>()?;
                    if row.len() != times.len() {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("covariance row has {} entries, expected {}", row.len(), times.len()),
                        });
                    }
                    rows.push(row);
                }
            }
        }
        if !seen_cov {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: "missing 'covariance:' section".into(),
            });
        }
        let n = times.len();
        if rows.len() != n {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("covariance has {} rows, expected {n}", rows.len()),
            });
        }
        let cov = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        let means = means.unwrap_or_else(|| vec![0.0; n]);
        Self::new(times, means, cov)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let join = |v: &[f64]| v.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(" ");
        out.push_str(&format!("times: {}\n", join(&self.times)));
        out.push_str(&format!("mean: {}\n", join(&self.means)));
        out.push_str("covariance:\n");
        for i in 0..self.times.len() {
            let row: Vec<String> = (0..self.times.len()).map(|j| fmt_c64(self.cov[(i, j)])).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Tabulates another environment on the given grid.
    pub fn sample(env: &dyn GaussianEnvironment, times: &[f64]) -> Result<Self> {
        let means = times.iter().map(|&t| env.mean(t)).collect::<Result<Vec<_>>>()?;
        let cov = super::gram_matrix(env, times)?;
        Self::new(times.to_vec(), means, cov)
    }
}

impl GaussianEnvironment for TabulatedKernel {
    fn mean(&self, t: f64) -> Result<f64> {
        Ok(self.means[self.index(t)?])
    }

    fn covariance(&self, t: f64, tp: f64) -> Result<C64> {
        Ok(self.cov[(self.index(t)?, self.index(tp)?)])
    }

    fn is_even(&self) -> bool {
        self.means.iter().all(|&m| m == 0.0)
    }

    fn id(&self) -> String {
        format!("tabulated(n={})", self.times.len())
    }
}
