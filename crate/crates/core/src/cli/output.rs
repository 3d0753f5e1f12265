// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::textfmt::fmt_f64;

/// Writes `contents` to `dir/name` through a temporary file in `dir`, so a
/// failed run never leaves a truncated file behind.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    let dest = dir.join(name);
    tmp.persist(&dest).map_err(|e| e.error)?;
    Ok(dest)
}

#[derive(Clone, Debug, Default)]
pub struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn push_f64(&mut self, row: &[f64]) {
        self.push(row.iter().map(|&x| fmt_num(x)).collect());
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s += &r.join(",");
            s.push('\n');
        }
        s
    }
}

/// 17 significant digits; `nan` for undefined values.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        fmt_f64(x)
    }
}

/// `key=value` lines in insertion order.
#[derive(Clone, Debug, Default)]
pub struct KeyValues(Vec<(String, String)>);

impl KeyValues {
    pub fn put(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.0.push((key.into(), value.to_string()));
        self
    }

    pub fn put_f64(&mut self, key: impl Into<String>, value: f64) -> &mut Self {
        self.put(key, fmt_num(value))
    }

    pub fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}
