// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact qubit channels generated by delta-kick couplings to a Gaussian bosonic
//! environment, their CP- and P-divisibility, and a truncated Fock-space oracle.
//!
//! Parameter checks are written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod channels;
pub mod cli;
pub mod environment;
pub mod error;
pub mod kicks;
pub mod oracle;
pub mod pauli;
pub mod textfmt;

pub use error::{Error, Result};
