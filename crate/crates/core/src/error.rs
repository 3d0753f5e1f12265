// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operator is not Hermitian (deviation {0:.3e})")]
    NonHermitian(f64),
    #[error("operator trace {0} is not 1")]
    NonUnitTrace(f64),
    #[error("vector norm {0} differs from 1")]
    NonUnitVector(f64),
    #[error("time {0} is not present in the tabulated kernel")]
    TimeNotInTable(f64),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid environment: {0}")]
    InvalidEnvironment(String),
    #[error("operator basis is not orthonormal: {0}")]
    InvalidBasis(String),
    #[error("{kicks} kicks exceed the enumeration budget of {max}")]
    TooManyKicks { kicks: usize, max: usize },
    #[error("environment has a non-zero mean; closed form requires an even state")]
    NonEvenEnvironment,
    #[error("kick axes are parallel; use the dephasing channel")]
    ParallelAxes,
    #[error("kick axes do not commute on this schedule")]
    NonCommutingSchedule,
    #[error("channel is not invertible (smallest singular value {0:.3e})")]
    SingularChannel(f64),
    #[error("input state is not pure (|u| = {0})")]
    NonPureInput(f64),
    #[error("round map has no fixed point: (I - A) is singular and b is not in its range")]
    NonContractive,
    #[error("coupling observable is not Hermitian (deviation {0:.3e})")]
    NonHermitianO(f64),
    #[error("Fock truncation did not converge: dim {dim}, change {change:.3e}, tail {tail:.3e}")]
    TruncationNotConverged { dim: usize, change: f64, tail: f64 },
    #[error("nascent-delta step too coarse: {0}")]
    StepTooCoarse(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
