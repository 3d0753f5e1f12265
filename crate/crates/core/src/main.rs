// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(deltakick::cli::run(std::env::args_os()));
}
