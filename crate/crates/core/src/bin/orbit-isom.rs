// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    let code = orbit_isom::cli::run(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    std::process::exit(code);
}
