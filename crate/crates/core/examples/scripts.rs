//! Running scripts in the command language, with text and JSON output.
//!
//! `cargo run --example scripts [file]` runs a file instead of the built-in
//! script.

use sizedmu::cli::{run_source, Flags, Format};

const SCRIPT: &str = "\
sig T = leaf:0 | node:2
group swap2 = pair:2 with swap: pair -> pair [1 0]
F = 1 + X*X
U = 1 + sym<swap2> X
N = 1 + X
alg parity for N on 2 = [0 1 0]
iterate F budget 6 depth 4
iterate U size plump:T budget 12 depth 4
cata N with parity at 5
S = 2*X
nu S budget 4
";

fn main() {
    let src = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable script"),
        None => SCRIPT.to_string(),
    };
    let text = run_source(&src, &Flags::default());
    print!("{}", text.output);
    println!("exit code {}", text.exit_code);

    let json = run_source(
        "F = 3\nmu F",
        &Flags {
            format: Format::Json,
            ..Flags::default()
        },
    );
    print!("{}", json.output);
}
