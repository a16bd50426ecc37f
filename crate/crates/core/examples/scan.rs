//! Drives the command-line front end in-process: a seeded scan written as
//! CSV, then the same scan read from a config file.

use homfinsler::cli::run_with;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(
        ["homfinsler", "scan", "--space", "catalog:heisenberg3", "--metric", "exponential", "--grid", "8", "--seed", "7", "--format", "csv"],
        None,
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit {code}\n");

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/heisenberg.toml");
    let mut out = Vec::new();
    let code = run_with(["homfinsler", "s-curv", "--space", path, "--y", "1,1,1"], None, &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit {code}");
}
