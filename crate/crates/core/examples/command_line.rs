//! Drives the command line in-process on the bundled fixtures.

use std::fmt::Write;

use stackyfan::cli::run_command;

pub fn run_example() -> String {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    let mut out = String::new();
    for (cmd, file, extra) in [
        ("gbeta", "a1", vec!["--json"]),
        ("fantastack", "fantastack_blowup", vec![]),
        ("gms", "nonseparated", vec![]),
        ("moduli", "p2_cox", vec![]),
        ("validate", "malformed", vec![]),
    ] {
        let input = format!("{fixtures}/{file}.json");
        let mut argv = vec!["stackyfan", cmd, "--input", input.as_str()];
        argv.extend(extra);
        let r = run_command(&argv);
        let _ = writeln!(out, "$ stackyfan {cmd} --input {file}.json  [exit {}]", r.exit_code);
        out.push_str(&r.stdout);
        out.push_str(&r.stderr.replace(fixtures, "fixtures"));
    }
    out
}

fn main() {
    print!("{}", run_example());
}
