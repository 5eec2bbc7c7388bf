//! Drives the command-line front end in-process and parses its JSON report.

use order3::cli::{run_from_args, Report};

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_from_args(
        ["order3", "--format", "json", "crosscheck", "PSL(2,8)"],
        &mut out,
        &mut err,
    );
    let report = Report::from_json(std::str::from_utf8(&out).unwrap()).unwrap();
    println!(
        "exit {code}, {} rows, pass {}",
        report.rows.len(),
        report.pass
    );
    for c in &report.checks {
        println!(
            "  {} {}: {} vs {}",
            if c.pass { "ok  " } else { "FAIL" },
            c.name,
            c.expected,
            c.actual
        );
    }

    out.clear();
    let code = run_from_args(
        ["order3", "--format", "csv", "table1", "--qmax", "9"],
        &mut out,
        &mut err,
    );
    print!("exit {code}\n{}", String::from_utf8(out).unwrap());
}
