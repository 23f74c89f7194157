//! One line per acceptance criterion. Exits nonzero when a criterion fails
//! that is not listed in `KNOWN_FAILURES`; the listed ones still print FAIL.

use std::process::ExitCode;

use pentile::cli::goldens::{run_goldens, KNOWN_FAILURES};

fn main() -> ExitCode {
    let rows = run_goldens();
    let mut unexpected = Vec::new();
    for r in &rows {
        let known = KNOWN_FAILURES.contains(&r.id);
        let tag = match (r.passed, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {:>2}: {tag} {}", r.id, r.name);
        for d in r.details.iter().filter(|d| d.starts_with("FAIL")) {
            println!("    {d}");
        }
        if !r.passed && !known {
            unexpected.push(r.id);
        }
    }
    let passed = rows.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria pass", rows.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
