//! The fifteen acceptance criteria at exact tolerance, one line each.
//! Runs without the libtest harness so the lines are always printed.

use std::process::ExitCode;

use lltile::verify::{run, CRITERIA};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    println!("acceptance: {} criteria", CRITERIA.len());
    for &(id, _, _) in &CRITERIA {
        let o = run(id).expect("known criterion");
        println!("{}", o.line());
        if !o.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
