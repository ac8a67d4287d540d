//! Runs without the libtest harness so the criterion lines always print.

use std::process::ExitCode;

use multichoose::acceptance::{run_all, CRITERIA};

fn main() -> ExitCode {
    let reports = run_all(|r| println!("{r}"));
    assert_eq!(reports.len(), CRITERIA.len());
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{} of {} criteria passed", reports.len() - failed.len(), reports.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
