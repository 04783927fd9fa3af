//! One PASS/FAIL line per acceptance criterion. Set `BDIAG_LEVEL=deep` for
//! the heavy variants.

use std::process::ExitCode;

use bdiagram::selftest::{run_all, Level};

fn main() -> ExitCode {
    let level = match std::env::var("BDIAG_LEVEL").as_deref() {
        Ok("deep") => Level::Deep,
        _ => Level::Quick,
    };
    let reports = run_all(level);
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("acceptance: {} of {} criteria passed", reports.len() - failed.len(), reports.len());
    if reports.len() == 12 && failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
