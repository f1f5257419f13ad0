//! One PASS/FAIL line per acceptance criterion. `DP4BR_CRITERIA=3,7`
//! restricts the run.

use dp4brauer::selfcheck::{run, CRITERIA};
use std::process::ExitCode;

fn main() -> ExitCode {
    let only: Option<Vec<u8>> =
        std::env::var("DP4BR_CRITERIA").ok().map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let mut failed = 0;
    for &(id, _) in &CRITERIA {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let r = run(id);
        println!("{r}");
        failed += (!r.passed) as usize;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
