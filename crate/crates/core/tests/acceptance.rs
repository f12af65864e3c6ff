//! One PASS/FAIL line per acceptance criterion.
//!
//! Every claim is an exact comparison, so the only tolerances are the
//! wall-clock budgets in `CRITERIA`. A criterion's time includes the
//! pipeline stages it is the first to need; stages are computed once and
//! shared with later criteria, and no on-disk cache is used.

use std::process::ExitCode;
use std::time::Instant;

use quartic56::report::commands::criterion_line;
use quartic56::report::{run_criterion, Session, CRITERIA};

fn main() -> ExitCode {
    let session = Session::new(None);
    let mut failed = 0;
    let start = Instant::now();
    for info in &CRITERIA {
        let t = Instant::now();
        let mut result = run_criterion(info.number, &session);
        let elapsed = t.elapsed();
        if let Some(budget) = info.budget.filter(|b| elapsed > *b) {
            result.pass = false;
            result.error = Some(format!("took {elapsed:.2?}, budget {budget:.0?}"));
        }
        failed += usize::from(!result.pass);
        println!("{} [{elapsed:.2?}]", criterion_line(&result));
        for c in result.claims.iter().filter(|c| !c.pass) {
            println!("    claim {}: expected {} computed {}", c.id, c.expected, c.computed);
        }
    }
    println!("{}/{} criteria pass in {:.1?}", CRITERIA.len() - failed, CRITERIA.len(), start.elapsed());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
