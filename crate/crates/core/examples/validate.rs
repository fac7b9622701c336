//! Runs the three self-check suites and prints the worst residual of each check.

use latzeta::validation::run_all;
use latzeta::zeta::PrecisionPolicy;

fn main() -> latzeta::Result<()> {
    let r = run_all(&PrecisionPolicy::default())?;
    for s in &r.suites {
        println!("{}", s.suite);
        for c in &s.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            println!("  {mark} {:<40} {:>9.2e} <= {:.0e}  ({} cases)", c.name, c.worst_residual, c.threshold, c.cases);
        }
    }
    println!("{}", if r.passed { "all passed" } else { "FAILED" });
    Ok(())
}
