//! Follows the zero at 1/2 + 14.1347i (Δ = 1/2) down to Δ = 0.2 and up
//! toward Δ = 1, then classifies the branch.

use latzeta::continuation::{probe_and_classify, trace_branch};
use latzeta::zeros::refine_zero;
use latzeta::zeta::PrecisionPolicy;
use num_complex::Complex64;

fn main() -> latzeta::Result<()> {
    let p = PrecisionPolicy::default();
    let seed = refine_zero(Complex64::new(0.5, 14.1347), 0.5, &p)?;

    let down = trace_branch(&seed, 0.2, 0.01, &p)?;
    println!("to delta = 0.2: {} samples, ends at {:.10}", down.samples.len(), down.last().rho);

    let mut up = trace_branch(&seed, 0.99, 0.01, &p)?;
    for q in up.samples.iter().step_by(10) {
        println!("{:>8.5} {:>16.10} {:>16.10}", q.delta, q.rho.re, q.rho.im);
    }
    probe_and_classify(&mut up, &p)?;
    let t = up.terminal_sample();
    println!("{:?} branch, terminal point {:.8} at delta = {}", up.branch_kind, t.rho, t.delta);
    Ok(())
}
