//! E(s, Δ) at a few points, with ∂E/∂s and the direct-sum check for Re s > 1.

use latzeta::energy::{energy_direct_sum, energy_with_ds};
use latzeta::zeta::PrecisionPolicy;
use num_complex::Complex64;

fn main() -> latzeta::Result<()> {
    let p = PrecisionPolicy::default();
    println!("{:>10} {:>6} {:>42} {:>42}", "s", "delta", "E(s, delta)", "dE/ds");
    for (s, d) in [(3.0, 0.0, 0.5), (0.5, 14.0, 0.7), (-2.5, 3.0, 0.3), (-15.0, 1.0, 0.9)]
        .map(|(x, y, d)| (Complex64::new(x, y), d))
    {
        let e = energy_with_ds(s, d, &p)?;
        println!("{:>10} {d:>6} {:>42} {:>42}", format!("{s}"), format!("{:.12}", e.value), format!("{:.12}", e.deriv));
    }

    // the lattice sum itself converges for Re s > 1
    let s = Complex64::new(2.0, 0.0);
    let direct = energy_direct_sum(s, 0.3, 1_000_000)?;
    let e = energy_with_ds(s, 0.3, &p)?.value;
    println!(
        "\ndirect sum at s=2, delta=0.3: {:.15} (bound {:.1e}), difference {:.1e}",
        direct.value.re,
        direct.error_bound,
        (e - direct.value).norm()
    );
    Ok(())
}
