//! The theta-integral representation against Euler-Maclaurin, left of Re s = 1.

use latzeta::energy::energy;
use latzeta::theta::{energy_via_theta_with_error, jacobi_theta};
use latzeta::zeta::PrecisionPolicy;
use num_complex::Complex64;

fn main() -> latzeta::Result<()> {
    let p = PrecisionPolicy::default();
    println!("theta(0.25, 0.5) = {:.15}", jacobi_theta(0.25, 0.5)?);
    for (x, y) in [(0.5, 0.0), (-0.5, 2.0), (-3.3, 0.4), (0.9, 5.5)] {
        let s = Complex64::new(x, y);
        for d in [0.4, 0.75] {
            let q = energy_via_theta_with_error(s, d, &p)?;
            let em = energy(s, d, &p)?;
            println!(
                "s = {s:<10} delta = {d:<5} |theta - EM| = {:.1e}  (quadrature estimate {:.1e})",
                (q.value - em).norm(),
                q.error
            );
        }
    }
    Ok(())
}
