//! At Δ = 1/5, 1/3, 1/2, 1 the energy is a polynomial in 2^s, 3^s times ζ(s).
//! The zeros of the polynomial factor are found in closed form and checked
//! against the zero finder.

use latzeta::energy::{energy, energy_factorized, SpecialDelta};
use latzeta::zeros::{scan, SearchWindow};
use latzeta::zeta::PrecisionPolicy;
use num_complex::Complex64;

fn main() -> latzeta::Result<()> {
    let p = PrecisionPolicy::default();
    let s = Complex64::new(0.3, 7.0);
    for sp in SpecialDelta::ALL {
        let d = sp.value();
        let diff = (energy(s, d, &p)? - energy_factorized(s, d, &p)?).norm();
        println!("{sp:?}: |E - factorized| at {s} = {diff:.1e}");
    }

    // Δ = 1/3: 2 - 2^s + 4^s = 0 gives 2^s = (1 ± i√7)/2, all on Re s = 1/2
    let w = SearchWindow::new(-1.0, 2.0, 0.0, 12.0)?;
    let found = scan(&w, 1.0 / 3.0, &p)?;
    let ln2 = std::f64::consts::LN_2;
    for z in &found.zeros {
        let k = (z.rho.im * ln2 / (2.0 * std::f64::consts::PI)).round();
        let closed = [1.0, -1.0].map(|sg| {
            (Complex64::new(0.5, sg * 7f64.sqrt() / 2.0).ln() + Complex64::new(0.0, 2.0 * std::f64::consts::PI * k))
                / ln2
        });
        let gap = closed.iter().map(|c| (c - z.rho).norm()).fold(f64::INFINITY, f64::min);
        println!("delta=1/3 zero {:.10} ({}), closest closed form {gap:.1e}", z.rho, z.kind.as_str());
    }
    Ok(())
}
