//! Off-critical zeros near Δ = 1 against their expansion in ε = 1 - Δ.

use latzeta::asymptotics::{
    fit_exponent, measured_deviation, solve_reduced_equation, trace_offcritical, AsymptoticPrediction,
};
use latzeta::zeta::PrecisionPolicy;

fn main() -> latzeta::Result<()> {
    let p = PrecisionPolicy::default();
    let eps = [0.02, 0.01, 0.005];
    for k in 0..3 {
        let curve = trace_offcritical(k, &eps, 0.01, &p)?;
        println!("k = {k}, fitted exponent {:.4}", fit_exponent(&curve, k)?);
        for e in eps {
            let rho = curve.at(1.0 - e).expect("grid point").rho;
            let pred = AsymptoticPrediction::new(k, e)?;
            let (_, dy) = measured_deviation(k, e, rho);
            let reduced = solve_reduced_equation(k, e, &p)?;
            println!(
                "  eps {e:<6} rho {rho:.10}  predicted {:.10}{:+.10}i  d_rho_y {dy:.3e} vs {:.3e}  reduced eq. off by {:.1e}",
                pred.rho_x_pred,
                pred.rho_y_pred,
                pred.delta_rho_y,
                (reduced - rho).norm()
            );
        }
    }
    Ok(())
}
