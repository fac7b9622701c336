//! All zeros in a rectangle by the argument principle, refined by Newton.
//!
//! cargo run --release --example scan -- 0.2

use latzeta::zeros::{count_zeros, scan, SearchWindow};
use latzeta::zeta::PrecisionPolicy;

fn main() -> latzeta::Result<()> {
    let delta: f64 =
        std::env::args().nth(1).map_or(Ok(0.2), |a| a.parse()).map_err(|_| latzeta::Error::Parse("delta".into()))?;
    let p = PrecisionPolicy::default();
    let w = SearchWindow::new(-1.0, 2.0, 0.0, 25.0)?;
    println!("winding count in window: {}", count_zeros(&w, delta, &p)?);
    let out = scan(&w, delta, &p)?;
    for z in &out.zeros {
        println!("{:>20.12} {:>20.12}  {:<12} {:.1e}", z.rho.re, z.rho.im, z.kind.as_str(), z.scaled_residual);
    }
    if !out.is_resolved() {
        println!("{} unresolved clusters", out.clusters.len());
    }
    Ok(())
}
