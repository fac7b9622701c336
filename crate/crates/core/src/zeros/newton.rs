use num_complex::Complex64;

use super::{classify, ClassThresholds, ZeroRecord};
use crate::energy::energy_eval;
use crate::error::{Error, Result};
use crate::zeta::PrecisionPolicy;

pub const MAX_NEWTON_ITERS: usize = 50;
/// Longest single Newton step; larger proposals are shortened.
const MAX_STEP: f64 = 1.0;

/// Newton's method on `E(·, Δ)` from `seed`.
///
/// Converges when the relative residual `|E| / max(1, M)` is within
/// `newton_tol` and the last correction has reached rounding level.
pub fn refine_zero(seed: Complex64, delta: f64, policy: &PrecisionPolicy) -> Result<ZeroRecord> {
    refine_with(seed, delta, policy, &ClassThresholds::default())
}

pub fn refine_with(
    seed: Complex64,
    delta: f64,
    policy: &PrecisionPolicy,
    thresholds: &ClassThresholds,
) -> Result<ZeroRecord> {
    let mut s = seed;
    let mut last_step = f64::INFINITY;
    for it in 1..=MAX_NEWTON_ITERS {
        let ev = energy_eval(s, delta, policy, true)?;
        if !ev.value.is_finite() || !ev.deriv.is_finite() {
            break;
        }
        if ev.deriv.norm() < 1e-14 * ev.scale.max(1.0) {
            return Err(Error::DerivativeUnderflow { s });
        }
        let mut step = ev.value / ev.deriv;
        let len = step.norm();
        if len > MAX_STEP {
            step *= MAX_STEP / len;
        }
        let converged = ev.scaled_residual() <= policy.newton_tol;
        let tiny = len <= 4.0 * f64::EPSILON * s.norm().max(1.0);
        if converged && (tiny || len >= 0.5 * last_step) {
            let record = ZeroRecord::new(delta, s, ev.value.norm(), ev.scaled_residual(), it - 1, thresholds);
            log::trace!("newton converged at {s} in {} iterations", it - 1);
            return Ok(record);
        }
        if last_step.is_finite() && last_step > 0.0 {
            log::trace!(
                "newton step {it}: |ds| = {len:e}, ratio |ds|/|ds_prev|^2 = {:e}",
                len / (last_step * last_step)
            );
        }
        s -= step;
        last_step = len;
    }
    Err(Error::NoConvergence { seed, iterations: MAX_NEWTON_ITERS })
}

impl ZeroRecord {
    pub(crate) fn new(
        delta: f64,
        rho: Complex64,
        residual: f64,
        scaled_residual: f64,
        newton_iters: usize,
        thresholds: &ClassThresholds,
    ) -> Self {
        Self { delta, rho, kind: classify(rho, thresholds), residual, scaled_residual, newton_iters }
    }
}
