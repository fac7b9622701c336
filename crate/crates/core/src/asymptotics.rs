//! Off-critical zeros of `E(·, 1 - ε)` as `ε → 0⁺`.
//!
//! With `λ = ln 3 / ln 2` the zero of index `k` behaves like
//!
//! ```text
//! ρ_x = (2/ln2) ln ε - 3 + (2/ln2) ln π + ε/ln2 + (1/4 + 7π²/24) ε²/ln2
//!       + (1/12 + 7π²/24) ε³/ln2 + C cos[λ(2k+1)π] ε^{2λ}
//! ρ_y = (2k+1)π/ln2 + C sin[λ(2k+1)π] ε^{2λ},   C = (8/(3 ln2)) (π²/8)^λ
//! ```

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{LN_2, PI};

use crate::continuation::{trace_branch_with, BranchCurve, TraceConfig};
use crate::error::{Error, Result};
use crate::zeros::refine_zero;
use crate::zeta::{riemann_zeta, PrecisionPolicy};

/// `2 ln 3 / ln 2`, the order of the oscillating correction.
pub const EXPONENT: f64 = 2.0 * 1.584_962_500_721_156_3;

fn lambda() -> f64 {
    3f64.ln() / LN_2
}

fn amplitude() -> f64 {
    8.0 / (3.0 * LN_2) * (PI * PI / 8.0).powf(lambda())
}

fn check_epsilon(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::Domain(format!("epsilon = {eps} outside (0, 0.5]")));
    }
    Ok(())
}

/// `(2k + 1)π / ln 2`.
pub fn limit_ordinate(k: i64) -> f64 {
    (2 * k + 1) as f64 * PI / LN_2
}

/// The smooth part of `ρ_x`, every displayed term through `ε³`.
pub fn smooth_rho_x(eps: f64) -> f64 {
    let q = 7.0 * PI * PI / 24.0;
    2.0 / LN_2 * eps.ln()
        + (-3.0 + 2.0 / LN_2 * PI.ln())
        + (eps + (0.25 + q) * eps * eps + (1.0 / 12.0 + q) * eps.powi(3)) / LN_2
}

/// Leading deviations `(δρ_x, δρ_y)` of order `ε^{2 ln3/ln2}`.
pub fn deviation_formulas(k: i64, eps: f64) -> Result<(f64, f64)> {
    check_epsilon(eps)?;
    let phase = lambda() * (2 * k + 1) as f64 * PI;
    let m = amplitude() * eps.powf(EXPONENT);
    Ok((m * phase.cos(), m * phase.sin()))
}

/// All displayed terms of the expansion.
pub fn predict_offcritical(k: i64, eps: f64) -> Result<Complex64> {
    let (dx, dy) = deviation_formulas(k, eps)?;
    Ok(Complex64::new(smooth_rho_x(eps) + dx, limit_ordinate(k) + dy))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoticPrediction {
    pub k: i64,
    pub epsilon: f64,
    pub rho_x_pred: f64,
    pub rho_y_pred: f64,
    pub delta_rho_x: f64,
    pub delta_rho_y: f64,
    pub exponent: f64,
}

impl AsymptoticPrediction {
    pub fn new(k: i64, epsilon: f64) -> Result<Self> {
        let rho = predict_offcritical(k, epsilon)?;
        let (dx, dy) = deviation_formulas(k, epsilon)?;
        Ok(Self {
            k,
            epsilon,
            rho_x_pred: rho.re,
            rho_y_pred: rho.im,
            delta_rho_x: dx,
            delta_rho_y: dy,
            exponent: EXPONENT,
        })
    }
}

/// Deviations of an actual zero `rho` at `ε` from the smooth terms.
pub fn measured_deviation(k: i64, eps: f64, rho: Complex64) -> (f64, f64) {
    (rho.re - smooth_rho_x(eps), rho.im - limit_ordinate(k))
}

/// `ζ(-1-ρ)/ζ(1-ρ)` and `ζ(-3-ρ)/ζ(1-ρ)`.
pub fn zeta_ratios(rho: Complex64, policy: &PrecisionPolicy) -> Result<(Complex64, Complex64)> {
    let den = riemann_zeta(1.0 - rho, policy)?;
    let a = riemann_zeta(-1.0 - rho, policy)? / den;
    let b = riemann_zeta(-3.0 - rho, policy)? / den;
    Ok((a, b))
}

/// `2^ρ` minus the right side of the zero condition truncated after `ε⁵`.
pub fn reduced_residual(rho: Complex64, eps: f64, policy: &PrecisionPolicy) -> Result<Complex64> {
    let two = Complex64::new(2.0, 0.0);
    let (ra, rb) = zeta_ratios(rho, policy)?;
    let e2 = eps * eps;
    let pa = e2 * (1.0 + eps + 0.75 * e2 + 0.5 * e2 * eps);
    let pb = e2 * e2 * (1.0 + 2.0 * eps);
    let pi2 = PI * PI;
    let rhs = -(1.0 - two.powc(2.0 + rho)) / 8.0 * pi2 * ra * pa
        + (1.0 - two.powc(4.0 + rho)) / (3.0 * 128.0) * pi2 * pi2 * rb * pb;
    Ok(two.powc(rho) - rhs)
}

/// Newton on [`reduced_residual`], started from [`predict_offcritical`].
pub fn solve_reduced_equation(k: i64, eps: f64, policy: &PrecisionPolicy) -> Result<Complex64> {
    if !(eps > 0.0 && eps <= 0.05) {
        return Err(Error::Domain(format!("epsilon = {eps} outside (0, 0.05]")));
    }
    let seed = predict_offcritical(k, eps)?;
    let mut rho = seed;
    for it in 0..60 {
        let h = 1e-6;
        let f = reduced_residual(rho, eps, policy)?;
        let df = (reduced_residual(rho + h, eps, policy)? - reduced_residual(rho - h, eps, policy)?) / (2.0 * h);
        let step = f / df;
        rho -= step;
        if !rho.is_finite() {
            break;
        }
        if step.norm() <= 1e-14 * rho.norm().max(1.0) {
            log::trace!("reduced equation k={k} eps={eps}: {it} iterations");
            return Ok(rho);
        }
    }
    Err(Error::NoConvergence { seed, iterations: 60 })
}

/// Least-squares slope of `ln|dev|` against `ln ε`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 4 {
        return Err(Error::InsufficientSamples { needed: 4, found: points.len() });
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|&(e, d)| (e.ln(), d.abs().ln())).collect();
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}

/// Largest `ε` used by [`fit_exponent`].
pub const FIT_EPSILON_MAX: f64 = 0.02;

/// Scaling exponent of `δρ_y` along a traced branch of index `k`, from the
/// samples with `ε ≤ 0.02`. Samples whose deviation is lost in rounding of
/// `ρ_y` are skipped.
pub fn fit_exponent(curve: &BranchCurve, k: i64) -> Result<f64> {
    let points: Vec<(f64, f64)> = curve
        .samples
        .iter()
        .filter_map(|p| {
            let eps = 1.0 - p.delta;
            let dy = p.rho.im - limit_ordinate(k);
            let noise = 1e3 * f64::EPSILON * p.rho.im.abs();
            (eps > 0.0 && eps <= FIT_EPSILON_MAX + 1e-12 && dy.abs() > noise).then_some((eps, dy))
        })
        .collect();
    fit_power_law(&points)
}

/// Traces the off-critical branch of index `k` from `ε = max(epsilons, 0.02)`
/// down to the smallest requested `ε`, stopping exactly at each of them.
/// The seed is the closed-form prediction, polished by Newton.
pub fn trace_offcritical(k: i64, epsilons: &[f64], step: f64, policy: &PrecisionPolicy) -> Result<BranchCurve> {
    for &e in epsilons {
        check_epsilon(e)?;
    }
    let eps_min = epsilons.iter().copied().fold(f64::INFINITY, f64::min);
    if !eps_min.is_finite() {
        return Err(Error::Domain("no epsilon values given".into()));
    }
    let eps_start = epsilons.iter().copied().fold(FIT_EPSILON_MAX, f64::max);
    let guess = predict_offcritical(k, eps_start)?;
    let seed = refine_zero(guess, 1.0 - eps_start, policy)?;
    if (seed.rho - guess).norm() > 0.1 {
        return Err(Error::NoConvergence { seed: guess, iterations: seed.newton_iters });
    }
    let stops: Vec<f64> = epsilons.iter().map(|e| 1.0 - e).collect();
    let mut curve = trace_branch_with(&seed, 1.0 - eps_min, &TraceConfig::with_step(step), &stops, policy)?;
    curve.k_index = Some(k);
    curve.branch_kind = Some(crate::continuation::BranchKind::NonStandard);
    Ok(curve)
}

#[cfg(test)]
mod tests;
