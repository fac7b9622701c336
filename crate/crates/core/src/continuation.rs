//! Zero curves `Δ ↦ ρ(Δ)` by predictor–corrector continuation.
//!
//! The predictor follows the tangent in `u = ln(1 - Δ)`, in which the
//! diverging branches are close to straight lines as `Δ → 1`. Steps toward
//! `Δ = 1` are capped at half the remaining distance, so the grid becomes
//! geometric in `ε = 1 - Δ` once `ε` is below twice the nominal step.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use crate::energy::{energy, energy_with_ds};
use crate::error::{Error, Result};
use crate::zeros::{refine_zero, scan, SearchWindow, ZeroKind, ZeroRecord};
use crate::zeta::PrecisionPolicy;

/// Grid points always visited when a trace passes them.
pub const SPECIAL_DELTAS: [f64; 3] = [0.2, 1.0 / 3.0, 0.5];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchKind {
    Standard,
    NonStandard,
}

impl BranchKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Standard => "standard",
            Self::NonStandard => "non_standard",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceStatus {
    Reached,
    DivergenceDetected,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchSample {
    pub delta: f64,
    pub rho: Complex64,
    /// `|E(ρ, Δ)|` relative to the size of its summands.
    pub residual: f64,
}

impl BranchSample {
    fn from_record(r: &ZeroRecord) -> Self {
        Self { delta: r.delta, rho: r.rho, residual: r.scaled_residual }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchCurve {
    pub branch_id: usize,
    pub branch_kind: Option<BranchKind>,
    pub k_index: Option<i64>,
    /// Strictly monotone in `Δ`.
    pub samples: Vec<BranchSample>,
    pub status: TraceStatus,
    /// Last point of the classification probe toward `Δ = 1`, when the curve
    /// itself stops short of it.
    pub terminal: Option<BranchSample>,
}

impl BranchCurve {
    pub fn last(&self) -> &BranchSample {
        self.samples.last().expect("a curve has at least its seed")
    }

    /// Sample at `delta`, matched to within `1e-12`.
    pub fn at(&self, delta: f64) -> Option<&BranchSample> {
        self.samples.iter().find(|p| (p.delta - delta).abs() <= 1e-12)
    }

    /// Point used for classification: the probe end if present.
    pub fn terminal_sample(&self) -> &BranchSample {
        self.terminal.as_ref().unwrap_or_else(|| self.last())
    }
}

/// Step control for [`trace_branch_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceConfig {
    /// Nominal step in `Δ`, at most 0.01.
    pub step: f64,
    /// Allowed predictor–corrector gap per 0.01 of `Δ`.
    pub jump_guard: f64,
    pub divergence_floor: f64,
    /// Step halving gives up below `min_step · min(1, 100 ε)`.
    pub min_step: f64,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self { step: 0.01, jump_guard: 0.5, divergence_floor: -40.0, min_step: 1e-6 }
    }
}

impl TraceConfig {
    pub fn with_step(step: f64) -> Self {
        Self { step, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step <= 0.01) {
            return Err(Error::Domain(format!("continuation step {} outside (0, 0.01]", self.step)));
        }
        Ok(())
    }
}

/// Traces the zero `seed` from `seed.delta` to `delta_target`.
pub fn trace_branch(seed: &ZeroRecord, delta_target: f64, step: f64, policy: &PrecisionPolicy) -> Result<BranchCurve> {
    trace_branch_with(seed, delta_target, &TraceConfig::with_step(step), &[], policy)
}

/// As [`trace_branch`], also stopping exactly at every Δ in `stops`.
pub fn trace_branch_with(
    seed: &ZeroRecord,
    delta_target: f64,
    cfg: &TraceConfig,
    stops: &[f64],
    policy: &PrecisionPolicy,
) -> Result<BranchCurve> {
    cfg.validate()?;
    if !(delta_target > 0.0 && delta_target < 1.0) || !(seed.delta > 0.0 && seed.delta <= 1.0) {
        return Err(Error::Domain(format!("trace path [{}, {delta_target}] leaves (0, 1)", seed.delta)));
    }
    if seed.scaled_residual > policy.newton_tol {
        return Err(Error::Domain("seed is not a converged zero".into()));
    }
    let mut samples = vec![BranchSample::from_record(seed)];
    let status = advance(&mut samples, delta_target, cfg, stops, policy)?;
    Ok(BranchCurve { branch_id: 0, branch_kind: None, k_index: None, samples, status, terminal: None })
}

fn abscissa(delta: f64) -> f64 {
    (1.0 - delta).ln()
}

/// `dρ/dΔ = -E_Δ / E_s` at a zero, with `E_Δ` by central differences.
fn tangent(rho: Complex64, delta: f64, policy: &PrecisionPolicy) -> Result<Complex64> {
    let h = 1e-5 * delta.min(1.0 - delta).min(0.1);
    let ep = energy(rho, delta + h, policy)?;
    let em = energy(rho, delta - h, policy)?;
    let ds = energy_with_ds(rho, delta, policy)?.deriv;
    Ok(-(ep - em) / (2.0 * h) / ds)
}

/// Tangent line in `u` at the last sample. Falls back to the secant through
/// the last two samples, then to the last point, if `E_s` vanishes.
fn predict(samples: &[BranchSample], delta: f64, policy: &PrecisionPolicy) -> Complex64 {
    let n = samples.len();
    let last = &samples[n - 1];
    let (u1, u) = (abscissa(last.delta), abscissa(delta));
    if let Ok(t) = tangent(last.rho, last.delta, policy) {
        if t.is_finite() {
            return last.rho + t * (last.delta - 1.0) * (u - u1);
        }
    }
    if n < 2 {
        return last.rho;
    }
    let prev = &samples[n - 2];
    let u0 = abscissa(prev.delta);
    last.rho + (last.rho - prev.rho) * ((u - u1) / (u1 - u0))
}

/// Largest corrector move accepted, relative to the predicted move.
const CURVATURE: f64 = 0.25;

/// Extends `samples` toward `target`. Returns early on divergence.
fn advance(
    samples: &mut Vec<BranchSample>,
    target: f64,
    cfg: &TraceConfig,
    stops: &[f64],
    policy: &PrecisionPolicy,
) -> Result<TraceStatus> {
    let mut h = cfg.step;
    loop {
        let cur = samples.last().expect("non-empty").delta;
        if (target - cur).abs() <= 1e-15 {
            return Ok(TraceStatus::Reached);
        }
        let dir = (target - cur).signum();
        let mut next = cur + dir * h.min((target - cur).abs());
        if dir > 0.0 {
            next = next.min(cur + 0.5 * (1.0 - cur));
        }
        for &p in SPECIAL_DELTAS.iter().chain(stops) {
            if (p - cur) * dir > 1e-15 && (next - p) * dir > 1e-15 {
                next = p;
            }
        }
        let from = samples.last().expect("non-empty").rho;
        let pred = predict(samples, next, policy);
        let span = (next - cur).abs();
        let guard = (cfg.jump_guard * span / 0.01).min(CURVATURE * (pred - from).norm() + 1e-9);
        let accepted = match refine_zero(pred, next, policy) {
            Ok(r) if (r.rho - pred).norm() <= guard && (r.rho - from).norm() <= cfg.jump_guard => Some(r),
            Ok(r) => {
                log::debug!("jump guard at delta={next}: predicted {pred}, corrected {}", r.rho);
                None
            }
            Err(Error::NoConvergence { .. } | Error::DerivativeUnderflow { .. } | Error::PoleProximity { .. }) => None,
            Err(e) => return Err(e),
        };
        match accepted {
            Some(r) => {
                samples.push(BranchSample::from_record(&r));
                if r.rho.re < cfg.divergence_floor {
                    return Ok(TraceStatus::DivergenceDetected);
                }
                h = (2.0 * h).min(cfg.step);
            }
            None => {
                h = 0.5 * span;
                let floor = cfg.min_step * (100.0 * (1.0 - cur)).min(1.0);
                if h < floor {
                    return Err(Error::StepCollapse { delta: cur, step: h });
                }
            }
        }
    }
}

/// Probe end for classification toward `Δ = 1`.
pub const PROBE_STANDARD_DELTA: f64 = 1.0 - 1e-3;
/// Deepest probe for non-standard branches; `ρ_x` passes the default
/// divergence floor near `ε ≈ 1e-6` for the lowest branch.
pub const PROBE_LIMIT_DELTA: f64 = 1.0 - 1e-9;

/// Standard if the curve approaches the critical line at `Δ ≥ 1 - 1e-3`;
/// non-standard, with its index `k`, if it diverged to the left.
pub fn classify_branch(curve: &BranchCurve) -> Result<(BranchKind, Option<i64>)> {
    let t = curve.terminal_sample();
    let diverged = curve.status == TraceStatus::DivergenceDetected
        || curve.terminal.is_some_and(|p| p.rho.re < TraceConfig::default().divergence_floor);
    if diverged {
        let k = ((t.rho.im * LN_2 / PI - 1.0) / 2.0).round() as i64;
        return Ok((BranchKind::NonStandard, Some(k)));
    }
    if t.delta >= PROBE_STANDARD_DELTA - 1e-12 && (t.rho.re - 0.5).abs() <= 1e-3 {
        return Ok((BranchKind::Standard, None));
    }
    if t.delta < 0.95 {
        return Err(Error::Unclassifiable(format!("curve ends at delta = {} without diverging", t.delta)));
    }
    Err(Error::Unclassifiable(format!(
        "curve ends at delta = {} with rho = {} (neither critical nor diverged)",
        t.delta, t.rho
    )))
}

/// Continues from the last sample of `curve` toward `Δ = 1` and stores the end
/// point as `terminal`, then classifies.
pub fn probe_and_classify(curve: &mut BranchCurve, policy: &PrecisionPolicy) -> Result<()> {
    let cfg = TraceConfig::default();
    let mut probe = vec![*curve.last()];
    if curve.status != TraceStatus::DivergenceDetected {
        let mut status = TraceStatus::Reached;
        if curve.last().delta < PROBE_STANDARD_DELTA {
            status = advance(&mut probe, PROBE_STANDARD_DELTA, &cfg, &[], policy)?;
        }
        let end = probe.last().expect("non-empty");
        if status != TraceStatus::DivergenceDetected && (end.rho.re - 0.5).abs() > 1e-3 {
            // keep going in case this is a diverging branch
            advance(&mut probe, PROBE_LIMIT_DELTA, &cfg, &[], policy)?;
        }
    }
    if probe.len() > 1 {
        curve.terminal = probe.last().copied();
    }
    let (kind, k) = classify_branch(curve)?;
    curve.branch_kind = Some(kind);
    curve.k_index = k;
    Ok(())
}

/// Zero curves seeded by a complete scan at `Δ = 1/2` and traced over
/// `[delta_min, delta_max]`, each classified by a probe toward `Δ = 1`.
pub fn sweep_figure_data(
    delta_min: f64,
    delta_max: f64,
    step: f64,
    window: &SearchWindow,
    policy: &PrecisionPolicy,
) -> Result<Vec<BranchCurve>> {
    if !(delta_min > 0.0 && delta_min < 0.5 && delta_max > 0.5 && delta_max < 1.0) {
        return Err(Error::Domain(format!("sweep range [{delta_min}, {delta_max}] must straddle 1/2 inside (0, 1)")));
    }
    let cfg = TraceConfig::with_step(step);
    cfg.validate()?;
    let seeds = scan(window, 0.5, policy)?;
    let seeds: Vec<ZeroRecord> = seeds.zeros.into_iter().filter(|z| z.kind != ZeroKind::Trivial).collect();
    let mut curves: Vec<BranchCurve> = seeds
        .par_iter()
        .map(|seed| -> Result<BranchCurve> {
            let left = trace_branch_with(seed, delta_min, &cfg, &[], policy)?;
            let right = trace_branch_with(seed, delta_max, &cfg, &[], policy)?;
            let mut samples: Vec<BranchSample> = left.samples.into_iter().rev().collect();
            samples.extend(right.samples.into_iter().skip(1));
            let mut curve = BranchCurve {
                branch_id: 0,
                branch_kind: None,
                k_index: None,
                samples,
                status: right.status,
                terminal: None,
            };
            if let Err(e) = probe_and_classify(&mut curve, policy) {
                log::warn!("branch seeded at {} left unclassified: {e}", seed.rho);
            }
            Ok(curve)
        })
        .collect::<Result<_>>()?;
    for (i, c) in curves.iter_mut().enumerate() {
        c.branch_id = i;
    }
    Ok(curves)
}
