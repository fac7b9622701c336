use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::count::count_with_nudge;
use super::{count_exact, refine_with, zero_order, ClassThresholds, SearchWindow, ZeroRecord};
use crate::error::{Error, Result};
use crate::zeta::PrecisionPolicy;

/// Split points tried in turn when quadrisecting a cell. None is 1/2, so the
/// critical line and the imaginary axis never land on a split of a window
/// symmetric about them.
const SPLITS: [(f64, f64); 6] =
    [(0.5371, 0.5189), (0.4629, 0.4811), (0.5813, 0.4417), (0.4187, 0.5583), (0.6217, 0.6043), (0.3783, 0.3957)];

/// A cell still holding more than one zero, or one zero Newton could not
/// reach, at the depth limit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub window: SearchWindow,
    pub count: i64,
}

#[derive(Clone, Debug, Default)]
pub struct ScanOutcome {
    pub zeros: Vec<ZeroRecord>,
    pub clusters: Vec<Cluster>,
    /// Zero count of the whole window (pole-corrected).
    pub total: i64,
    /// Window actually scanned, after any nudging.
    pub window: Option<SearchWindow>,
}

impl ScanOutcome {
    pub fn is_resolved(&self) -> bool {
        self.clusters.is_empty()
    }
}

/// All zeros of `E(·, Δ)` in `window`, sorted by `(ρ_y, ρ_x)`.
pub fn scan(window: &SearchWindow, delta: f64, policy: &PrecisionPolicy) -> Result<ScanOutcome> {
    scan_with(window, delta, policy, &ClassThresholds::default())
}

pub fn scan_with(
    window: &SearchWindow,
    delta: f64,
    policy: &PrecisionPolicy,
    thresholds: &ClassThresholds,
) -> Result<ScanOutcome> {
    let (total, w) = count_with_nudge(window, delta, policy)?;
    let ctx = Ctx { delta, policy, thresholds };
    let mut out = ctx.cell(&w, total, 0)?;
    out.zeros.sort_by(zero_order);
    out.total = total;
    out.window = Some(w);
    log::debug!("scan delta={delta}: {} zeros, {} clusters, total {total}", out.zeros.len(), out.clusters.len());
    Ok(out)
}

struct Ctx<'a> {
    delta: f64,
    policy: &'a PrecisionPolicy,
    thresholds: &'a ClassThresholds,
}

impl Ctx<'_> {
    fn cell(&self, w: &SearchWindow, count: i64, depth: usize) -> Result<ScanOutcome> {
        if count < 0 {
            return Err(Error::PhaseStepFailure { limit: 0 });
        }
        if count == 0 {
            return Ok(ScanOutcome::default());
        }
        if count == 1 {
            if let Ok(r) = refine_with(w.center(), self.delta, self.policy, self.thresholds) {
                if w.contains(r.rho) {
                    return Ok(ScanOutcome { zeros: vec![r], ..Default::default() });
                }
            }
        }
        let cluster = || ScanOutcome { clusters: vec![Cluster { window: *w, count }], ..Default::default() };
        if depth >= w.max_subdivision_depth {
            return Ok(cluster());
        }
        for &(fx, fy) in &SPLITS {
            let kids = w.quadrisect(fx, fy);
            let counts: Vec<Result<i64>> = kids.par_iter().map(|k| count_exact(k, self.delta, self.policy)).collect();
            if counts.iter().any(|c| c.is_err()) {
                continue;
            }
            let counts: Vec<i64> = counts.into_iter().map(|c| c.unwrap_or(0)).collect();
            if counts.iter().sum::<i64>() != count {
                log::debug!("child counts {counts:?} do not sum to {count}; trying another split");
                continue;
            }
            let parts: Vec<ScanOutcome> = kids
                .par_iter()
                .zip(counts.par_iter())
                .map(|(k, &c)| self.cell(k, c, depth + 1))
                .collect::<Result<_>>()?;
            let mut out = ScanOutcome::default();
            for p in parts {
                out.zeros.extend(p.zeros);
                out.clusters.extend(p.clusters);
            }
            return Ok(out);
        }
        Ok(cluster())
    }
}
