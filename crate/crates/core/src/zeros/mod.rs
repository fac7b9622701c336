//! Zeros of `s ↦ E(s, Δ)` in rectangular windows.

mod count;
mod newton;
mod scan;
mod window;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use count::{count_zeros, BOUNDARY_ZERO_TOL, MAX_NUDGES, NUDGE};
pub use newton::{refine_with, refine_zero, MAX_NEWTON_ITERS};
pub use scan::{scan, scan_with, Cluster, ScanOutcome};
pub use window::SearchWindow;

pub(crate) use count::count_exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    Critical,
    OffCritical,
    Trivial,
}

impl ZeroKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Critical => "critical",
            Self::OffCritical => "off_critical",
            Self::Trivial => "trivial",
        }
    }
}

impl std::fmt::Display for ZeroKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classification thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassThresholds {
    /// `|ρ_x - 1/2|` at or below this is on the critical line.
    pub critical: f64,
    /// `|ρ_y|` at or below this (with `ρ_x < 0`) is a real negative zero.
    pub trivial: f64,
}

impl Default for ClassThresholds {
    fn default() -> Self {
        Self { critical: 1e-6, trivial: 1e-6 }
    }
}

/// A located zero `ρ` of `E(·, Δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub delta: f64,
    pub rho: Complex64,
    pub kind: ZeroKind,
    /// `|E(ρ, Δ)|`.
    pub residual: f64,
    /// `|E(ρ, Δ)|` over the magnitude of the summands.
    pub scaled_residual: f64,
    pub newton_iters: usize,
}

/// Real negative zeros are trivial; zeros on `Re s = 1/2` are critical.
pub fn classify(rho: Complex64, t: &ClassThresholds) -> ZeroKind {
    if rho.im.abs() <= t.trivial && rho.re < 0.0 {
        ZeroKind::Trivial
    } else if (rho.re - 0.5).abs() <= t.critical {
        ZeroKind::Critical
    } else {
        ZeroKind::OffCritical
    }
}

/// Total order used for all zero listings: by `ρ_y`, then `ρ_x`.
pub fn zero_order(a: &ZeroRecord, b: &ZeroRecord) -> std::cmp::Ordering {
    a.rho.im.total_cmp(&b.rho.im).then(a.rho.re.total_cmp(&b.rho.re))
}
