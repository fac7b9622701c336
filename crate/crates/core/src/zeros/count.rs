//! Zero counting by the winding number of `E` along a window boundary.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use super::SearchWindow;
use crate::energy::energy_eval;
use crate::error::{Error, Result};
use crate::zeta::PrecisionPolicy;

/// A boundary sample with relative size below this counts as a zero on the contour.
pub const BOUNDARY_ZERO_TOL: f64 = 1e-8;
/// Inflation applied when the contour hits a zero or the pole.
pub const NUDGE: f64 = 1e-4;
pub const MAX_NUDGES: usize = 5;

const MAX_PHASE_STEP: f64 = PI / 4.0;
const SAMPLE_LIMIT: usize = 1 << 20;

struct Tracker<'a> {
    delta: f64,
    policy: &'a PrecisionPolicy,
    samples: usize,
}

impl Tracker<'_> {
    fn value(&mut self, s: Complex64) -> Result<Complex64> {
        self.samples += 1;
        if self.samples > SAMPLE_LIMIT {
            return Err(Error::PhaseStepFailure { limit: SAMPLE_LIMIT });
        }
        let e = energy_eval(s, self.delta, self.policy, false)?;
        if e.scaled_residual() < BOUNDARY_ZERO_TOL {
            return Err(Error::BoundaryZero { s });
        }
        Ok(e.value)
    }

    /// Phase change of `E` from `a` to `b`, bisecting until both halves of
    /// every accepted piece turn by less than `MAX_PHASE_STEP`.
    fn segment(&mut self, a: Complex64, b: Complex64, ea: Complex64, eb: Complex64) -> Result<f64> {
        let m = 0.5 * (a + b);
        let em = self.value(m)?;
        let d1 = (em / ea).arg();
        let d2 = (eb / em).arg();
        if d1.abs() < MAX_PHASE_STEP && d2.abs() < MAX_PHASE_STEP {
            return Ok(d1 + d2);
        }
        if (b - a).norm() < 1e-13 * a.norm().max(1.0) {
            return Err(Error::BoundaryZero { s: m });
        }
        Ok(self.segment(a, m, ea, em)? + self.segment(m, b, em, eb)?)
    }
}

/// Winding number of `E` along `window`, plus one if the pole `s = 1` is
/// enclosed. Fails with `BoundaryZero` or `PoleProximity` instead of nudging.
pub(crate) fn count_exact(window: &SearchWindow, delta: f64, policy: &PrecisionPolicy) -> Result<i64> {
    window.validate()?;
    let pole = Complex64::new(1.0, 0.0);
    if window.boundary_distance(pole) <= policy.pole_exclusion_radius.max(1e-12) * 10.0 {
        return Err(Error::PoleProximity { s: pole });
    }
    let mut tr = Tracker { delta, policy, samples: 0 };
    let corners = window.corners();
    let n = window.boundary_samples_init.max(1);
    let mut total = 0.0;
    let first = tr.value(corners[0])?;
    let mut prev = first;
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        let mut pa = a;
        for j in 1..=n {
            let pb = if j == n { b } else { a + (b - a) * (j as f64 / n as f64) };
            let eb = if j == n && k == 3 { first } else { tr.value(pb)? };
            total += tr.segment(pa, pb, prev, eb)?;
            pa = pb;
            prev = eb;
        }
    }
    let turns = total / TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() > 1e-6 {
        return Err(Error::PhaseStepFailure { limit: SAMPLE_LIMIT });
    }
    let enclosed_pole = window.strictly_contains(pole) as i64;
    Ok(rounded as i64 + enclosed_pole)
}

/// Counts zeros of `E(·, Δ)` inside `window`. When the contour meets a zero
/// or the pole, the window is inflated by `NUDGE` and retried up to
/// `MAX_NUDGES` times.
pub fn count_zeros(window: &SearchWindow, delta: f64, policy: &PrecisionPolicy) -> Result<i64> {
    Ok(count_with_nudge(window, delta, policy)?.0)
}

pub(crate) fn count_with_nudge(
    window: &SearchWindow,
    delta: f64,
    policy: &PrecisionPolicy,
) -> Result<(i64, SearchWindow)> {
    let mut w = *window;
    let mut attempt = 0;
    loop {
        match count_exact(&w, delta, policy) {
            Ok(n) => return Ok((n, w)),
            Err(Error::BoundaryZero { .. } | Error::PoleProximity { .. }) if attempt < MAX_NUDGES => {
                log::debug!("contour hit a zero or the pole; inflating window by {NUDGE}");
                w = w.inflate(NUDGE);
                attempt += 1;
            }
            Err(e) => return Err(e),
        }
    }
}
