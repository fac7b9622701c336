//! Riemann and Hurwitz zeta functions on the punctured complex plane.
//!
//! `hurwitz_zeta` picks an evaluation route by `Re s`:
//!
//! | region                 | route                                   |
//! |------------------------|-----------------------------------------|
//! | `Re s >= 0`            | Euler–Maclaurin, binary64               |
//! | `-10 <= Re s < 0`      | Euler–Maclaurin, double-double          |
//! | `Re s < -10`           | Hurwitz functional equation, binary64   |
//!
//! All routes return the analytic continuation; the derivative in `s` is
//! obtained by differentiating each route term by term.

mod bernoulli;
mod gamma;
pub(crate) mod hurwitz;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub use bernoulli::{bernoulli_numbers, MAX_BERNOULLI_INDEX};
pub(crate) use gamma::{digamma, gamma_pole_distance, gamma_unchecked, ln_gamma};
use hurwitz::{euler_maclaurin, euler_maclaurin_dd, reflection, ZetaPair, LEFT_EM_LIMIT};

/// Error-control knobs shared by every numerical routine.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    /// Stopping threshold for the first omitted Euler–Maclaurin term,
    /// relative to `max(1, |value|)`.
    pub target_abs_err: f64,
    /// Minimum number of direct terms `N`.
    pub em_direct_terms: usize,
    /// Cap on the Bernoulli order `J` before `N` is doubled.
    pub em_bernoulli_terms: usize,
    pub newton_tol: f64,
    pub pole_exclusion_radius: f64,
    pub quadrature_tol: f64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self {
            target_abs_err: 1e-12,
            em_direct_terms: 10,
            em_bernoulli_terms: 30,
            newton_tol: 1e-12,
            pole_exclusion_radius: 1e-6,
            quadrature_tol: 1e-9,
        }
    }
}

impl PrecisionPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_err > 0.0) {
            return Err(Error::Domain("target_abs_err must be positive".into()));
        }
        if self.em_direct_terms == 0 || self.em_bernoulli_terms == 0 {
            return Err(Error::Domain("N and J must be positive".into()));
        }
        if !(self.newton_tol > 0.0 && self.quadrature_tol > 0.0 && self.pole_exclusion_radius >= 0.0) {
            return Err(Error::Domain("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn check_pole(&self, s: Complex64) -> Result<()> {
        if (s - 1.0).norm() <= self.pole_exclusion_radius {
            Err(Error::PoleProximity { s })
        } else {
            Ok(())
        }
    }
}

/// Arguments of `zeta(s, a)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HurwitzArgs {
    pub s: Complex64,
    pub a: f64,
}

impl HurwitzArgs {
    pub fn new(s: Complex64, a: f64) -> Self {
        Self { s, a }
    }

    fn check(&self, policy: &PrecisionPolicy) -> Result<()> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::Domain(format!("Hurwitz shift a = {} must be positive", self.a)));
        }
        policy.check_pole(self.s)
    }
}

pub(crate) fn hurwitz_pair(s: Complex64, a: f64, policy: &PrecisionPolicy, with_deriv: bool) -> ZetaPair<f64> {
    if s.re >= 0.0 {
        euler_maclaurin::<f64>(s, a, policy, with_deriv)
    } else if s.re >= LEFT_EM_LIMIT {
        euler_maclaurin_dd(s, a, policy, with_deriv)
    } else {
        reflection(s, a, with_deriv)
    }
}

/// Hurwitz zeta `zeta(s, a) = sum_{n>=0} (n+a)^{-s}`, analytically continued.
pub fn hurwitz_zeta(args: HurwitzArgs, policy: &PrecisionPolicy) -> Result<Complex64> {
    args.check(policy)?;
    Ok(hurwitz_pair(args.s, args.a, policy, false).value)
}

/// `d/ds zeta(s, a)`.
pub fn hurwitz_zeta_ds(args: HurwitzArgs, policy: &PrecisionPolicy) -> Result<Complex64> {
    args.check(policy)?;
    Ok(hurwitz_pair(args.s, args.a, policy, true).deriv)
}

/// Value and s-derivative in one pass.
pub fn hurwitz_zeta_with_ds(args: HurwitzArgs, policy: &PrecisionPolicy) -> Result<(Complex64, Complex64)> {
    args.check(policy)?;
    let p = hurwitz_pair(args.s, args.a, policy, true);
    Ok((p.value, p.deriv))
}

pub fn riemann_zeta(s: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    hurwitz_zeta(HurwitzArgs::new(s, 1.0), policy)
}

pub fn riemann_zeta_ds(s: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    hurwitz_zeta_ds(HurwitzArgs::new(s, 1.0), policy)
}

/// Complex Gamma function. Rejects points within the default exclusion
/// radius of a pole.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    gamma_with_policy(s, &PrecisionPolicy::default())
}

pub fn gamma_with_policy(s: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    if gamma_pole_distance(s) <= policy.pole_exclusion_radius {
        return Err(Error::PoleProximity { s });
    }
    Ok(gamma_unchecked(s))
}

/// Completed zeta `pi^{-s/2} Gamma(s/2) zeta(s)`.
pub fn completed_zeta(s: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    let g = gamma_with_policy(s / 2.0, policy)?;
    let z = riemann_zeta(s, policy)?;
    Ok((-s / 2.0 * PI.ln()).exp() * g * z)
}

/// `Lambda(s) - Lambda(1-s)`; vanishes by the functional equation.
pub fn duality_residual(s: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(completed_zeta(s, policy)? - completed_zeta(1.0 - s, policy)?)
}
