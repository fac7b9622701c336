//! Jacobi theta integrals as an independent route to the energy for
//! `Re s < 1`. Nothing in the production path calls into this module.

use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

use crate::energy::LatticeParams;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Quadrature};
use crate::zeta::{gamma_pole_distance, gamma_unchecked, PrecisionPolicy};

const MAX_DEPTH: usize = 40;
/// Terms below this are dropped from the theta series.
const SERIES_CUTOFF: f64 = 1e-17;

/// `ϑ(z, it) = Σ_n e^{-πn²t} e^{2πinz}` for real `z`, which is real.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaArgs {
    pub z: f64,
    pub t: f64,
}

impl ThetaArgs {
    pub fn eval(&self) -> Result<f64> {
        jacobi_theta(self.z, self.t)
    }
}

pub fn jacobi_theta(z: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("theta needs t > 0, got {t}")));
    }
    Ok(if t >= 1.0 { theta_direct(z, t) } else { theta_modular(z, t) })
}

/// `1 + 2 Σ_{n>=1} e^{-πn²t} cos(2πnz)`.
fn theta_direct(z: f64, t: f64) -> f64 {
    1.0 + theta_minus_one(z, t)
}

/// `ϑ(z, it) - 1` from the direct series, without cancellation.
fn theta_minus_one(z: f64, t: f64) -> f64 {
    let zf = z - z.floor();
    let mut sum = 0.0;
    let first = (-PI * t).exp();
    let mut n = 1.0f64;
    loop {
        let w = (-PI * n * n * t).exp();
        if w < SERIES_CUTOFF * first || w == 0.0 {
            break;
        }
        let c = if zf == 0.0 {
            1.0
        } else if zf == 0.5 {
            if n % 2.0 == 0.0 {
                1.0
            } else {
                -1.0
            }
        } else {
            (2.0 * PI * n * zf).cos()
        };
        sum += w * c;
        n += 1.0;
    }
    2.0 * sum
}

/// `t^{-1/2} Σ_m e^{-π(m-z)²/t}`.
fn theta_modular(z: f64, t: f64) -> f64 {
    let zf = z - z.floor();
    gaussian_sum(zf, t) / t.sqrt()
}

/// `Σ_m e^{-π(m-z)²/t}`, summed outward from `m = 0`.
fn gaussian_sum(z: f64, t: f64) -> f64 {
    let g = |m: f64| (-PI * (m - z).powi(2) / t).exp();
    let mut sum = g(0.0);
    let mut k = 1.0f64;
    loop {
        let (a, b) = (g(k), g(-k));
        sum += a + b;
        if k > z.abs() + 1.0 && a.max(b) <= SERIES_CUTOFF * sum {
            break;
        }
        k += 1.0;
    }
    sum
}

/// `2 Σ_{m>=1} e^{-πm²/t}`, so that `ϑ(0,it) - t^{-1/2}` is this over `√t`.
fn gaussian_tail(t: f64) -> f64 {
    let mut sum = 0.0;
    let mut m = 1.0f64;
    loop {
        let w = (-PI * m * m / t).exp();
        sum += w;
        if w <= SERIES_CUTOFF * sum || w == 0.0 {
            break;
        }
        m += 1.0;
    }
    2.0 * sum
}

/// Integral with its error estimate, over `(0, ∞)` split at `t = 1`.
/// `small(t)` is used on `(0, 1]` after `t = e^{-u}`, `large(t)` on `[1, ∞)`.
fn split_integral(
    small: impl Fn(f64) -> Complex64,
    u_max: f64,
    large: impl Fn(f64) -> Complex64,
    t_max: f64,
    tol: f64,
) -> Result<Quadrature> {
    let lo = integrate(
        &|u: f64| {
            let t = (-u).exp();
            small(t) * t
        },
        0.0,
        u_max,
        0.5 * tol,
        MAX_DEPTH,
    )?;
    let hi = integrate(&large, 1.0, t_max, 0.5 * tol, MAX_DEPTH)?;
    Ok(Quadrature { value: lo.value + hi.value, error: lo.error + hi.error })
}

/// `t` beyond which `e^{-πt} t^{p}` is below 1e-25.
fn upper_limit(p: f64) -> f64 {
    let mut t = 8.0f64;
    while -PI * t + p.max(0.0) * t.ln() > -57.0 {
        t += 4.0;
    }
    t
}

/// `u = -ln t` beyond which `e^{-π d²/t}` is negligible on `(0, 1]`.
fn lower_limit(d: f64, p: f64) -> f64 {
    let mut u = 1.0f64;
    while -PI * d * d * u.exp() + (p.abs() + 1.0) * u > -57.0 {
        u += 0.5;
    }
    u
}

fn power(t: f64, e: Complex64) -> Complex64 {
    (e * t.ln()).exp()
}

/// `∫_0^∞ [ϑ(z,it) - 1] t^{α/2 - 1} dt` for `Re α > 0`.
fn theta_integral(alpha: Complex64, z: f64, tol: f64) -> Result<Quadrature> {
    let e = alpha / 2.0 - 1.0;
    let d = z.min(1.0 - z);
    // on (0,1]: ϑ is exponentially small, and ∫_0^1 -t^{α/2-1} dt = -2/α
    let q = split_integral(
        |t| theta_modular(z, t) * power(t, e),
        lower_limit(d, e.re + 1.0),
        |t| theta_minus_one(z, t) * power(t, e),
        upper_limit(e.re),
        tol,
    )?;
    Ok(Quadrature { value: q.value - 2.0 / alpha, error: q.error })
}

/// `ζ(1-α, z) + ζ(1-α, 1-z)` from the theta integral.
pub fn hurwitz_pair_via_theta(alpha: Complex64, z: f64, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(hurwitz_pair_via_theta_with_error(alpha, z, policy)?.value)
}

pub fn hurwitz_pair_via_theta_with_error(alpha: Complex64, z: f64, policy: &PrecisionPolicy) -> Result<Quadrature> {
    if !(alpha.re > 0.0) {
        return Err(Error::Domain(format!("Re alpha = {} must be positive", alpha.re)));
    }
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("theta phase z = {z} outside (0, 1)")));
    }
    let w = (1.0 - alpha) / 2.0;
    if gamma_pole_distance(w) <= policy.pole_exclusion_radius {
        return Err(Error::PoleProximity { s: 1.0 - alpha });
    }
    let pre = (-w * PI.ln()).exp() * gamma_unchecked(w);
    let tol = policy.quadrature_tol * 1e-3 * pre.norm().min(1.0);
    let q = theta_integral(alpha, z, tol.max(1e-16))?;
    Ok(Quadrature { value: q.value / pre, error: q.error / pre.norm() })
}

/// `f(s) = 2π^{-s/2}Γ(s/2)ζ(s)` from the theta integrals
///
/// `∫ [ϑ(0,it) - 1 - t^{-1/2}] t^{s/2-1} dt` (`0 < Re s < 1`) or
/// `∫ [ϑ(0,it) - t^{-1/2}] t^{s/2-1} dt` (`Re s < 0`).
///
/// After splitting at `t = 1` both reduce to the same smooth integrals plus
/// `-2/s - 2/(1-s)`.
fn f_integral(s: Complex64, tol: f64) -> Result<Quadrature> {
    let e = s / 2.0 - 1.0;
    // ϑ(0,it) - t^{-1/2} = 2 t^{-1/2} Σ_{m>=1} e^{-πm²/t}
    let small = |t: f64| gaussian_tail(t) / t.sqrt() * power(t, e);
    let large = |t: f64| theta_minus_one(0.0, t) * power(t, e);
    let q = split_integral(small, lower_limit(1.0, e.re - 0.5), large, upper_limit(e.re), tol)?;
    Ok(Quadrature { value: q.value - 2.0 / s - 2.0 / (1.0 - s), error: q.error })
}

/// Energy computed only from theta integrals.
pub fn energy_via_theta(s: Complex64, delta: f64, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(energy_via_theta_with_error(s, delta, policy)?.value)
}

pub fn energy_via_theta_with_error(s: Complex64, delta: f64, policy: &PrecisionPolicy) -> Result<Quadrature> {
    if !(s.re < 1.0) {
        return Err(Error::Domain(format!("theta representation needs Re s < 1, got {}", s.re)));
    }
    if s.re.abs() < 1e-3 {
        return Err(Error::BranchBoundary { re: s.re });
    }
    if gamma_pole_distance(s / 2.0) <= policy.pole_exclusion_radius {
        return Err(Error::PoleProximity { s });
    }
    let p = LatticeParams::new(delta)?;
    let pre = (-s / 2.0 * PI.ln()).exp() * gamma_unchecked(s / 2.0) * ((s + 1.0) * LN_2).exp();
    let tol = (policy.quadrature_tol * 1e-3 * pre.norm().min(1.0)).max(1e-16);
    let iz = theta_integral(1.0 - s, p.shift, 0.5 * tol)?;
    let f = f_integral(s, 0.5 * tol)?;
    Ok(Quadrature { value: (iz.value + f.value) / pre, error: (iz.error + f.error) / pre.norm() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::energy;
    use crate::zeta::{hurwitz_zeta, riemann_zeta, HurwitzArgs};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn theta_direct_series() {
        let mut want = 1.0;
        for n in 1..=10 {
            want += 2.0 * (-PI * (n * n) as f64).exp();
        }
        assert!((jacobi_theta(0.0, 1.0).unwrap() - want).abs() < 4e-16);
        let big = jacobi_theta(0.0, 30.0).unwrap();
        assert!((big - 1.0).abs() < 1e-40 + 2.0 * (-PI * 30.0).exp());
        assert!(jacobi_theta(0.3, 0.0).is_err());
    }

    #[test]
    fn modular_identity() {
        let t = 0.37;
        let lhs = theta_direct(0.0, t);
        let rhs = theta_direct(0.0, 1.0 / t) / t.sqrt();
        assert!((lhs - rhs).abs() < 1e-12);
        assert!((jacobi_theta(0.0, t).unwrap() - lhs).abs() < 1e-12);
        for z in [0.2, 0.5, 0.83] {
            assert!((theta_direct(z, t) - theta_modular(z, t)).abs() < 1e-12);
        }
    }

    #[test]
    fn theta_tends_to_zero_near_origin() {
        for z in [0.25, 0.5, 0.7] {
            for t in [1e-2, 1e-3] {
                assert!((jacobi_theta(z, t).unwrap() - 1.0 + 1.0).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn hurwitz_pairs() {
        let p = pol();
        let k = |s: Complex64, a: f64| hurwitz_zeta(HurwitzArgs::new(s, a), &p).unwrap();
        let v = hurwitz_pair_via_theta(c(1.5, 0.0), 0.4, &p).unwrap();
        let want = k(c(-0.5, 0.0), 0.4) + k(c(-0.5, 0.0), 0.6);
        assert!((v - want).norm() <= 100.0 * p.quadrature_tol);
        let a = c(0.5, 2.0);
        let v = hurwitz_pair_via_theta(a, 2.0 / 3.0, &p).unwrap();
        let want = k(1.0 - a, 2.0 / 3.0) + k(1.0 - a, 1.0 / 3.0);
        assert!((v - want).norm() <= 100.0 * p.quadrature_tol);
        let v = hurwitz_pair_via_theta(c(0.7, -3.0), 0.5, &p).unwrap();
        let want = 2.0 * k(c(0.3, 3.0), 0.5);
        assert!((v - want).norm() <= 100.0 * p.quadrature_tol);
        assert!(hurwitz_pair_via_theta(c(-0.5, 0.0), 0.4, &p).is_err());
        assert!(hurwitz_pair_via_theta(c(0.5, 0.0), 1.0, &p).is_err());
    }

    #[test]
    fn energy_examples() {
        let p = pol();
        for &(s, d) in &[(c(0.5, 0.0), 0.6), (c(-0.5, 2.0), 0.6), (c(0.5, 0.0), 1.0)] {
            let v = energy_via_theta(s, d, &p).unwrap();
            assert!((v - energy(s, d, &p).unwrap()).norm() <= 1e-8, "s={s}");
        }
        let z = riemann_zeta(c(0.5, 0.0), &p).unwrap();
        assert!((energy_via_theta(c(0.5, 0.0), 1.0, &p).unwrap() - z).norm() <= 1e-8);
    }

    #[test]
    fn errors() {
        let p = pol();
        assert!(matches!(energy_via_theta(c(0.0005, 1.0), 0.5, &p), Err(Error::BranchBoundary { .. })));
        assert!(matches!(energy_via_theta(c(-2.0, 0.0), 0.5, &p), Err(Error::PoleProximity { .. })));
        assert!(matches!(energy_via_theta(c(1.5, 0.0), 0.5, &p), Err(Error::Domain(_))));
    }

    #[test]
    fn agreement_suite() {
        let p = pol();
        let pts = [
            c(0.5, 0.0),
            c(0.25, 3.0),
            c(0.75, -9.5),
            c(-0.5, 2.0),
            c(-1.5, 7.0),
            c(-3.3, 0.4),
            c(-6.1, 10.0),
            c(0.9, 5.5),
            c(-0.2, -4.0),
            c(-8.7, 1.0),
        ];
        for (i, &s) in pts.iter().enumerate() {
            let d = if i % 2 == 0 { 0.4 } else { 0.75 };
            let v = energy_via_theta(s, d, &p).unwrap();
            let e = energy(s, d, &p).unwrap();
            assert!((v - e).norm() <= 1e-8, "s={s} d={d}: {v} vs {e}");
        }
    }

    #[test]
    fn quadrature_converges_with_tolerance() {
        let p = pol();
        for &(s, d) in
            &[(c(0.5, 1.0), 0.4), (c(-0.7, 4.0), 0.75), (c(-2.5, 0.0), 0.3), (c(0.2, -8.0), 0.9), (c(-5.0, 6.0), 0.55)]
        {
            let loose = energy_via_theta_with_error(s, d, &p).unwrap();
            let mut tight_policy = p.clone();
            tight_policy.quadrature_tol *= 0.5;
            let tight = energy_via_theta_with_error(s, d, &tight_policy).unwrap();
            let change = (tight.value - loose.value).norm();
            assert!(change <= loose.error.max(1e-15), "s={s}: change {change:e} vs estimate {:e}", loose.error);
        }
    }
}
