//! Riesz energy per point of the alternating lattice
//! `L = 2Z ∪ (2Z + 2Δ/(1+Δ))`.
//!
//! ```text
//! E(s, Δ) = 2^{-s} ζ(s) + 2^{-s-1} [ζ(s, z) + ζ(s, 1-z)],   z = 1/(1+Δ)
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::zeta::{digamma, hurwitz_pair, ln_gamma, riemann_zeta, PrecisionPolicy};

/// Below this real part the energy is summed in its reflected form.
const REFLECTED_LIMIT: f64 = -10.0;

/// Geometry of the lattice for a given `Δ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeParams {
    pub delta: f64,
    pub spacing_long: f64,
    pub spacing_short: f64,
    /// `z = 1/(1+Δ)`
    pub shift: f64,
    /// `ε = 1 - Δ`
    pub epsilon: f64,
}

impl LatticeParams {
    /// Values of `Δ > 1` are folded to `1/Δ`.
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::Domain(format!("delta = {delta} must be positive")));
        }
        let delta = if delta > 1.0 { 1.0 / delta } else { delta };
        Ok(Self {
            delta,
            spacing_long: 2.0 / (1.0 + delta),
            spacing_short: 2.0 * delta / (1.0 + delta),
            shift: 1.0 / (1.0 + delta),
            epsilon: 1.0 - delta,
        })
    }

    /// `1 - z = Δ/(1+Δ)`, formed without cancellation.
    pub fn co_shift(&self) -> f64 {
        self.delta / (1.0 + self.delta)
    }

    /// `z - 1/2 = ε / (2(1+Δ))`.
    pub fn half_offset(&self) -> f64 {
        self.epsilon / (2.0 * (1.0 + self.delta))
    }
}

/// Energy, its `s`-derivative, and the magnitude scale of the summands that
/// produced it. `|value| / max(1, scale)` is the relative residual used by
/// the zero finder.
#[derive(Clone, Copy, Debug)]
pub struct EnergyEval {
    pub value: Complex64,
    pub deriv: Complex64,
    pub scale: f64,
}

impl EnergyEval {
    pub fn scaled_residual(&self) -> f64 {
        self.value.norm() / self.scale.max(1.0)
    }
}

fn pow2_neg(s: Complex64) -> Complex64 {
    (-s * LN_2).exp()
}

/// `E(s, Δ)`, analytically continued to `C \ {1}`.
pub fn energy(s: Complex64, delta: f64, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(energy_eval(s, delta, policy, false)?.value)
}

/// `E(s, Δ)` together with `∂E/∂s`.
pub fn energy_with_ds(s: Complex64, delta: f64, policy: &PrecisionPolicy) -> Result<EnergyEval> {
    energy_eval(s, delta, policy, true)
}

pub(crate) fn energy_eval(s: Complex64, delta: f64, policy: &PrecisionPolicy, with_deriv: bool) -> Result<EnergyEval> {
    let p = LatticeParams::new(delta)?;
    policy.check_pole(s)?;
    if s.re < REFLECTED_LIMIT {
        return Ok(reflected(s, &p, with_deriv));
    }
    let z1 = hurwitz_pair(s, 1.0, policy, with_deriv);
    let za = hurwitz_pair(s, p.shift, policy, with_deriv);
    let zb = hurwitz_pair(s, p.co_shift(), policy, with_deriv);
    let w = pow2_neg(s);
    let t0 = w * z1.value;
    let t1 = 0.5 * w * za.value;
    let t2 = 0.5 * w * zb.value;
    let value = t0 + t1 + t2;
    let deriv =
        if with_deriv { w * (z1.deriv + 0.5 * (za.deriv + zb.deriv)) - LN_2 * value } else { Complex64::new(0.0, 0.0) };
    Ok(EnergyEval { value, deriv, scale: t0.norm() + t1.norm() + t2.norm() })
}

/// Left half-plane form obtained from Hurwitz's formula:
///
/// `E(s, Δ) = 2^{2-s} Γ(1-s) (2π)^{s-1} sin(πs/2) Σ_{n>=1} cos²(πnz) n^{s-1}`.
///
/// With `z = 1/2 + δ` the weights are `cos²(πnδ)` for even `n` and
/// `sin²(πnδ)` for odd `n`, both accurate when `δ` is tiny.
fn reflected(s: Complex64, p: &LatticeParams, with_deriv: bool) -> EnergyEval {
    let w = 1.0 - s;
    let delta = p.half_offset();
    // tail below 1e-28 of the sum's natural size
    let sigma = w.re;
    let n_max = ((1e-28 * (sigma - 1.0)).ln() / (1.0 - sigma)).exp().ceil().clamp(8.0, 1e6) as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for n in (1..=n_max).rev() {
        let nf = n as f64;
        let (sn, cs) = (PI * nf * delta).sin_cos();
        let weight = if n % 2 == 0 { cs * cs } else { sn * sn };
        if weight == 0.0 {
            continue;
        }
        let term = weight * (-w * nf.ln()).exp();
        sum += term;
        mag += term.norm();
        if with_deriv {
            dsum += term * nf.ln();
        }
    }
    let half = s * (PI / 2.0);
    let log_pre = (2.0 - s) * LN_2 + ln_gamma(w) - w * (2.0 * PI).ln();
    let pre = log_pre.exp() * half.sin();
    let value = pre * sum;
    let deriv = if with_deriv {
        // d/ds log of the prefactor
        let dlog = -LN_2 - digamma(w) + (2.0 * PI).ln() + (PI / 2.0) / half.tan();
        pre * (dsum + dlog * sum)
    } else {
        Complex64::new(0.0, 0.0)
    };
    EnergyEval { value, deriv, scale: pre.norm() * mag }
}

/// Truncated lattice sum with a midpoint-rule integral tail.
#[derive(Clone, Copy, Debug)]
pub struct DirectSum {
    pub value: Complex64,
    /// Bound on the error of the tail estimate.
    pub error_bound: f64,
}

/// Brute-force energy from the defining double sum, keeping the
/// `cutoff` nearest cells on each side.
pub fn energy_direct_sum(s: Complex64, delta: f64, cutoff: usize) -> Result<DirectSum> {
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!("direct sum diverges for Re s = {} <= 1", s.re)));
    }
    if cutoff < 1000 {
        return Err(Error::Domain(format!("cutoff {cutoff} below 1000")));
    }
    let p = LatticeParams::new(delta)?;
    let b = p.spacing_short;
    let pw = |x: f64| (-s * x.ln()).exp();
    // E = sum_{m>=1} (2m)^{-s} + 1/2 sum_{m>=0} [(2m+b)^{-s} + (2m+2-b)^{-s}]
    let mut sum = Complex64::new(0.0, 0.0);
    for m in (0..cutoff).rev() {
        let x = 2.0 * m as f64;
        sum += pw(x + 2.0) + 0.5 * (pw(x + b) + pw(x + 2.0 - b));
    }
    let c = cutoff as f64;
    let tail_of = |start: f64| (-(s - 1.0) * start.ln()).exp() / (2.0 * (s - 1.0));
    // terms 2m+β for m >= c, integrated from m = c - 1/2
    let tail = tail_of(2.0 * c + 1.0) + 0.5 * (tail_of(2.0 * c - 1.0 + b) + tail_of(2.0 * c + 1.0 - b));
    // midpoint error per pairing is about |h'(start)|/24 with h' = -2s x^{-s-1}
    let error_bound = 2.0 * s.norm() * (2.0 * c - 1.0).powf(-s.re - 1.0) / 24.0 * 2.0;
    Ok(DirectSum { value: sum + tail, error_bound })
}

/// The values of `Δ` with a closed-form factorization through `ζ(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialDelta {
    OneFifth,
    OneThird,
    OneHalf,
    One,
}

impl SpecialDelta {
    pub const ALL: [SpecialDelta; 4] = [Self::OneFifth, Self::OneThird, Self::OneHalf, Self::One];

    pub fn value(self) -> f64 {
        match self {
            Self::OneFifth => 0.2,
            Self::OneThird => 1.0 / 3.0,
            Self::OneHalf => 0.5,
            Self::One => 1.0,
        }
    }

    /// Matches `delta` (or its fold `1/delta`) to within a few ulps.
    pub fn detect(delta: f64) -> Option<Self> {
        let d = if delta > 1.0 { 1.0 / delta } else { delta };
        Self::ALL.into_iter().find(|v| (v.value() - d).abs() <= 4.0 * f64::EPSILON * d)
    }

    /// Exact detection from a reduced fraction `num/den`.
    pub fn from_ratio(num: u64, den: u64) -> Option<Self> {
        let (a, b) = if num > den { (den, num) } else { (num, den) };
        if a == 0 || b % a != 0 {
            return None;
        }
        match b / a {
            5 => Some(Self::OneFifth),
            3 => Some(Self::OneThird),
            2 => Some(Self::OneHalf),
            1 => Some(Self::One),
            _ => None,
        }
    }

    /// The polynomial in `2^s, 3^s` multiplying `ζ(s)/2^{s+1}`.
    pub fn prefactor(self, s: Complex64) -> Complex64 {
        let p = |b: f64| (s * b.ln()).exp();
        match self {
            Self::OneFifth => 3.0 - p(2.0) - p(3.0) + p(6.0),
            Self::OneThird => 2.0 - p(2.0) + p(4.0),
            Self::OneHalf => 1.0 + p(3.0),
            Self::One => 2.0 * p(2.0),
        }
    }
}

/// Energy through its factorization `P(s) ζ(s) / 2^{s+1}`.
pub fn energy_factorized(s: Complex64, delta: f64, policy: &PrecisionPolicy) -> Result<Complex64> {
    let special =
        SpecialDelta::detect(delta).ok_or_else(|| Error::Domain(format!("delta = {delta} has no factorized form")))?;
    let z = riemann_zeta(s, policy)?;
    Ok(special.prefactor(s) * z * pow2_neg(s + 1.0))
}

/// Coefficients of the expansion of `E(s, 1-ε)` through `ε⁵`.
#[derive(Clone, Copy, Debug)]
pub struct TaylorExpansion {
    pub s: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
    pub c4: Complex64,
    pub c5: Complex64,
    pub zeta_s: Complex64,
    pub zeta_s_plus_2: Complex64,
    pub zeta_s_plus_4: Complex64,
}

impl TaylorExpansion {
    pub fn new(s: Complex64, policy: &PrecisionPolicy) -> Result<Self> {
        let zeta_s = riemann_zeta(s, policy)?;
        let zeta_s_plus_2 = riemann_zeta(s + 2.0, policy)?;
        let zeta_s_plus_4 = riemann_zeta(s + 4.0, policy)?;
        let p2 = |x: Complex64| (x * LN_2).exp();
        let a = (p2(s + 2.0) - 1.0) / p2(s + 5.0) * s * (s + 1.0) * zeta_s_plus_2;
        let b = (p2(s + 4.0) - 1.0) / p2(s + 11.0) * s * (s + 1.0) * (s + 2.0) * (s + 3.0) * zeta_s_plus_4 / 3.0;
        Ok(Self { s, c2: a, c3: a, c4: 0.75 * a + b, c5: 0.5 * a + 2.0 * b, zeta_s, zeta_s_plus_2, zeta_s_plus_4 })
    }

    pub fn eval(&self, eps: f64) -> Complex64 {
        let e2 = eps * eps;
        self.zeta_s + e2 * (self.c2 + eps * (self.c3 + eps * (self.c4 + eps * self.c5)))
    }
}

/// `E(s, 1-ε)` from its Taylor expansion through `ε⁵`.
pub fn taylor_energy(s: Complex64, eps: f64, policy: &PrecisionPolicy) -> Result<Complex64> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::Domain(format!("epsilon = {eps} outside [0, 1)")));
    }
    Ok(TaylorExpansion::new(s, policy)?.eval(eps))
}
