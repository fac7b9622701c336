//! Hurwitz zeta evaluation routes.
//!
//! * Euler–Maclaurin, generic over the arithmetic backend. Used in binary64
//!   for `Re s >= 0` and in double-double for `LEFT_EM_LIMIT <= Re s < 0`,
//!   where the direct partial sums grow like `N^{-Re s}` and cancel.
//! * Hurwitz's functional equation with rapidly convergent trigonometric
//!   Dirichlet series for `Re s < LEFT_EM_LIMIT`.

use num_complex::{Complex, Complex64};
use std::f64::consts::PI;

use super::bernoulli::em_coefficient;
use super::gamma::{digamma, ln_gamma};
use super::PrecisionPolicy;
use crate::arith::{abs_f64, from_c64, real_pow_neg, Real};

/// Below this real part the reflection route is used.
pub(crate) const LEFT_EM_LIMIT: f64 = -10.0;

/// The first omitted term must sit this far below the target, since the
/// remainder is only bounded by a small multiple of it.
const EM_MARGIN: f64 = 1e-3;

/// Hard cap on the Bernoulli order regardless of policy.
const EM_MAX_J: usize = 60;

/// Value and s-derivative of a Hurwitz zeta evaluation.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ZetaPair<T> {
    pub value: Complex<T>,
    pub deriv: Complex<T>,
}

/// Number of direct terms for a given ordinate.
pub(crate) fn direct_terms(s_im: f64, policy: &PrecisionPolicy) -> usize {
    policy.em_direct_terms.max((1.3 * s_im.abs()).ceil() as usize)
}

/// Euler–Maclaurin for `zeta(s, a)`:
///
/// `sum_{n<N} (n+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
///  + sum_{j=1}^{J} B_{2j}/(2j)! (s)_{2j-1} (N+a)^{-s-2j+1}`.
///
/// `J` grows until the first omitted term drops below
/// `EM_MARGIN * target_abs_err * max(1, |estimate|)`; if the Bernoulli cap is hit, `N`
/// doubles (at most three times).
pub(crate) fn euler_maclaurin<T: Real>(s: Complex<T>, a: T, policy: &PrecisionPolicy, with_deriv: bool) -> ZetaPair<T> {
    let one = T::one();
    let zero_c = Complex::new(T::zero(), T::zero());
    let j_cap = policy.em_bernoulli_terms.clamp(1, EM_MAX_J - 1);
    let mut n_terms = direct_terms(s.im.to_f64(), policy);
    let mut best = None;

    for _retry in 0..=3 {
        let mut sum = zero_c;
        let mut dsum = zero_c;
        for n in (0..n_terms).rev() {
            let x = T::from_f64(n as f64) + a;
            let p = real_pow_neg(x, s);
            sum = sum + p;
            if with_deriv {
                dsum = dsum - p * x.ln();
            }
        }

        let x = T::from_f64(n_terms as f64) + a;
        let lx = x.ln();
        let xs = real_pow_neg(x, s);
        let s_minus_1 = s - one;
        let integral = xs * x / s_minus_1;
        sum = sum + integral + xs / T::from_f64(2.0);
        if with_deriv {
            dsum = dsum - integral * lx - integral / s_minus_1 - xs * lx / T::from_f64(2.0);
        }

        // rising factorial (s)_{2j-1}, its derivative, and (N+a)^{-s-2j+1}
        let mut rising = s;
        let mut drising = Complex::new(one, T::zero());
        let inv_x = one / x;
        let inv_x2 = inv_x * inv_x;
        let mut pw = xs * inv_x;
        let mut converged = false;
        for j in 1..=j_cap {
            let (h, l) = em_coefficient(j);
            let c = T::from_parts(h, l);
            let term = rising * pw * c;
            sum = sum + term;
            if with_deriv {
                dsum = dsum + (drising - rising * lx) * pw * c;
            }

            let m1 = s + T::from_f64((2 * j - 1) as f64);
            let m2 = s + T::from_f64((2 * j) as f64);
            let next_rising = rising * m1 * m2;
            drising = drising * m1 * m2 + rising * (m1 + m2);
            rising = next_rising;
            pw = pw * inv_x2;

            let (h, l) = em_coefficient(j + 1);
            let next = abs_f64(rising * pw * T::from_parts(h, l));
            if next <= EM_MARGIN * policy.target_abs_err * abs_f64(sum).max(1.0) {
                converged = true;
                break;
            }
        }
        best = Some(ZetaPair { value: sum, deriv: dsum });
        if converged {
            break;
        }
        n_terms *= 2;
    }
    best.expect("at least one Euler-Maclaurin pass")
}

/// `zeta(s, a)` for `Re s < LEFT_EM_LIMIT` through Hurwitz's formula
///
/// `zeta(s, a) = 2 Gamma(1-s) (2 pi)^{s-1}
///     [ sin(pi s/2) C(1-s, a) + cos(pi s/2) S(1-s, a) ]`
///
/// with `C(w, a) = sum cos(2 pi n a) n^{-w}` and `S` likewise, valid for
/// `0 < a <= 1`. Larger shifts are reduced with the recurrence in `a`.
pub(crate) fn reflection(s: Complex64, a: f64, with_deriv: bool) -> ZetaPair<f64> {
    let (frac, shift_terms) = reduce_shift(a);
    let w = 1.0 - s;
    let (c, s_sum, dc, ds) = trig_dirichlet(w, frac, with_deriv);

    let half = s * (PI / 2.0);
    let (sn, cs) = (half.sin(), half.cos());
    let g = 2.0 * (ln_gamma(w) - w * (2.0 * PI).ln()).exp();
    let bracket = sn * c + cs * s_sum;
    let mut value = g * bracket;
    let mut deriv = Complex64::new(0.0, 0.0);
    if with_deriv {
        let dg = g * ((2.0 * PI).ln() - digamma(w));
        let dbracket = (PI / 2.0) * (cs * c - sn * s_sum) - sn * dc - cs * ds;
        deriv = dg * bracket + g * dbracket;
    }
    // zeta(s, a) = zeta(s, frac) - sum_{k < m} (frac + k)^{-s}
    for k in 0..shift_terms {
        let x = frac + k as f64;
        let p = real_pow_neg(x, s);
        value -= p;
        if with_deriv {
            deriv += p * x.ln();
        }
    }
    ZetaPair { value, deriv }
}

fn reduce_shift(a: f64) -> (f64, usize) {
    if a <= 1.0 {
        return (a, 0);
    }
    let m = a.ceil() - 1.0;
    let frac = a - m;
    (frac, m as usize)
}

/// `C(w,a)`, `S(w,a)` and their w-derivatives, truncated once the omitted
/// tail `~ N^{1-Re w}/(Re w - 1)` is below `1e-18`.
fn trig_dirichlet(w: Complex64, a: f64, with_deriv: bool) -> (Complex64, Complex64, Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let sigma = w.re;
    let n_max = if sigma > 1.0 {
        let tol: f64 = 1e-18 * (sigma - 1.0);
        (tol.ln() / (1.0 - sigma)).exp().ceil().clamp(2.0, 1e6) as usize
    } else {
        1_000_000
    };
    let unit_shift = a == 1.0;
    let (mut c, mut s, mut dc, mut ds) = (zero, zero, zero, zero);
    for n in (1..=n_max).rev() {
        let nf = n as f64;
        let p = real_pow_neg(nf, w);
        let (sn, cs) = if unit_shift { (0.0, 1.0) } else { (2.0 * PI * nf * a).sin_cos() };
        c += p * cs;
        s += p * sn;
        if with_deriv {
            let l = nf.ln();
            dc -= p * (cs * l);
            ds -= p * (sn * l);
        }
    }
    (c, s, dc, ds)
}

/// Double-double Euler–Maclaurin rounded back to binary64.
pub(crate) fn euler_maclaurin_dd(s: Complex64, a: f64, policy: &PrecisionPolicy, with_deriv: bool) -> ZetaPair<f64> {
    use crate::arith::{to_c64, DoubleDouble};
    let r = euler_maclaurin::<DoubleDouble>(from_c64(s), DoubleDouble::from(a), policy, with_deriv);
    ZetaPair { value: to_c64(r.value), deriv: to_c64(r.deriv) }
}
