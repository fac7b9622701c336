//! Complex Gamma, log-Gamma and digamma in binary64.

use num_complex::Complex64;
use std::f64::consts::PI;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2k} / (2k (2k-1))` for `k = 1..=10`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1_260.0,
    -1.0 / 1_680.0,
    1.0 / 1_188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3_617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Stirling series after shifting `z` to `|z| >= 15`, for `Re z >= 1/2`.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = Complex64::new(1.0, 0.0);
    let mut log_shift = Complex64::new(0.0, 0.0);
    while z.norm() < 15.0 {
        shift *= z;
        z += 1.0;
        if shift.norm() > 1e150 {
            log_shift += shift.ln();
            shift = Complex64::new(1.0, 0.0);
        }
    }
    log_shift += shift.ln();
    let iz = 1.0 / z;
    let iz2 = iz * iz;
    let mut p = iz;
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING {
        series += c * p;
        p *= iz2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series - log_shift
}

/// A logarithm of Gamma, valid up to a multiple of `2 pi i`.
///
/// The branch is irrelevant to every caller, which only exponentiates it.
pub(crate) fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        ln_gamma_right(z)
    } else {
        Complex64::new(PI.ln(), 0.0) - (PI * z).sin().ln() - ln_gamma_right(1.0 - z)
    }
}

/// Gamma without pole checks.
pub(crate) fn gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        ln_gamma_right(z).exp()
    } else {
        PI / ((PI * z).sin() * ln_gamma_right(1.0 - z).exp())
    }
}

/// Distance from `z` to the nearest pole `0, -1, -2, ...` of Gamma.
pub(crate) fn gamma_pole_distance(z: Complex64) -> f64 {
    let n = z.re.round().min(0.0);
    (z - n).norm()
}

/// Digamma `psi(z) = Gamma'(z)/Gamma(z)`.
pub(crate) fn digamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return digamma(1.0 - z) - PI / (PI * z).tan();
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm() < 12.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // B_{2k}/(2k) for k = 1..8
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32_760.0,
        1.0 / 12.0,
        -3_617.0 / 8_160.0,
    ];
    let iz2 = 1.0 / (z * z);
    let mut p = iz2;
    let mut series = Complex64::new(0.0, 0.0);
    for c in C {
        series += c * p;
        p *= iz2;
    }
    acc + z.ln() - 0.5 / z - series
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factorials_and_half() {
        let mut f = 1.0;
        for n in 1..20 {
            let g = gamma_unchecked(c(n as f64, 0.0));
            assert!((g.re / f - 1.0).abs() < 1e-13, "n={n}");
            f *= n as f64;
        }
        let g = gamma_unchecked(c(0.5, 0.0));
        assert!((g.re - PI.sqrt()).abs() < 1e-14);
        let g = gamma_unchecked(c(-0.5, 0.0));
        assert!((g.re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn recurrence_and_reflection() {
        for &z in &[c(0.3, 2.0), c(-3.7, 0.4), c(12.5, -20.0), c(0.1, 45.0)] {
            let lhs = gamma_unchecked(z + 1.0);
            let rhs = z * gamma_unchecked(z);
            assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm(), "z={z}");
            let refl = gamma_unchecked(z) * gamma_unchecked(1.0 - z) * (PI * z).sin();
            assert!((refl - PI).norm() < 1e-12 * PI, "z={z}");
        }
    }

    #[test]
    fn modulus_on_imaginary_axis() {
        // |Gamma(i y)|^2 = pi / (y sinh(pi y))
        for &y in &[0.5, 3.0, 17.0] {
            let g = gamma_unchecked(c(0.0, y)).norm_sqr();
            let expect = PI / (y * (PI * y).sinh());
            assert!((g / expect - 1.0).abs() < 1e-13, "y={y}");
        }
    }

    #[test]
    fn digamma_values() {
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).re + EULER_GAMMA).abs() < 1e-14);
        let half = digamma(c(0.5, 0.0)).re;
        assert!((half + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
        // psi against a central difference of ln Gamma
        for &z in &[c(2.3, 1.1), c(-4.2, 7.0), c(15.0, -3.0)] {
            let h = 1e-5;
            let fd = (ln_gamma(z + h) - ln_gamma(z - h)) / (2.0 * h);
            assert!((fd - digamma(z)).norm() < 1e-8, "z={z}");
        }
    }

    #[test]
    fn pole_distance() {
        assert!(gamma_pole_distance(c(-2.0000001, 0.0)) < 1e-6);
        assert!((gamma_pole_distance(c(0.3, 0.0)) - 0.3).abs() < 1e-15);
        assert!((gamma_pole_distance(c(2.0, 0.0)) - 2.0).abs() < 1e-15);
        assert!((gamma_pole_distance(c(-1.5, 0.0)) - 0.5).abs() < 1e-15);
    }
}
