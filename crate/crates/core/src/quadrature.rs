//! Adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Integral and accumulated error estimate.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let pair = f(c - x) + f(c + x);
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// Integrates `f` over `[a, b]`, bisecting until each panel's Kronrod–Gauss
/// difference is within its share of `tol`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64, max_depth: usize) -> Result<Quadrature> {
    let (v, e) = gk15(f, a, b);
    refine(f, a, b, v, e, tol, 0, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    whole: Complex64,
    err: f64,
    tol: f64,
    depth: usize,
    max_depth: usize,
) -> Result<Quadrature> {
    if err <= tol || (err <= 1e-15 * whole.norm()) {
        return Ok(Quadrature { value: whole, error: err });
    }
    if depth >= max_depth {
        return Err(Error::QuadratureFailure { depth, estimate: err });
    }
    let m = 0.5 * (a + b);
    let (lv, le) = gk15(f, a, m);
    let (rv, re) = gk15(f, m, b);
    let l = refine(f, a, m, lv, le, 0.5 * tol, depth + 1, max_depth)?;
    let r = refine(f, m, b, rv, re, 0.5 * tol, depth + 1, max_depth)?;
    Ok(Quadrature { value: l.value + r.value, error: l.error + r.error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let q = integrate(&|x: f64| Complex64::new(x.powi(20), 0.0), 0.0, 1.0, 1e-14, 30).unwrap();
        assert!((q.value.re - 1.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn oscillatory_complex() {
        // ∫_0^10 e^{i 7 x} dx
        let q = integrate(&|x: f64| Complex64::new(0.0, 7.0 * x).exp(), 0.0, 10.0, 1e-13, 40).unwrap();
        let exact = (Complex64::new(0.0, 70.0).exp() - 1.0) / Complex64::new(0.0, 7.0);
        assert!((q.value - exact).norm() < 1e-12);
        assert!(q.error < 1e-12);
    }

    #[test]
    fn depth_limit_reported() {
        let r = integrate(&|x: f64| Complex64::new(1.0 / x.abs().sqrt(), 0.0), -1.0, 1.0, 1e-14, 3);
        assert!(matches!(r, Err(Error::QuadratureFailure { .. })));
    }
}
