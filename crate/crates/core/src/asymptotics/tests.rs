use super::*;
use crate::continuation::{BranchSample, TraceStatus};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// Frozen with mpmath at 30 digits: the closed-form terms evaluated directly,
// and full zeros of E(s, 1 - ε) from findroot on the Hurwitz form.
const FIRST_TWO_TERMS_EPS_001: f64 = -12.984_720_120_604_812;
const DRHO_Y_K0_EPS_001: f64 = -2.367_006_192_218_309e-6;
const FULL_K0: [(f64, f64, f64); 3] = [
    (0.02, -10.9540204244606, 4.53233822910639),
    (0.01, -12.9698368665412, 4.53235774060493),
    (0.005, -14.9773931967979, 4.53235987689337),
];
const FULL_K1_EPS_001: (f64, f64) = (-12.9698393243584, 13.5970821629182);

#[test]
fn frozen_closed_forms() {
    let eps: f64 = 0.01;
    let two = 2.0 / LN_2 * eps.ln() + (-3.0 + 2.0 / LN_2 * PI.ln());
    assert!((two - FIRST_TWO_TERMS_EPS_001).abs() < 1e-12);
    let (_, dy) = deviation_formulas(0, eps).unwrap();
    assert!((dy / DRHO_Y_K0_EPS_001 - 1.0).abs() < 1e-12, "{dy}");
    assert!((EXPONENT - 2.0 * 3f64.ln() / LN_2).abs() < 1e-15);
}

#[test]
fn imaginary_limit() {
    for k in 0..4 {
        let p = predict_offcritical(k, 1e-9).unwrap();
        assert!((p.im - limit_ordinate(k)).abs() < 1e-20_f64.max(1e-15 * p.im));
    }
    assert!((limit_ordinate(0) - 4.532_360_141_827_194).abs() < 1e-14);
}

#[test]
fn deviation_ratio_and_power() {
    let (x, y) = deviation_formulas(0, 0.01).unwrap();
    let (_, y2) = deviation_formulas(0, 0.02).unwrap();
    let phase = lambda() * PI;
    assert!((y / x - phase.tan()).abs() < 1e-12);
    assert!((y / y2 - 2f64.powf(-EXPONENT)).abs() < 1e-14);
}

#[test]
fn epsilon_domain() {
    for e in [0.0, -0.1, 0.6, f64::NAN] {
        assert!(matches!(predict_offcritical(0, e), Err(Error::Domain(_))));
        assert!(matches!(deviation_formulas(0, e), Err(Error::Domain(_))));
    }
    assert!(matches!(solve_reduced_equation(0, 0.1, &PrecisionPolicy::default()), Err(Error::Domain(_))));
}

#[test]
fn reduced_equation_against_full_zeros() {
    let p = PrecisionPolicy::default();
    let r = solve_reduced_equation(0, 0.01, &p).unwrap();
    assert!((r - c(FULL_K0[1].1, FULL_K0[1].2)).norm() <= 1e-6, "{r}");
    let r1 = solve_reduced_equation(1, 0.01, &p).unwrap();
    assert!((r1.im - limit_ordinate(1)).abs() < 1e-3);
    assert!((r1 - c(FULL_K1_EPS_001.0, FULL_K1_EPS_001.1)).norm() <= 1e-6);

    // the gap to the closed form closes faster than ε³
    let gaps: Vec<f64> = [0.02, 0.01, 0.005]
        .iter()
        .map(|&e| (solve_reduced_equation(0, e, &p).unwrap() - predict_offcritical(0, e).unwrap()).norm() / e.powi(3))
        .collect();
    assert!(gaps[1] < gaps[0] && gaps[2] < gaps[1], "{gaps:?}");
}

#[test]
fn leading_relation() {
    let p = PrecisionPolicy::default();
    let r: Vec<f64> = [0.02, 0.01, 0.005]
        .iter()
        .map(|&e| {
            let rho = solve_reduced_equation(0, e, &p).unwrap();
            (Complex64::new(2.0, 0.0).powc(rho) + PI * PI / 8.0 * e * e).norm() / (e * e)
        })
        .collect();
    assert!(r[1] < r[0] && r[2] < r[1], "{r:?}");
}

#[test]
fn zeta_ratio_expansions() {
    let p = PrecisionPolicy::default();
    let two = Complex64::new(2.0, 0.0);
    let three = Complex64::new(3.0, 0.0);
    let four = Complex64::new(4.0, 0.0);
    // below Re ρ ≈ -25 the bounds fall under binary64 rounding of the ratios
    for x in [-20.0, -22.0, -25.0] {
        for y in [0.0, 4.5, 13.6, 22.7] {
            let rho = c(x, y);
            let (a, b) = zeta_ratios(rho, &p).unwrap();
            let ea = a - (1.0 + 1.5 * two.powc(rho) + 8.0 / 3.0 * three.powc(rho));
            assert!(ea.norm() <= 10.0 * four.powc(rho).norm(), "{rho}");
            // the 3^ρ coefficient of the second ratio is 27 - 1/3
            let eb = (b - (1.0 + 7.5 * two.powc(rho))).norm() / three.powc(rho).norm();
            assert!(eb <= 30.0, "{rho}: {eb}");
            if x <= -22.0 {
                assert!((eb - 80.0 / 3.0).abs() < 1.0, "{rho}: {eb}");
            }
        }
    }
}

#[test]
fn synthetic_power_law() {
    let samples = (0..8)
        .map(|i| {
            let eps = 0.02 * 0.8f64.powi(i);
            BranchSample { delta: 1.0 - eps, rho: c(0.0, limit_ordinate(0) - 1e3 * eps.powf(3.1699)), residual: 0.0 }
        })
        .collect();
    let curve = BranchCurve {
        branch_id: 0,
        branch_kind: None,
        k_index: Some(0),
        samples,
        status: TraceStatus::Reached,
        terminal: None,
    };
    let slope = fit_exponent(&curve, 0).unwrap();
    assert!((slope - 3.1699).abs() < 1e-10, "{slope}");
}

#[test]
fn exact_power_law_points() {
    let pts: Vec<(f64, f64)> = (0..6).map(|i| 0.02 / f64::from(1 << i)).map(|e| (e, -2.5 * e.powf(3.1699))).collect();
    assert!((fit_power_law(&pts).unwrap() - 3.1699).abs() < 1e-12);
}

#[test]
fn too_few_samples() {
    let pts = [(0.02, 1e-5), (0.01, 1e-6), (0.005, 1e-7)];
    assert!(matches!(fit_power_law(&pts), Err(Error::InsufficientSamples { needed: 4, found: 3 })));
}

#[test]
fn traced_branches_follow_the_expansion() {
    let p = PrecisionPolicy::default();
    let eps = [0.02, 0.01, 0.005];
    let curve = trace_offcritical(0, &eps, 0.01, &p).unwrap();
    for (e, x, y) in FULL_K0 {
        let q = curve.at(1.0 - e).unwrap();
        assert!((q.rho - c(x, y)).norm() < 1e-9, "ε={e}: {}", q.rho);
        // ρ_x through the ε³ term
        assert!((q.rho.re - smooth_rho_x(e)).abs() < 1e-3);
    }
    let q = curve.at(0.995).unwrap();
    let (_, dy) = measured_deviation(0, 0.005, q.rho);
    let (_, py) = deviation_formulas(0, 0.005).unwrap();
    assert_eq!(dy.signum(), py.signum());
    assert!((dy / py - 1.0).abs() < 0.1, "{dy} vs {py}");
    let slope = fit_exponent(&curve, 0).unwrap();
    assert!((3.02..=3.32).contains(&slope), "{slope}");

    for k in [1, 2] {
        let curve = trace_offcritical(k, &eps, 0.01, &p).unwrap();
        let slope = fit_exponent(&curve, k).unwrap();
        assert!((3.02..=3.32).contains(&slope), "k={k}: {slope}");
    }
}

proptest! {
    #[test]
    fn conjugate_pairing(k in -20i64..20, eps in 1e-4f64..0.1) {
        let a = predict_offcritical(k, eps).unwrap();
        let b = predict_offcritical(-1 - k, eps).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn deviations_are_the_oscillating_terms(k in -5i64..5, eps in 1e-4f64..0.1) {
        let a = AsymptoticPrediction::new(k, eps).unwrap();
        prop_assert!((a.rho_x_pred - smooth_rho_x(eps) - a.delta_rho_x).abs() <= 1e-13 * a.rho_x_pred.abs());
        prop_assert!((a.rho_y_pred - limit_ordinate(k) - a.delta_rho_y).abs() <= 1e-14 * a.rho_y_pred.abs().max(1.0));
        prop_assert_eq!(a.exponent, EXPONENT);
    }
}
