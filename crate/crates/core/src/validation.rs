//! Numerical self-checks: zeta identities, energy identities and the theta
//! cross-check, each reduced to a worst-case residual against a threshold.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::energy::{energy, energy_direct_sum, energy_factorized, taylor_energy, SpecialDelta};
use crate::error::Result;
use crate::theta::energy_via_theta;
use crate::zeta::{completed_zeta, duality_residual, hurwitz_zeta, riemann_zeta, HurwitzArgs, PrecisionPolicy};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub worst_residual: f64,
    pub threshold: f64,
    pub worst_at: String,
    pub cases: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

/// Accumulates the worst residual of one identity.
struct Tally {
    name: &'static str,
    threshold: f64,
    worst: f64,
    at: String,
    cases: usize,
}

impl Tally {
    fn new(name: &'static str, threshold: f64) -> Self {
        Self { name, threshold, worst: 0.0, at: String::new(), cases: 0 }
    }

    fn add(&mut self, r: f64, at: impl FnOnce() -> String) {
        self.cases += 1;
        if r.is_nan() || r > self.worst {
            self.worst = if r.is_nan() { f64::INFINITY } else { r };
            self.at = at();
        }
    }

    fn finish(self) -> Check {
        Check {
            name: self.name.to_string(),
            passed: self.cases > 0 && self.worst <= self.threshold,
            worst_residual: self.worst,
            threshold: self.threshold,
            worst_at: self.at,
            cases: self.cases,
        }
    }
}

/// `|Σ t| / max(1, Σ |t|)`.
pub fn scaled_sum(terms: &[Complex64]) -> f64 {
    let total: Complex64 = terms.iter().sum();
    let mag: f64 = terms.iter().map(|t| t.norm()).sum();
    total.norm() / mag.max(1.0)
}

fn pow(base: f64, s: Complex64) -> Complex64 {
    (s * base.ln()).exp()
}

/// `n` reproducible points with `-10 < Re s < 10`, `|Im s| < 30`, away from
/// `s = 1` and from the poles of `Γ(s/2)` and `Γ((1-s)/2)`.
pub fn sample_points(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let s = Complex64::new(rng.gen_range(-9.99..9.99), rng.gen_range(-29.99..29.99));
        let near_int = |z: Complex64| z.im.abs() < 1e-3 && (z.re - z.re.round()).abs() < 1e-3;
        if (s - 1.0).norm() > 1e-3 && !near_int(s / 2.0) && !near_int((1.0 - s) / 2.0) {
            out.push(s);
        }
    }
    out
}

pub const SAMPLE_SEED: u64 = 20_240_601;

/// Hurwitz identities, multiplication theorem and duality.
pub fn zeta_identities(points: &[Complex64], policy: &PrecisionPolicy) -> Result<SuiteReport> {
    let hz = |s: Complex64, a: f64| hurwitz_zeta(HurwitzArgs::new(s, a), policy);
    let mut shift = Tally::new("shift identity", 1e-10);
    let mut mult = Tally::new("multiplication theorem k=2..5", 1e-10);
    let mut thirds = Tally::new("thirds specialization", 1e-10);
    let mut half = Tally::new("half specialization", 1e-10);
    let mut quarters = Tally::new("quarters specialization", 1e-10);
    let mut dual = Tally::new("duality", 1e-10);
    for &s in points {
        let z = riemann_zeta(s, policy)?;
        for x in [0.1, 0.25, 0.4] {
            let r = scaled_sum(&[hz(s, x)?, hz(s, 0.5 + x)?, -pow(2.0, s) * hz(s, 2.0 * x)?]);
            shift.add(r, || format!("s={s}, x={x}"));
        }
        for k in 2..=5u32 {
            let mut terms = vec![-pow(f64::from(k), s) * z];
            for n in 1..=k {
                terms.push(hz(s, f64::from(n) / f64::from(k))?);
            }
            mult.add(scaled_sum(&terms), || format!("s={s}, k={k}"));
        }
        thirds.add(scaled_sum(&[hz(s, 1.0 / 3.0)?, hz(s, 2.0 / 3.0)?, -(pow(3.0, s) - 1.0) * z]), || format!("s={s}"));
        half.add(scaled_sum(&[hz(s, 0.5)?, -(pow(2.0, s) - 1.0) * z]), || format!("s={s}"));
        quarters.add(scaled_sum(&[hz(s, 0.25)?, hz(s, 0.75)?, -(pow(4.0, s) - pow(2.0, s)) * z]), || format!("s={s}"));
        let d = duality_residual(s, policy)?.norm() / completed_zeta(s, policy)?.norm().max(1.0);
        dual.add(d, || format!("s={s}"));
    }
    Ok(report("zeta_kernel", vec![shift, mult, thirds, half, quarters, dual]))
}

/// Factorizations, inversion symmetry, direct-sum oracle, Taylor order and
/// the pole residue.
pub fn energy_identities(points: &[Complex64], policy: &PrecisionPolicy) -> Result<SuiteReport> {
    let mut fact = Tally::new("factorization", 1e-10);
    let mut sym = Tally::new("inversion symmetry", 1e-10);
    for &s in points {
        for sp in SpecialDelta::ALL {
            let d = sp.value();
            let a = energy(s, d, policy)?;
            let b = energy_factorized(s, d, policy)?;
            fact.add(scaled_sum(&[a, -b]), || format!("s={s}, delta={d}"));
        }
        for d in [0.2, 0.5, 0.8] {
            let a = energy(s, d, policy)?;
            let b = energy(s, 1.0 / d, policy)?;
            sym.add(scaled_sum(&[a, -b]), || format!("s={s}, delta={d}"));
        }
    }
    let mut oracle = Tally::new("direct sum, cutoff 1e6", 1e-9);
    for s in [2.0, 3.0, 4.0] {
        let s = Complex64::new(s, 0.0);
        for d in [0.3, 0.7] {
            let direct = energy_direct_sum(s, d, 1_000_000)?;
            oracle.add((energy(s, d, policy)? - direct.value).norm(), || format!("s={s}, delta={d}"));
        }
    }
    let mut taylor = Tally::new("Taylor remainder ratio off [32, 128]", 0.0);
    let s = Complex64::new(0.3, 2.0);
    let rem = |e: f64| -> Result<f64> { Ok((energy(s, 1.0 - e, policy)? - taylor_energy(s, e, policy)?).norm()) };
    let (r4, r2, r1) = (rem(0.04)?, rem(0.02)?, rem(0.01)?);
    for (name, ratio) in [("0.04/0.02", r4 / r2), ("0.02/0.01", r2 / r1)] {
        let off = if (32.0..=128.0).contains(&ratio) { 0.0 } else { (ratio - 32.0).abs().min((ratio - 128.0).abs()) };
        taylor.add(off, || format!("ratio {name} = {ratio}"));
    }
    let mut residue = Tally::new("pole residue", 1e-6);
    for d in [0.3, 0.7, 1.0] {
        let f = |t: f64| -> Result<f64> { Ok((energy(Complex64::new(1.0 + t, 0.0), d, policy)? * t).re) };
        let (t1, t2) = (1e-3, 1e-4);
        let lim = (f(t2)? * t1 - f(t1)? * t2) / (t1 - t2);
        residue.add((lim - 1.0).abs(), || format!("delta={d}, limit={lim}"));
    }
    Ok(report("lattice_energy", vec![fact, sym, oracle, taylor, residue]))
}

/// Points used by [`theta_agreement`], all with `Re s < 1`.
pub const THETA_POINTS: [(f64, f64); 10] = [
    (0.5, 0.0),
    (0.25, 3.0),
    (0.75, -9.5),
    (-0.5, 2.0),
    (-1.5, 7.0),
    (-3.3, 0.4),
    (-6.1, 10.0),
    (0.9, 5.5),
    (-0.2, -4.0),
    (-8.7, 1.0),
];

/// Theta-integral energy against the Euler–Maclaurin energy.
pub fn theta_agreement(policy: &PrecisionPolicy) -> Result<SuiteReport> {
    let mut t = Tally::new("theta integral vs Euler-Maclaurin", 1e-8);
    for (x, y) in THETA_POINTS {
        let s = Complex64::new(x, y);
        for d in [0.4, 0.75] {
            let r = (energy_via_theta(s, d, policy)? - energy(s, d, policy)?).norm();
            t.add(r, || format!("s={s}, delta={d}"));
        }
    }
    Ok(report("theta_validation", vec![t]))
}

fn report(suite: &str, tallies: Vec<Tally>) -> SuiteReport {
    let checks: Vec<Check> = tallies.into_iter().map(Tally::finish).collect();
    SuiteReport { suite: suite.to_string(), passed: checks.iter().all(|c| c.passed), checks }
}

/// All suites on 20 sample points.
pub fn run_all(policy: &PrecisionPolicy) -> Result<ValidationReport> {
    let points = sample_points(20, SAMPLE_SEED);
    let suites = vec![zeta_identities(&points, policy)?, energy_identities(&points, policy)?, theta_agreement(policy)?];
    Ok(ValidationReport { passed: suites.iter().all(|s| s.passed), suites })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible_and_in_range() {
        let a = sample_points(20, 7);
        assert_eq!(a, sample_points(20, 7));
        assert!(a.iter().all(|s| s.re.abs() < 10.0 && s.im.abs() < 30.0));
    }

    #[test]
    fn all_suites_pass() {
        let r = run_all(&PrecisionPolicy::default()).unwrap();
        for s in &r.suites {
            for c in &s.checks {
                assert!(c.passed, "{}: {} = {:e} at {}", s.suite, c.name, c.worst_residual, c.worst_at);
            }
        }
        assert!(r.passed);
    }

    #[test]
    fn scaled_sum_of_cancelling_terms() {
        let a = Complex64::new(1e6, 0.0);
        assert_eq!(scaled_sum(&[a, -a]), 0.0);
        assert!((scaled_sum(&[Complex64::new(0.5, 0.0)]) - 0.5).abs() < 1e-16);
    }
}
