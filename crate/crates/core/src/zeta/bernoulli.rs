//! Bernoulli numbers as exact rationals, cached once.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest `J` for which `B_2 .. B_{2J}` are served.
pub const MAX_BERNOULLI_INDEX: usize = 60;

struct Table {
    /// `B_{2j}` rounded to binary64, `j = 1..=MAX`.
    b2j: Vec<f64>,
    /// `B_{2j} / (2j)!` as double-double pairs `(hi, lo)`.
    em_coeff: Vec<(f64, f64)>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

/// `B_0 ..= B_m` from `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
fn exact_bernoulli(m: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    b.push(BigRational::one());
    for n in 1..=m {
        // binomials C(n+1, k) built row-wise
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        // binom is now C(n+1, n) = n+1
        b.push(-acc / BigRational::from_integer(binom));
    }
    b
}

fn split(r: &BigRational) -> (f64, f64) {
    let hi = r.to_f64().unwrap_or(f64::NAN);
    let rest = r - BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
    (hi, rest.to_f64().unwrap_or(0.0))
}

fn build_table() -> Table {
    let m = 2 * MAX_BERNOULLI_INDEX;
    let b = exact_bernoulli(m);
    let mut fact = BigInt::one();
    let mut b2j = Vec::with_capacity(MAX_BERNOULLI_INDEX);
    let mut em_coeff = Vec::with_capacity(MAX_BERNOULLI_INDEX);
    for (n, bn) in b.iter().enumerate().skip(1) {
        fact *= BigInt::from(n);
        if n % 2 == 0 {
            b2j.push(bn.to_f64().unwrap_or(f64::NAN));
            em_coeff.push(split(&(bn / BigRational::from_integer(fact.clone()))));
        }
    }
    Table { b2j, em_coeff }
}

/// `B_2, B_4, ..., B_{2J}`.
pub fn bernoulli_numbers(j: usize) -> Result<Vec<f64>> {
    if j == 0 || j > MAX_BERNOULLI_INDEX {
        return Err(Error::Domain(format!("Bernoulli index J = {j} outside 1..={MAX_BERNOULLI_INDEX}")));
    }
    Ok(table().b2j[..j].to_vec())
}

/// Euler–Maclaurin coefficient `B_{2j}/(2j)!` for `j >= 1`, as `(hi, lo)`.
#[inline]
pub(crate) fn em_coefficient(j: usize) -> (f64, f64) {
    table().em_coeff[j - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values_from_recurrence() {
        let b = bernoulli_numbers(6).unwrap();
        let expect = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
        for (got, want) in b.iter().zip(expect) {
            assert!((got - want).abs() <= 1e-16 * want.abs(), "{got} vs {want}");
        }
    }

    #[test]
    fn odd_bernoulli_vanish() {
        let b = exact_bernoulli(21);
        assert_eq!(b[1], BigRational::new((-1).into(), 2.into()));
        for k in (3..=21).step_by(2) {
            assert!(b[k].is_zero(), "B_{k} should vanish");
        }
    }

    #[test]
    fn signs_alternate() {
        let b = bernoulli_numbers(10).unwrap();
        for (j, v) in b.iter().enumerate() {
            let expected_positive = j % 2 == 0;
            assert_eq!(*v > 0.0, expected_positive, "B_{}", 2 * (j + 1));
        }
    }

    #[test]
    fn index_limits() {
        assert!(bernoulli_numbers(60).is_ok());
        assert!(matches!(bernoulli_numbers(61), Err(Error::Domain(_))));
        assert!(matches!(bernoulli_numbers(0), Err(Error::Domain(_))));
    }

    #[test]
    fn em_coefficient_matches_ratio() {
        // B_2/2! = 1/12, B_4/4! = -1/720
        let (h, l) = em_coefficient(1);
        assert!((h + l - 1.0 / 12.0).abs() < 1e-17);
        let (h, _) = em_coefficient(2);
        assert!((h + 1.0 / 720.0).abs() < 1e-19);
        // B_{2j}/(2j)! ~ (-1)^{j+1} 2 / (2 pi)^{2j}
        let (h, _) = em_coefficient(40);
        let approx = -2.0 / (2.0 * std::f64::consts::PI).powi(80);
        assert!((h / approx - 1.0).abs() < 1e-12);
    }
}
