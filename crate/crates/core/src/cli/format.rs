//! Parsing of command-line values and fixed-precision rendering of numbers.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::energy::SpecialDelta;
use crate::error::{Error, Result};
use crate::zeros::SearchWindow;

fn parse_err(what: &str, text: &str) -> Error {
    Error::Parse(format!("cannot read {what} from {text:?}"))
}

fn parse_real(text: &str) -> Result<f64> {
    text.trim().parse::<f64>().map_err(|_| parse_err("a real number", text))
}

/// Complex numbers written `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(parse_real(&t)?, 0.0));
    };
    // split at the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (parse_real(&body[..i])?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).map_err(|_| parse_err("a complex number", text))?,
    };
    Ok(Complex64::new(re, im))
}

/// A value of `Δ` with its exact special-value tag, if any.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaArg {
    /// Folded into `(0, 1]`.
    pub value: f64,
    pub special: Option<SpecialDelta>,
}

fn exact_decimal(text: &str) -> Option<BigRational> {
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = exp - i32::try_from(frac.len()).ok()?;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut r = BigRational::from_integer(digits);
    if scale >= 0 {
        r *= num_traits::pow(ten, scale as usize);
    } else {
        r /= num_traits::pow(ten, scale.unsigned_abs() as usize);
    }
    Some(r)
}

/// `Δ` as a decimal (`0.2`, `2.5e-1`) or a fraction (`1/3`), read exactly so
/// that `1/5, 1/3, 1/2, 1` and their inverses are recognized.
pub fn parse_delta(text: &str) -> Result<DeltaArg> {
    let t = text.trim();
    let exact = match t.split_once('/') {
        Some((n, d)) => {
            let n = exact_decimal(n.trim()).ok_or_else(|| parse_err("delta", text))?;
            let d = exact_decimal(d.trim()).ok_or_else(|| parse_err("delta", text))?;
            if d.is_zero() {
                return Err(Error::Domain(format!("delta {text} has a zero denominator")));
            }
            n / d
        }
        None => exact_decimal(t).ok_or_else(|| parse_err("delta", text))?,
    };
    if !exact.is_positive() {
        return Err(Error::Domain(format!("delta = {text} must be positive")));
    }
    let folded = if exact > BigRational::one() { exact.recip() } else { exact };
    let special = match (folded.numer().to_u64(), folded.denom().to_u64()) {
        (Some(n), Some(d)) => SpecialDelta::from_ratio(n, d),
        _ => None,
    };
    let value = match special {
        Some(s) => s.value(),
        None => folded.to_f64().filter(|v| *v > 0.0).ok_or_else(|| parse_err("delta", text))?,
    };
    Ok(DeltaArg { value, special })
}

/// Comma-separated reals.
pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',').map(parse_real).collect()
}

/// `x0,x1,y0,y1`.
pub fn parse_window(text: &str) -> Result<SearchWindow> {
    match parse_list(text)?.as_slice() {
        &[x0, x1, y0, y1] => SearchWindow::new(x0, x1, y0, y1),
        _ => Err(parse_err("a window x0,x1,y0,y1", text)),
    }
}

/// `min,max`.
pub fn parse_range(text: &str) -> Result<(f64, f64)> {
    let mut v = Vec::new();
    for part in text.split(',') {
        v.push(parse_delta(part)?.value);
    }
    match v.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => Err(parse_err("a range min,max", text)),
    }
}

/// Like C's `%.{digits}g`: `digits` significant digits, trailing zeros
/// dropped, exponent form outside `1e-4 <= |x| < 10^digits`.
pub fn fmt_g(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let p = digits.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `a+bi` with both parts in [`fmt_g`] form.
pub fn fmt_complex(z: Complex64, digits: usize) -> String {
    let re = fmt_g(z.re + 0.0, digits);
    let im = z.im + 0.0;
    if im < 0.0 {
        format!("{re}-{}i", fmt_g(-im, digits))
    } else {
        format!("{re}+{}i", fmt_g(im, digits))
    }
}

/// `x` rounded to `digits` significant digits, for JSON output.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x + 0.0;
    }
    format!("{:.*e}", digits.max(1) - 1, x).parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = Complex64::new;
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("0.5+14.1347i").unwrap(), c(0.5, 14.1347));
        assert_eq!(parse_complex("-1-2i").unwrap(), c(-1.0, -2.0));
        assert_eq!(parse_complex("2.5i").unwrap(), c(0.0, 2.5));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2e+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex(" 1 - 1e-2 i").unwrap(), c(1.0, -0.01));
        assert!(parse_complex("1+xi").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn deltas() {
        let d = parse_delta("1/3").unwrap();
        assert_eq!(d.special, Some(SpecialDelta::OneThird));
        assert_eq!(d.value, 1.0 / 3.0);
        assert_eq!(parse_delta("0.2").unwrap().special, Some(SpecialDelta::OneFifth));
        assert_eq!(parse_delta("2").unwrap().special, Some(SpecialDelta::OneHalf));
        assert_eq!(parse_delta("2").unwrap().value, 0.5);
        assert_eq!(parse_delta("5e-1").unwrap().special, Some(SpecialDelta::OneHalf));
        assert_eq!(parse_delta("3/1.5").unwrap().special, Some(SpecialDelta::OneHalf));
        let near = parse_delta("0.3333333333").unwrap();
        assert_eq!(near.special, None);
        assert!((near.value - 0.3333333333).abs() < 1e-16);
        assert_eq!(parse_delta("4/3").unwrap().value, 0.75);
        assert!(matches!(parse_delta("0"), Err(Error::Domain(_))));
        assert!(matches!(parse_delta("-0.5"), Err(Error::Domain(_))));
        assert!(matches!(parse_delta("1/0"), Err(Error::Domain(_))));
        assert!(matches!(parse_delta("abc"), Err(Error::Parse(_))));
    }

    #[test]
    fn windows_and_lists() {
        let w = parse_window("-1,2,0,3").unwrap();
        assert_eq!((w.x_min, w.x_max, w.y_min, w.y_max), (-1.0, 2.0, 0.0, 3.0));
        assert!(parse_window("1,2,3").is_err());
        assert_eq!(parse_list("0.02,0.01").unwrap(), vec![0.02, 0.01]);
        assert_eq!(parse_range("0.05,0.99").unwrap(), (0.05, 0.99));
    }

    #[test]
    fn general_format() {
        assert_eq!(fmt_g(2.103_599_580_529_421_6, 12), "2.10359958053");
        assert_eq!(fmt_g(0.5, 12), "0.5");
        assert_eq!(fmt_g(-12.969_836_866_541_2, 12), "-12.9698368665");
        assert_eq!(fmt_g(1e-13, 12), "1e-13");
        assert_eq!(fmt_g(2.5e-7, 3), "2.5e-07");
        assert_eq!(fmt_g(123_456.0, 3), "1.23e+05");
        assert_eq!(fmt_g(0.0001, 12), "0.0001");
        assert_eq!(fmt_g(2.19e-5, 4), "2.19e-05");
        assert_eq!(fmt_g(99.999_999_999_99, 12), "100");
        assert_eq!(fmt_g(-0.0, 12), "0");
        assert_eq!(fmt_g(f64::NAN, 12), "nan");
        assert_eq!(fmt_complex(Complex64::new(0.5, -14.1), 12), "0.5-14.1i");
        assert_eq!(fmt_complex(Complex64::new(1.0, -0.0), 12), "1+0i");
        assert_eq!(round_sig(2.103_599_580_529_421_6, 4), 2.104);
    }
}
