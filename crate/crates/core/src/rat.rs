//! Exact rational scalars.
//!
//! Every value the library asserts on is a [`Rat`]. The only floating point
//! anywhere is [`root_approx`], used by the moment-based norm check.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let bad = || Error::BadRational(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Always renders as `p/q`, including integers (`3/1`).
pub fn fmt_rat(value: &Rat) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn pow(base: &Rat, exp: u32) -> Rat {
    num::pow::pow(base.clone(), exp as usize)
}

pub fn abs(value: &Rat) -> Rat {
    value.abs()
}

fn ln_bigint(value: &BigInt) -> f64 {
    debug_assert!(value.sign() == Sign::Plus);
    let bits = value.bits();
    if bits <= 64 {
        let small: u64 = value.try_into().expect("fits in u64");
        return (small as f64).ln();
    }
    let shift = bits - 64;
    let top: u64 = (value >> shift).try_into().expect("fits in u64");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `value^(1/degree)` for a non-negative rational, evaluated through
/// logarithms of numerator and denominator so huge moments do not overflow.
pub fn root_approx(value: &Rat, degree: u32) -> f64 {
    assert!(!value.is_negative(), "root of a negative moment");
    if value.is_zero() {
        return 0.0;
    }
    let ln = ln_bigint(value.numer()) - ln_bigint(value.denom());
    (ln / f64::from(degree)).exp()
}

pub fn to_f64(value: &Rat) -> f64 {
    if value.is_zero() {
        return 0.0;
    }
    let sign = if value.is_negative() { -1.0 } else { 1.0 };
    let ln = ln_bigint(&value.numer().abs()) - ln_bigint(value.denom());
    sign * ln.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rat(" -3 ").unwrap(), int(-3));
        assert_eq!(fmt_rat(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_rat(&int(3)), "3/1");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn roots_of_large_moments() {
        let big = pow(&int(1000), 128);
        assert!((root_approx(&big, 128) - 1000.0).abs() < 1e-9);
        let tiny = pow(&rat(1, 3), 64);
        assert!((root_approx(&tiny, 64) - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(root_approx(&zero(), 4), 0.0);
    }

    fn small() -> impl Strategy<Value = Rat> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn lowest_terms(a in small(), b in small()) {
            let s = &a * &b + &a;
            prop_assert!(num::Integer::gcd(s.numer(), s.denom()).is_one());
            prop_assert!(s.denom().is_positive());
            prop_assert_eq!(parse_rat(&fmt_rat(&s)).unwrap(), s);
        }
    }
}
