//! Scalar backends: exact rationals and double precision.
//!
//! Every algorithm in this crate declares which backend it supports by the
//! scalar type it takes. Conversion is one-way: exact values can be
//! approximated, approximate values can only be reinterpreted as the dyadic
//! rationals they already are (or rounded with an explicit denominator bound).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Scalar trait shared by the exact and approximate backends.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic in this backend is exact.
    const EXACT: bool;

    fn from_rat(r: &Rat) -> Self;
    fn approx(&self) -> f64;

    /// Magnitude used for pivot selection and residual norms.
    fn magnitude(&self) -> f64 {
        self.approx().abs()
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rat(r: &Rat) -> Self {
        r.approx()
    }

    fn approx(&self) -> f64 {
        *self
    }
}

/// Rational from an integer.
pub fn rat(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Rational p/q. Panics on q == 0.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses "p/q" or "p" (also accepts a plain decimal like "0.25").
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let den: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rat::new(num, den))
    } else if let Some((int, frac)) = s.split_once('.') {
        let digits = frac.len() as u32;
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| format!("bad number {s:?}"))?
        };
        let frac_part: BigInt = frac.parse().map_err(|_| format!("bad number {s:?}"))?;
        let den = BigInt::from(10u32).pow(digits);
        let num = &int_part * &den + if s.starts_with('-') { -frac_part } else { frac_part };
        Ok(Rat::new(num, den))
    } else {
        let num: BigInt = s.parse().map_err(|_| format!("bad number {s:?}"))?;
        Ok(Rat::from_integer(num))
    }
}

/// Formats a rational as "p" or "p/q".
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact conversion of a finite f64 into the dyadic rational it denotes.
pub fn dyadic(x: f64) -> Option<Rat> {
    Rat::from_f64(x)
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via the continued fraction convergents of `x`.
pub fn rationalize(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let target = dyadic(x)?;
    let max_den = BigInt::from(max_den.max(1));

    let mut frac = target.clone();
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (frac.floor().to_integer(), BigInt::one());
    frac -= Rat::from_integer(p.clone());

    while !frac.is_zero() && q.magnitude() <= max_den.magnitude() {
        frac = frac.recip();
        let a = frac.floor().to_integer();
        frac -= Rat::from_integer(a.clone());
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        if q_next.magnitude() > max_den.magnitude() {
            break;
        }
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    Some(Rat::new(p, q))
}

/// True when |r| can be seen as numerical noise at the given threshold.
pub fn below(r: f64, threshold: f64) -> bool {
    r.abs() <= threshold
}

/// Max-norm distance between a rational and an f64, used in tests.
pub fn rat_f64_dist(r: &Rat, x: f64) -> f64 {
    (r.approx() - x).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-7", "1/3", "-22/7", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(parse_rat("4/8").map(|r| fmt_rat(&r)), Ok("1/2".into()));
        assert_eq!(parse_rat("0.25").map(|r| fmt_rat(&r)), Ok("1/4".into()));
        assert_eq!(parse_rat("-1.5").map(|r| fmt_rat(&r)), Ok("-3/2".into()));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn rationalize_recovers_simple_fractions() {
        assert_eq!(rationalize(0.49999999, 100).unwrap(), ratio(1, 2));
        assert_eq!(rationalize(1.0 / 3.0, 100).unwrap(), ratio(1, 3));
        assert_eq!(rationalize(-2.75, 100).unwrap(), ratio(-11, 4));
        // sqrt(2) has no small denominator representation that is exact
        let r = rationalize(std::f64::consts::SQRT_2, 1000).unwrap();
        assert!(rat_f64_dist(&r, std::f64::consts::SQRT_2) < 1e-6);
        assert!(r.clone() * r != rat(2));
    }

    #[test]
    fn dyadic_is_exact() {
        let x = 0.1f64;
        let r = dyadic(x).unwrap();
        assert_eq!(r.approx(), x);
        assert_ne!(r, ratio(1, 10));
    }
}
