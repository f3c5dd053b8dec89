//! Exact scalars: arbitrary-precision rationals, always in lowest terms.
//!
//! All homology computations in this crate run over this type; no floating
//! point appears anywhere on the homology path.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// An exact rational number.  `num_rational::Ratio` keeps the value reduced
/// to lowest terms with a positive denominator, which is exactly the
/// invariant we need.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integral rational.
pub fn int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` (optionally signed).  Used by every JSON surface that
/// carries rational coefficients as strings.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| format!("bad numerator in rational {text:?}"))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| format!("bad denominator in rational {text:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in rational {text:?}"));
    }
    Ok(Rational::new(num, den))
}

/// The sign of a Koszul transposition of two homogeneous elements.
pub fn koszul_sign(deg_a: i64, deg_b: i64) -> Rational {
    if deg_a % 2 != 0 && deg_b % 2 != 0 {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// `(-1)^k` as a rational.
pub fn sign_pow(k: i64) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn is_odd(degree: i64) -> bool {
    degree.rem_euclid(2) == 1
}

#[allow(unused_imports)]
pub(crate) use num_traits as nt;
