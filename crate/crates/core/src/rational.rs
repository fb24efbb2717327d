//! Exact scalar arithmetic: arbitrary-precision rationals and the handful of
//! combinatorial helpers (factorials, integer and generalized binomials) the
//! sequence formulas need.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// `n/d` as a reduced rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

/// Parse `"p/q"` or `"p"`. Decimal literals are rejected so no precision is
/// lost silently.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = |detail: &str| Error::Parse {
        what: format!("rational `{s}`"),
        detail: detail.to_string(),
    };
    if s.is_empty() {
        return Err(err("empty string"));
    }
    if s.contains('.') || s.contains(['e', 'E']) {
        return Err(err("decimal literals are not accepted; use p/q"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: Int = num_str
        .parse()
        .map_err(|e| err(&format!("bad numerator: {e}")))?;
    let den: Int = den_str
        .parse()
        .map_err(|e| err(&format!("bad denominator: {e}")))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Render as `"p/q"`, or `"p"` when the denominator is one. Lossless inverse
/// of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest double. Values in this crate stay far from overflow.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

pub fn factorial(k: u32) -> Int {
    let mut acc = Int::one();
    for i in 2..=k as u64 {
        acc *= Int::from(i);
    }
    acc
}

/// Integer binomial coefficient C(n, k) for n, k >= 0.
pub fn binomial_int(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Generalized binomial C(x, k) = x(x-1)...(x-k+1)/k! for rational x.
pub fn binomial_rational(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= x - rat_int(i as i64);
    }
    acc / Rational::from_integer(factorial(k))
}

/// x^k with the 0^0 = 1 convention.
pub fn pow_rational(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Exact square root if `r` is a perfect square of a rational, else `None`.
/// Negative inputs yield `None`.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let num = num_integer::Roots::sqrt(r.numer());
    let den = num_integer::Roots::sqrt(r.denom());
    if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// LCM of the denominators of a slice of rationals (1 for an empty slice).
pub fn denominator_lcm(rs: &[Rational]) -> Int {
    let mut acc = Int::one();
    for r in rs {
        acc = acc.lcm(r.denom());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["5/32", "-7", "0", "22/7", "-3/4"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("4/8").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_decimals_and_garbage() {
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_int(11, 5), Int::from(462));
        assert_eq!(binomial_int(4, 7), Int::zero());
        // C(1/2, 2) = (1/2)(-1/2)/2 = -1/8
        assert_eq!(binomial_rational(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(binomial_rational(&rat_int(5), 0), rat_int(1));
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_exact(&rat_int(7)), None);
        assert_eq!(sqrt_exact(&rat_int(-4)), None);
        assert_eq!(sqrt_exact(&rat_int(0)), Some(rat_int(0)));
    }

    #[test]
    fn zero_pow_zero_is_one() {
        assert_eq!(pow_rational(&rat_int(0), 0), rat_int(1));
        assert_eq!(pow_rational(&rat_int(0), 3), rat_int(0));
    }
}
