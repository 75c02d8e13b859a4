//! Exact rational scalars and the extended value type returned by every
//! graphon parameter.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand for `p/q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, `p` or a leading-sign variant of either.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Always prints `p/q`, including `p/1` for integers.
pub fn fmt_fraction(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// `inf` or `p/q`.
pub fn fmt_extended(value: &ExtendedRational) -> String {
    match value {
        ExtendedRational::Finite(v) => fmt_fraction(v),
        ExtendedRational::Infinite => "inf".to_string(),
    }
}

/// Decimal expansion of a nonnegative rational truncated to `digits`
/// places. For display only.
pub fn fmt_decimal(value: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (value * Rational::from_integer(scale.clone())).floor().to_integer();
    let (whole, frac) = (&scaled / &scale, &scaled % &scale);
    format!("{whole}.{:0>width$}", frac.to_string(), width = digits as usize)
}

/// A finite exact rational or `+inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    Finite(Rational),
    Infinite,
}

impl ExtendedRational {
    pub fn finite(value: Rational) -> Self {
        ExtendedRational::Finite(value)
    }

    pub fn from_usize(n: usize) -> Self {
        ExtendedRational::Finite(Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(v) => Some(v),
            ExtendedRational::Infinite => None,
        }
    }

    /// Integer value, when finite and integral and small enough.
    pub fn as_usize(&self) -> Option<usize> {
        let v = self.as_finite()?;
        if !v.is_integer() || v.is_negative() {
            return None;
        }
        usize::try_from(v.to_integer()).ok()
    }
}

impl From<Rational> for ExtendedRational {
    fn from(value: Rational) -> Self {
        ExtendedRational::Finite(value)
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinite) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(v) => write!(f, "{}", v),
            ExtendedRational::Infinite => f.write_str("inf"),
        }
    }
}

/// Smallest integer `>= value`.
pub fn ceil_to_usize(value: &Rational) -> usize {
    let c = value.ceil().to_integer();
    usize::try_from(c).unwrap_or(usize::MAX)
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6"), Some(ratio(1, 2)));
        assert_eq!(parse_rational(" -2 "), Some(int(-2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("a/2"), None);
    }

    #[test]
    fn infinity_orders_above_everything() {
        let big = ExtendedRational::Finite(int(1_000_000));
        assert!(ExtendedRational::Infinite > big);
        assert_eq!(ExtendedRational::Infinite, ExtendedRational::Infinite);
        assert_eq!(ExtendedRational::Infinite.to_string(), "inf");
        assert_eq!(ExtendedRational::Finite(ratio(5, 2)).to_string(), "5/2");
    }

    #[test]
    fn fraction_format_keeps_denominator() {
        assert_eq!(fmt_fraction(&int(3)), "3/1");
        assert_eq!(fmt_fraction(&ratio(2, 4)), "1/2");
    }
}
