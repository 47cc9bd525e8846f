//! Closed probability intervals with exact rational endpoints and the truth order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact probability value.
pub type Prob = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval endpoint {0} lies outside [0,1]")]
    OutOfRange(String),
    #[error("interval lower bound {0} exceeds upper bound {1}")]
    Inverted(String, String),
}

/// A closed subinterval `[lower, upper]` of `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProbInterval {
    lower: Prob,
    upper: Prob,
}

impl ProbInterval {
    pub fn new(lower: Prob, upper: Prob) -> Result<Self, IntervalError> {
        for v in [&lower, &upper] {
            if v.is_negative() || *v > Prob::one() {
                return Err(IntervalError::OutOfRange(format_prob(v)));
            }
        }
        if lower > upper {
            return Err(IntervalError::Inverted(format_prob(&lower), format_prob(&upper)));
        }
        Ok(ProbInterval { lower, upper })
    }

    /// `[p, p]`.
    pub fn point(p: Prob) -> Result<Self, IntervalError> {
        Self::new(p.clone(), p)
    }

    pub fn zero() -> Self {
        ProbInterval { lower: Prob::zero(), upper: Prob::zero() }
    }

    pub fn one() -> Self {
        ProbInterval { lower: Prob::one(), upper: Prob::one() }
    }

    /// Builds an interval from two decimal strings. Panics on bad input; meant for fixtures.
    pub fn from_decimals(lower: &str, upper: &str) -> Self {
        let lo = parse_prob(lower).expect("valid decimal");
        let hi = parse_prob(upper).expect("valid decimal");
        Self::new(lo, hi).expect("valid interval")
    }

    pub fn lower(&self) -> &Prob {
        &self.lower
    }

    pub fn upper(&self) -> &Prob {
        &self.upper
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn is_zero(&self) -> bool {
        self.lower.is_zero() && self.upper.is_zero()
    }

    /// Truth order: componentwise `<=` on both endpoints.
    pub fn truth_leq(&self, other: &ProbInterval) -> bool {
        self.lower <= other.lower && self.upper <= other.upper
    }

    /// Strict truth order: `truth_leq` and not equal.
    pub fn truth_lt(&self, other: &ProbInterval) -> bool {
        self.truth_leq(other) && self != other
    }

    /// Builds an interval from endpoints already known to be valid. Used by
    /// composition functions whose results are closed over `C[0,1]`.
    pub(crate) fn from_valid(lower: Prob, upper: Prob) -> Self {
        debug_assert!(!lower.is_negative() && lower <= upper && upper <= Prob::one());
        ProbInterval { lower, upper }
    }
}

impl fmt::Display for ProbInterval {
    /// Point intervals print as a single value, others as `[lo,hi]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", format_prob(&self.lower))
        } else {
            write!(f, "[{},{}]", format_prob(&self.lower), format_prob(&self.upper))
        }
    }
}

/// Parses `0.75`, `1`, `.5` or `3/8` into an exact rational. No range check.
pub fn parse_prob(text: &str) -> Option<Prob> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).ok()?;
        let den = BigInt::from_str(den.trim()).ok()?;
        if den.is_zero() || num.is_negative() || den.is_negative() {
            return None;
        }
        return Some(Prob::new(num, den));
    }
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(&digits).ok()?;
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    Some(Prob::new(num, den))
}

/// Exact decimal rendering when the denominator has only factors 2 and 5,
/// `p/q` otherwise.
pub fn format_prob(value: &Prob) -> String {
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let mut den = value.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let places = twos.max(fives);
    let scaled = value * Prob::from_integer(num_traits::pow(BigInt::from(10u32), places));
    debug_assert!(scaled.is_integer());
    let digits = scaled.to_integer().abs().to_string();
    let sign = if value.is_negative() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let padded = format!("{:0>width$}", digits, width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: &str, hi: &str) -> ProbInterval {
        ProbInterval::from_decimals(lo, hi)
    }

    #[test]
    fn truth_order_examples() {
        assert!(iv("0.2", "0.3").truth_leq(&iv("0.4", "0.5")));
        assert!(iv("0.4", "0.4").truth_leq(&iv("0.4", "0.4")));
        assert!(!iv("0.1", "0.9").truth_leq(&iv("0.2", "0.3")));
        assert!(!iv("0.2", "0.3").truth_leq(&iv("0.1", "0.9")));
        assert!(!iv("0.4", "0.4").truth_lt(&iv("0.4", "0.4")));
    }

    #[test]
    fn rejects_invalid_intervals() {
        let p = |s| parse_prob(s).unwrap();
        assert!(matches!(ProbInterval::new(p("0.5"), p("0.2")), Err(IntervalError::Inverted(..))));
        assert!(matches!(ProbInterval::point(p("1.3")), Err(IntervalError::OutOfRange(_))));
    }

    #[test]
    fn decimal_round_trip() {
        for s in ["0", "1", "0.7", "0.25", "0.125", "0.0001"] {
            assert_eq!(format_prob(&parse_prob(s).unwrap()), s);
        }
        assert_eq!(format_prob(&parse_prob("1/3").unwrap()), "1/3");
        assert_eq!(format_prob(&parse_prob("0.50").unwrap()), "0.5");
        assert_eq!(format_prob(&parse_prob(".5").unwrap()), "0.5");
        assert_eq!(parse_prob("abc"), None);
        assert_eq!(parse_prob("1/0"), None);
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn interval() -> impl Strategy<Value = ProbInterval> {
        (0i64..=12, 0i64..=12).prop_map(|(a, b)| {
            let (lo, hi) = (a.min(b), a.max(b));
            ProbInterval::new(Prob::new(lo.into(), 12.into()), Prob::new(hi.into(), 12.into())).unwrap()
        })
    }

    proptest! {
        #[test]
        fn truth_order_is_a_partial_order(a in interval(), b in interval(), c in interval()) {
            prop_assert!(a.truth_leq(&a));
            if a.truth_leq(&b) && b.truth_leq(&a) {
                prop_assert_eq!(&a, &b);
            }
            if a.truth_leq(&b) && b.truth_leq(&c) {
                prop_assert!(a.truth_leq(&c));
            }
            prop_assert_eq!(a.truth_lt(&b), a.truth_leq(&b) && a != b);
        }

        #[test]
        fn prob_text_round_trips(n in 0i64..=1000, d in 1i64..=1000) {
            prop_assume!(n <= d);
            let p = Prob::new(n.into(), d.into());
            prop_assert_eq!(parse_prob(&format_prob(&p)), Some(p));
        }
    }
}
