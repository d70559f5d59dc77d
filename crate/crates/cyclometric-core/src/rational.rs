use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display_reduces_and_drops_unit_denominator() {
        assert_eq!(rat(4, 6).to_string(), "2/3");
        assert_eq!(rat(-4, 2).to_string(), "-2");
        assert_eq!(rat(3, -9).to_string(), "-1/3");
        assert_eq!(rat_int(0).to_string(), "0");
    }
}
