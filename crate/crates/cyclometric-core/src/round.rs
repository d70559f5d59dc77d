//! Correctly rounded conversions from exact rationals to `f64`.
//!
//! Everything downstream that reports a float (distances, normalized
//! distances, Monte Carlo summaries) funnels through these two functions, so
//! a reported `f64` is always the nearest double to the exact value — results
//! are reproducible bit-for-bit regardless of evaluation order.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::Rational;

const SIG_BITS: u64 = 52;
const EXP_BIAS: i64 = 1023;

/// Nearest `f64` to `q`, rounding ties to even. Overflows to `±inf`,
/// underflows through subnormals to `±0`.
pub fn rational_to_f64(q: &Rational) -> f64 {
    let sign = q.is_negative();
    let a = q.numer().magnitude();
    let b = q.denom().magnitude();
    if a.is_zero() {
        return 0.0;
    }
    let abits = a.bits() as i64;
    let bbits = b.bits() as i64;
    // Scale so the integer quotient keeps 54–55 significant bits.
    let s = 54 - (abits - bbits);
    let (quo, rem) = if s >= 0 {
        (a << s as u64).div_rem(b)
    } else {
        a.div_rem(&(b << (-s) as u64))
    };
    let qbits = quo.bits() as i64;
    let exp = (qbits - 1) - s;
    if exp < -(EXP_BIAS - 1) {
        return assemble_subnormal(sign, a, b);
    }
    let g = (qbits - 53) as u64;
    let mut m = (&quo >> g).to_u64().expect("53-bit mantissa");
    let round_bit = quo.bit(g - 1);
    let sticky = (g == 2 && quo.bit(0)) || !rem.is_zero();
    if round_bit && (sticky || m & 1 == 1) {
        m += 1;
    }
    let mut exp = exp;
    if m == 1 << (SIG_BITS + 1) {
        m >>= 1;
        exp += 1;
    }
    if exp > EXP_BIAS {
        return if sign {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    let bits =
        (sign_bit(sign)) | (((exp + EXP_BIAS) as u64) << SIG_BITS) | (m & ((1 << SIG_BITS) - 1));
    f64::from_bits(bits)
}

fn sign_bit(sign: bool) -> u64 {
    if sign {
        1 << 63
    } else {
        0
    }
}

/// `|q| < 2^-1022`: round `a/b · 2^1074` to the nearest integer `M`; then the
/// result is exactly `f64::from_bits(M)` (with sign), because for `M ≤ 2^53`
/// the bit pattern `M` decodes to `M·2^-1074` across the subnormal range and
/// the bottom two normal binades alike.
fn assemble_subnormal(sign: bool, a: &BigUint, b: &BigUint) -> f64 {
    let (mut m, rem) = (a << 1074u64).div_rem(b);
    let twice = &rem << 1u64;
    match twice.cmp(b) {
        core::cmp::Ordering::Greater => m += 1u32,
        core::cmp::Ordering::Equal => {
            if m.is_odd() {
                m += 1u32;
            }
        }
        core::cmp::Ordering::Less => {}
    }
    let m = m.to_u64().expect("subnormal mantissa fits");
    f64::from_bits(sign_bit(sign) | m)
}

/// Nearest `f64` to `√q`, rounding ties to even. Returns `NaN` for negative
/// `q`.
///
/// Strategy: a ~66-significant-bit integer square root gives a first guess
/// within a fraction of an ulp; the guess is then certified (or nudged) by
/// comparing `q` exactly against the squared midpoints of the guess's
/// rounding interval.
pub fn sqrt_rational_to_f64(q: &Rational) -> f64 {
    if q.is_negative() {
        return f64::NAN;
    }
    if q.is_zero() {
        return 0.0;
    }
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    // √(n/d) = √(n·d)/d; widen so the integer root carries ≥ 66 bits.
    let m = n * d;
    let mbits = m.bits();
    let t = if mbits >= 132 {
        0
    } else {
        (132 - mbits).div_ceil(2)
    };
    let g = (m << (2 * t)).sqrt();
    let approx = Rational::new(
        BigInt::from(g),
        BigInt::from_biguint(num_bigint::Sign::Plus, d << t),
    );
    let mut x = rational_to_f64(&approx);
    for _ in 0..200 {
        match locate(q, x) {
            Location::Below => x = next_down(x),
            Location::Above => x = next_up(x),
            Location::Inside(y) => return y,
        }
    }
    x
}

enum Location {
    Below,
    Above,
    Inside(f64),
}

/// Compare `q` against the squared rounding interval of the nonnegative
/// candidate `x`, deciding whether `x` is the correctly rounded `√q`.
fn locate(q: &Rational, x: f64) -> Location {
    if x == 0.0 {
        // interval [0, 2^-1075]
        let hi = half_ulp_top(0.0);
        return match q.cmp(&(&hi * &hi)) {
            core::cmp::Ordering::Greater => Location::Above,
            _ => Location::Inside(0.0), // tie rounds to the even mantissa, 0
        };
    }
    if x.is_infinite() {
        // interval is (midpoint above f64::MAX, ∞)
        let lo = half_ulp_top(f64::MAX);
        return match q.cmp(&(&lo * &lo)) {
            core::cmp::Ordering::Less => Location::Below,
            _ => Location::Inside(f64::INFINITY),
        };
    }
    let xr = Rational::from_float(x).expect("finite");
    let lo = (&xr + Rational::from_float(next_down(x)).expect("finite"))
        / Rational::from_integer(BigInt::from(2));
    let lo_sq = &lo * &lo;
    match q.cmp(&lo_sq) {
        core::cmp::Ordering::Less => return Location::Below,
        core::cmp::Ordering::Equal => {
            // exactly on the lower midpoint: pick the even of the two
            return if x.to_bits() & 1 == 0 {
                Location::Inside(x)
            } else {
                Location::Inside(next_down(x))
            };
        }
        core::cmp::Ordering::Greater => {}
    }
    let hi = half_ulp_top(x);
    let hi_sq = &hi * &hi;
    match q.cmp(&hi_sq) {
        core::cmp::Ordering::Greater => Location::Above,
        core::cmp::Ordering::Equal => {
            if x.to_bits() & 1 == 0 {
                Location::Inside(x)
            } else {
                Location::Inside(next_up(x))
            }
        }
        core::cmp::Ordering::Less => Location::Inside(x),
    }
}

/// Midpoint between nonnegative `x` and its successor, as an exact rational.
/// For `x = f64::MAX` the successor is taken at the same ulp spacing.
fn half_ulp_top(x: f64) -> Rational {
    let xr = Rational::from_float(x).expect("finite");
    let up = next_up(x);
    if up.is_infinite() {
        // ulp(MAX) = 2^971
        let ulp = Rational::new(BigInt::from(1) << 971u32, BigInt::from(1));
        xr + ulp / Rational::from_integer(BigInt::from(2))
    } else {
        (xr + Rational::from_float(up).expect("finite")) / Rational::from_integer(BigInt::from(2))
    }
}

fn next_up(x: f64) -> f64 {
    f64::from_bits(x.to_bits() + 1)
}

fn next_down(x: f64) -> f64 {
    f64::from_bits(x.to_bits() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use num_traits::One;

    #[test]
    fn small_fractions_round_correctly() {
        assert_eq!(rational_to_f64(&rat(1, 3)), 0.3333333333333333);
        assert_eq!(rational_to_f64(&rat(2, 3)), 0.6666666666666666);
        assert_eq!(rational_to_f64(&rat(-1, 3)), -0.3333333333333333);
        assert_eq!(rational_to_f64(&rat(1, 2)), 0.5);
        assert_eq!(rational_to_f64(&rat_int(0)), 0.0);
        assert_eq!(rational_to_f64(&rat_int(123456789)), 123456789.0);
    }

    #[test]
    fn ties_round_to_even() {
        // 2^-1075 is half the least subnormal: ties to even → 0
        let tiny = Rational::new(BigInt::one(), BigInt::one() << 1075u32);
        assert_eq!(rational_to_f64(&tiny), 0.0);
        // 3·2^-1075 lies midway between bit patterns 1 and 2: even → 2
        let t3 = Rational::new(BigInt::from(3), BigInt::one() << 1075u32);
        assert_eq!(rational_to_f64(&t3).to_bits(), 2);
        // 1 + 2^-53 is midway between 1 and 1+2^-52: even → 1
        let mid = Rational::one() + Rational::new(BigInt::one(), BigInt::one() << 53u32);
        assert_eq!(rational_to_f64(&mid), 1.0);
        // (1 + 3·2^-53): midway between 1+2^-52 and 1+2^-51 → even is 1+2^-51
        let mid = Rational::one() + Rational::new(BigInt::from(3), BigInt::one() << 53u32);
        assert_eq!(rational_to_f64(&mid), 1.0 + 2.0 * f64::EPSILON);
    }

    #[test]
    fn overflow_and_underflow() {
        let huge = Rational::from_integer(BigInt::one() << 1025u32);
        assert_eq!(rational_to_f64(&huge), f64::INFINITY);
        assert_eq!(rational_to_f64(&-huge), f64::NEG_INFINITY);
        let deep = Rational::new(BigInt::one(), BigInt::one() << 1100u32);
        assert_eq!(rational_to_f64(&deep), 0.0);
        let min_sub = Rational::new(BigInt::one(), BigInt::one() << 1074u32);
        assert_eq!(rational_to_f64(&min_sub).to_bits(), 1);
        let min_normal = Rational::new(BigInt::one(), BigInt::one() << 1022u32);
        assert_eq!(rational_to_f64(&min_normal), f64::MIN_POSITIVE);
    }

    #[test]
    fn exact_doubles_round_trip() {
        for x in [
            1.0,
            -1.5,
            0.1,
            f64::MAX,
            f64::MIN_POSITIVE,
            5e-324,
            123456789.0e300,
            -7.25e-270,
        ] {
            let r = Rational::from_float(x).unwrap();
            assert_eq!(rational_to_f64(&r), x, "round trip of {x}");
        }
    }

    #[test]
    fn sqrt_known_values() {
        assert_eq!(sqrt_rational_to_f64(&rat_int(2)), core::f64::consts::SQRT_2);
        assert_eq!(sqrt_rational_to_f64(&rat(9, 2)), 2.1213203435596424);
        assert_eq!(sqrt_rational_to_f64(&rat_int(18)), 4.242640687119285);
        assert_eq!(sqrt_rational_to_f64(&rat(1, 6)), 0.408248290463863);
        assert_eq!(sqrt_rational_to_f64(&rat_int(5)), 2.23606797749979);
        assert_eq!(sqrt_rational_to_f64(&rat(9, 4)), 1.5);
        assert_eq!(sqrt_rational_to_f64(&rat_int(0)), 0.0);
        assert!(sqrt_rational_to_f64(&rat_int(-1)).is_nan());
    }

    #[test]
    fn sqrt_of_exact_squares_is_exact() {
        for x in [3.0f64, 0.1, 1.0e150, 2.5e-140, 7.0 / 3.0] {
            let r = Rational::from_float(x).unwrap();
            let sq = &r * &r;
            assert_eq!(sqrt_rational_to_f64(&sq), x, "sqrt of {x} squared");
        }
    }

    #[test]
    fn sqrt_handles_extremes() {
        // √(2^2100) = 2^1050 > MAX
        let big = Rational::from_integer(BigInt::one() << 2100u32);
        assert_eq!(sqrt_rational_to_f64(&big), f64::INFINITY);
        // tiny: √(2^-2200) = 2^-1100 → rounds to zero region
        let tiny = Rational::new(BigInt::one(), BigInt::one() << 2200u32);
        assert_eq!(sqrt_rational_to_f64(&tiny), 0.0);
        // subnormal result
        let sub = Rational::new(BigInt::one(), BigInt::one() << 2100u32);
        let got = sqrt_rational_to_f64(&sub);
        assert_eq!(got, f64::from_bits(1 << 24)); // 2^-1050
    }
}
