//! Closed-form moments of the squared trace distance between independent
//! uniform points of an integer coefficient box, and the Chebyshev-style
//! concentration bound built from them.
//!
//! All formulas are exact rational identities in `p` and `N`; the brute-force
//! enumeration routes in [`crate::empirical`] reproduce them term for term.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::metric::BoxSpec;
use crate::rational::Rational;

fn bi(x: u64) -> BigInt {
    BigInt::from(x)
}

/// `Σ_{x=-N}^{N} x^r` for `r ≤ 4`. Odd powers cancel; even powers have the
/// classical closed forms.
pub fn power_sum(r: u32, n: u64) -> Result<Rational, Error> {
    let n = bi(n);
    let val = match r {
        0 => 2 * &n + 1,
        1 | 3 => BigInt::zero(),
        2 => return Ok(Rational::new(&n * (&n + 1) * (2 * &n + 1), BigInt::from(3))),
        4 => {
            let base = &n * (&n + 1) * (2 * &n + 1);
            let poly = 3 * &n * &n + 3 * &n - 1;
            return Ok(Rational::new(base * poly, BigInt::from(15)));
        }
        _ => return Err(Error::UnsupportedExponent(r)),
    };
    Ok(Rational::from_integer(val))
}

/// Second moment of `d²` over independent uniform pairs:
/// `M₂ = (2/3)·(p³ - 2p² + 1)·N(N+1)`.
pub fn m2_closed(bx: &BoxSpec) -> Rational {
    let p = bi(bx.p());
    let n = bi(bx.radius());
    let poly = &p * &p * &p - 2 * &p * &p + 1;
    Rational::new(2 * poly * &n * (&n + 1), BigInt::from(3))
}

/// Mean of `Σ_{i,j} δᵢ²δⱼ²` over difference vectors — equivalently the mean
/// of `(Σᵢ δᵢ²)²`:
/// `(2/45)·N(N+1)·(p-1)·(10N²p + 4N² + 10Np + 4N - 3)`.
pub fn double_square_sum_normalized(bx: &BoxSpec) -> Rational {
    let p = bi(bx.p());
    let n = bi(bx.radius());
    let poly = 10 * &n * &n * &p + 4 * &n * &n + 10 * &n * &p + 4 * &n - 3;
    Rational::new(2 * &n * (&n + 1) * (&p - 1) * poly, BigInt::from(45))
}

/// Fourth moment of `d²`:
/// `M₄ = (2/45)·N(N+1)·(p-1)·((2N²+2N)·(5p⁵-8p⁴+p³+8p²-21p-18) - 3(p²-p-1)²)`.
pub fn m4_closed(bx: &BoxSpec) -> Rational {
    let p = bi(bx.p());
    let n = bi(bx.radius());
    let p2 = &p * &p;
    let p3 = &p2 * &p;
    let p4 = &p3 * &p;
    let p5 = &p4 * &p;
    let quintic = 5 * &p5 - 8 * &p4 + &p3 + 8 * &p2 - 21 * &p - 18;
    let quad = &p2 - &p - 1;
    let inner = (2 * &n * &n + 2 * &n) * quintic - 3 * &quad * &quad;
    Rational::new(2 * &n * (&n + 1) * (&p - 1) * inner, BigInt::from(45))
}

/// Concentration center `μ = (2/3)·p³N²` — the square of the scale
/// `2Np^(3/2)·(1/√6)` around which `d²` clusters.
pub fn mu(bx: &BoxSpec) -> Rational {
    let p = bi(bx.p());
    let n = bi(bx.radius());
    Rational::new(2 * &p * &p * &p * &n * &n, BigInt::from(3))
}

/// Centered second moment about `μ`: `R = M₄ - 2μM₂ + μ²` — the mean of
/// `(d² - μ)²`.
pub fn r_moment_closed(bx: &BoxSpec) -> Rational {
    let m2 = m2_closed(bx);
    let m4 = m4_closed(bx);
    let mu = mu(bx);
    m4 - Rational::from_integer(BigInt::from(2)) * &mu * m2 + &mu * &mu
}

/// Chebyshev-style bound on the probability that the normalized distance
/// leaves `[1/√6 - ε, 1/√6 + ε]`: at most `R / (6·ε²·μ²)`.
pub fn concentration_bound(bx: &BoxSpec, eps: &Rational) -> Result<Rational, Error> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    let r = r_moment_closed(bx);
    let mu = mu(bx);
    let denom = Rational::from_integer(BigInt::from(6)) * eps * eps * &mu * &mu;
    Ok(r / denom)
}
