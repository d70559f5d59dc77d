use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::element::{is_odd_prime, CycloElement};
use crate::error::Error;
use crate::rational::Rational;
use crate::round;

/// Field trace down to `Q`. In the basis `ω, …, ω^(p-1)` this is just
/// `-(a₁ + ⋯ + a_(p-1))`, since `Tr(ω^j) = -1` for every `j ≢ 0`.
pub fn trace(a: &CycloElement) -> Rational {
    -a.coeffs().iter().sum::<Rational>()
}

/// The vector `(Tr(α·ω), Tr(α·ω²), …, Tr(α·ω^(p-1)))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceVector {
    p: u64,
    entries: Vec<Rational>,
}

impl TraceVector {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Squared Euclidean length of the vector. Summing `Tr(α·ω^j)²` directly
    /// is the defining route to `‖α‖²`, independent of the closed formula in
    /// [`norm_sq`].
    pub fn norm_sq(&self) -> Rational {
        self.entries.iter().map(|t| t * t).sum()
    }
}

/// Trace coordinates of `α`: entry `j-1` holds `Tr(α·ω^j) = Tr(α) + p·a_(p-j)`.
pub fn trace_vector(a: &CycloElement) -> TraceVector {
    let p = a.p();
    let t = trace(a);
    let pr = Rational::from_integer(BigInt::from(p));
    let entries = (1..p)
        .map(|j| {
            let witness = a.coeff_of_power(p - j).expect("index in range");
            &t + &pr * witness
        })
        .collect();
    TraceVector { p, entries }
}

/// `‖α‖² = Σ_j Tr(α·ω^j)²`, evaluated through the closed form
/// `p²·Σ aᵢ² - (p+1)·Tr(α)²`.
pub fn norm_sq(a: &CycloElement) -> Rational {
    let p = BigInt::from(a.p());
    let sum_sq: Rational = a.coeffs().iter().map(|c| c * c).sum();
    let t = trace(a);
    Rational::from_integer(&p * &p) * sum_sq
        - Rational::from_integer(&p + BigInt::from(1)) * (&t * &t)
}

/// Plain squared Euclidean length of the coordinate vector.
pub fn euclidean_norm_sq(a: &CycloElement) -> Rational {
    a.coeffs().iter().map(|c| c * c).sum()
}

/// Squared trace-form distance `‖α - β‖²`.
pub fn dist_sq(a: &CycloElement, b: &CycloElement) -> Result<Rational, Error> {
    Ok(norm_sq(&a.sub(b)?))
}

/// Trace-form distance as a correctly rounded `f64`.
pub fn dist(a: &CycloElement, b: &CycloElement) -> Result<f64, Error> {
    Ok(round::sqrt_rational_to_f64(&dist_sq(a, b)?))
}

/// The integer coefficient box `{Σ aᵢωⁱ : aᵢ ∈ [-N, N] ∩ Z}` for an odd
/// prime `p` and radius `N ≥ 1`.
///
/// `p ≤ 2²⁰` and `N ≤ 2³⁰` keep all integer fast paths comfortably inside
/// `i128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxSpec {
    p: u64,
    n: u64,
}

impl BoxSpec {
    pub const MAX_P: u64 = 1 << 20;
    pub const MAX_RADIUS: u64 = 1 << 30;

    pub fn new(p: u64, n: u64) -> Result<Self, Error> {
        if !is_odd_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        if n == 0 {
            return Err(Error::ZeroBoxRadius);
        }
        if p > Self::MAX_P || n > Self::MAX_RADIUS {
            return Err(Error::BoxTooLarge { p, n });
        }
        Ok(Self { p, n })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn radius(&self) -> u64 {
        self.n
    }

    /// Number of coordinates, `p - 1`.
    pub fn dimension(&self) -> usize {
        (self.p - 1) as usize
    }

    /// Exact squared diameter of the box under the trace metric:
    /// `4N²p²(p-1)`, attained by antipodal corners.
    pub fn diameter_sq(&self) -> Rational {
        let p = BigInt::from(self.p);
        let n = BigInt::from(self.n);
        Rational::from_integer(4 * &n * &n * &p * &p * (&p - 1))
    }

    /// Whether `a` is an integer point of the box.
    pub fn contains(&self, a: &CycloElement) -> bool {
        if a.p() != self.p {
            return false;
        }
        let n = BigInt::from(self.n);
        a.coeffs()
            .iter()
            .all(|c| c.is_integer() && c.numer().abs() <= n)
    }
}

/// Normalization for reporting distances between box points on a `[0, 1]`-ish
/// scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Divide by the box diameter `2Np√(p-1)`.
    Diameter,
    /// Divide by `2Np^(3/2)`, the scale at which typical distances
    /// concentrate around `1/√6`.
    P32,
}

/// Normalized distance between two integer points of `bx`, as a correctly
/// rounded `f64`. Rejects points outside the box and mixed moduli.
pub fn normalized_dist(
    a: &CycloElement,
    b: &CycloElement,
    bx: &BoxSpec,
    mode: Normalization,
) -> Result<f64, Error> {
    if a.p() != b.p() {
        return Err(Error::ModulusMismatch {
            left: a.p(),
            right: b.p(),
        });
    }
    if a.p() != bx.p() {
        return Err(Error::ModulusMismatch {
            left: a.p(),
            right: bx.p(),
        });
    }
    if !bx.contains(a) || !bx.contains(b) {
        return Err(Error::OutOfBox);
    }
    let d2 = dist_sq(a, b)?;
    let scale_sq = match mode {
        Normalization::Diameter => bx.diameter_sq(),
        Normalization::P32 => {
            let p = BigInt::from(bx.p());
            let n = BigInt::from(bx.radius());
            Rational::from_integer(4 * &n * &n * &p * &p * &p)
        }
    };
    Ok(round::sqrt_rational_to_f64(&(d2 / scale_sq)))
}
