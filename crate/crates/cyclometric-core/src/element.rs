use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::rational::Rational;

/// Check whether `p` is an odd prime, by trial division.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of `Q(ω)` for a primitive `p`-th root of unity `ω`, stored as
/// exact rational coordinates in the basis `ω, ω², …, ω^(p-1)`.
///
/// `coeffs[i]` is the coordinate of `ω^(i+1)`; there is no `ω⁰` slot. The
/// rational `1` is represented through the relation `1 = -(ω + ⋯ + ω^(p-1))`,
/// so every field element has exactly one coordinate vector and equality of
/// coordinates is equality in the field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    p: u64,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    /// Build an element from its basis coordinates. `coeffs.len()` must be
    /// `p - 1` and `p` must be an odd prime.
    pub fn new(p: u64, coeffs: Vec<Rational>) -> Result<Self, Error> {
        if !is_odd_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        let expected = (p - 1) as usize;
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: coeffs.len(),
            });
        }
        Ok(Self { p, coeffs })
    }

    /// Embed a rational number: `q ↦ -q·(ω + ⋯ + ω^(p-1))`.
    pub fn from_rational(p: u64, q: &Rational) -> Result<Self, Error> {
        if !is_odd_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        let c = -q;
        Ok(Self {
            p,
            coeffs: vec![c; (p - 1) as usize],
        })
    }

    /// The zero element.
    pub fn zero(p: u64) -> Result<Self, Error> {
        Self::from_rational(p, &Rational::zero())
    }

    /// The root power `ω^j`, for any integer exponent (reduced mod `p`;
    /// `j ≡ 0` folds to the coordinate vector of `1`).
    pub fn root_power(p: u64, j: i64) -> Result<Self, Error> {
        if !is_odd_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        let r = j.rem_euclid(p as i64) as u64;
        if r == 0 {
            return Self::from_rational(p, &Rational::one());
        }
        let mut coeffs = vec![Rational::zero(); (p - 1) as usize];
        coeffs[(r - 1) as usize] = Rational::one();
        Ok(Self { p, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Degree of the ambient field extension, `p - 1`.
    pub fn dimension(&self) -> usize {
        self.coeffs.len()
    }

    /// Coordinates in the basis `ω, …, ω^(p-1)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coordinate of `ω^j` for `1 ≤ j ≤ p-1`.
    pub fn coeff_of_power(&self, j: u64) -> Option<&Rational> {
        if j == 0 || j >= self.p {
            return None;
        }
        self.coeffs.get((j - 1) as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_same_p(&self, other: &Self) -> Result<(), Error> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_p(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { p: self.p, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_p(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { p: self.p, coeffs })
    }

    pub fn neg(&self) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scalar_mul(&self, s: &Rational) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Ring product. Convolves exponents mod `p`, then eliminates the `ω⁰`
    /// component through `1 = -(ω + ⋯ + ω^(p-1))`.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_p(other)?;
        let p = self.p as usize;
        let mut acc = vec![Rational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j + 2) % p] += a * b;
            }
        }
        let unit = acc[0].clone();
        let coeffs = acc[1..].iter().map(|c| c - &unit).collect();
        Ok(Self { p: self.p, coeffs })
    }

    /// Multiply by `ω^j` (any integer exponent). A cyclic shift of the
    /// exponents followed by the same `ω⁰` fold as [`CycloElement::mul`],
    /// without the full convolution.
    pub fn mul_root_power(&self, j: i64) -> Self {
        let p = self.p as usize;
        let r = j.rem_euclid(self.p as i64) as usize;
        if r == 0 {
            return self.clone();
        }
        let mut acc = vec![Rational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            acc[(i + 1 + r) % p] = a.clone();
        }
        let unit = acc[0].clone();
        let coeffs = acc[1..].iter().map(|c| c - &unit).collect();
        Self { p: self.p, coeffs }
    }
}
