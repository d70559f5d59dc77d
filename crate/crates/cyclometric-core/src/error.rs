use core::fmt;

use num_bigint::BigUint;

/// Errors shared across the whole crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The modulus passed to a constructor is not an odd prime.
    NonPrimeModulus(u64),
    /// A coefficient vector has the wrong length for its modulus.
    DimensionMismatch { expected: usize, got: usize },
    /// Two elements (or an element and a box) live over different moduli.
    ModulusMismatch { left: u64, right: u64 },
    /// Automorphism index outside `1..=p-1`.
    BadAutomorphismIndex { p: u64, k: u64 },
    /// Primitive element search ran out of candidates.
    SearchExhausted { max_n: u64 },
    /// An element is not an integer point of the coefficient box.
    OutOfBox,
    /// Moment order not covered by a closed form or oracle.
    UnsupportedExponent(u32),
    /// An enumeration would exceed the configured evaluation budget.
    BudgetExceeded { required: BigUint, budget: u64 },
    /// Brute-force moments of odd order vanish by symmetry and are not served.
    OddMomentUnsupported(u32),
    /// Concentration tolerance must be strictly positive.
    NonPositiveEpsilon,
    /// A Monte Carlo run needs at least one sample.
    ZeroSamples,
    /// Box radius must be at least 1.
    ZeroBoxRadius,
    /// Box parameters outside the range supported by the fast integer paths.
    BoxTooLarge { p: u64, n: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrimeModulus(p) => write!(f, "modulus {p} is not an odd prime"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} coefficients, got {got}")
            }
            Error::ModulusMismatch { left, right } => {
                write!(f, "mixed moduli: {left} vs {right}")
            }
            Error::BadAutomorphismIndex { p, k } => {
                write!(
                    f,
                    "automorphism index {k} outside 1..={} for p = {p}",
                    p - 1
                )
            }
            Error::SearchExhausted { max_n } => {
                write!(
                    f,
                    "no primitive combination found with denominator up to {max_n}"
                )
            }
            Error::OutOfBox => write!(f, "element is not an integer point of the box"),
            Error::UnsupportedExponent(k) => write!(f, "moment order {k} is not supported"),
            Error::BudgetExceeded { required, budget } => {
                write!(
                    f,
                    "enumeration needs {required} evaluations, budget is {budget}"
                )
            }
            Error::OddMomentUnsupported(k) => {
                write!(
                    f,
                    "odd moment order {k} vanishes by symmetry; ask for an even order"
                )
            }
            Error::NonPositiveEpsilon => write!(f, "epsilon must be strictly positive"),
            Error::ZeroSamples => write!(f, "sample count must be at least 1"),
            Error::ZeroBoxRadius => write!(f, "box radius must be at least 1"),
            Error::BoxTooLarge { p, n } => {
                write!(
                    f,
                    "box p = {p}, radius = {n} exceeds supported integer range"
                )
            }
        }
    }
}
