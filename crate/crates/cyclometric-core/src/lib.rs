//! Exact arithmetic for the trace-form metric on prime cyclotomic fields.
//!
//! Everything here works over `Q(ω)` where `ω` is a primitive `p`-th root of
//! unity for an odd prime `p`. Elements are stored as exact rational
//! coordinates in the basis `ω, ω², …, ω^(p-1)`, and the central quantity is
//! the squared distance
//!
//! ```text
//! d²(α, β) = Σ_j Tr((α - β)·ω^j)²
//! ```
//!
//! which this crate evaluates without ever leaving exact rational arithmetic.
//! On top of that sit the Galois action and its consequences (subfield
//! detection, a Krasner-style closeness test, primitive element search),
//! closed-form moment formulas over integer coefficient boxes, brute-force
//! enumeration oracles, and deterministic seeded sampling for Monte Carlo
//! concentration experiments.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion crate `cyclometric-cli`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod element;
pub mod empirical;
pub mod error;
pub mod galois;
pub mod metric;
pub mod moments;
pub mod quadratic;
pub mod rational;
pub mod round;

pub use element::{is_odd_prime, CycloElement};
pub use error::Error;
pub use metric::{BoxSpec, Normalization, TraceVector};
pub use rational::Rational;
