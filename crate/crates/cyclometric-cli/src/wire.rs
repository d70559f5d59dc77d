//! JSON wire format for field elements.
//!
//! An element serializes as `{"p": 7, "coeffs": [["num","den"], ...]}` with
//! one `[numerator, denominator]` string pair per basis root power, in order
//! `ω, ω², …, ω^{p-1}`. Fractions are always reduced with the sign on the
//! numerator, so printing and re-parsing an element is the identity.
//!
//! On the command line an element flag accepts three spellings:
//!
//! * the full object above,
//! * a bare coefficient array `[["num","den"], ...]` (the modulus must then
//!   come from `--p`),
//! * `@path/to/file.json` to read either form from a file.

use std::fs;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use cyclometric_core::{CycloElement, Rational};

use crate::error::CliError;

/// Serialized form of a [`CycloElement`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementWire {
    /// Odd prime conductor of the cyclotomic field.
    pub p: u64,
    /// Coefficient of each root power `ω^1 … ω^{p-1}` as `[numerator, denominator]`.
    pub coeffs: Vec<[String; 2]>,
}

/// Convert an element to its wire form. Coefficients come out reduced because
/// the underlying rationals are kept reduced.
pub fn element_to_wire(element: &CycloElement) -> ElementWire {
    ElementWire {
        p: element.p(),
        coeffs: element
            .coeffs()
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect(),
    }
}

/// Rebuild an element from its wire form, validating the modulus and every
/// coefficient pair.
pub fn wire_to_element(wire: &ElementWire) -> Result<CycloElement, CliError> {
    let mut coeffs = Vec::with_capacity(wire.coeffs.len());
    for (index, [num, den]) in wire.coeffs.iter().enumerate() {
        let n = num.parse::<BigInt>().map_err(|_| bad_coeff(index, num))?;
        let d = den.parse::<BigInt>().map_err(|_| bad_coeff(index, den))?;
        if d.is_zero() {
            return Err(CliError::Usage(format!(
                "coefficient {index}: zero denominator"
            )));
        }
        coeffs.push(Rational::new(n, d));
    }
    CycloElement::new(wire.p, coeffs).map_err(CliError::from)
}

fn bad_coeff(index: usize, text: &str) -> CliError {
    CliError::Usage(format!("coefficient {index}: `{text}` is not an integer"))
}

/// Parse an element flag value: full object, bare coefficient array, or
/// `@file` containing either. `p_flag` is the value of `--p`, if given; it is
/// required with bare arrays and must agree with the object form.
pub fn parse_element_arg(raw: &str, p_flag: Option<u64>) -> Result<CycloElement, CliError> {
    let owned;
    let text = if let Some(path) = raw.strip_prefix('@') {
        owned = fs::read_to_string(path)?;
        owned.as_str()
    } else {
        raw
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let wire: ElementWire = serde_json::from_str(trimmed)?;
        if let Some(p) = p_flag {
            if p != wire.p {
                return Err(CliError::Usage(format!(
                    "--p {p} disagrees with element modulus {}",
                    wire.p
                )));
            }
        }
        wire_to_element(&wire)
    } else {
        let coeffs: Vec<[String; 2]> = serde_json::from_str(trimmed)?;
        let p = p_flag.ok_or_else(|| {
            CliError::Usage("bare coefficient arrays need --p for the modulus".to_string())
        })?;
        wire_to_element(&ElementWire { p, coeffs })
    }
}
