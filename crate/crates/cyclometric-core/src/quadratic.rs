//! Exact comparison of rationals against numbers of the form `a + b·√6`.
//!
//! Concentration thresholds for the normalized distance live in `Q(√6)`, so
//! outlier classification must not round: the comparator below decides the
//! order with integer sign tests and squarings only. Since `√6` is
//! irrational, `x = a + b·√6` can hold only when `b = 0`.

use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Order `x` against `a + b·√6` exactly.
pub fn cmp_with_sqrt6(x: &Rational, a: &Rational, b: &Rational) -> Ordering {
    let t = x - a;
    if b.is_zero() {
        return t.cmp(&Rational::zero());
    }
    let t_sq = &t * &t;
    let six_b_sq = Rational::from_integer(6.into()) * b * b;
    if b.is_positive() {
        // x vs a + b√6  ⟺  t vs b√6 with b√6 > 0
        if !t.is_positive() {
            Ordering::Less
        } else {
            t_sq.cmp(&six_b_sq)
        }
    } else {
        // b√6 < 0: t ≥ 0 settles it; otherwise compare magnitudes reversed
        if !t.is_negative() {
            Ordering::Greater
        } else {
            six_b_sq.cmp(&t_sq)
        }
    }
}
