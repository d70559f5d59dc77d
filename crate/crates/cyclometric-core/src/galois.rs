//! The Galois action of `(Z/pZ)ˣ` on `Q(ω)` and what the trace metric can
//! see through it: stabilizers and subfield degrees, a closeness criterion in
//! the style of Krasner's lemma, and primitive element search for composita.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::element::{is_odd_prime, CycloElement};
use crate::error::Error;
use crate::metric::{dist_sq, norm_sq};
use crate::rational::Rational;

/// The automorphism `σ_k : ω ↦ ω^k` of `Q(ω)`, for `k ∈ 1..=p-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Automorphism {
    p: u64,
    k: u64,
}

impl Automorphism {
    pub fn new(p: u64, k: u64) -> Result<Self, Error> {
        if !is_odd_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        if k == 0 || k >= p {
            return Err(Error::BadAutomorphismIndex { p, k });
        }
        Ok(Self { p, k })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn index(&self) -> u64 {
        self.k
    }

    /// `σ_k` permutes basis coordinates: the coefficient of `ω^i` moves to
    /// `ω^(k·i mod p)`, and no coordinate ever lands on `ω⁰`.
    pub fn apply(&self, a: &CycloElement) -> Result<CycloElement, Error> {
        if a.p() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: a.p(),
            });
        }
        let p = self.p;
        let mut coeffs = vec![Rational::zero(); (p - 1) as usize];
        for (idx, c) in a.coeffs().iter().enumerate() {
            let i = idx as u64 + 1;
            let target = (self.k * i) % p;
            coeffs[(target - 1) as usize] = c.clone();
        }
        CycloElement::new(p, coeffs)
    }

    /// Group law: `σ_k ∘ σ_l = σ_(k·l mod p)`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism, Error> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Automorphism::new(self.p, (self.k * other.k) % self.p)
    }
}

/// Apply `σ_k` to `a`.
pub fn apply_automorphism(a: &CycloElement, k: u64) -> Result<CycloElement, Error> {
    Automorphism::new(a.p(), k)?.apply(a)
}

/// Where an element sits in the subfield lattice of `Q(ω)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfieldProfile {
    p: u64,
    stabilizer: Vec<u64>,
    degree: u64,
}

impl SubfieldProfile {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Sorted indices `k` with `σ_k(a) = a` — a subgroup of `(Z/pZ)ˣ`.
    pub fn stabilizer(&self) -> &[u64] {
        &self.stabilizer
    }

    /// Degree of `Q(a)` over `Q`: `(p-1) / |stabilizer|`.
    pub fn degree(&self) -> u64 {
        self.degree
    }
}

/// Stabilizer and degree of `Q(a)`.
pub fn subfield_profile(a: &CycloElement) -> SubfieldProfile {
    let p = a.p();
    let stabilizer: Vec<u64> = (1..p)
        .filter(|&k| {
            Automorphism { p, k }
                .apply(a)
                .map(|img| img == *a)
                .unwrap_or(false)
        })
        .collect();
    let degree = (p - 1) / stabilizer.len() as u64;
    SubfieldProfile {
        p,
        stabilizer,
        degree,
    }
}

/// The distinct Galois conjugates of `a`, starting with `a` itself. Their
/// count equals `degree(a)`.
pub fn conjugates(a: &CycloElement) -> Vec<CycloElement> {
    let p = a.p();
    let mut out: Vec<CycloElement> = Vec::new();
    for k in 1..p {
        let img = Automorphism { p, k }.apply(a).expect("same modulus");
        if !out.contains(&img) {
            out.push(img);
        }
    }
    out
}

/// Whether `Q(a) ⊆ Q(b)`. Because `(Z/pZ)ˣ` is cyclic, the subfields of
/// `Q(ω)` form a chain indexed by divisors of `p-1`, so containment is
/// exactly divisibility of degrees.
pub fn subfield_contains(a: &CycloElement, b: &CycloElement) -> Result<bool, Error> {
    if a.p() != b.p() {
        return Err(Error::ModulusMismatch {
            left: a.p(),
            right: b.p(),
        });
    }
    let da = subfield_profile(a).degree();
    let db = subfield_profile(b).degree();
    Ok(db.is_multiple_of(da))
}

/// Outcome of the metric closeness criterion for `(a, b)`.
///
/// The hypothesis is the strict inequality `4·d²(a,b) < min_i d²(a, aᵢ)` over
/// the conjugates `aᵢ ≠ a`; when it holds, `Q(a) ⊆ Q(b)` is guaranteed. For
/// rational `a` there are no other conjugates and the hypothesis is vacuously
/// true (`margin` is `None`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrasnerCheck {
    pub dist_sq: Rational,
    /// `min_i d²(a, aᵢ)` over conjugates distinct from `a`; `None` when
    /// `a` is rational.
    pub min_conjugate_dist_sq: Option<Rational>,
    /// `min_i d²(a, aᵢ) - 4·d²(a,b)`; positive iff the hypothesis holds.
    pub margin: Option<Rational>,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
}

/// Test the closeness criterion on a pair: does `b` approximate `a` well
/// enough (relative to the spacing of `a`'s conjugates) to force
/// `Q(a) ⊆ Q(b)`? The conclusion is evaluated independently so callers can
/// observe that the implication never fails.
pub fn krasner_check(a: &CycloElement, b: &CycloElement) -> Result<KrasnerCheck, Error> {
    let d2 = dist_sq(a, b)?;
    let min_conj = conjugates(a)
        .into_iter()
        .filter(|c| c != a)
        .map(|c| norm_sq(&c.sub(a).expect("same modulus")))
        .min();
    let four_d2 = Rational::from_integer(4.into()) * &d2;
    let margin = min_conj.as_ref().map(|m| m - &four_d2);
    let hypothesis_holds = match &margin {
        None => true,
        Some(m) => m.is_positive(),
    };
    let conclusion_holds = subfield_contains(a, b)?;
    Ok(KrasnerCheck {
        dist_sq: d2,
        min_conjugate_dist_sq: min_conj,
        margin,
        hypothesis_holds,
        conclusion_holds,
    })
}

/// Result of a primitive element search: the smallest `n ≥ 1` such that
/// `γ = a + b/n` generates the compositum `Q(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveSearch {
    pub n: u64,
    pub gamma: CycloElement,
    pub degree: u64,
}

/// Search `γ = a + b/n` for `n = 1, 2, …, max_n`, stopping at the first `n`
/// whose `γ` has degree `lcm(degree(a), degree(b))` — the degree of the
/// compositum, since the subfields of `Q(ω)` form a chain.
pub fn primitive_element_search(
    a: &CycloElement,
    b: &CycloElement,
    max_n: u64,
) -> Result<PrimitiveSearch, Error> {
    if a.p() != b.p() {
        return Err(Error::ModulusMismatch {
            left: a.p(),
            right: b.p(),
        });
    }
    let da = subfield_profile(a).degree();
    let db = subfield_profile(b).degree();
    let target = da.lcm(&db);
    for n in 1..=max_n {
        let scale = Rational::new(1.into(), (n as i64).into());
        let gamma = a.add(&b.scalar_mul(&scale))?;
        if subfield_profile(&gamma).degree() == target {
            return Ok(PrimitiveSearch {
                n,
                gamma,
                degree: target,
            });
        }
    }
    Err(Error::SearchExhausted { max_n })
}
