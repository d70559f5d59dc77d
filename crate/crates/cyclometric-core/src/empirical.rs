//! Brute-force enumeration oracles and seeded sampling experiments over
//! integer coefficient boxes.
//!
//! Enumeration never walks pairs of box points directly: a pair only enters
//! the statistics through its coefficient difference vector, so we walk
//! `δ ∈ [-2N, 2N]^(p-1)` once and weight each `δ` by the number of pairs
//! realizing it, `Π(2N+1-|δᵢ|)`. The quadratic pair count still governs the
//! budget, because it is what the equivalent pair walk would cost.
//!
//! Monte Carlo sampling is deterministic: sample `i` is drawn from stream `i`
//! of a counter-based generator seeded once, so any partition of the index
//! range — serial, chunked, or parallel — produces bit-identical statistics.

use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::CycloElement;
use crate::error::Error;
use crate::metric::BoxSpec;
use crate::moments;
use crate::quadratic::cmp_with_sqrt6;
use crate::rational::Rational;
use crate::round::rational_to_f64;

/// Default cap on the implied pair count of an enumeration.
pub const DEFAULT_EVAL_BUDGET: u64 = 1_000_000_000;

/// Number of integer points of the box: `(2N+1)^(p-1)`.
pub fn box_size(bx: &BoxSpec) -> BigUint {
    BigUint::from(2 * bx.radius() + 1).pow((bx.p() - 1) as u32)
}

/// Number of ordered pairs of box points.
pub fn pair_count(bx: &BoxSpec) -> BigUint {
    let s = box_size(bx);
    &s * &s
}

fn ensure_budget(bx: &BoxSpec, budget: u64) -> Result<(), Error> {
    let required = pair_count(bx);
    if required > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Visit every difference vector, carrying `Σδᵢ`, `Σδᵢ²`, and the pair
/// multiplicity. Callers must have checked the budget: multiplicities are
/// only guaranteed to fit `u64` when the pair count does.
fn for_each_difference(bx: &BoxSpec, visit: &mut impl FnMut(i128, i128, u64)) {
    let width = 2 * bx.radius() + 1;
    let reach = 2 * bx.radius() as i128;
    recurse(bx.dimension(), reach, width, 0, 0, 1, visit);
}

fn recurse(
    dims_left: usize,
    reach: i128,
    width: u64,
    sum: i128,
    sum_sq: i128,
    weight: u64,
    visit: &mut impl FnMut(i128, i128, u64),
) {
    if dims_left == 0 {
        visit(sum, sum_sq, weight);
        return;
    }
    let mut d = -reach;
    while d <= reach {
        let w = width - d.unsigned_abs() as u64;
        recurse(
            dims_left - 1,
            reach,
            width,
            sum + d,
            sum_sq + d * d,
            weight * w,
            visit,
        );
        d += 1;
    }
}

/// `d²` of a difference vector from its power sums:
/// `p²·Σδᵢ² - (p+1)·(Σδᵢ)²`.
fn dist_sq_int(p: u64, sum: i128, sum_sq: i128) -> i128 {
    let p = p as i128;
    p * p * sum_sq - (p + 1) * sum * sum
}

/// Integer accumulator that stays on the `i128` fast path and spills to a
/// `BigInt` only when an addition would overflow.
#[derive(Debug, Default)]
struct ChunkedSum {
    lo: i128,
    hi: BigInt,
}

impl ChunkedSum {
    fn add(&mut self, v: i128) {
        match self.lo.checked_add(v) {
            Some(x) => self.lo = x,
            None => {
                self.hi += BigInt::from(self.lo);
                self.lo = v;
            }
        }
    }

    fn total(self) -> BigInt {
        self.hi + BigInt::from(self.lo)
    }
}

/// Enumerated `k`-th moment of `d²` over ordered pairs of box points.
/// Serves `k ∈ {2, 4}`; odd `k` vanish by `δ ↦ -δ` symmetry and are
/// rejected rather than silently returned as zero.
pub fn brute_moment(bx: &BoxSpec, k: u32, budget: u64) -> Result<Rational, Error> {
    if k % 2 == 1 {
        return Err(Error::OddMomentUnsupported(k));
    }
    if k != 2 && k != 4 {
        return Err(Error::UnsupportedExponent(k));
    }
    ensure_budget(bx, budget)?;
    let p = bx.p();
    let mut acc = ChunkedSum::default();
    for_each_difference(bx, &mut |sum, sum_sq, w| {
        let d2 = dist_sq_int(p, sum, sum_sq);
        let term = if k == 2 { d2 } else { d2 * d2 };
        acc.add(term * w as i128);
    });
    Ok(Rational::new(acc.total(), pair_count(bx).into()))
}

/// Enumerated mean of `(Σᵢ δᵢ²)²` — the expanded double sum
/// `Σ_{i,j} δᵢ²δⱼ²` — over ordered pairs. Matches
/// [`moments::double_square_sum_normalized`]; multiply by the pair count for
/// the raw sum.
pub fn brute_double_square_sum(bx: &BoxSpec, budget: u64) -> Result<Rational, Error> {
    ensure_budget(bx, budget)?;
    let mut acc = ChunkedSum::default();
    for_each_difference(bx, &mut |_, sum_sq, w| {
        acc.add(sum_sq * sum_sq * w as i128);
    });
    Ok(Rational::new(acc.total(), pair_count(bx).into()))
}

/// Enumerated maximum of `d²` over pairs of box points.
pub fn brute_diameter_sq(bx: &BoxSpec, budget: u64) -> Result<Rational, Error> {
    ensure_budget(bx, budget)?;
    let p = bx.p();
    let mut max = 0i128;
    for_each_difference(bx, &mut |sum, sum_sq, _| {
        let d2 = dist_sq_int(p, sum, sum_sq);
        if d2 > max {
            max = d2;
        }
    });
    Ok(Rational::from_integer(max.into()))
}

/// Enumerated mean of `(d² - μ)²` with `μ = (2/3)p³N²`. Computed as
/// `Σ w·(3d² - 2p³N²)² / (9·pairs)` to stay in integers.
pub fn brute_r_moment(bx: &BoxSpec, budget: u64) -> Result<Rational, Error> {
    ensure_budget(bx, budget)?;
    let p = bx.p();
    let three_mu = {
        let p = p as i128;
        let n = bx.radius() as i128;
        2 * p * p * p * n * n
    };
    let mut acc = ChunkedSum::default();
    for_each_difference(bx, &mut |sum, sum_sq, w| {
        let centered = 3 * dist_sq_int(p, sum, sum_sq) - three_mu;
        acc.add(centered * centered * w as i128);
    });
    Ok(Rational::new(
        acc.total(),
        BigInt::from(9u32) * BigInt::from(pair_count(bx)),
    ))
}

/// Deterministic source of uniform box point pairs. Sample `i` comes from
/// stream `i` of a ChaCha generator cloned from one seeded template, so
/// samples can be drawn in any order or in parallel without changing them.
#[derive(Debug, Clone)]
pub struct PairSampler {
    p: u64,
    dim: usize,
    template: ChaCha8Rng,
    coords: Uniform<i64>,
}

impl PairSampler {
    pub fn new(bx: &BoxSpec, seed: u64) -> Self {
        let n = bx.radius() as i64;
        Self {
            p: bx.p(),
            dim: bx.dimension(),
            template: ChaCha8Rng::seed_from_u64(seed),
            coords: Uniform::new_inclusive(-n, n).expect("nonempty coordinate range"),
        }
    }

    /// Integer coordinates of the `index`-th pair.
    pub fn coeff_pair(&self, index: u64) -> (Vec<i64>, Vec<i64>) {
        let mut rng = self.template.clone();
        rng.set_stream(index);
        let a = (0..self.dim)
            .map(|_| self.coords.sample(&mut rng))
            .collect();
        let b = (0..self.dim)
            .map(|_| self.coords.sample(&mut rng))
            .collect();
        (a, b)
    }

    /// The `index`-th pair as field elements.
    pub fn element_pair(&self, index: u64) -> (CycloElement, CycloElement) {
        let (a, b) = self.coeff_pair(index);
        (self.elem(&a), self.elem(&b))
    }

    fn elem(&self, coords: &[i64]) -> CycloElement {
        let coeffs = coords
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        CycloElement::new(self.p, coeffs).expect("sampler box is valid")
    }
}

/// The `index`-th uniform pair for `(bx, seed)` — a one-shot convenience
/// around [`PairSampler`].
pub fn sample_pair(bx: &BoxSpec, seed: u64, index: u64) -> (CycloElement, CycloElement) {
    PairSampler::new(bx, seed).element_pair(index)
}

/// `floor((alpha + beta·√6) / delta)` for `delta > 0`, exactly.
fn floor_linear_sqrt6(alpha: &BigInt, beta: &BigInt, delta: &BigInt) -> BigInt {
    if beta.is_zero() {
        return alpha.div_floor(delta);
    }
    let six_beta_sq: BigInt = 6 * beta * beta;
    let root = six_beta_sq.sqrt(); // floor(|beta|·√6)
    if beta.is_positive() {
        let q = (alpha + &root).div_floor(delta);
        // the true value may still clear the next integer
        let u: BigInt = (&q + BigInt::from(1)) * delta - alpha;
        if !u.is_positive() || &u * &u < six_beta_sq {
            q + 1
        } else {
            q
        }
    } else {
        let q = (alpha - &root).div_floor(delta);
        // check whether q itself is below the true value
        let u = alpha - &q * delta;
        if !u.is_negative() && six_beta_sq < &u * &u {
            q
        } else {
            q - 1
        }
    }
}

/// The outlier region for the concentration experiment at tolerance `ε`:
/// normalized distances outside `[1/√6 - ε, 1/√6 + ε]`, expressed on the
/// `d²` axis as `d² > A + B√6` or `d² < A - B√6` with `A = μ(1+6ε²)`,
/// `B = 2με`. The lower branch exists only while `6ε² < 1`.
#[derive(Debug, Clone)]
pub struct OutlierBand {
    center: Rational,
    radical: Rational,
    two_sided: bool,
    hi_cut: i128,
    lo_cut: Option<i128>,
}

impl OutlierBand {
    pub fn new(bx: &BoxSpec, eps: &Rational) -> Result<Self, Error> {
        if !eps.is_positive() {
            return Err(Error::NonPositiveEpsilon);
        }
        let mu = moments::mu(bx);
        let six_eps_sq = Rational::from_integer(6.into()) * eps * eps;
        let one = Rational::from_integer(1.into());
        let center = &mu * (&one + &six_eps_sq);
        let radical = Rational::from_integer(2.into()) * &mu * eps;
        let two_sided = six_eps_sq < one;

        // integer cutoffs on the d² axis; d² is always an integer here
        let alpha = center.numer() * radical.denom();
        let beta = radical.numer() * center.denom();
        let delta = center.denom() * radical.denom();
        let hi_floor = floor_linear_sqrt6(&alpha, &beta, &delta);
        let hi_cut = (hi_floor + BigInt::from(1)).to_i128().unwrap_or(i128::MAX);
        let lo_cut = if two_sided {
            let lo_floor = floor_linear_sqrt6(&alpha, &(-&beta), &delta);
            if lo_floor.is_negative() {
                None
            } else {
                Some(lo_floor.to_i128().expect("below 3μ, fits i128"))
            }
        } else {
            None
        };
        Ok(Self {
            center,
            radical,
            two_sided,
            hi_cut,
            lo_cut,
        })
    }

    /// `A = μ(1+6ε²)`.
    pub fn center(&self) -> &Rational {
        &self.center
    }

    /// `B = 2με`.
    pub fn radical_coeff(&self) -> &Rational {
        &self.radical
    }

    pub fn two_sided(&self) -> bool {
        self.two_sided
    }

    /// Exact classification of an arbitrary rational `d²`.
    pub fn is_outlier_sq(&self, d_sq: &Rational) -> bool {
        if cmp_with_sqrt6(d_sq, &self.center, &self.radical) == core::cmp::Ordering::Greater {
            return true;
        }
        self.two_sided
            && cmp_with_sqrt6(d_sq, &self.center, &(-&self.radical)) == core::cmp::Ordering::Less
    }

    /// Classification of an integer `d²` by precomputed cutoffs; agrees with
    /// [`OutlierBand::is_outlier_sq`] on integers.
    pub fn is_outlier_int(&self, d_sq: i128) -> bool {
        d_sq >= self.hi_cut || matches!(self.lo_cut, Some(lo) if d_sq <= lo)
    }
}

/// How a concentration experiment covered the pair space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConcentrationMode {
    Exhaustive,
    MonteCarlo,
}

/// Outcome of a concentration experiment over a box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcentrationReport {
    pub box_spec: BoxSpec,
    pub epsilon: Rational,
    pub mode: ConcentrationMode,
    /// Monte Carlo sample count; `None` for exhaustive runs.
    pub samples: Option<u64>,
    /// Monte Carlo seed; `None` for exhaustive runs.
    pub seed: Option<u64>,
    pub outlier_count: BigUint,
    /// Ordered pairs inspected: the full pair count or the sample count.
    pub pair_count: BigUint,
    /// Exact mean of raw `d²` over the inspected pairs.
    pub mean_dist_sq: Rational,
    /// The bound `R/(6ε²μ²)` the observed fraction is measured against.
    pub chebyshev_bound: Rational,
}

impl ConcentrationReport {
    /// Fraction of inspected pairs with normalized distance outside
    /// `[1/√6 - ε, 1/√6 + ε]`.
    pub fn outlier_fraction(&self) -> Rational {
        Rational::new(
            self.outlier_count.clone().into(),
            self.pair_count.clone().into(),
        )
    }

    pub fn outlier_fraction_f64(&self) -> f64 {
        rational_to_f64(&self.outlier_fraction())
    }

    /// Exact mean of the squared normalized distance, `mean(d²)/(4N²p³)`.
    pub fn mean_norm_sq(&self) -> Rational {
        let p = BigInt::from(self.box_spec.p());
        let n = BigInt::from(self.box_spec.radius());
        &self.mean_dist_sq / Rational::from_integer(4 * &n * &n * &p * &p * &p)
    }

    pub fn mean_norm_sq_f64(&self) -> f64 {
        rational_to_f64(&self.mean_norm_sq())
    }

    pub fn chebyshev_bound_f64(&self) -> f64 {
        rational_to_f64(&self.chebyshev_bound)
    }
}

/// Classify every ordered pair of box points. Exact and deterministic;
/// guarded by `budget` like the other enumerations.
pub fn concentration_exhaustive(
    bx: &BoxSpec,
    eps: &Rational,
    budget: u64,
) -> Result<ConcentrationReport, Error> {
    let band = OutlierBand::new(bx, eps)?;
    ensure_budget(bx, budget)?;
    let p = bx.p();
    let mut outliers = 0u64;
    let mut d2_sum = ChunkedSum::default();
    for_each_difference(bx, &mut |sum, sum_sq, w| {
        let d2 = dist_sq_int(p, sum, sum_sq);
        if band.is_outlier_int(d2) {
            outliers += w;
        }
        d2_sum.add(d2 * w as i128);
    });
    let pairs = pair_count(bx);
    let mean_dist_sq = Rational::new(d2_sum.total(), pairs.clone().into());
    let chebyshev_bound = moments::concentration_bound(bx, eps)?;
    Ok(ConcentrationReport {
        box_spec: *bx,
        epsilon: eps.clone(),
        mode: ConcentrationMode::Exhaustive,
        samples: None,
        seed: None,
        outlier_count: BigUint::from(outliers),
        pair_count: pairs,
        mean_dist_sq,
        chebyshev_bound,
    })
}

/// Partial Monte Carlo tally. Merging chunks is associative and commutative,
/// so any split of the index range gives the same final statistics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct McChunk {
    pub samples: u64,
    pub outliers: u64,
    pub dist_sq_sum: BigInt,
}

impl McChunk {
    pub fn merge(self, other: McChunk) -> McChunk {
        McChunk {
            samples: self.samples + other.samples,
            outliers: self.outliers + other.outliers,
            dist_sq_sum: self.dist_sq_sum + other.dist_sq_sum,
        }
    }
}

/// Classify the sample pairs with indices in `range`.
pub fn monte_carlo_chunk(sampler: &PairSampler, band: &OutlierBand, range: Range<u64>) -> McChunk {
    let mut outliers = 0u64;
    let mut sum = ChunkedSum::default();
    let samples = range.end - range.start;
    for index in range {
        let (a, b) = sampler.coeff_pair(index);
        let mut s = 0i128;
        let mut s2 = 0i128;
        for (x, y) in a.iter().zip(&b) {
            let d = (*x - *y) as i128;
            s += d;
            s2 += d * d;
        }
        let d2 = dist_sq_int(sampler.p, s, s2);
        if band.is_outlier_int(d2) {
            outliers += 1;
        }
        sum.add(d2);
    }
    McChunk {
        samples,
        outliers,
        dist_sq_sum: sum.total(),
    }
}

/// Assemble a Monte Carlo report from a complete tally.
pub fn finalize_monte_carlo(
    bx: &BoxSpec,
    eps: &Rational,
    seed: u64,
    tally: McChunk,
) -> Result<ConcentrationReport, Error> {
    if tally.samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let mean_dist_sq = Rational::new(tally.dist_sq_sum, BigInt::from(tally.samples));
    let chebyshev_bound = moments::concentration_bound(bx, eps)?;
    Ok(ConcentrationReport {
        box_spec: *bx,
        epsilon: eps.clone(),
        mode: ConcentrationMode::MonteCarlo,
        samples: Some(tally.samples),
        seed: Some(seed),
        outlier_count: BigUint::from(tally.outliers),
        pair_count: BigUint::from(tally.samples),
        mean_dist_sq,
        chebyshev_bound,
    })
}

/// Serial Monte Carlo concentration experiment on `samples` seeded pairs.
pub fn monte_carlo_concentration(
    bx: &BoxSpec,
    eps: &Rational,
    samples: u64,
    seed: u64,
) -> Result<ConcentrationReport, Error> {
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let band = OutlierBand::new(bx, eps)?;
    let sampler = PairSampler::new(bx, seed);
    let tally = monte_carlo_chunk(&sampler, &band, 0..samples);
    finalize_monte_carlo(bx, eps, seed, tally)
}

/// Run a concentration experiment in the requested mode. Exhaustive runs
/// ignore `samples` and `seed`; Monte Carlo runs require `samples` and
/// default the seed to 0.
pub fn concentration_experiment(
    bx: &BoxSpec,
    eps: &Rational,
    mode: ConcentrationMode,
    samples: Option<u64>,
    seed: Option<u64>,
    budget: u64,
) -> Result<ConcentrationReport, Error> {
    match mode {
        ConcentrationMode::Exhaustive => concentration_exhaustive(bx, eps, budget),
        ConcentrationMode::MonteCarlo => {
            let samples = samples.ok_or(Error::ZeroSamples)?;
            monte_carlo_concentration(bx, eps, samples, seed.unwrap_or(0))
        }
    }
}
