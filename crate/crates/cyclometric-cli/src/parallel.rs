//! Work-stealing parallel driver for the Monte Carlo concentration experiment.
//!
//! Sample index `i` always draws from stream `i` of the seeded generator, so
//! the estimate depends only on `(box, eps, samples, seed)` — never on thread
//! count or scheduling. Chunks are tallied independently and merged with the
//! associative, commutative [`McChunk::merge`], which makes the parallel
//! reduction bit-identical to the serial loop.

use rayon::prelude::*;

use cyclometric_core::empirical::{
    finalize_monte_carlo, monte_carlo_chunk, ConcentrationReport, McChunk, OutlierBand, PairSampler,
};
use cyclometric_core::{BoxSpec, Error, Rational};

/// Samples per rayon task: small enough to load-balance a 16-way pool on a
/// 10^5-sample run, large enough that task overhead is noise.
const CHUNK_SAMPLES: u64 = 4096;

/// Parallel Monte Carlo estimate of the outlier fraction and mean normalized
/// squared distance. Produces exactly the same report as
/// [`cyclometric_core::empirical::monte_carlo_concentration`] with the same
/// arguments.
pub fn monte_carlo_concentration_parallel(
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
    let chunks = samples.div_ceil(CHUNK_SAMPLES);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK_SAMPLES;
            let end = samples.min(start + CHUNK_SAMPLES);
            monte_carlo_chunk(&sampler, &band, start..end)
        })
        .reduce(McChunk::default, McChunk::merge);
    finalize_monte_carlo(bx, eps, seed, tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cyclometric_core::empirical::monte_carlo_concentration;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parallel_matches_serial_exactly() {
        for (p, n, eps, samples, seed) in [
            (3, 1, rat(3, 10), 1000u64, 7u64),
            (5, 2, rat(1, 4), 2500, 42),
            (11, 3, rat(1, 20), 5000, 123),
        ] {
            let bx = BoxSpec::new(p, n).unwrap();
            let serial = monte_carlo_concentration(&bx, &eps, samples, seed).unwrap();
            let parallel = monte_carlo_concentration_parallel(&bx, &eps, samples, seed).unwrap();
            assert_eq!(parallel, serial);
        }
    }

    #[test]
    fn zero_samples_is_rejected() {
        let bx = BoxSpec::new(3, 1).unwrap();
        assert!(matches!(
            monte_carlo_concentration_parallel(&bx, &rat(1, 10), 0, 0),
            Err(Error::ZeroSamples)
        ));
    }

    #[test]
    fn uneven_chunk_boundaries_change_nothing() {
        // 4097 samples spans two chunks with a one-sample tail.
        let bx = BoxSpec::new(7, 2).unwrap();
        let eps = rat(1, 10);
        let serial = monte_carlo_concentration(&bx, &eps, CHUNK_SAMPLES + 1, 99).unwrap();
        let parallel =
            monte_carlo_concentration_parallel(&bx, &eps, CHUNK_SAMPLES + 1, 99).unwrap();
        assert_eq!(parallel, serial);
    }
}
