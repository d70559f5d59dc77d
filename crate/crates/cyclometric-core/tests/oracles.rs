//! Cross-checks of the closed forms and enumeration fast paths against a
//! deliberately naive reference: a literal double loop over all ordered
//! pairs of box points, computing each squared distance from the defining
//! trace sum. The reference shares no code with the library's enumeration
//! (no difference-vector folding, no multiplicity counting, no closed-form
//! shortcuts).

use num_bigint::BigInt;
use num_rational::BigRational;

use cyclometric_core::empirical::{
    brute_diameter_sq, brute_double_square_sum, brute_moment, brute_r_moment,
    concentration_exhaustive, monte_carlo_concentration, OutlierBand, DEFAULT_EVAL_BUDGET,
};
use cyclometric_core::moments::{
    concentration_bound, double_square_sum_normalized, m2_closed, m4_closed, mu, power_sum,
    r_moment_closed,
};
use cyclometric_core::BoxSpec;

fn rat(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Iterate all points of `[-n, n]^dim` as coefficient vectors.
fn box_points(dim: usize, n: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::new();
        for stem in &out {
            for c in -n..=n {
                let mut v = stem.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// `d²` of a coefficient difference straight from the definition: the sum of
/// `Tr(δ·ω^j)²` with `Tr(δ·ω^j) = -Σδᵢ + p·δ_(p-j)`.
fn dist_sq_by_trace_sum(p: i128, delta: &[i64]) -> i128 {
    let total: i128 = delta.iter().map(|&x| x as i128).sum();
    let mut acc = 0i128;
    for j in 1..p {
        let witness = delta[(p - j - 1) as usize] as i128;
        let t = -total + p * witness;
        acc += t * t;
    }
    acc
}

struct PairStats {
    sum_d2: i128,
    sum_d4: i128,
    sum_sqsq: i128,
    sum_centered_sq_times9: i128,
    max_d2: i128,
    pairs: i128,
}

/// The literal reference: walk every ordered pair.
fn pair_walk(p: u64, n: u64) -> PairStats {
    let dim = (p - 1) as usize;
    let pts = box_points(dim, n as i64);
    let pi = p as i128;
    let three_mu = 2 * pi * pi * pi * (n as i128) * (n as i128);
    let mut st = PairStats {
        sum_d2: 0,
        sum_d4: 0,
        sum_sqsq: 0,
        sum_centered_sq_times9: 0,
        max_d2: 0,
        pairs: 0,
    };
    for a in &pts {
        for b in &pts {
            let delta: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            let d2 = dist_sq_by_trace_sum(pi, &delta);
            st.sum_d2 += d2;
            st.sum_d4 += d2 * d2;
            // the double sum Σ_{i,j} δᵢ²δⱼ², expanded literally
            let mut sqsq = 0i128;
            for &di in &delta {
                for &dj in &delta {
                    sqsq += (di as i128) * (di as i128) * (dj as i128) * (dj as i128);
                }
            }
            st.sum_sqsq += sqsq;
            let c = 3 * d2 - three_mu;
            st.sum_centered_sq_times9 += c * c;
            st.max_d2 = st.max_d2.max(d2);
            st.pairs += 1;
        }
    }
    st
}

#[test]
fn closed_forms_match_literal_pair_walk() {
    for (p, n) in [(3u64, 1u64), (3, 2), (5, 1)] {
        let bx = BoxSpec::new(p, n).unwrap();
        let st = pair_walk(p, n);

        assert_eq!(m2_closed(&bx), rat(st.sum_d2, st.pairs), "m2 at ({p},{n})");
        assert_eq!(m4_closed(&bx), rat(st.sum_d4, st.pairs), "m4 at ({p},{n})");
        assert_eq!(
            double_square_sum_normalized(&bx),
            rat(st.sum_sqsq, st.pairs),
            "double square sum at ({p},{n})"
        );
        assert_eq!(
            r_moment_closed(&bx),
            rat(st.sum_centered_sq_times9, 9 * st.pairs),
            "centered moment at ({p},{n})"
        );
        assert_eq!(bx.diameter_sq(), rat(st.max_d2, 1), "diameter at ({p},{n})");
    }
}

#[test]
fn enumeration_matches_literal_pair_walk() {
    for (p, n) in [(3u64, 1u64), (3, 2), (5, 1)] {
        let bx = BoxSpec::new(p, n).unwrap();
        let st = pair_walk(p, n);
        let budget = DEFAULT_EVAL_BUDGET;

        assert_eq!(
            brute_moment(&bx, 2, budget).unwrap(),
            rat(st.sum_d2, st.pairs)
        );
        assert_eq!(
            brute_moment(&bx, 4, budget).unwrap(),
            rat(st.sum_d4, st.pairs)
        );
        assert_eq!(
            brute_double_square_sum(&bx, budget).unwrap(),
            rat(st.sum_sqsq, st.pairs)
        );
        assert_eq!(
            brute_r_moment(&bx, budget).unwrap(),
            rat(st.sum_centered_sq_times9, 9 * st.pairs)
        );
        assert_eq!(brute_diameter_sq(&bx, budget).unwrap(), rat(st.max_d2, 1));
    }
}

#[test]
fn frozen_moment_values() {
    let cases: [(u64, u64, BigRational, BigRational, BigRational); 5] = [
        (3, 1, rat(40, 3), rat(1208, 3), rat(104, 9)),
        (3, 2, rat(40, 1), rat(3704, 1), rat(536, 5)),
        (5, 1, rat(304, 3), rat(45040, 3), rat(112, 3)),
        (5, 2, rat(304, 1), rat(687152, 5), rat(1712, 5)),
        (7, 1, rat(328, 1), rat(136824, 1), rat(232, 3)),
    ];
    for (p, n, m2, m4, dss) in cases {
        let bx = BoxSpec::new(p, n).unwrap();
        assert_eq!(m2_closed(&bx), m2, "m2 at ({p},{n})");
        assert_eq!(m4_closed(&bx), m4, "m4 at ({p},{n})");
        assert_eq!(double_square_sum_normalized(&bx), dss, "dss at ({p},{n})");
    }
    assert_eq!(mu(&BoxSpec::new(3, 1).unwrap()), rat(18, 1));
    assert_eq!(r_moment_closed(&BoxSpec::new(3, 1).unwrap()), rat(740, 3));
    assert_eq!(
        concentration_bound(&BoxSpec::new(3, 1).unwrap(), &rat(1, 1)).unwrap(),
        rat(185, 1458)
    );
}

#[test]
fn raw_double_square_sum_is_normalized_times_pair_count() {
    // the raw double sum over pairs versus its mean form
    for (p, n) in [(3u64, 1u64), (5, 1)] {
        let bx = BoxSpec::new(p, n).unwrap();
        let st = pair_walk(p, n);
        let width = 2 * (n as i128) + 1;
        let pair_count = width.pow(2 * (p as u32 - 1));
        assert_eq!(st.pairs, pair_count);
        assert_eq!(
            double_square_sum_normalized(&bx) * rat(pair_count, 1),
            rat(st.sum_sqsq, 1),
            "raw reading at ({p},{n})"
        );
    }
}

#[test]
fn power_sums_against_direct_summation() {
    for n in 0u64..=25 {
        for r in 0u32..=4 {
            let direct: i128 = (-(n as i128)..=n as i128).map(|x| x.pow(r)).sum();
            assert_eq!(power_sum(r, n).unwrap(), rat(direct, 1), "S_{r}({n})");
        }
    }
}

#[test]
fn exhaustive_outliers_match_per_pair_classification() {
    let bx = BoxSpec::new(3, 1).unwrap();
    let eps = rat(3, 10);
    let band = OutlierBand::new(&bx, &eps).unwrap();
    let pts = box_points(2, 1);
    let mut outliers = 0u64;
    let mut pairs = 0u64;
    for a in &pts {
        for b in &pts {
            let delta: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            let d2 = dist_sq_by_trace_sum(3, &delta);
            if band.is_outlier_sq(&rat(d2, 1)) {
                outliers += 1;
            }
            pairs += 1;
        }
    }
    assert_eq!(pairs, 81);
    assert_eq!(outliers, 11);

    let rep = concentration_exhaustive(&bx, &eps, DEFAULT_EVAL_BUDGET).unwrap();
    assert_eq!(rep.outlier_fraction(), rat(11, 81));
}

#[test]
fn monte_carlo_mean_tracks_second_moment() {
    let bx = BoxSpec::new(3, 1).unwrap();
    let eps = rat(3, 10);
    let rep = monte_carlo_concentration(&bx, &eps, 4000, 1).unwrap();
    let m2 = m2_closed(&bx);
    let rel = (rep.mean_dist_sq.clone() - &m2) / &m2;
    let abs = if rel < rat(0, 1) { -rel } else { rel };
    assert!(abs < rat(1, 10), "relative error {abs}");
}
