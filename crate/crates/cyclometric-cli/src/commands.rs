//! One function per subcommand, each returning the finished report text.
//!
//! JSON reports are pretty-printed with a fixed field order and a trailing
//! newline; CSV reports are a header line plus one data row. Every rational
//! is exact (`"num/den"` or a bare integer); the few floating-point fields
//! are correctly rounded from the exact values, so identical invocations
//! always produce byte-identical output.

use serde::Serialize;

use cyclometric_core::empirical::{
    brute_diameter_sq, brute_moment, brute_r_moment, concentration_exhaustive, ConcentrationMode,
    ConcentrationReport,
};
use cyclometric_core::galois::{krasner_check, primitive_element_search, subfield_profile};
use cyclometric_core::metric::{
    dist, dist_sq, euclidean_norm_sq, norm_sq, normalized_dist, trace, trace_vector,
};
use cyclometric_core::moments;
use cyclometric_core::round::sqrt_rational_to_f64;
use cyclometric_core::{BoxSpec, CycloElement, Normalization, Rational};

use crate::cli::{Format, WhatArg};
use crate::error::CliError;
use crate::parallel::monte_carlo_concentration_parallel;
use crate::parse::rational_to_string;
use crate::wire::{element_to_wire, ElementWire};

fn to_json<T: Serialize>(report: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    Ok(text)
}

#[derive(Serialize)]
struct NormReport {
    p: u64,
    norm_sq: String,
    trace: String,
    trace_vector: Vec<String>,
    euclidean_norm_sq: String,
}

/// `norm`: squared trace norm, trace, full trace vector, and the plain
/// coefficient-space squared norm of one element.
pub fn norm_command(element: &CycloElement) -> Result<String, CliError> {
    let tv = trace_vector(element);
    to_json(&NormReport {
        p: element.p(),
        norm_sq: rational_to_string(&norm_sq(element)),
        trace: rational_to_string(&trace(element)),
        trace_vector: tv.entries().iter().map(rational_to_string).collect(),
        euclidean_norm_sq: rational_to_string(&euclidean_norm_sq(element)),
    })
}

#[derive(Serialize)]
struct DistanceReport {
    p: u64,
    dist_sq: String,
    dist: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized_diameter: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized_p32: Option<f64>,
}

/// `distance`: exact squared distance, rounded distance, and (when a box
/// radius is given) both normalized variants.
pub fn distance_command(
    a: &CycloElement,
    b: &CycloElement,
    radius: Option<u64>,
) -> Result<String, CliError> {
    let d2 = dist_sq(a, b)?;
    let (normalized_diameter, normalized_p32) = match radius {
        None => (None, None),
        Some(n) => {
            let bx = BoxSpec::new(a.p(), n)?;
            (
                Some(normalized_dist(a, b, &bx, Normalization::Diameter)?),
                Some(normalized_dist(a, b, &bx, Normalization::P32)?),
            )
        }
    };
    to_json(&DistanceReport {
        p: a.p(),
        dist_sq: rational_to_string(&d2),
        dist: dist(a, b)?,
        normalized_diameter,
        normalized_p32,
    })
}

#[derive(Serialize)]
struct GaloisReport {
    p: u64,
    degree: u64,
    stabilizer: Vec<u64>,
    fixed_by_full_group: bool,
}

/// `galois`: degree of `Q(element)` over `Q` and the automorphism indices
/// fixing the element.
pub fn galois_command(element: &CycloElement) -> Result<String, CliError> {
    let profile = subfield_profile(element);
    to_json(&GaloisReport {
        p: profile.p(),
        degree: profile.degree(),
        stabilizer: profile.stabilizer().to_vec(),
        fixed_by_full_group: profile.degree() == 1,
    })
}

#[derive(Serialize)]
struct KrasnerReport {
    p: u64,
    dist_sq: String,
    min_conjugate_dist_sq: Option<String>,
    margin: Option<String>,
    hypothesis_holds: bool,
    conclusion_holds: bool,
}

/// `krasner`: closeness-criterion report for a pair. `min_conjugate_dist_sq`
/// and `margin` are `null` when the first element is rational (no other
/// conjugates to compare against).
pub fn krasner_command(a: &CycloElement, b: &CycloElement) -> Result<String, CliError> {
    let check = krasner_check(a, b)?;
    to_json(&KrasnerReport {
        p: a.p(),
        dist_sq: rational_to_string(&check.dist_sq),
        min_conjugate_dist_sq: check.min_conjugate_dist_sq.as_ref().map(rational_to_string),
        margin: check.margin.as_ref().map(rational_to_string),
        hypothesis_holds: check.hypothesis_holds,
        conclusion_holds: check.conclusion_holds,
    })
}

#[derive(Serialize)]
struct PrimitiveReport {
    p: u64,
    n: u64,
    degree: u64,
    gamma: ElementWire,
}

/// `primitive`: smallest `n` with `a + b/n` generating `Q(a, b)`, plus the
/// witness element itself.
pub fn primitive_command(
    a: &CycloElement,
    b: &CycloElement,
    max_n: u64,
) -> Result<String, CliError> {
    let found = primitive_element_search(a, b, max_n)?;
    to_json(&PrimitiveReport {
        p: a.p(),
        n: found.n,
        degree: found.degree,
        gamma: element_to_wire(&found.gamma),
    })
}

#[derive(Serialize)]
struct MomentsReport {
    p: u64,
    n: u64,
    m2: String,
    m4: String,
    double_square_sum: String,
    mu: String,
    r: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    concentration_bound: Option<String>,
}

/// `moments`: every closed-form moment for a box, and the concentration
/// bound when a tolerance is supplied.
pub fn moments_command(
    bx: &BoxSpec,
    eps: Option<&Rational>,
    format: Format,
) -> Result<String, CliError> {
    let bound = match eps {
        None => None,
        Some(e) => Some(moments::concentration_bound(bx, e)?),
    };
    let report = MomentsReport {
        p: bx.p(),
        n: bx.radius(),
        m2: rational_to_string(&moments::m2_closed(bx)),
        m4: rational_to_string(&moments::m4_closed(bx)),
        double_square_sum: rational_to_string(&moments::double_square_sum_normalized(bx)),
        mu: rational_to_string(&moments::mu(bx)),
        r: rational_to_string(&moments::r_moment_closed(bx)),
        eps: eps.map(rational_to_string),
        concentration_bound: bound.as_ref().map(rational_to_string),
    };
    match format {
        Format::Json => to_json(&report),
        Format::Csv => Ok(format!(
            "p,N,m2,m4,double_square_sum,mu,r,eps,concentration_bound\n{},{},{},{},{},{},{},{},{}\n",
            report.p,
            report.n,
            report.m2,
            report.m4,
            report.double_square_sum,
            report.mu,
            report.r,
            report.eps.as_deref().unwrap_or(""),
            report.concentration_bound.as_deref().unwrap_or(""),
        )),
    }
}

#[derive(Serialize)]
struct BruteforceReport {
    p: u64,
    n: u64,
    what: String,
    value: String,
}

/// `bruteforce`: exhaustive enumeration of one statistic over all ordered
/// pairs of box points, under the evaluation budget.
pub fn bruteforce_command(bx: &BoxSpec, what: WhatArg, budget: u64) -> Result<String, CliError> {
    let value = match what {
        WhatArg::M2 => brute_moment(bx, 2, budget)?,
        WhatArg::M4 => brute_moment(bx, 4, budget)?,
        WhatArg::R => brute_r_moment(bx, budget)?,
        WhatArg::Diameter => brute_diameter_sq(bx, budget)?,
    };
    to_json(&BruteforceReport {
        p: bx.p(),
        n: bx.radius(),
        what: what.name().to_string(),
        value: rational_to_string(&value),
    })
}

#[derive(Serialize)]
struct ConcentrateJson {
    p: u64,
    n: u64,
    eps: String,
    mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    outlier_count: String,
    pair_count: String,
    outlier_fraction: String,
    mean_normsq: String,
    chebyshev_bound: String,
    outlier_fraction_f64: f64,
    mean_normsq_f64: f64,
    chebyshev_bound_f64: f64,
    typical_value: f64,
}

fn mode_name(mode: ConcentrationMode) -> &'static str {
    match mode {
        ConcentrationMode::Exhaustive => "exhaustive",
        ConcentrationMode::MonteCarlo => "mc",
    }
}

fn render_concentration(report: &ConcentrationReport, format: Format) -> Result<String, CliError> {
    let fraction = rational_to_string(&report.outlier_fraction());
    let mean_normsq = rational_to_string(&report.mean_norm_sq());
    let bound = rational_to_string(&report.chebyshev_bound);
    match format {
        Format::Json => to_json(&ConcentrateJson {
            p: report.box_spec.p(),
            n: report.box_spec.radius(),
            eps: rational_to_string(&report.epsilon),
            mode: mode_name(report.mode).to_string(),
            samples: report.samples,
            seed: report.seed,
            outlier_count: report.outlier_count.to_string(),
            pair_count: report.pair_count.to_string(),
            outlier_fraction: fraction,
            mean_normsq,
            chebyshev_bound: bound,
            outlier_fraction_f64: report.outlier_fraction_f64(),
            mean_normsq_f64: report.mean_norm_sq_f64(),
            chebyshev_bound_f64: report.chebyshev_bound_f64(),
            typical_value: sqrt_rational_to_f64(&Rational::new(1.into(), 6.into())),
        }),
        Format::Csv => Ok(format!(
            "p,N,eps,mode,samples,seed,outlier_fraction,mean_normsq,chebyshev_bound\n{},{},{},{},{},{},{},{},{}\n",
            report.box_spec.p(),
            report.box_spec.radius(),
            rational_to_string(&report.epsilon),
            mode_name(report.mode),
            report.samples.map(|s| s.to_string()).unwrap_or_default(),
            report.seed.map(|s| s.to_string()).unwrap_or_default(),
            fraction,
            mean_normsq,
            bound,
        )),
    }
}

/// `concentrate --mode exhaustive`: classify every ordered pair of box
/// points against the outlier band.
pub fn concentrate_exhaustive_command(
    bx: &BoxSpec,
    eps: &Rational,
    budget: u64,
    format: Format,
) -> Result<String, CliError> {
    let report = concentration_exhaustive(bx, eps, budget)?;
    render_concentration(&report, format)
}

/// `concentrate --mode mc`: seeded Monte Carlo estimate over sample pairs,
/// computed in parallel (bit-identical to the serial loop).
pub fn concentrate_mc_command(
    bx: &BoxSpec,
    eps: &Rational,
    samples: u64,
    seed: u64,
    format: Format,
) -> Result<String, CliError> {
    let report = monte_carlo_concentration_parallel(bx, eps, samples, seed)?;
    render_concentration(&report, format)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn element(p: u64, coeffs: &[(i64, i64)]) -> CycloElement {
        CycloElement::new(p, coeffs.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn distance_report_matches_reference_pair() {
        let omega = element(3, &[(1, 1), (0, 1)]);
        let minus_half = element(3, &[(1, 2), (1, 2)]);
        let text = distance_command(&omega, &minus_half, None).unwrap();
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json["dist_sq"], "9/2");
        assert_eq!(json["dist"], 2.1213203435596424);
        assert!(json.get("normalized_diameter").is_none());
        // Normalized variants need integer box points: ω vs -ω in the radius-1 box.
        // d² = 20 and the squared diameter is 72, so the ratio is √(5/18) = √10/6.
        let minus_omega = element(3, &[(-1, 1), (0, 1)]);
        let with_box = distance_command(&omega, &minus_omega, Some(1)).unwrap();
        let json: serde_json::Value = serde_json::from_str(&with_box).unwrap();
        assert_eq!(json["normalized_diameter"], 0.5270462766947299);
        assert!(json.get("normalized_p32").is_some());
        // And a non-integer point is rejected with a validation error.
        assert!(distance_command(&omega, &minus_half, Some(1)).is_err());
    }

    #[test]
    fn moments_json_and_csv_agree_on_values() {
        let bx = BoxSpec::new(3, 1).unwrap();
        let text = moments_command(&bx, None, Format::Json).unwrap();
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json["m2"], "40/3");
        assert_eq!(json["m4"], "1208/3");
        assert_eq!(json["mu"], "18");
        assert_eq!(json["r"], "740/3");
        assert!(json.get("eps").is_none());
        let csv = moments_command(&bx, Some(&rat(3, 10)), Format::Csv).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "p,N,m2,m4,double_square_sum,mu,r,eps,concentration_bound"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("3,1,40/3,1208/3,104/9,18,740/3,3/10,"));
    }

    #[test]
    fn exhaustive_concentration_report_is_exact() {
        let bx = BoxSpec::new(3, 1).unwrap();
        let text =
            concentrate_exhaustive_command(&bx, &rat(3, 10), 1_000_000, Format::Json).unwrap();
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json["outlier_fraction"], "11/81");
        assert_eq!(json["mode"], "exhaustive");
        assert_eq!(json["pair_count"], "81");
        assert!(json.get("samples").is_none());
        let csv = concentrate_exhaustive_command(&bx, &rat(3, 10), 1_000_000, Format::Csv).unwrap();
        let row = csv.lines().nth(1).unwrap();
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[0], "3");
        assert_eq!(cells[3], "exhaustive");
        assert_eq!(cells[4], "");
        assert_eq!(cells[5], "");
        assert_eq!(cells[6], "11/81");
    }

    #[test]
    fn mc_concentration_is_reproducible_text() {
        let bx = BoxSpec::new(5, 2).unwrap();
        let a = concentrate_mc_command(&bx, &rat(1, 10), 2000, 7, Format::Json).unwrap();
        let b = concentrate_mc_command(&bx, &rat(1, 10), 2000, 7, Format::Json).unwrap();
        assert_eq!(a, b);
        let json: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(json["mode"], "mc");
        assert_eq!(json["samples"], 2000);
        assert_eq!(json["seed"], 7);
    }

    #[test]
    fn primitive_report_embeds_round_trippable_gamma() {
        let a = element(5, &[(1, 1), (0, 1), (0, 1), (0, 1)]);
        let b = element(5, &[(0, 1), (1, 1), (0, 1), (0, 1)]);
        let text = primitive_command(&a, &b, 16).unwrap();
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        let gamma: ElementWire = serde_json::from_value(json["gamma"].clone()).unwrap();
        let rebuilt = crate::wire::wire_to_element(&gamma).unwrap();
        let found = primitive_element_search(&a, &b, 16).unwrap();
        assert_eq!(rebuilt, found.gamma);
        assert_eq!(json["degree"], 4);
    }

    #[test]
    fn bruteforce_diameter_matches_closed_form() {
        let bx = BoxSpec::new(3, 1).unwrap();
        let text = bruteforce_command(&bx, WhatArg::Diameter, 1_000_000).unwrap();
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json["value"], "72");
        assert_eq!(json["what"], "diameter");
    }
}
