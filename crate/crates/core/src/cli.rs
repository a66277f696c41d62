//! Report builders behind the `jordan-verify` subcommands.
//!
//! Every subcommand produces a [`VerificationReport`], so all of them share one JSON
//! layout and one exit-code rule.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{AlgebraDescriptor, Element, Tolerances, C64};
use crate::error::{JordanError, Result};
use crate::exceptional::glennie_violation_search;
use crate::projections::{is_orthogonal, require_projection};
use crate::report::{CheckRecord, VerificationReport};
use crate::rng::substream;
use crate::sampling;
use crate::spheres::orthogonality_by_corner_spheres;
use crate::spin;
use crate::suites::SQRT2_TRIALS;
use crate::tingley::{
    extend_isometry, perturb, random_jordan_automorphism, sup_distance, synthesize_delta,
    Perturbation,
};
use crate::two_proj::{build_representation, orthogonality_by_subprojections};

/// A coordinate in projection input: a real number or a `[re, im]` pair.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
enum Coordinate {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Coordinate> for C64 {
    fn from(c: Coordinate) -> Self {
        match c {
            Coordinate::Real(re) => C64::new(re, 0.0),
            Coordinate::Complex([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairInput {
    p: Vec<Coordinate>,
    q: Vec<Coordinate>,
}

/// Parses `{"p": [...], "q": [...]}` into two projections of `algebra`.
pub fn parse_projection_pair(
    algebra: &AlgebraDescriptor,
    text: &str,
    tol: &Tolerances,
) -> Result<(Element, Element)> {
    let input: PairInput = serde_json::from_str(text)
        .map_err(|e| JordanError::Precondition(format!("projection input: {e}")))?;
    let build = |coords: Vec<Coordinate>| -> Result<Element> {
        let e = Element::new(algebra.clone(), coords.into_iter().map(C64::from).collect())?;
        require_projection(&e, tol)?;
        Ok(e.hermitian_part())
    };
    Ok((build(input.p)?, build(input.q)?))
}

/// Two random projections of `algebra`, drawn from the seed.
pub fn random_projection_pair(algebra: &AlgebraDescriptor, seed: u64) -> (Element, Element) {
    let mut rng = substream(seed, 0);
    (
        sampling::random_projection(algebra, &mut rng),
        sampling::random_projection(algebra, &mut rng),
    )
}

struct Builder {
    report: VerificationReport,
    seed: u64,
}

impl Builder {
    fn new(command: &str, algebra: &str, seed: u64, tol: Tolerances, samples: usize) -> Self {
        Self {
            report: VerificationReport::new(command, algebra, seed, tol, samples),
            seed,
        }
    }

    fn stream(&self) -> crate::rng::StreamRng {
        substream(self.seed, self.report.checks.len() as u64 + 1)
    }

    fn push(&mut self, name: &str, anchor: &str, outcome: Result<(bool, Option<f64>, Value)>) {
        let (passed, residual, detail) =
            outcome.unwrap_or_else(|e| (false, None, json!({ "error": e.to_string() })));
        self.report.push(CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            passed,
            residual,
            detail,
        });
    }
}

/// Structure of the subalgebra generated by two projections, plus both
/// orthogonality characterizations.
pub fn two_proj_report(
    p: &Element,
    q: &Element,
    seed: u64,
    tol: &Tolerances,
    samples: usize,
) -> Result<VerificationReport> {
    crate::algebra::check_same(p, q)?;
    let mut b = Builder::new("two-proj", &p.algebra().to_string(), seed, *tol, samples);

    let mut rng = b.stream();
    let outcome = build_representation(p, q, samples, &mut rng, tol).map(|rep| {
        let passed = rep.residuals.worst() <= tol.residual_tol
            && rep.residuals.generated_dimension == rep.residuals.expected_dimension;
        (
            passed,
            Some(rep.residuals.worst()),
            json!({
                "interior": rep.invariants.interior,
                "corners": rep.invariants.corners,
                "blocks": rep.blocks,
                "route": rep.route,
                "residuals": rep.residuals,
            }),
        )
    });
    b.push(
        "representation",
        "two projections generate a sum of 2×2 blocks and scalars",
        outcome,
    );

    let nonzero = p.residual_norm() > tol.eq_tol && q.residual_norm() > tol.eq_tol;
    if nonzero {
        let mut rng = b.stream();
        let outcome = (|| {
            let truth = is_orthogonal(p, q, tol)?;
            let out = orthogonality_by_subprojections(p, q, samples, &mut rng, tol)?;
            Ok((out.orthogonal == truth, out.max_deviation, json!(out)))
        })();
        b.push(
            "subprojections",
            "p ⟂ q iff all nonzero subprojections are at distance one",
            outcome,
        );

        let mut rng = b.stream();
        let outcome = (|| {
            let truth = is_orthogonal(p, q, tol)?;
            let out = orthogonality_by_corner_spheres(p, q, samples, &mut rng, tol)?;
            Ok((out.orthogonal == truth, out.max_deviation, json!(out)))
        })();
        b.push(
            "corner_spheres",
            "p ⟂ q iff corner elements are always at distance one",
            outcome,
        );
    }
    Ok(b.report)
}

/// Evidence that the hemisphere order isomorphism between the projections of
/// `spin:3` and `spin:4` is not induced by a Jordan map.
pub fn spin_counterexample_report(
    seed: u64,
    samples: usize,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let mut b = Builder::new("spin-counterexample", "spin:3", seed, *tol, samples);
    let mut theta = spin::counterexample_theta(seed);

    let mut rng = b.stream();
    let evidence = spin::projection_map_evidence(&mut theta, samples, SQRT2_TRIALS, &mut rng, tol);
    let outcome = evidence.map(|e| {
        (
            e.order_preserving && e.diametrical_preserving,
            None,
            json!({ "pairs": e.pairs, "order_failures": e.order_failures, "diametrical_failures": e.diametrical_failures }),
        )
    });
    b.push(
        "order_and_diametrical",
        "the map preserves order and diametrical pairs on every sampled pair",
        outcome,
    );

    let mut rng = b.stream();
    let outcome =
        spin::projection_map_evidence(&mut theta, 2, SQRT2_TRIALS, &mut rng, tol).map(|e| {
            (
                e.sqrt2_violation_found,
                None,
                json!({ "trials": e.sqrt2_trials, "inner_product": e.sqrt2_violation_inner }),
            )
        });
    b.push(
        "sqrt2_violation",
        "the map sends some pair at distance √2/2 to a pair at another distance",
        outcome,
    );

    let mut rng = b.stream();
    let outcome = match spin::jordan_iso_from_theta(&mut theta, &mut rng, tol) {
        Err(JordanError::DimensionMismatch(reason)) => {
            Ok((true, None, json!({ "reason": reason })))
        }
        Err(e) => Err(e),
        Ok(_) => Ok((
            false,
            None,
            json!({ "reason": "a Jordan map was constructed" }),
        )),
    };
    b.push(
        "no_jordan_extension",
        "no Jordan *-isomorphism relates spin:3 and spin:4",
        outcome,
    );
    Ok(b.report)
}

/// Randomized Glennie search: special algebras pass when no triple exceeds
/// `threshold`, algebras with an `h3o` summand pass when one does.
pub fn glennie_report(
    algebra: &AlgebraDescriptor,
    trials: usize,
    seed: u64,
    threshold: f64,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(JordanError::Precondition(
            "threshold must be positive and finite".into(),
        ));
    }
    let mut b = Builder::new("glennie", &algebra.to_string(), seed, *tol, trials);
    let mut rng = b.stream();
    let search = glennie_violation_search(algebra, &mut rng, trials, threshold);
    let expect_violation = algebra.contains_exceptional();
    let anchor = if expect_violation {
        "the Glennie identity fails in h3o"
    } else {
        "the Glennie identity holds in every special Jordan algebra"
    };
    b.push(
        "glennie",
        anchor,
        Ok((
            search.found == expect_violation,
            Some(search.norm),
            json!({ "threshold": threshold, "expect_violation": expect_violation, "search": search }),
        )),
    );
    Ok(b.report)
}

/// Round trip through the positive sphere: a random Jordan *-automorphism is turned
/// into a sphere isometry (optionally perturbed) and extended back. Unperturbed runs
/// pass when the generator is recovered; perturbed runs pass when the map is rejected.
pub fn tingley_report(
    algebra: &AlgebraDescriptor,
    seed: u64,
    perturbation: Option<Perturbation>,
    samples: usize,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    if algebra.contains_exceptional() {
        return Err(JordanError::SuiteNotApplicable {
            suite: "tingley".into(),
            algebra: algebra.to_string(),
            reason: "isometry extension is implemented for matrix and spin summands only".into(),
        });
    }
    let mut b = Builder::new("tingley", &algebra.to_string(), seed, *tol, samples);
    let mut rng = b.stream();
    let phi0 = random_jordan_automorphism(algebra, &mut rng)?;
    let delta = synthesize_delta(&phi0, &mut rng, tol)?;
    let outcome = match perturbation {
        None => extend_isometry(&delta, samples, &mut rng, tol).map(|ext| {
            let sup = sup_distance(&ext.phi, &phi0, samples, &mut rng);
            let worst = sup.max(ext.uniqueness_gap);
            (
                worst <= tol.residual_tol,
                Some(worst),
                json!({ "outcome": "recovered", "sup_error": sup, "extension": ext }),
            )
        }),
        Some(kind) => match extend_isometry(&perturb(&delta, kind), samples, &mut rng, tol) {
            Err(JordanError::NotIsometric {
                original, mapped, ..
            }) => Ok((
                true,
                None,
                json!({ "outcome": "rejected", "perturbation": kind, "witness_distance": original, "image_distance": mapped }),
            )),
            Err(e) => Err(e),
            Ok(ext) => Ok((
                false,
                None,
                json!({ "outcome": "accepted", "perturbation": kind, "extension": ext }),
            )),
        },
    };
    let anchor = match perturbation {
        None => "an isometry of positive spheres extends to a Jordan *-isomorphism",
        Some(_) => {
            "maps that are not isometric on the positive sphere are rejected with a witness pair"
        }
    };
    b.push("extension", anchor, outcome);
    Ok(b.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn parses_real_and_complex_coordinates() {
        let alg: AlgebraDescriptor = "mat:2".parse().unwrap();
        let text = r#"{"p": [1, 0, 0, 0], "q": [0.5, [0, -0.5], [0, 0.5], 0.5]}"#;
        let (p, q) = parse_projection_pair(&alg, text, &tol()).unwrap();
        assert_eq!(p, Element::diag(&[1.0, 0.0]));
        assert!((q.coords()[1] - C64::new(0.0, -0.5)).norm() < 1e-15);
        assert!(
            parse_projection_pair(&alg, r#"{"p": [1, 0, 0, 0.5], "q": [1, 0, 0, 0]}"#, &tol())
                .is_err()
        );
        assert!(
            parse_projection_pair(&alg, r#"{"p": [1, 0, 0], "q": [1, 0, 0, 0]}"#, &tol()).is_err()
        );
        assert!(parse_projection_pair(&alg, r#"{"p": [1, 0, 0, 0]}"#, &tol()).is_err());
    }

    #[test]
    fn two_proj_report_passes_for_random_pairs() {
        let alg: AlgebraDescriptor = "mat:4".parse().unwrap();
        let (p, q) = random_projection_pair(&alg, 5);
        let report = two_proj_report(&p, &q, 5, &tol(), 10).unwrap();
        assert!(report.passed, "{}", report.to_json());
    }

    #[test]
    fn counterexample_report_passes() {
        let report = spin_counterexample_report(3, 100, &tol()).unwrap();
        assert!(report.passed, "{}", report.to_json());
    }

    #[test]
    fn glennie_reports() {
        let special = glennie_report(&"spin:5".parse().unwrap(), 20, 1, 1e-3, &tol()).unwrap();
        assert!(special.passed);
        let exceptional =
            glennie_report(&AlgebraDescriptor::OctonionHermitian3, 200, 1, 1e-3, &tol()).unwrap();
        assert!(exceptional.passed);
    }

    #[test]
    fn tingley_reports() {
        let alg: AlgebraDescriptor = "spin:4".parse().unwrap();
        let ok = tingley_report(&alg, 2, None, 30, &tol()).unwrap();
        assert!(ok.passed, "{}", ok.to_json());
        let rejected = tingley_report(&alg, 2, Some(Perturbation::Square), 30, &tol()).unwrap();
        assert!(rejected.passed);
        assert_eq!(rejected.checks[0].detail["outcome"], "rejected");
    }
}
