//! Property suites run by `jordan-verify run`.
//!
//! Every check draws from its own random stream, selected by hashing
//! `"<suite>/<check>"`, so a check sees the same numbers whether it runs alone, as
//! part of its suite, or inside `all`. A check that returns an error is recorded as
//! a failure carrying the error message.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde_json::{json, Value};

use crate::algebra::{AlgebraDescriptor, Element, Tolerances};
use crate::error::{JordanError, Result};
use crate::exceptional::{
    glennie_violation_search, h3_cubic_spectrum, h3_multiplication_spectrum, h3_peirce_spectrum,
    random_box_self_adjoint,
};
use crate::linalg;
use crate::maps::JordanMap;
use crate::projections::{
    abelian_report, centrality_report, complement, is_orthogonal, is_projection, join, leq, meet,
    peirce_decompose,
};
use crate::report::{CheckRecord, VerificationReport};
use crate::rng::{substream, StreamRng};
use crate::sampling;
use crate::spectral::{
    classify_positive, functional_calculus_with, j_spectrum_with, range_projection, spin_norm,
};
use crate::spheres::{
    diametrical_witness, double_sphere_test, invertible_by_distance, order_by_spheres,
    orthogonality_by_corner_spheres, unit_characterization,
};
use crate::spin::{self, SpinProjection};
use crate::tingley::{
    extend_isometry, extract_projection_map, perturb, order_routes_test,
    random_jordan_automorphism, random_order_instance, sup_distance, synthesize_delta,
    Perturbation,
};
use crate::two_proj::{build_representation, orthogonality_by_subprojections, two_proj_invariants};

/// Residual bound for the Glennie polynomial on special algebras.
pub const GLENNIE_SPECIAL_TOL: f64 = 1e-10;
/// Norm a Glennie value must exceed to count as a violation in `h3o`.
pub const GLENNIE_THRESHOLD: f64 = 1e-3;
/// Triples tried before giving up on a violation in `h3o`.
pub const GLENNIE_TRIALS: usize = 10_000;
/// Tolerance for the closed-form spin distance and √2/2 criterion.
pub const SPIN_FORMULA_TOL: f64 = 1e-12;
/// Candidates in the refutation sweep of the double-sphere test.
pub const REFUTATION_CANDIDATES: usize = 100;
/// Trials spent looking for a √2/2 violation of the counterexample map.
pub const SQRT2_TRIALS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Axioms,
    Spectral,
    Projections,
    Spheres,
    TwoProj,
    Spin,
    Glennie,
    Tingley,
    All,
}

impl Suite {
    /// Every suite except `all`, in execution order.
    pub const EACH: [Suite; 8] = [
        Suite::Axioms,
        Suite::Spectral,
        Suite::Projections,
        Suite::Spheres,
        Suite::TwoProj,
        Suite::Spin,
        Suite::Glennie,
        Suite::Tingley,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Spectral => "spectral",
            Suite::Projections => "projections",
            Suite::Spheres => "spheres",
            Suite::TwoProj => "two-proj",
            Suite::Spin => "spin",
            Suite::Glennie => "glennie",
            Suite::Tingley => "tingley",
            Suite::All => "all",
        }
    }

    /// Why the suite cannot run on `algebra`, if it cannot.
    pub fn inapplicable_reason(self, algebra: &AlgebraDescriptor) -> Option<String> {
        match self {
            Suite::Spin if !has_spin(algebra) => {
                Some("the algebra has no spin factor summand".into())
            }
            Suite::Tingley if algebra.contains_exceptional() => {
                Some("isometry extension is implemented for matrix and spin summands only".into())
            }
            _ => None,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = JordanError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| JordanError::UnknownSuite(s.to_string()))
    }
}

/// Inputs shared by every check of a run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub algebra: AlgebraDescriptor,
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Sampling density: the number of random instances most checks draw.
    pub samples: usize,
}

impl SuiteConfig {
    pub fn new(algebra: AlgebraDescriptor, seed: u64) -> Self {
        Self {
            algebra,
            seed,
            tolerances: Tolerances::default(),
            samples: 50,
        }
    }
}

/// Runs `suite` and returns its report. Fails only for suites that do not apply to
/// the algebra; `all` skips those and runs the rest.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<VerificationReport> {
    config.tolerances.validate()?;
    if config.samples == 0 {
        return Err(JordanError::Precondition("samples must be positive".into()));
    }
    let mut report = VerificationReport::new(
        suite.name(),
        &config.algebra.to_string(),
        config.seed,
        config.tolerances,
        config.samples,
    );
    if suite == Suite::All {
        for each in Suite::EACH {
            if each.inapplicable_reason(&config.algebra).is_none() {
                run_battery(each, config, true, &mut report);
            }
        }
        return Ok(report);
    }
    if let Some(reason) = suite.inapplicable_reason(&config.algebra) {
        return Err(JordanError::SuiteNotApplicable {
            suite: suite.name().into(),
            algebra: config.algebra.to_string(),
            reason,
        });
    }
    run_battery(suite, config, false, &mut report);
    Ok(report)
}

fn run_battery(
    suite: Suite,
    config: &SuiteConfig,
    prefixed: bool,
    report: &mut VerificationReport,
) {
    let mut battery = Battery {
        suite: suite.name(),
        prefixed,
        config,
        report,
    };
    match suite {
        Suite::Axioms => axioms(&mut battery),
        Suite::Spectral => spectral(&mut battery),
        Suite::Projections => projections(&mut battery),
        Suite::Spheres => spheres(&mut battery),
        Suite::TwoProj => two_proj(&mut battery),
        Suite::Spin => spin_suite(&mut battery),
        Suite::Glennie => glennie(&mut battery),
        Suite::Tingley => tingley(&mut battery),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

/// Outcome of one check body.
struct Verdict {
    passed: bool,
    residual: Option<f64>,
    detail: Value,
}

impl Verdict {
    fn residual(residual: f64, bound: f64, detail: Value) -> Self {
        Self {
            passed: residual <= bound,
            residual: Some(residual),
            detail,
        }
    }

    fn flag(passed: bool, detail: Value) -> Self {
        Self {
            passed,
            residual: None,
            detail,
        }
    }
}

struct Battery<'a> {
    suite: &'static str,
    prefixed: bool,
    config: &'a SuiteConfig,
    report: &'a mut VerificationReport,
}

/// FNV-1a, used only to turn check names into stream indices.
fn stream_index(key: &str) -> u64 {
    key.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

impl Battery<'_> {
    fn algebra(&self) -> &AlgebraDescriptor {
        &self.config.algebra
    }

    fn tol(&self) -> Tolerances {
        self.config.tolerances
    }

    fn samples(&self) -> usize {
        self.config.samples
    }

    fn check(
        &mut self,
        name: &str,
        anchor: &str,
        body: impl FnOnce(&mut StreamRng) -> Result<Verdict>,
    ) {
        let key = format!("{}/{}", self.suite, name);
        let mut rng = substream(self.config.seed, stream_index(&key));
        let verdict = body(&mut rng)
            .unwrap_or_else(|e| Verdict::flag(false, json!({ "error": e.to_string() })));
        self.report.push(CheckRecord {
            name: if self.prefixed { key } else { name.to_string() },
            anchor: anchor.to_string(),
            passed: verdict.passed,
            residual: verdict.residual,
            detail: verdict.detail,
        });
    }
}

fn has_spin(algebra: &AlgebraDescriptor) -> bool {
    algebra
        .summands()
        .iter()
        .any(|s| matches!(s, AlgebraDescriptor::Spin(_)))
}

/// Whether the algebra has projections other than 0 and 1.
fn has_nontrivial_projections(algebra: &AlgebraDescriptor) -> bool {
    algebra.summands().len() > 1 || algebra.rank() > 1
}

fn op_norm(a: &Element) -> Result<f64> {
    a.hermitian_part().norm()
}

/// Random self-adjoint element of operator norm one.
fn unit_self_adjoint<R: Rng + ?Sized>(algebra: &AlgebraDescriptor, rng: &mut R) -> Result<Element> {
    loop {
        let a = sampling::random_self_adjoint(algebra, rng);
        let n = a.norm()?;
        if n > 1e-6 {
            return Ok(a.scale(1.0 / n).hermitian_part());
        }
    }
}

/// Random element with unit coordinate norm.
fn unit_element<R: Rng + ?Sized>(algebra: &AlgebraDescriptor, rng: &mut R) -> Element {
    let a = sampling::random_element(algebra, rng);
    let n = a.coord_norm().max(1e-12);
    a.scale(1.0 / n)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

// ---------------------------------------------------------------- axioms

fn axioms(b: &mut Battery) {
    let alg = b.algebra().clone();
    let n = b.samples();
    let tol = b.tol();

    b.check(
        "commutativity",
        "the Jordan product is commutative",
        |rng| {
            let worst = max_of((0..n).map(|_| {
                let (x, y) = (unit_element(&alg, rng), unit_element(&alg, rng));
                (&x.circ(&y) - &y.circ(&x)).residual_norm()
            }));
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "samples": n }),
            ))
        },
    );

    b.check(
        "jordan_identity",
        "Jordan identity (a∘b)∘a² = a∘(b∘a²)",
        |rng| {
            let worst = max_of((0..n).map(|_| {
                let (x, y) = (unit_element(&alg, rng), unit_element(&alg, rng));
                let x2 = x.square();
                (&x.circ(&y).circ(&x2) - &x.circ(&y.circ(&x2))).residual_norm()
            }));
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "samples": n }),
            ))
        },
    );

    b.check(
        "involution",
        "the involution is a conjugate-linear Jordan anti-automorphism of order two",
        |rng| {
            let worst = max_of((0..n).map(|_| {
                let (x, y) = (unit_element(&alg, rng), unit_element(&alg, rng));
                let s = linalg::complex_gaussian(rng);
                let order_two = (&x.star().star() - &x).residual_norm();
                let product = (&x.circ(&y).star() - &x.star().circ(&y.star())).residual_norm();
                let conj = (&x.scale_complex(s).star() - &x.star().scale_complex(s.conj()))
                    .residual_norm();
                order_two.max(product).max(conj)
            }));
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "samples": n }),
            ))
        },
    );

    b.check(
        "unit",
        "the unit is neutral for the Jordan product",
        |rng| {
            let one = Element::unit(&alg);
            let worst = max_of((0..n).map(|_| {
                let x = unit_element(&alg, rng);
                (&one.circ(&x) - &x).residual_norm()
            }));
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "samples": n }),
            ))
        },
    );

    b.check(
        "power_associativity",
        "powers are associative and agree with the functional calculus",
        |rng| {
            let mut worst: f64 = 0.0;
            for _ in 0..n {
                let x = unit_self_adjoint(&alg, rng)?;
                let x2 = x.square();
                let nested = x.pow(4);
                let balanced = x2.square();
                let calculus = functional_calculus_with(&x, &tol, |t| t.powi(4))?;
                worst = worst
                    .max((&nested - &balanced).residual_norm())
                    .max((&nested - &calculus).residual_norm());
            }
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "samples": n }),
            ))
        },
    );

    b.check(
        "triple_product",
        "the triple product is symmetric in its outer variables and {a,a,a} = U_a(a*)",
        |rng| {
            let worst = max_of((0..n).map(|_| {
                let (x, y, z) = (
                    unit_element(&alg, rng),
                    unit_element(&alg, rng),
                    unit_element(&alg, rng),
                );
                let symmetric = (&x.triple(&y, &z) - &z.triple(&y, &x)).residual_norm();
                let cube = (&x.triple(&x, &x) - &x.u(&x.star())).residual_norm();
                symmetric.max(cube)
            }));
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "samples": n }),
            ))
        },
    );

    let summands: Vec<(usize, AlgebraDescriptor)> =
        alg.summands().iter().cloned().enumerate().collect();
    if summands
        .iter()
        .any(|(_, s)| matches!(s, AlgebraDescriptor::Matrix(_)))
    {
        b.check(
            "associative_model",
            "matrix summands: a∘b = (ab+ba)/2, U_a(b) = aba, a* = conjugate transpose",
            |rng| {
                let mut worst: f64 = 0.0;
                for (_, part) in &summands {
                    let AlgebraDescriptor::Matrix(m) = part else {
                        continue;
                    };
                    for _ in 0..n {
                        let (x, y) = (unit_element(part, rng), unit_element(part, rng));
                        let (mx, my) = (
                            linalg::to_matrix(*m, x.coords()),
                            linalg::to_matrix(*m, y.coords()),
                        );
                        let jordan = (&mx * &my + &my * &mx) * crate::algebra::C64::new(0.5, 0.0);
                        let sandwich = &mx * &my * &mx;
                        let d1 = (linalg::to_matrix(*m, x.circ(&y).coords()) - jordan).norm();
                        let d2 = (linalg::to_matrix(*m, x.u(&y).coords()) - sandwich).norm();
                        let d3 = (linalg::to_matrix(*m, x.star().coords()) - mx.adjoint()).norm();
                        worst = worst.max(d1).max(d2).max(d3);
                    }
                }
                Ok(Verdict::residual(
                    worst,
                    tol.residual_tol,
                    json!({ "samples": n }),
                ))
            },
        );
    }
    if summands
        .iter()
        .any(|(_, s)| matches!(s, AlgebraDescriptor::Spin(_)))
    {
        b.check(
            "spin_quadratic",
            "spin summands: every self-adjoint a satisfies a² − (λ₁+λ₂)a + λ₁λ₂·1 = 0",
            |rng| {
                let mut worst: f64 = 0.0;
                for (_, part) in &summands {
                    if !matches!(part, AlgebraDescriptor::Spin(_)) {
                        continue;
                    }
                    for _ in 0..n {
                        let x = unit_self_adjoint(part, rng)?;
                        let data = j_spectrum_with(&x, &tol)?;
                        let (lo, hi) = (data.min(), data.max());
                        let r = &(&x.square() - &x.scale(lo + hi))
                            + &Element::unit(part).scale(lo * hi);
                        worst = worst.max(r.residual_norm());
                    }
                }
                Ok(Verdict::residual(
                    worst,
                    tol.residual_tol,
                    json!({ "samples": n }),
                ))
            },
        );
    }
    if alg.contains_exceptional() {
        b.check(
            "h3o_cayley_hamilton",
            "h3o: every self-adjoint a satisfies its characteristic cubic",
            |rng| {
                let part = AlgebraDescriptor::OctonionHermitian3;
                let one = Element::unit(&part);
                let mut worst: f64 = 0.0;
                for _ in 0..n {
                    let x = unit_self_adjoint(&part, rng)?;
                    let [l1, l2, l3] = h3_cubic_spectrum(&x)?;
                    let (t, s, d) = (l1 + l2 + l3, l1 * l2 + l1 * l3 + l2 * l3, l1 * l2 * l3);
                    let r = &(&x.pow(3) - &x.square().scale(t)) + &(&x.scale(s) - &one.scale(d));
                    worst = worst.max(r.residual_norm());
                }
                Ok(Verdict::residual(
                    worst,
                    tol.residual_tol,
                    json!({ "samples": n }),
                ))
            },
        );
    }
}

// ---------------------------------------------------------------- spectral

fn spectral(b: &mut Battery) {
    let alg = b.algebra().clone();
    let n = b.samples();
    let tol = b.tol();

    b.check(
        "reconstruction",
        "a self-adjoint element is the sum of its spectral values times their projections",
        |rng| {
            let mut worst: f64 = 0.0;
            for _ in 0..n {
                let x = unit_self_adjoint(&alg, rng)?;
                let data = j_spectrum_with(&x, &tol)?;
                worst = worst.max((&data.reconstruct() - &x).residual_norm());
            }
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "samples": n }),
            ))
        },
    );

    b.check(
        "spectral_projections",
        "spectral projections are mutually orthogonal projections summing to the unit",
        |rng| {
            let one = Element::unit(&alg);
            let mut worst: f64 = 0.0;
            for _ in 0..n {
                let x = unit_self_adjoint(&alg, rng)?;
                let data = j_spectrum_with(&x, &tol)?;
                let mut total = Element::zero(&alg);
                for (i, p) in data.projections.iter().enumerate() {
                    worst = worst.max((&p.square() - p).residual_norm());
                    for q in &data.projections[i + 1..] {
                        worst = worst.max(p.circ(q).residual_norm());
                    }
                    total += p;
                }
                worst = worst.max((&total - &one).residual_norm());
            }
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "samples": n }),
            ))
        },
    );

    b.check(
        "norm_identity",
        "‖a²‖ = ‖a‖² and ‖a³‖ = ‖a‖³ for self-adjoint a",
        |rng| {
            let mut worst: f64 = 0.0;
            for _ in 0..n {
                let x = sampling::random_self_adjoint(&alg, rng);
                let norm = x.norm()?;
                let d2 = (x.square().hermitian_part().norm()? - norm * norm).abs();
                let d3 = (x.pow(3).hermitian_part().norm()? - norm.powi(3)).abs();
                worst = worst
                    .max(d2 / norm.powi(2).max(1.0))
                    .max(d3 / norm.powi(3).max(1.0));
            }
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "samples": n, "relative": true }),
            ))
        },
    );

    b.check(
        "functional_calculus",
        "the functional calculus is multiplicative: |a|∘|a| = a² and id(a) = a",
        |rng| {
            let mut worst: f64 = 0.0;
            for _ in 0..n {
                let x = unit_self_adjoint(&alg, rng)?;
                let abs = functional_calculus_with(&x, &tol, f64::abs)?;
                let id = functional_calculus_with(&x, &tol, |t| t)?;
                worst = worst
                    .max((&abs.square() - &x.square()).residual_norm())
                    .max((&id - &x).residual_norm());
            }
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "samples": n }),
            ))
        },
    );

    b.check(
        "positivity",
        "squares are positive; positive elements bounded below are invertible",
        |rng| {
            let mut failures = 0;
            for _ in 0..n {
                let x = unit_self_adjoint(&alg, rng)?;
                let square = classify_positive(&x.square(), &tol)?;
                let low = rng.gen_range(0.05..0.5);
                let inv =
                    classify_positive(&sampling::random_positive_invertible(&alg, low, rng), &tol)?;
                if !square.positive
                    || !inv.positive
                    || !inv.invertible
                    || inv.min_eigenvalue < low - tol.eq_tol
                {
                    failures += 1;
                }
            }
            Ok(Verdict::flag(
                failures == 0,
                json!({ "samples": n, "failures": failures }),
            ))
        },
    );

    b.check(
        "range_projection",
        "the range projection r of a positive a is a projection with r∘a = a",
        |rng| {
            let mut worst: f64 = 0.0;
            let mut failures = 0;
            for _ in 0..n {
                let a = sampling::random_positive_sphere(&alg, rng);
                let r = range_projection(&a, &tol)?;
                if !is_projection(&r, &tol) {
                    failures += 1;
                }
                worst = worst.max((&r.circ(&a) - &a).residual_norm());
            }
            Ok(Verdict {
                passed: failures == 0 && worst <= tol.residual_tol,
                residual: Some(worst),
                detail: json!({ "samples": n, "non_projections": failures }),
            })
        },
    );

    if has_spin(&alg) {
        b.check(
            "spin_norm",
            "spin summands: ‖a‖ = |α| + ‖w‖ for self-adjoint a = α·1 + w",
            |rng| {
                let mut worst: f64 = 0.0;
                for part in alg
                    .summands()
                    .iter()
                    .filter(|s| matches!(s, AlgebraDescriptor::Spin(_)))
                {
                    for _ in 0..n {
                        let x = sampling::random_self_adjoint(part, rng);
                        let c = x.coords();
                        let closed =
                            c[0].re.abs() + c[1..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                        let spectral = j_spectrum_with(&x, &tol)?.spectral_radius();
                        worst = worst
                            .max((closed - spin_norm(c)).abs())
                            .max((closed - spectral).abs());
                    }
                }
                Ok(Verdict::residual(
                    worst,
                    SPIN_FORMULA_TOL * 10.0,
                    json!({ "samples": n }),
                ))
            },
        );
    }

    if alg.contains_exceptional() {
        b.check(
            "h3o_multiplication_operator",
            "h3o: the spectrum of x ↦ a∘x is {λᵢ} ∪ {(λᵢ+λⱼ)/2}",
            |rng| {
                let part = AlgebraDescriptor::OctonionHermitian3;
                let mut worst: f64 = 0.0;
                for _ in 0..n {
                    let x = random_box_self_adjoint(&part, rng);
                    let got = h3_multiplication_spectrum(&x)?;
                    let want = h3_peirce_spectrum(h3_cubic_spectrum(&x)?);
                    worst = worst.max(max_of(got.iter().zip(&want).map(|(g, w)| (g - w).abs())));
                }
                Ok(Verdict::residual(
                    worst,
                    tol.eq_tol,
                    json!({ "samples": n }),
                ))
            },
        );
    }
}

// ---------------------------------------------------------------- projections

fn projections(b: &mut Battery) {
    let alg = b.algebra().clone();
    let n = b.samples();
    let tol = b.tol();

    b.check(
        "lattice",
        "join and meet are bounds, obey absorption and De Morgan duality",
        |rng| {
            let mut worst: f64 = 0.0;
            let mut order_failures = 0;
            for _ in 0..n {
                let p = sampling::random_projection(&alg, rng);
                let q = sampling::random_projection(&alg, rng);
                let (j, m) = (join(&p, &q, &tol)?, meet(&p, &q, &tol)?);
                if !(leq(&p, &j, &tol)
                    && leq(&q, &j, &tol)
                    && leq(&m, &p, &tol)
                    && leq(&m, &q, &tol))
                {
                    order_failures += 1;
                }
                let absorb = (&meet(&p, &j, &tol)? - &p).residual_norm();
                let dual = meet(&complement(&p), &complement(&q), &tol)?;
                let de_morgan = (&complement(&j) - &dual).residual_norm();
                worst = worst.max(absorb).max(de_morgan);
            }
            Ok(Verdict {
                passed: order_failures == 0 && worst <= tol.residual_tol,
                residual: Some(worst),
                detail: json!({ "samples": n, "order_failures": order_failures }),
            })
        },
    );

    if has_nontrivial_projections(&alg) {
        b.check(
            "orthogonal_distance",
            "orthogonal nonzero projections are at distance one",
            |rng| {
                let mut worst: f64 = 0.0;
                for _ in 0..n {
                    let p = sampling::random_nontrivial_projection(&alg, rng);
                    let q = sampling::random_subprojection(&complement(&p), rng, &tol)?;
                    if !is_orthogonal(&p, &q, &tol)? {
                        return Err(JordanError::Contradiction(
                            "subprojection of 1−p not orthogonal to p".into(),
                        ));
                    }
                    worst = worst.max((op_norm(&(&p - &q))? - 1.0).abs());
                }
                Ok(Verdict::residual(
                    worst,
                    tol.eq_tol,
                    json!({ "samples": n }),
                ))
            },
        );
    }

    b.check(
        "peirce",
        "Peirce parts lie in the eigenspaces 1, ½, 0 of the multiplication by p",
        |rng| {
            let mut worst: f64 = 0.0;
            for _ in 0..n {
                let p = sampling::random_projection(&alg, rng);
                let a = unit_element(&alg, rng);
                let parts = peirce_decompose(&a, &p, &tol)?;
                worst = worst
                    .max((&p.circ(&parts.part2) - &parts.part2).residual_norm())
                    .max((&p.circ(&parts.part1) - &parts.part1.scale(0.5)).residual_norm())
                    .max(p.circ(&parts.part0).residual_norm());
            }
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "samples": n }),
            ))
        },
    );

    b.check(
        "centrality",
        "central projections are at distance one from every other projection",
        |rng| {
            let summands = alg.summands().len().min(4);
            let mut inconsistent = 0;
            let mut inspected = 0;
            for mask in 1u32..(1 << summands) {
                let mut p = Element::zero(&alg);
                for k in 0..summands {
                    if mask & (1 << k) != 0 {
                        p += &Element::block_unit(&alg, k);
                    }
                }
                let report = centrality_report(&p, n.min(20), rng, &tol)?;
                inspected += 1;
                inconsistent += usize::from(!report.central || !report.consistent);
            }
            for _ in 0..n.min(20) {
                let p = sampling::random_projection(&alg, rng);
                let report = centrality_report(&p, 5, rng, &tol)?;
                inspected += 1;
                inconsistent += usize::from(!report.consistent);
            }
            Ok(Verdict::flag(
                inconsistent == 0,
                json!({ "inspected": inspected, "inconsistent": inconsistent }),
            ))
        },
    );

    b.check(
        "abelian",
        "minimal projections are Abelian and the distance evidence agrees with the decision",
        |rng| {
            let mut inconsistent = 0;
            let rounds = n.min(20);
            for _ in 0..rounds {
                let minimal = sampling::random_minimal_projection(&alg, rng);
                let report = abelian_report(&minimal, 5, rng, &tol)?;
                inconsistent += usize::from(!report.abelian || !report.consistent);
                let p = sampling::random_projection(&alg, rng);
                inconsistent += usize::from(!abelian_report(&p, 5, rng, &tol)?.consistent);
            }
            Ok(Verdict::flag(
                inconsistent == 0,
                json!({ "samples": rounds, "inconsistent": inconsistent }),
            ))
        },
    );

    if has_spin(&alg) {
        b.check(
            "spin_projections",
            "spin summands: projections are 0, 1 or (e₁ + i·b)/2 with ‖b‖ = 1",
            |rng| {
                let mut failures = 0;
                let mut worst: f64 = 0.0;
                for part in alg
                    .summands()
                    .iter()
                    .filter(|s| matches!(s, AlgebraDescriptor::Spin(_)))
                {
                    for _ in 0..n {
                        let p = sampling::random_projection(part, rng);
                        let parsed = SpinProjection::from_element(&p, &tol)?;
                        worst = worst.max((&parsed.to_element() - &p).residual_norm());
                        let back = parsed.complement().to_element();
                        worst = worst.max((&back - &complement(&p)).residual_norm());
                        if matches!(parsed, SpinProjection::Minimal { .. })
                            && !spin::is_norm_one_projection(&parsed, &tol)
                        {
                            failures += 1;
                        }
                    }
                }
                Ok(Verdict {
                    passed: failures == 0 && worst <= tol.residual_tol,
                    residual: Some(worst),
                    detail: json!({ "samples": n, "failures": failures }),
                })
            },
        );
    }
}

// ---------------------------------------------------------------- spheres

/// Positive norm-one `a, b` with a minimal `e` such that `e ≤ a` and `e ⟂ b`,
/// hence `‖a − b‖ = 1`.
pub fn diametrical_pair<R: Rng + ?Sized>(
    alg: &AlgebraDescriptor,
    rng: &mut R,
) -> Result<(Element, Element)> {
    let one = Element::unit(alg);
    loop {
        let e = sampling::random_minimal_projection(alg, rng);
        let rest = &one - &e;
        let a = (&e + &rest.u(&sampling::random_positive_sphere(alg, rng))).hermitian_part();
        let b = rest
            .u(&sampling::random_positive_sphere(alg, rng))
            .hermitian_part();
        let nb = b.norm()?;
        if nb > 1e-3 {
            return Ok((a, b.scale(1.0 / nb).hermitian_part()));
        }
    }
}

/// Positive norm-one `a, b` with `‖a − b‖ ≤ 0.9`.
pub fn near_pair<R: Rng + ?Sized>(
    alg: &AlgebraDescriptor,
    rng: &mut R,
) -> Result<(Element, Element)> {
    loop {
        let a = sampling::random_positive_sphere(alg, rng);
        let c = sampling::random_positive_sphere(alg, rng);
        let s = rng.gen_range(0.0..0.6);
        let mix = (&a.scale(1.0 - s) + &c.scale(s)).hermitian_part();
        let b = mix.scale(1.0 / mix.norm()?).hermitian_part();
        if op_norm(&(&a - &b))? <= 0.9 {
            return Ok((a, b));
        }
    }
}

fn spheres(b: &mut Battery) {
    let alg = b.algebra().clone();
    let n = b.samples();
    let tol = b.tol();
    let nontrivial = has_nontrivial_projections(&alg);

    if nontrivial {
        b.check("diametrical_witness", "positive norm-one a, b are at distance one iff a pure state takes the values 0 and 1 on them", |rng| {
            let mut worst: f64 = 0.0;
            let (mut missing, mut spurious) = (0, 0);
            for _ in 0..n {
                let (x, y) = diametrical_pair(&alg, rng)?;
                match diametrical_witness(&x, &y, &tol)? {
                    Some(w) => {
                        let (hi, lo) = (w.omega_a.max(w.omega_b), w.omega_a.min(w.omega_b));
                        worst = worst.max((hi - 1.0).abs()).max(lo.abs());
                    }
                    None => missing += 1,
                }
                let (x, y) = near_pair(&alg, rng)?;
                spurious += usize::from(diametrical_witness(&x, &y, &tol)?.is_some());
            }
            Ok(Verdict {
                passed: missing == 0 && spurious == 0 && worst <= tol.eq_tol,
                residual: Some(worst),
                detail: json!({ "pairs": n, "missing": missing, "spurious": spurious }),
            })
        });
    }

    b.check(
        "double_sphere",
        "a positive norm-one element is a projection iff it equals the sphere of its sphere",
        |rng| {
            let (mut wrong, mut bad_certificates, mut survived_refutation) = (0, 0, 0);
            let mut projections_seen = 0;
            let mut worst_refutation: f64 = 0.0;
            for k in 0..n {
                let a = if k % 3 == 0 {
                    loop {
                        let p = sampling::random_projection(&alg, rng);
                        if p.residual_norm() > tol.eq_tol {
                            break p;
                        }
                    }
                } else {
                    sampling::random_positive_sphere(&alg, rng)
                };
                let data = j_spectrum_with(&a, &tol)?;
                let binary = data
                    .values
                    .iter()
                    .all(|v| v.abs() <= tol.eq_tol || (v - 1.0).abs() <= tol.eq_tol);
                let out = double_sphere_test(&a, REFUTATION_CANDIDATES, rng, &tol)?;
                wrong += usize::from(out.is_projection != binary);
                if out.is_projection {
                    projections_seen += 1;
                    worst_refutation = worst_refutation.max(out.worst_refutation_distance);
                    survived_refutation += usize::from(out.refuted != out.candidates);
                } else if !out.certificate.as_ref().is_some_and(|c| c.passed) {
                    bad_certificates += 1;
                }
            }
            Ok(Verdict::flag(
                wrong == 0 && bad_certificates == 0 && survived_refutation == 0,
                json!({
                    "samples": n,
                    "wrong_decisions": wrong,
                    "failed_certificates": bad_certificates,
                    "projections": projections_seen,
                    "unrefuted_candidates": survived_refutation,
                    "worst_refutation_distance": worst_refutation,
                }),
            ))
        },
    );

    if nontrivial {
        b.check("order_by_spheres", "q ≤ p iff the sphere of p through invertible elements lies in the sphere of q", |rng| {
            let (mut wrong, mut weak) = (0, 0);
            let mut worst_gap: f64 = 0.0;
            for k in 0..n {
                let p = sampling::random_nontrivial_projection(&alg, rng);
                let q = if k % 2 == 0 {
                    sampling::random_subprojection(&p, rng, &tol)?
                } else {
                    sampling::random_nontrivial_projection(&alg, rng)
                };
                let out = order_by_spheres(&q, &p, 5, rng, &tol)?;
                wrong += usize::from(out.q_leq_p != leq(&q, &p, &tol));
                if let Some(min) = out.min_sampled_distance {
                    worst_gap = worst_gap.max(1.0 - min);
                }
                if let (Some((dp, dq)), Some(bound)) = (out.falsifier_distances, out.falsifier_bound) {
                    worst_gap = worst_gap.max(1.0 - dp);
                    weak += usize::from(dq > bound + tol.eq_tol || bound >= 1.0 - tol.eq_tol);
                }
            }
            Ok(Verdict {
                passed: wrong == 0 && weak == 0 && worst_gap <= tol.eq_tol,
                residual: Some(worst_gap),
                detail: json!({ "pairs": n, "wrong_decisions": wrong, "weak_falsifiers": weak }),
            })
        });
    }

    b.check(
        "invertible_by_distance",
        "a positive norm-one element is invertible iff it lies at distance below one from the unit",
        |rng| {
            let mut wrong = 0;
            for k in 0..n {
                let a = if k % 2 == 0 {
                    sampling::random_positive_sphere(&alg, rng)
                } else {
                    let x = sampling::random_positive_invertible(&alg, 0.05, rng);
                    x.scale(1.0 / x.norm()?).hermitian_part()
                };
                wrong += usize::from(
                    invertible_by_distance(&a, &tol)? != classify_positive(&a, &tol)?.invertible,
                );
            }
            Ok(Verdict::flag(
                wrong == 0,
                json!({ "samples": n, "wrong_decisions": wrong }),
            ))
        },
    );

    b.check("unit_characterization", "among nonzero central projections the unit is the one whose midpoints with the sphere stay within ½", |rng| {
        let summands = alg.summands().len().min(4);
        let mut failures = 0;
        let mut worst: f64 = 0.0;
        for mask in 1u32..(1 << summands) {
            let mut p = Element::zero(&alg);
            for k in 0..summands {
                if mask & (1 << k) != 0 {
                    p += &Element::block_unit(&alg, k);
                }
            }
            let report = unit_characterization(&p, n.min(20), rng, &tol)?;
            let really_unit = (&Element::unit(&alg) - &p).residual_norm() <= tol.eq_tol;
            if report.is_unit != really_unit {
                failures += 1;
            }
            match report.worst_midpoint_distance {
                Some(d) => worst = worst.max(d - 0.5),
                None => failures += usize::from(report.covered != report.samples),
            }
        }
        Ok(Verdict {
            passed: failures == 0 && worst <= tol.eq_tol,
            residual: Some(worst.max(0.0)),
            detail: json!({ "failures": failures }),
        })
    });

    if nontrivial {
        b.check(
            "corner_spheres",
            "p ⟂ q iff corner elements of p and q are always at distance one",
            |rng| {
                let (mut wrong, mut weak) = (0, 0);
                let mut worst: f64 = 0.0;
                for k in 0..n {
                    let p = sampling::random_nontrivial_projection(&alg, rng);
                    let q = if k % 2 == 0 {
                        sampling::random_subprojection(&complement(&p), rng, &tol)?
                    } else {
                        sampling::random_nontrivial_projection(&alg, rng)
                    };
                    let out = orthogonality_by_corner_spheres(&p, &q, 5, rng, &tol)?;
                    wrong += usize::from(out.orthogonal != is_orthogonal(&p, &q, &tol)?);
                    if let Some(d) = out.max_deviation {
                        worst = worst.max(d);
                    }
                    if let (Some(d), Some(bound)) = (out.witness_distance, out.witness_bound) {
                        weak += usize::from(d > bound + tol.eq_tol || d >= 1.0 - tol.eq_tol);
                    }
                }
                Ok(Verdict {
                    passed: wrong == 0 && weak == 0 && worst <= tol.eq_tol,
                    residual: Some(worst),
                    detail: json!({ "pairs": n, "wrong_decisions": wrong, "weak_witnesses": weak }),
                })
            },
        );

        b.check("order_routes", "spectral, Peirce and distance characterizations of q ≤ a agree", |rng| {
            let mut disagreements = 0;
            let mut seen = [0usize; 2];
            for _ in 0..n {
                let q = sampling::random_nontrivial_projection(&alg, rng);
                let a = random_order_instance(&q, rng);
                let routes = order_routes_test(&q, &a, 3, rng, &tol)?;
                disagreements += usize::from(!routes.agree);
                seen[usize::from(routes.leq())] += 1;
            }
            Ok(Verdict::flag(
                disagreements == 0,
                json!({ "instances": n, "disagreements": disagreements, "below": seen[1], "not_below": seen[0] }),
            ))
        });
    }
}

// ---------------------------------------------------------------- two-proj

fn two_proj(b: &mut Battery) {
    let alg = b.algebra().clone();
    let n = b.samples();
    let tol = b.tol();

    b.check(
        "representation",
        "two projections generate a subalgebra isomorphic to a sum of 2×2 blocks and scalars",
        |rng| {
            let mut worst: f64 = 0.0;
            let mut dimension_failures = 0;
            for _ in 0..n {
                let p = sampling::random_projection(&alg, rng);
                let q = sampling::random_projection(&alg, rng);
                let rep = build_representation(&p, &q, 20, rng, &tol)?;
                worst = worst.max(rep.residuals.worst());
                dimension_failures += usize::from(
                    rep.residuals.generated_dimension != rep.residuals.expected_dimension,
                );
            }
            Ok(Verdict {
                passed: dimension_failures == 0 && worst <= tol.residual_tol,
                residual: Some(worst),
                detail: json!({ "pairs": n, "dimension_failures": dimension_failures }),
            })
        },
    );

    b.check(
        "complement_symmetry",
        "the pair (1−p, 1−q) has the same interior angles as (p, q)",
        |rng| {
            let mut worst: f64 = 0.0;
            let mut mismatched = 0;
            for _ in 0..n {
                let p = sampling::random_projection(&alg, rng);
                let q = sampling::random_projection(&alg, rng);
                let direct = two_proj_invariants(&p, &q, &tol)?;
                let dual = two_proj_invariants(&complement(&p), &complement(&q), &tol)?;
                if direct.interior.len() != dual.interior.len() {
                    mismatched += 1;
                    continue;
                }
                for (x, y) in direct.interior.iter().zip(&dual.interior) {
                    worst = worst.max((x.t - y.t).abs());
                    mismatched += usize::from(x.multiplicity != y.multiplicity);
                }
            }
            Ok(Verdict {
                passed: mismatched == 0 && worst <= tol.eq_tol,
                residual: Some(worst),
                detail: json!({ "pairs": n, "mismatched": mismatched }),
            })
        },
    );

    if has_nontrivial_projections(&alg) {
        b.check("subprojections", "p ⟂ q iff all nonzero subprojections of p and q are at distance one", |rng| {
            let (mut wrong, mut weak) = (0, 0);
            let mut worst: f64 = 0.0;
            for k in 0..n {
                let p = sampling::random_nontrivial_projection(&alg, rng);
                let q = if k % 2 == 0 {
                    sampling::random_subprojection(&complement(&p), rng, &tol)?
                } else {
                    sampling::random_nontrivial_projection(&alg, rng)
                };
                let out = orthogonality_by_subprojections(&p, &q, 5, rng, &tol)?;
                wrong += usize::from(out.orthogonal != is_orthogonal(&p, &q, &tol)?);
                if let Some(d) = out.max_deviation {
                    worst = worst.max(d);
                }
                if let Some(d) = out.falsifier_distance {
                    weak += usize::from(d >= 1.0 - tol.eq_tol);
                }
            }
            Ok(Verdict {
                passed: wrong == 0 && weak == 0 && worst <= tol.eq_tol,
                residual: Some(worst),
                detail: json!({ "pairs": n, "wrong_decisions": wrong, "weak_falsifiers": weak }),
            })
        });
    }
}

// ---------------------------------------------------------------- spin

fn spin_suite(b: &mut Battery) {
    let alg = b.algebra().clone();
    let n = b.samples();
    let tol = b.tol();
    let mut dims: Vec<usize> = alg
        .summands()
        .iter()
        .filter_map(|s| match s {
            AlgebraDescriptor::Spin(k) => Some(*k),
            _ => None,
        })
        .collect();
    dims.dedup();

    let minimal = |k: usize, rng: &mut StreamRng| SpinProjection::Minimal {
        b: linalg::random_real_unit_vector(k - 1, rng),
    };

    b.check(
        "distance_formula",
        "minimal spin projections satisfy ‖p − q‖ = ½‖Υp − Υq‖",
        |rng| {
            let mut worst: f64 = 0.0;
            for &k in &dims {
                for _ in 0..n {
                    let (p, q) = (minimal(k, rng), minimal(k, rng));
                    let spectral = op_norm(&(&p.to_element() - &q.to_element()))?;
                    worst = worst.max((spectral - spin::min_proj_distance(&p, &q)?).abs());
                }
            }
            Ok(Verdict::residual(
                worst,
                SPIN_FORMULA_TOL,
                json!({ "pairs": n * dims.len() }),
            ))
        },
    );

    b.check(
        "sqrt2_criterion",
        "minimal spin projections are at distance √2/2 iff their parameters are orthogonal",
        |rng| {
            let target = std::f64::consts::FRAC_1_SQRT_2;
            let mut worst: f64 = 0.0;
            let mut wrong = 0;
            for &k in &dims {
                for i in 0..n {
                    let p = minimal(k, rng);
                    let bp = spin::upsilon(&p)?;
                    let q = if i % 2 == 0 {
                        spin::upsilon_inv(k, &spin::orthogonal_unit_vector(&bp, rng))?
                    } else {
                        minimal(k, rng)
                    };
                    let bq = spin::upsilon(&q)?;
                    let inner: f64 = bp.iter().zip(&bq).map(|(x, y)| x * y).sum();
                    let d = op_norm(&(&p.to_element() - &q.to_element()))?;
                    let orthogonal = inner.abs() <= SPIN_FORMULA_TOL;
                    if orthogonal {
                        worst = worst.max((d - target).abs());
                    }
                    wrong += usize::from(orthogonal != ((d - target).abs() <= SPIN_FORMULA_TOL));
                }
            }
            Ok(Verdict {
                passed: wrong == 0 && worst <= SPIN_FORMULA_TOL,
                residual: Some(worst),
                detail: json!({ "pairs": n * dims.len(), "wrong_decisions": wrong }),
            })
        },
    );

    b.check(
        "diametrical_pairs",
        "minimal spin projections are at distance one iff they are complementary",
        |rng| {
            let mut worst: f64 = 0.0;
            let mut wrong = 0;
            for &k in &dims {
                for _ in 0..n {
                    let p = minimal(k, rng);
                    let pc = p.complement();
                    worst =
                        worst.max((op_norm(&(&p.to_element() - &pc.to_element()))? - 1.0).abs());
                    let q = minimal(k, rng);
                    let d = op_norm(&(&p.to_element() - &q.to_element()))?;
                    let complementary =
                        (&q.to_element() - &pc.to_element()).residual_norm() <= tol.eq_tol;
                    wrong += usize::from(complementary != (d >= 1.0 - tol.eq_tol));
                }
            }
            Ok(Verdict {
                passed: wrong == 0 && worst <= tol.eq_tol,
                residual: Some(worst),
                detail: json!({ "pairs": n * dims.len(), "wrong_decisions": wrong }),
            })
        },
    );

    let seed = b.config.seed;
    b.check(
        "counterexample",
        "an order isomorphism from the projections of spin:3 onto those of spin:4 preserves diametrical pairs but not √2/2",
        |rng| {
            let mut theta = spin::counterexample_theta(seed);
            let evidence = spin::projection_map_evidence(&mut theta, n, SQRT2_TRIALS, rng, &tol)?;
            let not_jordan = matches!(
                spin::jordan_iso_from_theta(&mut theta, rng, &tol),
                Err(JordanError::DimensionMismatch(_))
            );
            Ok(Verdict::flag(
                evidence.order_preserving && evidence.diametrical_preserving && evidence.sqrt2_violation_found && not_jordan,
                json!({ "evidence": evidence, "rejected_as_jordan_map": not_jordan }),
            ))
        },
    );

    b.check(
        "rotation_recovery",
        "a projection map induced by a rotation extends to a Jordan *-automorphism",
        |rng| {
            let mut worst: f64 = 0.0;
            for &k in &dims {
                let rotation = linalg::random_orthogonal(k - 1, rng);
                let mut theta = spin::ProjectionMap::from_orthogonal(k, rotation);
                let phi = spin::jordan_iso_from_theta(&mut theta, rng, &tol)?;
                for _ in 0..n {
                    let p = minimal(k, rng);
                    let image = theta.apply(&p)?.to_element();
                    worst = worst.max((&phi.apply(&p.to_element()) - &image).residual_norm());
                }
            }
            Ok(Verdict::residual(
                worst,
                tol.residual_tol,
                json!({ "factors": dims.len(), "samples": n }),
            ))
        },
    );
}

// ---------------------------------------------------------------- glennie

fn glennie(b: &mut Battery) {
    let alg = b.algebra().clone();
    let n = b.samples();
    let mut seen: Vec<AlgebraDescriptor> = Vec::new();
    for part in alg.summands() {
        if seen.contains(part) {
            continue;
        }
        seen.push(part.clone());
        let part = part.clone();
        if matches!(part, AlgebraDescriptor::OctonionHermitian3) {
            b.check(
                "glennie_violated[h3o]",
                "the Glennie identity fails in h3o, which is therefore not special",
                |rng| {
                    let search =
                        glennie_violation_search(&part, rng, GLENNIE_TRIALS, GLENNIE_THRESHOLD);
                    Ok(Verdict {
                        passed: search.found,
                        residual: Some(search.norm),
                        detail: json!({ "threshold": GLENNIE_THRESHOLD, "search": search }),
                    })
                },
            );
        } else {
            b.check(
                &format!("glennie_vanishes[{part}]"),
                "the Glennie identity holds in every special Jordan algebra",
                |rng| {
                    let search = glennie_violation_search(&part, rng, n, f64::INFINITY);
                    Ok(Verdict::residual(
                        search.norm,
                        GLENNIE_SPECIAL_TOL,
                        json!({ "triples": search.trials_run }),
                    ))
                },
            );
        }
    }
}

// ---------------------------------------------------------------- tingley

/// Generators tried per tingley run.
const TINGLEY_GENERATORS: usize = 3;

fn tingley(b: &mut Battery) {
    let alg = b.algebra().clone();
    let n = b.samples();
    let tol = b.tol();

    b.check(
        "identity_round_trip",
        "the identity isometry of the positive sphere extends to the identity map",
        |rng| {
            let delta = synthesize_delta(&JordanMap::identity(&alg), rng, &tol)?;
            let ext = extend_isometry(&delta, n, rng, &tol)?;
            let gap = ext.phi.max_entry_difference(&JordanMap::identity(&alg));
            Ok(Verdict::residual(
                gap,
                tol.residual_tol,
                json!({ "routes": ext.routes }),
            ))
        },
    );

    b.check("round_trip", "a sphere isometry built from a Jordan *-isomorphism extends back to that isomorphism, uniquely", |rng| {
        let mut worst: f64 = 0.0;
        let mut inconsistent = 0;
        for _ in 0..TINGLEY_GENERATORS {
            let phi0 = random_jordan_automorphism(&alg, rng)?;
            let delta = synthesize_delta(&phi0, rng, &tol)?;
            let ext = extend_isometry(&delta, n, rng, &tol)?;
            inconsistent += usize::from(!ext.projection_map.consistent());
            worst = worst
                .max(sup_distance(&ext.phi, &phi0, n, rng))
                .max(ext.uniqueness_gap)
                .max(ext.map_residuals.worst());
        }
        Ok(Verdict {
            passed: inconsistent == 0 && worst <= tol.residual_tol,
            residual: Some(worst),
            detail: json!({ "generators": TINGLEY_GENERATORS, "inconsistent_projection_maps": inconsistent }),
        })
    });

    b.check("projection_map", "the restriction of a sphere isometry to projections preserves order, orthogonality and centre", |rng| {
        let phi0 = random_jordan_automorphism(&alg, rng)?;
        let delta = synthesize_delta(&phi0, rng, &tol)?;
        let report = extract_projection_map(&delta, n, rng, &tol)?;
        Ok(Verdict::flag(report.consistent(), json!(report)))
    });

    if has_nontrivial_projections(&alg) {
        b.check(
            "perturbation_rejected",
            "maps that agree with an isometry on projections but not elsewhere are rejected",
            |rng| {
                let phi0 = random_jordan_automorphism(&alg, rng)?;
                let delta = synthesize_delta(&phi0, rng, &tol)?;
                let mut outcomes = Vec::new();
                for kind in [Perturbation::Square, Perturbation::Sqrt] {
                    let rejected = matches!(
                        extend_isometry(&perturb(&delta, kind), n, rng, &tol),
                        Err(JordanError::NotIsometric { .. })
                    );
                    outcomes.push((kind.to_string(), rejected));
                }
                let passed = outcomes.iter().all(|(_, r)| *r);
                Ok(Verdict::flag(passed, json!({ "rejected": outcomes })))
            },
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(alg: &str, seed: u64, samples: usize) -> SuiteConfig {
        SuiteConfig {
            samples,
            ..SuiteConfig::new(alg.parse().unwrap(), seed)
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!(matches!(
            "bogus".parse::<Suite>(),
            Err(JordanError::UnknownSuite(_))
        ));
    }

    #[test]
    fn inapplicable_suites() {
        let cfg = config("mat:3", 1, 4);
        assert!(matches!(
            run_suite(Suite::Spin, &cfg),
            Err(JordanError::SuiteNotApplicable { .. })
        ));
        let cfg = config("h3o", 1, 4);
        assert!(matches!(
            run_suite(Suite::Tingley, &cfg),
            Err(JordanError::SuiteNotApplicable { .. })
        ));
    }

    #[test]
    fn small_suites_pass() {
        for (suite, alg) in [
            (Suite::Axioms, "sum:mat:2,spin:4"),
            (Suite::Spectral, "spin:5"),
            (Suite::Projections, "mat:3"),
            (Suite::Spheres, "mat:3"),
            (Suite::TwoProj, "spin:4"),
            (Suite::Spin, "spin:4"),
            (Suite::Glennie, "mat:3"),
            (Suite::Tingley, "mat:2"),
        ] {
            let report = run_suite(suite, &config(alg, 42, 6)).unwrap();
            let failures: Vec<_> = report.failures().collect();
            assert!(report.passed, "{suite} on {alg}: {failures:?}");
            assert!(report.checks.iter().all(|c| !c.anchor.is_empty()));
        }
    }

    #[test]
    fn streams_do_not_depend_on_suite_composition() {
        let cfg = config("spin:3", 9, 3);
        let alone = run_suite(Suite::Axioms, &cfg).unwrap();
        let all = run_suite(Suite::All, &cfg).unwrap();
        for check in &alone.checks {
            let twin = all
                .checks
                .iter()
                .find(|c| c.name == format!("axioms/{}", check.name))
                .unwrap();
            assert_eq!(twin.residual, check.residual);
        }
    }

    #[test]
    fn check_errors_become_failures() {
        let mut report = VerificationReport::new("x", "mat:2", 0, Tolerances::default(), 1);
        let cfg = config("mat:2", 0, 1);
        let mut battery = Battery {
            suite: "x",
            prefixed: false,
            config: &cfg,
            report: &mut report,
        };
        battery.check("boom", "always fails", |_| {
            Err(JordanError::Contradiction("boom".into()))
        });
        assert!(!report.passed);
        assert_eq!(report.checks[0].detail["error"], "contradiction: boom");
    }
}
