//! Desk-scale acceptance run: ten criteria, one PASS/FAIL line each.
//!
//! Built with `harness = false` so the summary lines are printed even when every
//! criterion passes. The process exits non-zero when any criterion fails.

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use jordan_spheres::algebra::{AlgebraDescriptor, Element, Tolerances};
use jordan_spheres::error::JordanError;
use jordan_spheres::exceptional::{
    glennie_violation_search, h3_cubic_spectrum, h3_multiplication_spectrum, h3_peirce_spectrum,
    random_box_self_adjoint,
};
use jordan_spheres::linalg;
use jordan_spheres::rng::{seeded, StreamRng};
use jordan_spheres::sampling;
use jordan_spheres::spectral::j_spectrum_with;
use jordan_spheres::spheres::{diametrical_witness, double_sphere_test};
use jordan_spheres::spin::{self, SpinProjection};
use jordan_spheres::suites::{diametrical_pair, near_pair};
use jordan_spheres::tingley::{
    extend_isometry, perturb, order_routes_test, random_jordan_automorphism, random_order_instance,
    sup_distance, synthesize_delta, Perturbation,
};
use jordan_spheres::two_proj::{build_representation, random_pair_with};

const EQ_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-8;
const SPIN_TOL: f64 = 1e-12;
const GLENNIE_SPECIAL_TOL: f64 = 1e-10;
const GLENNIE_THRESHOLD: f64 = 1e-3;

type Outcome = Result<String, String>;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn alg(text: &str) -> AlgebraDescriptor {
    text.parse().expect("valid descriptor")
}

fn spectral_distance(a: &Element, b: &Element) -> f64 {
    j_spectrum_with(&(a - b).hermitian_part(), &tol())
        .expect("self-adjoint")
        .spectral_radius()
}

fn ensure(ok: bool, summary: String) -> Outcome {
    if ok {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn double_sphere(rng: &mut StreamRng) -> Outcome {
    let mut summary = Vec::new();
    let mut ok = true;
    for text in ["mat:3", "spin:5"] {
        let a_alg = alg(text);
        let (mut wrong, mut bad_cert, mut unrefuted, mut projections) = (0, 0, 0, 0);
        for _ in 0..200 {
            let a = sampling::random_positive_sphere(&a_alg, rng);
            let data = j_spectrum_with(&a, &tol()).map_err(|e| e.to_string())?;
            let binary = data
                .values
                .iter()
                .all(|v| v.abs() <= EQ_TOL || (v - 1.0).abs() <= EQ_TOL);
            let out = double_sphere_test(&a, 100, rng, &tol()).map_err(|e| e.to_string())?;
            wrong += usize::from(out.is_projection != binary);
            if out.is_projection {
                projections += 1;
                unrefuted += usize::from(out.candidates != 100 || out.refuted != 100);
            } else if !out.certificate.is_some_and(|c| c.passed) {
                bad_cert += 1;
            }
        }
        ok &= wrong == 0 && bad_cert == 0 && unrefuted == 0 && projections > 0;
        summary.push(format!(
            "{text}: 200 elements, {projections} projections, {wrong} wrong, {bad_cert} bad certificates, {unrefuted} unrefuted sweeps"
        ));
    }
    ensure(ok, summary.join("; "))
}

fn two_projection_representation(rng: &mut StreamRng) -> Outcome {
    let m4 = alg("mat:4");
    let (mut worst, mut worst_form) = (0.0f64, 0.0f64);
    let mut dimension_failures = 0;
    let shapes: [(&[f64], [usize; 4]); 4] = [
        (&[0.3], [1, 0, 1, 0]),
        (&[0.2, 0.7], [0, 0, 0, 0]),
        (&[0.5, 0.5], [0, 0, 0, 0]),
        (&[0.9], [0, 1, 0, 1]),
    ];
    for k in 0..100 {
        let (p, q) = if k % 3 == 0 {
            let (interior, ranks) = shapes[(k / 3) % shapes.len()];
            random_pair_with(interior, ranks, rng)
        } else {
            (
                sampling::random_projection(&m4, rng),
                sampling::random_projection(&m4, rng),
            )
        };
        let rep =
            build_representation(&p, &q, 20, rng, &tol()).map_err(|e| format!("pair {k}: {e}"))?;
        let r = rep.residuals;
        worst = worst
            .max(r.map.multiplicativity)
            .max(r.map.involution)
            .max(r.map.isometry);
        worst_form = worst_form.max(r.p_form).max(r.q_form);
        dimension_failures += usize::from(r.generated_dimension != r.expected_dimension);
    }
    ensure(
        worst <= RESIDUAL_TOL && worst_form <= RESIDUAL_TOL && dimension_failures == 0,
        format!("100 mat:4 pairs, map residual {worst:.2e}, form residual {worst_form:.2e}, {dimension_failures} dimension mismatches"),
    )
}

fn random_minimal(n: usize, rng: &mut StreamRng) -> SpinProjection {
    SpinProjection::Minimal {
        b: linalg::random_real_unit_vector(n - 1, rng),
    }
}

fn spin_distance_formula(rng: &mut StreamRng) -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let n = 3 + k % 6;
        let (p, q) = (random_minimal(n, rng), random_minimal(n, rng));
        let spectral = spectral_distance(&p.to_element(), &q.to_element());
        let formula = spin::min_proj_distance(&p, &q).map_err(|e| e.to_string())?;
        worst = worst.max((spectral - formula).abs());
    }
    ensure(
        worst <= SPIN_TOL,
        format!("1000 pairs in spin:3..8, worst deviation {worst:.2e}"),
    )
}

fn sqrt2_criterion(rng: &mut StreamRng) -> Outcome {
    let (mut forward, mut backward) = (0, 0);
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let n = 3 + k % 6;
        let p = random_minimal(n, rng);
        let bp = spin::upsilon(&p).map_err(|e| e.to_string())?;
        let q = if k % 2 == 0 {
            spin::upsilon_inv(n, &spin::orthogonal_unit_vector(&bp, rng))
                .map_err(|e| e.to_string())?
        } else {
            random_minimal(n, rng)
        };
        let bq = spin::upsilon(&q).map_err(|e| e.to_string())?;
        let inner: f64 = bp.iter().zip(&bq).map(|(x, y)| x * y).sum();
        let d = spectral_distance(&p.to_element(), &q.to_element());
        let at_sqrt2 = (d - FRAC_1_SQRT_2).abs() <= SPIN_TOL;
        let orthogonal = inner.abs() <= SPIN_TOL;
        if orthogonal {
            worst = worst.max((d - FRAC_1_SQRT_2).abs());
        }
        forward += usize::from(orthogonal && !at_sqrt2);
        backward += usize::from(at_sqrt2 && !orthogonal);
    }
    ensure(
        forward == 0 && backward == 0,
        format!("1000 pairs, {forward} orthogonal pairs off √2/2, {backward} √2/2 pairs not orthogonal, worst {worst:.2e}"),
    )
}

fn counterexample(seed: u64, rng: &mut StreamRng) -> Outcome {
    let mut theta = spin::counterexample_theta(seed);
    let e = spin::projection_map_evidence(&mut theta, 1000, 1000, rng, &tol())
        .map_err(|e| e.to_string())?;
    ensure(
        e.order_preserving && e.diametrical_preserving && e.sqrt2_violation_found,
        format!(
            "{} pairs, {} order failures, {} diametrical failures, √2/2 violation found: {} (within {} trials)",
            e.pairs, e.order_failures, e.diametrical_failures, e.sqrt2_violation_found, e.sqrt2_trials
        ),
    )
}

fn glennie_separation(rng: &mut StreamRng) -> Outcome {
    let mut worst = 0.0f64;
    for text in [
        "mat:2",
        "mat:3",
        "spin:3",
        "spin:4",
        "spin:5",
        "spin:6",
        "sum:mat:2,spin:4",
    ] {
        let s = glennie_violation_search(&alg(text), rng, 100, f64::INFINITY);
        worst = worst.max(s.norm);
    }
    let h3 = glennie_violation_search(
        &AlgebraDescriptor::OctonionHermitian3,
        rng,
        10_000,
        GLENNIE_THRESHOLD,
    );
    ensure(
        worst <= GLENNIE_SPECIAL_TOL && h3.found,
        format!(
            "special models worst {worst:.2e}; h3o violation of norm {:.3e} after {} triples",
            h3.norm, h3.trials_run
        ),
    )
}

fn tingley_round_trip(rng: &mut StreamRng) -> Outcome {
    let models = [
        "mat:2",
        "mat:3",
        "spin:3",
        "spin:4",
        "spin:5",
        "spin:6",
        "sum:mat:2,spin:4",
    ];
    let mut worst = 0.0f64;
    let mut accepted = 0;
    for k in 0..20 {
        let a = alg(models[k % models.len()]);
        let phi0 = random_jordan_automorphism(&a, rng).map_err(|e| e.to_string())?;
        let delta = synthesize_delta(&phi0, rng, &tol()).map_err(|e| e.to_string())?;
        let ext = extend_isometry(&delta, 200, rng, &tol())
            .map_err(|e| format!("generator {k} on {a}: {e}"))?;
        worst = worst.max(sup_distance(&ext.phi, &phi0, 200, rng));
        for kind in [Perturbation::Square, Perturbation::Sqrt] {
            match extend_isometry(&perturb(&delta, kind), 200, rng, &tol()) {
                Err(JordanError::NotIsometric {
                    original, mapped, ..
                }) if (original - mapped).abs() > EQ_TOL => {}
                _ => accepted += 1,
            }
        }
    }
    ensure(
        worst <= RESIDUAL_TOL && accepted == 0,
        format!("20 generators, worst sup error {worst:.2e}, {accepted} perturbations not rejected with a witness"),
    )
}

fn pure_state_witnesses(rng: &mut StreamRng) -> Outcome {
    let models = ["mat:3", "spin:5", "h3o", "sum:mat:2,spin:4"];
    let (mut missing, mut spurious) = (0, 0);
    let mut worst = 0.0f64;
    for k in 0..200 {
        let a_alg = alg(models[k % models.len()]);
        let (a, b) = diametrical_pair(&a_alg, rng).map_err(|e| e.to_string())?;
        match diametrical_witness(&a, &b, &tol()).map_err(|e| e.to_string())? {
            Some(w) => {
                let (hi, lo) = (w.omega_a.max(w.omega_b), w.omega_a.min(w.omega_b));
                worst = worst.max((hi - 1.0).abs()).max(lo.abs());
            }
            None => missing += 1,
        }
        let (a, b) = near_pair(&a_alg, rng).map_err(|e| e.to_string())?;
        spurious += usize::from(
            diametrical_witness(&a, &b, &tol())
                .map_err(|e| e.to_string())?
                .is_some(),
        );
    }
    ensure(
        missing == 0 && spurious == 0 && worst <= EQ_TOL,
        format!("200+200 pairs, {missing} missing witnesses, {spurious} spurious, worst state value error {worst:.2e}"),
    )
}

fn h3_multiplication_oracle(rng: &mut StreamRng) -> Outcome {
    let h3 = AlgebraDescriptor::OctonionHermitian3;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = random_box_self_adjoint(&h3, rng);
        let got = h3_multiplication_spectrum(&a).map_err(|e| e.to_string())?;
        let want = h3_peirce_spectrum(h3_cubic_spectrum(&a).map_err(|e| e.to_string())?);
        for (g, w) in got.iter().zip(&want) {
            worst = worst.max((g - w).abs());
        }
    }
    ensure(
        worst <= EQ_TOL,
        format!("100 elements, worst eigenvalue deviation {worst:.2e}"),
    )
}

fn order_routes(rng: &mut StreamRng) -> Outcome {
    let mut summary = Vec::new();
    let mut ok = true;
    for text in ["mat:2", "mat:3", "spin:4", "h3o", "sum:mat:2,spin:4"] {
        let a_alg = alg(text);
        let (mut disagreements, mut below) = (0, 0);
        for _ in 0..500 {
            let q = sampling::random_nontrivial_projection(&a_alg, rng);
            let a = random_order_instance(&q, rng);
            let r = order_routes_test(&q, &a, 3, rng, &tol()).map_err(|e| e.to_string())?;
            disagreements += usize::from(!r.agree);
            below += usize::from(r.leq());
        }
        ok &= disagreements == 0 && below > 0 && below < 500;
        summary.push(format!(
            "{text}: {disagreements}/500 disagreements ({below} below)"
        ));
    }
    ensure(ok, summary.join("; "))
}

struct Criterion {
    label: &'static str,
    budget: Option<Duration>,
    run: fn(u64, &mut StreamRng) -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            label: "double-sphere characterization of projections",
            budget: Some(Duration::from_secs(30)),
            run: |_, rng| double_sphere(rng),
        },
        Criterion {
            label: "two-projection representation",
            budget: Some(Duration::from_secs(60)),
            run: |_, rng| two_projection_representation(rng),
        },
        Criterion {
            label: "spin distance formula",
            budget: None,
            run: |_, rng| spin_distance_formula(rng),
        },
        Criterion {
            label: "√2/2 criterion in spin factors",
            budget: None,
            run: |_, rng| sqrt2_criterion(rng),
        },
        Criterion {
            label: "spin:3 → spin:4 order isomorphism without Jordan extension",
            budget: None,
            run: counterexample,
        },
        Criterion {
            label: "Glennie separation of h3o",
            budget: Some(Duration::from_secs(60)),
            run: |_, rng| glennie_separation(rng),
        },
        Criterion {
            label: "isometry extension round trip",
            budget: Some(Duration::from_secs(120)),
            run: |_, rng| tingley_round_trip(rng),
        },
        Criterion {
            label: "pure-state witnesses of distance one",
            budget: None,
            run: |_, rng| pure_state_witnesses(rng),
        },
        Criterion {
            label: "h3o multiplication-operator spectrum",
            budget: None,
            run: |_, rng| h3_multiplication_oracle(rng),
        },
        Criterion {
            label: "order characterizations agree",
            budget: None,
            run: |_, rng| order_routes(rng),
        },
    ];
    let mut failures = 0;
    for (index, criterion) in criteria.iter().enumerate() {
        let seed = 1000 + index as u64;
        let mut rng = seeded(seed);
        let _warm: u32 = rng.gen();
        let start = Instant::now();
        let outcome = (criterion.run)(seed, &mut rng);
        let elapsed = start.elapsed();
        let over_budget = criterion.budget.is_some_and(|b| elapsed > b);
        let (passed, mut text) = match outcome {
            Ok(text) => (!over_budget, text),
            Err(text) => (false, text),
        };
        if over_budget {
            text.push_str(&format!(
                "; over the {:?} budget",
                criterion.budget.unwrap()
            ));
        }
        failures += usize::from(!passed);
        println!(
            "{} criterion {:>2} {}: {} [{:.1}s]",
            if passed { "PASS" } else { "FAIL" },
            index + 1,
            criterion.label,
            text,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
