//! Randomized invariants. Structured objects are drawn from a seeded stream so that a
//! shrunk counterexample is reproducible from its seed alone.

use proptest::prelude::*;

use jordan_spheres::algebra::{AlgebraDescriptor, Element, Tolerances};
use jordan_spheres::projections::{complement, is_orthogonal, is_projection, leq, ProjectionPair};
use jordan_spheres::rng::seeded;
use jordan_spheres::sampling;
use jordan_spheres::spectral::{functional_calculus, j_spectrum_with};
use jordan_spheres::spheres::diametrical_witness;
use jordan_spheres::spin::{self, SpinProjection};
use jordan_spheres::suites::{run_suite, Suite, SuiteConfig};
use jordan_spheres::two_proj::two_proj_invariants;

const MODELS: &[&str] = &[
    "mat:1",
    "mat:2",
    "mat:3",
    "spin:3",
    "spin:5",
    "h3o",
    "sum:mat:2,spin:3",
    "sum:mat:1,h3o",
];

fn model() -> impl Strategy<Value = AlgebraDescriptor> {
    prop::sample::select(MODELS).prop_map(|text| text.parse().unwrap())
}

fn small_descriptor() -> impl Strategy<Value = AlgebraDescriptor> {
    let leaf = prop_oneof![
        (1usize..6).prop_map(|n| AlgebraDescriptor::matrix(n).unwrap()),
        (3usize..9).prop_map(|n| AlgebraDescriptor::spin(n).unwrap()),
        Just(AlgebraDescriptor::OctonionHermitian3),
    ];
    prop_oneof![
        leaf.clone(),
        prop::collection::vec(leaf, 1..4)
            .prop_map(|parts| AlgebraDescriptor::direct_sum(parts).unwrap()),
    ]
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn scaled(a: &Element) -> f64 {
    1.0 + a.max_abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn descriptor_display_round_trips(d in small_descriptor()) {
        let text = d.to_string();
        prop_assert_eq!(text.parse::<AlgebraDescriptor>().unwrap(), d);
    }

    #[test]
    fn jordan_identity_and_commutativity(alg in model(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = sampling::random_element(&alg, &mut rng);
        let b = sampling::random_element(&alg, &mut rng);
        let scale = scaled(&a).powi(3) * scaled(&b);
        prop_assert!((a.circ(&b) - b.circ(&a)).max_abs() <= 1e-12 * scale);
        let a2 = a.square();
        let lhs = a.circ(&b).circ(&a2);
        let rhs = a.circ(&b.circ(&a2));
        prop_assert!((lhs - rhs).max_abs() <= 1e-10 * scale);
    }

    #[test]
    fn involution_is_an_antilinear_anti_automorphism(alg in model(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = sampling::random_element(&alg, &mut rng);
        let b = sampling::random_element(&alg, &mut rng);
        prop_assert!((a.star().star() - &a).max_abs() <= 1e-14 * scaled(&a));
        let lhs = a.circ(&b).star();
        let rhs = a.star().circ(&b.star());
        prop_assert!((lhs - rhs).max_abs() <= 1e-12 * scaled(&a) * scaled(&b));
    }

    #[test]
    fn spectral_decomposition_reconstructs(alg in model(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = sampling::random_self_adjoint(&alg, &mut rng);
        let data = j_spectrum_with(&a, &tol()).unwrap();
        prop_assert!((data.reconstruct() - &a).max_abs() <= 1e-9 * scaled(&a));
        let mut total = Element::zero(&alg);
        for (i, p) in data.projections.iter().enumerate() {
            prop_assert!(is_projection(p, &tol()));
            total += p;
            for q in &data.projections[i + 1..] {
                prop_assert!(p.circ(q).max_abs() <= 1e-9);
            }
        }
        prop_assert!((total - Element::unit(&alg)).max_abs() <= 1e-9);
        let norm = a.norm().unwrap();
        prop_assert!((norm - data.spectral_radius()).abs() <= 1e-12 * scaled(&a));
    }

    #[test]
    fn functional_calculus_square_matches_product(alg in model(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = sampling::random_self_adjoint(&alg, &mut rng);
        let via_spectrum = functional_calculus(&a, |t| t * t).unwrap();
        prop_assert!((via_spectrum - a.square()).max_abs() <= 1e-9 * scaled(&a).powi(2));
    }

    #[test]
    fn projections_are_idempotent_with_projection_complements(alg in model(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let p = sampling::random_projection(&alg, &mut rng);
        let c = complement(&p);
        prop_assert!(is_projection(&p, &tol()));
        prop_assert!(is_projection(&c, &tol()));
        prop_assert!(is_orthogonal(&p, &c, &tol()).unwrap());
        prop_assert!(leq(&p, &Element::unit(&alg), &tol()));
        prop_assert!((p.u(&p) - &p).max_abs() <= 1e-9);
    }

    #[test]
    fn corners_of_two_projections_are_orthogonal(alg in model(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let p = sampling::random_projection(&alg, &mut rng);
        let q = sampling::random_projection(&alg, &mut rng);
        let pair = ProjectionPair::new(&p, &q, &tol()).unwrap();
        let corners = pair.nonzero_corners(&tol());
        for (i, x) in corners.iter().enumerate() {
            let e = pair.corner(*x);
            prop_assert!(is_projection(e, &tol()));
            for y in &corners[i + 1..] {
                prop_assert!(is_orthogonal(e, pair.corner(*y), &tol()).unwrap());
            }
        }
    }

    #[test]
    fn two_projection_dimension_is_symmetric(seed in any::<u64>(), n in 2usize..5) {
        let alg = AlgebraDescriptor::matrix(n).unwrap();
        let mut rng = seeded(seed);
        let p = sampling::random_projection(&alg, &mut rng);
        let q = sampling::random_projection(&alg, &mut rng);
        let forward = two_proj_invariants(&p, &q, &tol()).unwrap();
        let backward = two_proj_invariants(&q, &p, &tol()).unwrap();
        prop_assert_eq!(forward.expected_dimension(), backward.expected_dimension());
    }

    #[test]
    fn spin_distance_formula_is_a_metric(n in 3usize..9, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let draw = |rng: &mut _| SpinProjection::Minimal { b: jordan_spheres::linalg::random_real_unit_vector(n - 1, rng) };
        let (p, q, r) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let pq = spin::min_proj_distance(&p, &q).unwrap();
        let qp = spin::min_proj_distance(&q, &p).unwrap();
        let pr = spin::min_proj_distance(&p, &r).unwrap();
        let rq = spin::min_proj_distance(&r, &q).unwrap();
        prop_assert!((pq - qp).abs() <= 1e-15);
        prop_assert!(pq <= pr + rq + 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&pq));
        prop_assert!(spin::min_proj_distance(&p, &p).unwrap() <= 1e-15);
    }

    #[test]
    fn witnesses_exist_only_at_distance_one(alg in model(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = sampling::random_positive_sphere(&alg, &mut rng);
        let b = sampling::random_positive_sphere(&alg, &mut rng);
        let distance = (&a - &b).norm().unwrap();
        let witness = diametrical_witness(&a, &b, &tol()).unwrap();
        prop_assert_eq!(witness.is_some(), (distance - 1.0).abs() <= 1e-9);
        if let Some(w) = witness {
            prop_assert!(((w.evaluate(&a) - w.evaluate(&b)).abs() - 1.0).abs() <= 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn suite_reports_are_reproducible(seed in any::<u64>()) {
        let mut config = SuiteConfig::new("sum:mat:2,spin:3".parse().unwrap(), seed);
        config.samples = 4;
        let first = run_suite(Suite::Axioms, &config).unwrap();
        let second = run_suite(Suite::Axioms, &config).unwrap();
        prop_assert_eq!(first.to_json(), second.to_json());
        prop_assert!(first.passed);
    }
}
