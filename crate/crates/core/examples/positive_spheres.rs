// Metric characterizations on the positive unit sphere: projections by the
// double-sphere property, distance-one pairs by pure states, order by spheres of
// invertible elements.
//
// ```text
// cargo run --example positive_spheres
// ```

use std::error::Error;

use jordan_spheres::algebra::{Element, Tolerances};
use jordan_spheres::rng::seeded;
use jordan_spheres::spheres::{
    diametrical_witness, double_sphere_test, invertible_by_distance, order_by_spheres,
    orthogonality_by_corner_spheres,
};
use jordan_spheres::spin::SpinProjection;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();
    let mut rng = seeded(17);

    // A projection: every candidate b ≠ p is refuted by some c ∈ Sph(p) with ‖c − b‖ < 1.
    let p = Element::diag(&[1.0, 1.0, 0.0]);
    let out = double_sphere_test(&p, 50, &mut rng, &tol)?;
    println!(
        "diag(1,1,0): projection {}, {}/{} candidates refuted",
        out.is_projection, out.refuted, out.candidates
    );

    // Not a projection: the spectral falsifier escapes the double sphere.
    let a = Element::diag(&[1.0, 0.5, 0.0]);
    let out = double_sphere_test(&a, 50, &mut rng, &tol)?;
    let cert = out
        .certificate
        .expect("non-projections carry a certificate");
    println!(
        "diag(1,½,0): projection {}, falsifier at distance {:.3} (kernel residual {:.1e}, top residual {:.1e})",
        out.is_projection, cert.separation, cert.kernel_residual, cert.top_residual
    );

    // Distance one is witnessed by a pure state taking the values 1 and 0.
    let b = Element::diag(&[0.0, 0.25, 1.0]);
    if let Some(w) = diametrical_witness(&a, &b, &tol)? {
        println!(
            "‖a − b‖ = 1 witnessed by a state with ω(a) = {:.3}, ω(b) = {:.3}",
            w.omega_a, w.omega_b
        );
    }
    let near = Element::diag(&[1.0, 0.5, 0.2]);
    println!(
        "witness for a pair at distance 0.2: {:?}",
        diametrical_witness(&a, &near, &tol)?.is_some()
    );

    println!(
        "diag(1,½,¼) invertible by distance to 1: {}",
        invertible_by_distance(&Element::diag(&[1.0, 0.5, 0.25]), &tol)?
    );
    println!(
        "diag(1,½,0) invertible by distance to 1: {}",
        invertible_by_distance(&a, &tol)?
    );

    let q = Element::diag(&[1.0, 0.0, 0.0]);
    let below = order_by_spheres(&q, &p, 30, &mut rng, &tol)?;
    let above = order_by_spheres(&p, &q, 30, &mut rng, &tol)?;
    println!(
        "q ≤ p by spheres: {} ({} samples); p ≤ q: {} (falsifier distances {:?})",
        below.q_leq_p, below.sampled, above.q_leq_p, above.falsifier_distances
    );

    let e = SpinProjection::Minimal {
        b: vec![1.0, 0.0, 0.0],
    };
    let f = e.complement();
    let (e, f) = (e.to_element(), f.to_element());
    let out = orthogonality_by_corner_spheres(&e, &f, 30, &mut rng, &tol)?;
    println!(
        "complementary minimal projections of spin:4 orthogonal by corner spheres: {}",
        out.orthogonal
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
