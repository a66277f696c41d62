// An order isomorphism between the projection lattices of spin:3 and spin:4 that
// preserves distance-one pairs and yet is induced by no Jordan map.
//
// ```text
// cargo run --example spin_counterexample
// ```

use std::error::Error;

use jordan_spheres::algebra::Tolerances;
use jordan_spheres::linalg::random_real_unit_vector;
use jordan_spheres::rng::seeded;
use jordan_spheres::spin::{
    self, counterexample_theta, jordan_iso_from_theta, projection_map_evidence, SpinProjection,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();
    let mut rng = seeded(29);

    // Distances between minimal projections follow from their parameter vectors.
    let p = SpinProjection::Minimal {
        b: random_real_unit_vector(3, &mut rng),
    };
    let q = SpinProjection::Minimal {
        b: random_real_unit_vector(3, &mut rng),
    };
    println!(
        "‖p − q‖ = {:.6} in spin:4",
        spin::min_proj_distance(&p, &q)?
    );

    let mut theta = counterexample_theta(29);
    let e = projection_map_evidence(&mut theta, 300, 1000, &mut rng, &tol)?;
    println!(
        "over {} pairs: order preserved {}, distance-one pairs preserved {}",
        e.pairs, e.order_preserving, e.diametrical_preserving
    );
    println!(
        "√2/2 pair sent to a pair with |⟨b, b'⟩| = {:.3} after {} trials",
        e.sqrt2_violation_inner.unwrap_or(f64::NAN),
        e.sqrt2_trials
    );

    // A Jordan *-isomorphism would preserve dimension; the extension attempt says so.
    match jordan_iso_from_theta(&mut theta, &mut rng, &tol) {
        Ok(_) => println!("unexpected Jordan extension"),
        Err(err) => println!("no Jordan extension: {err}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
