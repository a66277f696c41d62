// The subalgebra generated by two projections and its block model.
//
// ```text
// cargo run --example two_projections
// ```

use std::error::Error;

use jordan_spheres::algebra::Tolerances;
use jordan_spheres::rng::seeded;
use jordan_spheres::two_proj::{
    build_representation, orthogonality_by_subprojections, random_pair_with,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();
    let mut rng = seeded(23);

    // Two interior angles plus the corners p∧q and (1−p)∧(1−q), hidden by a random unitary.
    let (p, q) = random_pair_with(&[0.25, 0.6], [1, 0, 0, 1], &mut rng);
    println!("pair lives in {}", p.algebra());
    let rep = build_representation(&p, &q, 30, &mut rng, &tol)?;
    let inv = &rep.invariants;
    println!(
        "interior values of U_p(q): {:?}",
        inv.interior
            .iter()
            .map(|v| (v.t, v.multiplicity))
            .collect::<Vec<_>>()
    );
    println!("nonzero corners: {:?}", inv.corners);
    println!(
        "generated subalgebra has dimension {} (expected {}), built by {:?}",
        rep.residuals.generated_dimension, rep.residuals.expected_dimension, rep.route
    );
    println!(
        "block angles {:?}, worst residual {:.1e}",
        rep.blocks,
        rep.residuals.worst()
    );

    let test = orthogonality_by_subprojections(&p, &q, 20, &mut rng, &tol)?;
    println!(
        "p ⟂ q: {} (closest subprojections at distance {:?})",
        test.orthogonal, test.falsifier_distance
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
