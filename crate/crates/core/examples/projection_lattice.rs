// Projections: order, lattice operations, Peirce decomposition, central and
// abelian projections.
//
// ```text
// cargo run --example projection_lattice
// ```

use std::error::Error;

use jordan_spheres::algebra::{AlgebraDescriptor, Element, Tolerances};
use jordan_spheres::projections::{
    abelian_report, centrality_report, complement, is_abelian, is_central, is_orthogonal, lattice,
    leq, peirce_decompose, ProjectionPair,
};
use jordan_spheres::rng::seeded;
use jordan_spheres::sampling;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();
    let mut rng = seeded(5);
    let m3: AlgebraDescriptor = "mat:3".parse()?;

    let p = Element::diag(&[1.0, 1.0, 0.0]);
    let q = Element::diag(&[1.0, 0.0, 0.0]);
    println!("q ≤ p: {}, p ≤ q: {}", leq(&q, &p, &tol), leq(&p, &q, &tol));
    println!("p ⟂ 1−p: {}", is_orthogonal(&p, &complement(&p), &tol)?);

    let r = sampling::random_projection(&m3, &mut rng);
    let l = lattice(&p, &r, &tol)?;
    println!(
        "p ∨ r ≥ p: {}, p ∧ r ≤ p: {}",
        leq(&p, &l.join, &tol),
        leq(&l.meet, &p, &tol)
    );

    let pair = ProjectionPair::new(&p, &r, &tol)?;
    println!(
        "nonzero corners of (p, r): {:?}",
        pair.nonzero_corners(&tol)
    );

    let x = sampling::random_self_adjoint(&m3, &mut rng);
    let parts = peirce_decompose(&x, &p, &tol)?;
    let sum = &(&parts.part2 + &parts.part1) + &parts.part0;
    println!(
        "Peirce parts recompose with error {:.1e}",
        (sum - &x).max_abs()
    );

    // Block units of a direct sum are central; a rank-one matrix projection is not.
    let sum_alg: AlgebraDescriptor = "sum:mat:2,spin:3".parse()?;
    let unit0 = Element::block_unit(&sum_alg, 0);
    println!("block unit central: {}", is_central(&unit0, &tol)?);
    let report = centrality_report(&q, 20, &mut rng, &tol)?;
    println!("diag(1,0,0) central: {}", report.central);

    // Minimal projections of a matrix algebra are abelian; the unit of mat:2 is not.
    println!("diag(1,0,0) abelian: {}", is_abelian(&q, &tol)?);
    let unit = Element::unit(&"mat:2".parse()?);
    let report = abelian_report(&unit, 20, &mut rng, &tol)?;
    println!("unit of mat:2 abelian: {}", report.abelian);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
