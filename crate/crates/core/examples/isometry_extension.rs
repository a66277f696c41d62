// Rebuilding a Jordan *-isomorphism from a surjective isometry of positive spheres,
// and rejecting maps that only look like one.
//
// ```text
// cargo run --example isometry_extension
// ```

use std::error::Error;

use jordan_spheres::algebra::{AlgebraDescriptor, Tolerances};
use jordan_spheres::error::JordanError;
use jordan_spheres::rng::seeded;
use jordan_spheres::tingley::{
    extend_isometry, perturb, random_jordan_automorphism, sup_distance, synthesize_delta,
    Perturbation,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();
    let mut rng = seeded(37);
    for text in ["mat:3", "spin:5", "sum:mat:2,spin:4"] {
        let alg: AlgebraDescriptor = text.parse()?;
        let phi = random_jordan_automorphism(&alg, &mut rng)?;
        // The sphere map is the restriction of phi, seen only through evaluations.
        let delta = synthesize_delta(&phi, &mut rng, &tol)?;
        let ext = extend_isometry(&delta, 100, &mut rng, &tol)?;
        println!(
            "{text:>16}: routes {:?}, sup error {:.1e}, distance to the hidden map {:.1e}",
            ext.routes,
            ext.sup_error,
            sup_distance(&ext.phi, &phi, 100, &mut rng)
        );
        for kind in [Perturbation::Square, Perturbation::Sqrt] {
            match extend_isometry(&perturb(&delta, kind), 100, &mut rng, &tol) {
                Err(JordanError::NotIsometric {
                    original, mapped, ..
                }) => {
                    println!("{:>18} {kind}: rejected, a pair at distance {original:.3} maps to {mapped:.3}", "")
                }
                Err(other) => println!("{:>18} {kind}: rejected ({other})", ""),
                Ok(_) => println!("{:>18} {kind}: unexpectedly accepted", ""),
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
