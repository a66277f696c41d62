// The Glennie identity holds in special Jordan algebras and fails in h3o.
//
// ```text
// cargo run --example glennie_separation
// ```

use std::error::Error;

use jordan_spheres::algebra::AlgebraDescriptor;
use jordan_spheres::exceptional::glennie_violation_search;
use jordan_spheres::rng::seeded;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rng = seeded(31);
    for text in ["mat:3", "spin:6", "sum:mat:2,spin:3", "h3o"] {
        let alg: AlgebraDescriptor = text.parse()?;
        // An infinite threshold keeps searching and reports the largest value seen.
        let search = glennie_violation_search(&alg, &mut rng, 200, f64::INFINITY);
        println!(
            "{text:>16}: largest ‖G(x,y,z)‖ over {} triples = {:.3e}",
            search.trials_run, search.norm
        );
    }
    let search = glennie_violation_search(
        &AlgebraDescriptor::OctonionHermitian3,
        &mut rng,
        10_000,
        1e-3,
    );
    println!(
        "h3o violation above 1e-3 found after {} triples",
        search.trials_run
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
