// Spectral decomposition, norms and functional calculus.
//
// ```text
// cargo run --example spectral_calculus
// ```

use std::error::Error;

use jordan_spheres::algebra::{AlgebraDescriptor, Element, Tolerances};
use jordan_spheres::exceptional::h3_element;
use jordan_spheres::rng::seeded;
use jordan_spheres::sampling;
use jordan_spheres::spectral::{
    classify_positive, functional_calculus, j_spectrum_with, range_projection,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();

    // A rank-one element of h3o: spectrum 0, 0, 2.
    let mut off = [[0.0; 8]; 3];
    off[2][3] = 1.0;
    let a = h3_element([1.0, 1.0, 0.0], off);
    let data = j_spectrum_with(&a, &tol)?;
    println!(
        "h3o spectrum {:?} with multiplicities {:?}",
        data.values, data.multiplicities
    );
    println!("‖a‖ = {:.6}", a.norm()?);
    let r = range_projection(&a.square(), &tol)?;
    println!(
        "range projection of a² has rank {}",
        j_spectrum_with(&r, &tol)?.multiplicities.last().unwrap()
    );

    let mut rng = seeded(3);
    for text in ["mat:4", "spin:6", "h3o"] {
        let alg: AlgebraDescriptor = text.parse()?;
        let x = sampling::random_self_adjoint(&alg, &mut rng);
        let data = j_spectrum_with(&x, &tol)?;
        let rebuilt = (data.reconstruct() - &x).max_abs();
        // |x| through functional calculus, then a positivity check on it.
        let abs = functional_calculus(&x, f64::abs)?;
        let class = classify_positive(&abs, &tol)?;
        let squared = (functional_calculus(&x, |t| t * t)? - x.square()).max_abs();
        println!(
            "{text:>6}: {} distinct values, reconstruction {rebuilt:.1e}, |x| positive {} invertible {}, f(t)=t² error {squared:.1e}",
            data.values.len(),
            class.positive,
            class.invertible
        );
    }

    let p = sampling::random_positive_sphere(&"mat:3".parse()?, &mut rng);
    let class = classify_positive(&p, &tol)?;
    println!(
        "positive sphere point: norm {:.3}, smallest eigenvalue {:.3}",
        class.norm, class.min_eigenvalue
    );
    assert!((Element::unit(p.algebra()).norm()? - 1.0).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
