// The Jordan product in each supported model, and the identities it satisfies.
//
// ```text
// cargo run --example jordan_axioms
// ```

use std::error::Error;

use jordan_spheres::algebra::{AlgebraDescriptor, Element};
use jordan_spheres::rng::seeded;
use jordan_spheres::sampling;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // In mat:n the product is the symmetrized matrix product.
    let a = Element::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]])?;
    let b = Element::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])?;
    println!(
        "a∘b in mat:2 = {:?}",
        a.circ(&b)
            .re_part()
            .coords()
            .iter()
            .map(|z| z.re)
            .collect::<Vec<_>>()
    );

    // In spin:n the first coordinate carries the unit.
    let spin: AlgebraDescriptor = "spin:4".parse()?;
    let x = Element::from_real(spin.clone(), &[0.5, 1.0, 0.0, 0.0])?;
    println!(
        "x² in spin:4 = {:?}",
        x.square()
            .re_part()
            .coords()
            .iter()
            .map(|z| z.re)
            .collect::<Vec<_>>()
    );

    let mut rng = seeded(11);
    for text in ["mat:3", "spin:5", "h3o", "sum:mat:2,spin:3"] {
        let alg: AlgebraDescriptor = text.parse()?;
        let a = sampling::random_element(&alg, &mut rng);
        let b = sampling::random_element(&alg, &mut rng);
        let a2 = a.square();
        let commutativity = (a.circ(&b) - b.circ(&a)).max_abs();
        let jordan = (a.circ(&b).circ(&a2) - a.circ(&b.circ(&a2))).max_abs();
        let star = (a.circ(&b).star() - a.star().circ(&b.star())).max_abs();
        let unit = (Element::unit(&alg).circ(&a) - &a).max_abs();
        println!(
            "{text:>18} (dim {:>2}, rank {}): commutativity {commutativity:.1e}, Jordan identity {jordan:.1e}, involution {star:.1e}, unit {unit:.1e}",
            alg.dim(),
            alg.rank()
        );
        assert!(commutativity.max(jordan).max(star).max(unit) < 1e-9);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
