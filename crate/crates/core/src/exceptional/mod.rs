//! Octonions, the exceptional algebra `h3o`, and the Glennie identity.
//!
//! The Glennie polynomial used here is `G(x,y,z) = H(x,y,z) − H(y,x,z)` with
//!
//! ```text
//! H(x,y,z) = 2{x,z,x}∘{y,{z,y²,z},x} − {x,{z,{x,{y,z,y},y},z},x}
//! ```
//!
//! It vanishes on every special Jordan algebra and not on `h3o`.

pub mod h3;
pub mod octonion;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraDescriptor, Element, Tolerances, C64};
use crate::error::{JordanError, Result};
pub use octonion::{octonion_mul, Octonion, FANO_LINES};

/// Builds a self-adjoint `h3o` element from its diagonal and off-diagonal octonions.
pub fn h3_element(diag: [f64; 3], off: [[f64; 8]; 3]) -> Element {
    let parts = h3::H3Parts {
        diag,
        off: off.map(Octonion),
    };
    let coords = parts
        .to_coords()
        .into_iter()
        .map(|x| C64::new(x, 0.0))
        .collect();
    Element::raw(AlgebraDescriptor::OctonionHermitian3, coords)
}

/// Jordan product restricted to `h3o` elements.
pub fn h3_jordan_product(a: &Element, b: &Element) -> Result<Element> {
    require_h3(a)?;
    crate::algebra::jordan_product(a, b)
}

fn require_h3(a: &Element) -> Result<()> {
    if a.algebra() != &AlgebraDescriptor::OctonionHermitian3 {
        return Err(JordanError::DescriptorMismatch {
            left: a.algebra().to_string(),
            right: "h3o".into(),
        });
    }
    Ok(())
}

/// Real parts of an `h3o` element, after checking self-adjointness.
pub(crate) fn h3_real_parts(a: &Element, tol: &Tolerances) -> Result<h3::H3Parts<f64>> {
    require_h3(a)?;
    let deviation = a.coords().iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if deviation > tol.eq_tol {
        return Err(JordanError::NotSelfAdjoint { deviation });
    }
    let real: Vec<f64> = a.coords().iter().map(|c| c.re).collect();
    Ok(h3::H3Parts::from_coords(&real))
}

/// Trace, quadratic trace and determinant of a self-adjoint `h3o` element.
pub fn h3_invariants(a: &Element) -> Result<(f64, f64, f64)> {
    let parts = h3_real_parts(a, &Tolerances::default())?;
    Ok((parts.trace(), parts.quadratic_trace(), parts.determinant()))
}

/// The three roots of the characteristic cubic, ascending.
pub fn h3_cubic_spectrum(a: &Element) -> Result<[f64; 3]> {
    let (t, s, n) = h3_invariants(a)?;
    Ok(h3::cubic_roots(t, s, n))
}

fn h_term(x: &Element, y: &Element, z: &Element) -> Element {
    let y2 = y.square();
    let left = x
        .triple(z, x)
        .circ(&y.triple(&z.triple(&y2, z), x))
        .scale(2.0);
    let inner = x.triple(&y.triple(z, y), y);
    let right = x.triple(&z.triple(&inner, z), x);
    &left - &right
}

/// Evaluates the Glennie polynomial at `(x, y, z)`.
pub fn glennie_eval(x: &Element, y: &Element, z: &Element) -> Result<Element> {
    crate::algebra::check_same(x, y)?;
    crate::algebra::check_same(x, z)?;
    Ok(&h_term(x, y, z) - &h_term(y, x, z))
}

/// Outcome of a randomized search for a triple violating the Glennie identity.
#[derive(Clone, Debug, Serialize)]
pub struct GlennieSearch {
    pub found: bool,
    pub trials_run: usize,
    pub norm: f64,
    #[serde(skip)]
    pub x: Element,
    #[serde(skip)]
    pub y: Element,
    #[serde(skip)]
    pub z: Element,
}

/// Random self-adjoint element whose coordinates lie in `[−1, 1]` (real and
/// imaginary parts), symmetrized.
pub fn random_box_self_adjoint<R: Rng + ?Sized>(
    algebra: &AlgebraDescriptor,
    rng: &mut R,
) -> Element {
    let coords = (0..algebra.dim())
        .map(|_| C64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
        .collect();
    Element::raw(algebra.clone(), coords).re_part()
}

/// Samples self-adjoint triples until `‖G(x,y,z)‖ > threshold` or the trials run out.
/// On failure the best triple seen is returned with `found = false`.
pub fn glennie_violation_search<R: Rng + ?Sized>(
    algebra: &AlgebraDescriptor,
    rng: &mut R,
    trials: usize,
    threshold: f64,
) -> GlennieSearch {
    let zero = Element::zero(algebra);
    let mut best = GlennieSearch {
        found: false,
        trials_run: 0,
        norm: f64::NEG_INFINITY,
        x: zero.clone(),
        y: zero.clone(),
        z: zero,
    };
    for trial in 0..trials {
        let x = random_box_self_adjoint(algebra, rng);
        let y = random_box_self_adjoint(algebra, rng);
        let z = random_box_self_adjoint(algebra, rng);
        let g = &h_term(&x, &y, &z) - &h_term(&y, &x, &z);
        let norm = g.residual_norm();
        best.trials_run = trial + 1;
        if norm > best.norm {
            best.norm = norm;
            best.x = x;
            best.y = y;
            best.z = z;
        }
        if norm > threshold {
            best.found = true;
            break;
        }
    }
    best
}

/// Eigenvalues of the multiplication operator `x ↦ a∘x` on the real form of `h3o`,
/// ascending. The operator is symmetric for the trace form, whose coordinate
/// weights are 1 on the diagonal and 2 off it; the weights are absorbed before
/// calling the symmetric eigensolver.
pub fn h3_multiplication_spectrum(a: &Element) -> Result<Vec<f64>> {
    h3_real_parts(a, &Tolerances::default())?;
    let dim = h3::DIM;
    let weight = |k: usize| if k < 3 { 1.0f64 } else { 2.0f64.sqrt() };
    let mut op = nalgebra::DMatrix::<f64>::zeros(dim, dim);
    for col in 0..dim {
        let image = a.re_part().circ(&Element::basis(a.algebra(), col));
        for row in 0..dim {
            op[(row, col)] = weight(row) * image.coords()[row].re / weight(col);
        }
    }
    let sym = (&op + op.transpose()) * 0.5;
    let mut values: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// The multiplication spectrum predicted by the Peirce decomposition: each
/// eigenvalue `λ` once and each mean `(λ_i + λ_j)/2`, `i < j`, eight times.
pub fn h3_peirce_spectrum(eigenvalues: [f64; 3]) -> Vec<f64> {
    let mut out = eigenvalues.to_vec();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        out.extend(std::iter::repeat_n((eigenvalues[i] + eigenvalues[j]) / 2.0, 8));
    }
    out.sort_by(f64::total_cmp);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn random_h3(rng: &mut impl Rng) -> Element {
        random_box_self_adjoint(&AlgebraDescriptor::OctonionHermitian3, rng)
    }

    #[test]
    fn diagonal_spectrum() {
        let a = h3_element([1.0, 2.0, 3.0], [[0.0; 8]; 3]);
        let r = h3_cubic_spectrum(&a).unwrap();
        for (x, y) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn single_off_diagonal_gives_symmetric_spectrum() {
        let o = [0.3, -0.2, 0.5, 0.1, 0.0, 0.4, -0.7, 0.2];
        let len = o.iter().map(|x| x * x).sum::<f64>().sqrt();
        for slot in 0..3 {
            let mut off = [[0.0; 8]; 3];
            off[slot] = o;
            let r = h3_cubic_spectrum(&h3_element([0.0; 3], off)).unwrap();
            for (x, y) in r.iter().zip([-len, 0.0, len]) {
                assert!((x - y).abs() < 1e-12, "{r:?}");
            }
        }
    }

    #[test]
    fn product_is_commutative_and_jordan() {
        let mut rng = seeded(11);
        for _ in 0..20 {
            let a = random_h3(&mut rng);
            let b = random_h3(&mut rng);
            assert!((&a.circ(&b) - &b.circ(&a)).max_abs() < 1e-14);
            let b2 = b.square();
            let lhs = a.circ(&b).circ(&b2);
            let rhs = a.circ(&b2).circ(&b);
            assert!((&lhs - &rhs).max_abs() < 1e-12);
        }
    }

    #[test]
    fn cayley_hamilton_holds() {
        let mut rng = seeded(12);
        for _ in 0..20 {
            let a = random_h3(&mut rng);
            let (t, s, n) = h3_invariants(&a).unwrap();
            let one = Element::unit(a.algebra());
            let a2 = a.square();
            let a3 = a.circ(&a2);
            let r = &(&a3 - &a2.scale(t)) + &(&a.scale(s) - &one.scale(n));
            assert!(r.max_abs() < 1e-12);
            let roots = h3_cubic_spectrum(&a).unwrap();
            assert!((roots.iter().sum::<f64>() - t).abs() < 1e-9);
        }
    }

    #[test]
    fn unit_is_neutral_on_complex_elements() {
        let mut rng = seeded(13);
        let alg = AlgebraDescriptor::OctonionHermitian3;
        let coords = (0..27)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let a = Element::new(alg.clone(), coords).unwrap();
        assert!((&Element::unit(&alg).circ(&a) - &a).max_abs() < 1e-15);
    }

    #[test]
    fn glennie_vanishes_on_special_models() {
        let mut rng = seeded(14);
        for text in ["mat:3", "spin:6", "sum:mat:2,spin:4"] {
            let alg: AlgebraDescriptor = text.parse().unwrap();
            let s = glennie_violation_search(&alg, &mut rng, 20, 1e-10);
            assert!(!s.found, "{text}: {}", s.norm);
        }
    }

    #[test]
    fn glennie_is_violated_in_h3() {
        let mut rng = seeded(15);
        let s =
            glennie_violation_search(&AlgebraDescriptor::OctonionHermitian3, &mut rng, 100, 1e-3);
        assert!(s.found);
        let x = random_h3(&mut rng);
        assert!(glennie_eval(&x, &x, &x).unwrap().max_abs() < 1e-10);
    }

    #[test]
    fn infinite_threshold_reports_best_candidate() {
        let mut rng = seeded(16);
        let s = glennie_violation_search(
            &AlgebraDescriptor::OctonionHermitian3,
            &mut rng,
            3,
            f64::INFINITY,
        );
        assert!(!s.found);
        assert_eq!(s.trials_run, 3);
        assert!(s.norm > 0.0);
    }

    #[test]
    fn multiplication_operator_matches_peirce_prediction() {
        let mut rng = seeded(17);
        for _ in 0..10 {
            let a = random_h3(&mut rng);
            let got = h3_multiplication_spectrum(&a).unwrap();
            let want = h3_peirce_spectrum(h3_cubic_spectrum(&a).unwrap());
            for (x, y) in got.iter().zip(&want) {
                assert!((x - y).abs() < 1e-9, "{got:?} vs {want:?}");
            }
        }
    }
}
