//! Random elements, projections and positive-sphere points.
//!
//! None of these distributions is uniform in any geometric sense; they are built to
//! cover the interesting strata (rank-deficient elements, exact eigenvalues 0 and 1,
//! minimal and non-minimal projections).

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{AlgebraDescriptor, Element, Tolerances, C64, ZERO};
use crate::error::Result;
use crate::linalg;
use crate::spectral::j_spectrum_with;

/// Element with independent complex Gaussian coordinates.
pub fn random_element<R: Rng + ?Sized>(algebra: &AlgebraDescriptor, rng: &mut R) -> Element {
    let coords = (0..algebra.dim())
        .map(|_| linalg::complex_gaussian(rng))
        .collect();
    Element::raw(algebra.clone(), coords)
}

pub fn random_self_adjoint<R: Rng + ?Sized>(algebra: &AlgebraDescriptor, rng: &mut R) -> Element {
    random_element(algebra, rng).re_part()
}

/// Positive element of norm one.
///
/// Mixes squares of random self-adjoint elements with elements whose spectral values
/// are reassigned at random in `[0, 1]`, some of them exactly 0 or 1.
pub fn random_positive_sphere<R: Rng + ?Sized>(
    algebra: &AlgebraDescriptor,
    rng: &mut R,
) -> Element {
    let tol = Tolerances::default();
    loop {
        let x = random_self_adjoint(algebra, rng);
        let candidate = if rng.gen_bool(0.4) {
            x.square()
        } else {
            let data = j_spectrum_with(&x, &tol).expect("self-adjoint");
            let mut values: Vec<f64> = data
                .values
                .iter()
                .map(|_| match rng.gen_range(0..6) {
                    0 => 0.0,
                    1 => 1.0,
                    _ => rng.gen_range(0.0..1.0),
                })
                .collect();
            let top = rng.gen_range(0..values.len());
            values[top] = 1.0;
            let mut out = Element::zero(algebra);
            for (v, p) in values.iter().zip(&data.projections) {
                out += &p.scale(*v);
            }
            out
        };
        let norm = candidate.norm().expect("self-adjoint");
        if norm > 1e-3 {
            return candidate.scale(1.0 / norm).hermitian_part();
        }
    }
}

/// Positive element of norm one whose spectrum lies in `[low, 1]`.
pub fn random_positive_invertible<R: Rng + ?Sized>(
    algebra: &AlgebraDescriptor,
    low: f64,
    rng: &mut R,
) -> Element {
    let tol = Tolerances::default();
    let x = random_self_adjoint(algebra, rng);
    let data = j_spectrum_with(&x, &tol).expect("self-adjoint");
    let mut values: Vec<f64> = data
        .values
        .iter()
        .map(|_| rng.gen_range(low..=1.0))
        .collect();
    let top = rng.gen_range(0..values.len());
    values[top] = 1.0;
    let mut out = Element::zero(algebra);
    for (v, p) in values.iter().zip(&data.projections) {
        out += &p.scale(*v);
    }
    out
}

/// Random projection (possibly 0 or 1): a random sum of spectral projections.
pub fn random_projection<R: Rng + ?Sized>(algebra: &AlgebraDescriptor, rng: &mut R) -> Element {
    let x = random_self_adjoint(algebra, rng);
    let data = j_spectrum_with(&x, &Tolerances::default()).expect("self-adjoint");
    let mut out = Element::zero(algebra);
    for p in &data.projections {
        if rng.gen_bool(0.5) {
            out += p;
        }
    }
    out
}

/// Random projection other than 0 and 1.
pub fn random_nontrivial_projection<R: Rng + ?Sized>(
    algebra: &AlgebraDescriptor,
    rng: &mut R,
) -> Element {
    let x = random_self_adjoint(algebra, rng);
    let data = j_spectrum_with(&x, &Tolerances::default()).expect("self-adjoint");
    let k = data.projections.len();
    debug_assert!(k >= 2);
    let mut chosen: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.5)).collect();
    let count = chosen.iter().filter(|c| **c).count();
    if count == 0 {
        chosen[rng.gen_range(0..k)] = true;
    } else if count == k {
        chosen[rng.gen_range(0..k)] = false;
    }
    let mut out = Element::zero(algebra);
    for (p, keep) in data.projections.iter().zip(chosen) {
        if keep {
            out += p;
        }
    }
    out
}

/// Minimal projection inside a simple summand.
pub fn random_minimal_projection_in<R: Rng + ?Sized>(
    part: &AlgebraDescriptor,
    rng: &mut R,
) -> Element {
    match part {
        AlgebraDescriptor::Matrix(n) => {
            let v = linalg::random_unit_vector(*n, rng);
            let m = &v * v.adjoint();
            Element::raw(part.clone(), linalg::from_matrix(&m))
        }
        AlgebraDescriptor::Spin(n) => {
            let b = linalg::random_real_unit_vector(n - 1, rng);
            crate::spin::upsilon_inv_coords(&b)
        }
        AlgebraDescriptor::OctonionHermitian3 => {
            let x = random_self_adjoint(part, rng);
            let data = j_spectrum_with(&x, &Tolerances::default()).expect("self-adjoint");
            data.projections.choose(rng).expect("nonempty").clone()
        }
        AlgebraDescriptor::DirectSum(_) => unreachable!("summands are never sums"),
    }
}

/// Minimal projection of the whole algebra, in a randomly chosen summand.
pub fn random_minimal_projection<R: Rng + ?Sized>(
    algebra: &AlgebraDescriptor,
    rng: &mut R,
) -> Element {
    let index = rng.gen_range(0..algebra.summands().len());
    let part = random_minimal_projection_in(&algebra.summands()[index], rng);
    if algebra.is_direct_sum() {
        Element::embed_block(algebra, index, &part)
    } else {
        part
    }
}

/// Spectral projections of a random self-adjoint element of the corner `U_p(A)`;
/// generically these are minimal and sum to `p`.
pub fn corner_spectral_projections<R: Rng + ?Sized>(
    p: &Element,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<Vec<Element>> {
    let algebra = p.algebra();
    let x = p.u(&random_self_adjoint(algebra, rng)).hermitian_part();
    let shift = 4.0 + 2.0 * x.norm()?;
    let complement = &Element::unit(algebra) - p;
    let y = &x + &complement.scale(shift);
    let data = j_spectrum_with(&y, tol)?;
    Ok(data
        .values
        .iter()
        .zip(data.projections)
        .filter(|(v, _)| **v < shift / 2.0)
        .map(|(_, proj)| proj)
        .collect())
}

/// Random nonzero projection `r ≤ p` (with `p` nonzero).
pub fn random_subprojection<R: Rng + ?Sized>(
    p: &Element,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<Element> {
    let parts = corner_spectral_projections(p, rng, tol)?;
    let mut out = Element::zero(p.algebra());
    let mut any = false;
    for q in &parts {
        if rng.gen_bool(0.5) {
            out += q;
            any = true;
        }
    }
    if !any {
        out = parts.choose(rng).cloned().unwrap_or_else(|| p.clone());
    }
    Ok(out)
}

/// Random minimal projection `r ≤ p`.
pub fn random_minimal_subprojection<R: Rng + ?Sized>(
    p: &Element,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<Element> {
    let parts = corner_spectral_projections(p, rng, tol)?;
    Ok(parts.choose(rng).cloned().unwrap_or_else(|| p.clone()))
}

/// Unit vector in `C^n` as a column of coordinates.
pub fn random_unit_coords<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    let v = linalg::random_unit_vector(n, rng);
    let mut out = vec![ZERO; n];
    out.copy_from_slice(v.as_slice());
    out
}
