//! Spectra, functional calculus, norms and positivity for self-adjoint elements.
//!
//! Spectra are computed summand by summand: Hermitian eigen-decomposition for
//! `mat:n`, the quadratic minimal polynomial for `spin:n`, and the characteristic
//! cubic for `h3o`. Eigenvalues closer than [`Tolerances::cluster_width`] are merged
//! into one spectral value.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::{AlgebraDescriptor, Element, Tolerances, C64, I, ZERO};
use crate::error::{JordanError, Result};
use crate::exceptional::{h3, h3_real_parts};
use crate::linalg;

/// Spectral decomposition of a self-adjoint element.
#[derive(Clone, Debug)]
pub struct SpectralData {
    /// Every eigenvalue, repeated by multiplicity, ascending.
    pub eigenvalues: Vec<f64>,
    /// Distinct spectral values, ascending.
    pub values: Vec<f64>,
    pub multiplicities: Vec<usize>,
    /// One projection per entry of `values`.
    pub projections: Vec<Element>,
}

impl SpectralData {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().unwrap()
    }

    /// Largest `|λ|`.
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// `Σ f(λ) p_λ`; errors where `f` is not finite.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Result<Element> {
        let algebra = self.projections[0].algebra();
        let mut out = Element::zero(algebra);
        for (v, p) in self.values.iter().zip(&self.projections) {
            let fv = f(*v);
            if !fv.is_finite() {
                return Err(JordanError::FunctionUndefined { eigenvalue: *v });
            }
            if fv != 0.0 {
                out += &p.scale(fv);
            }
        }
        Ok(out)
    }

    pub fn reconstruct(&self) -> Element {
        self.apply(|t| t).expect("identity is finite")
    }

    /// Sum of the spectral projections whose value satisfies `keep`.
    pub fn projection_where(&self, keep: impl Fn(f64) -> bool) -> Element {
        let algebra = self.projections[0].algebra();
        let mut out = Element::zero(algebra);
        for (v, p) in self.values.iter().zip(&self.projections) {
            if keep(*v) {
                out += p;
            }
        }
        out
    }

    /// Projection of the spectral value closest to `target`, if within `width`.
    pub fn projection_at(&self, target: f64, width: f64) -> Option<&Element> {
        self.values
            .iter()
            .zip(&self.projections)
            .filter(|(v, _)| (*v - target).abs() <= width)
            .min_by(|a, b| (a.0 - target).abs().total_cmp(&(b.0 - target).abs()))
            .map(|(_, p)| p)
    }
}

/// One spectral value of a single summand, with its projection inside that summand.
struct BlockValue {
    value: f64,
    multiplicity: usize,
    projection: Element,
}

fn require_self_adjoint(a: &Element, tol: &Tolerances) -> Result<()> {
    let deviation = a.self_adjoint_deviation();
    if deviation > tol.eq_tol * a.max_abs().max(1.0) {
        return Err(JordanError::NotSelfAdjoint { deviation });
    }
    Ok(())
}

/// Spectral decomposition with default tolerances.
pub fn j_spectrum(a: &Element) -> Result<SpectralData> {
    j_spectrum_with(a, &Tolerances::default())
}

pub fn j_spectrum_with(a: &Element, tol: &Tolerances) -> Result<SpectralData> {
    require_self_adjoint(a, tol)?;
    let algebra = a.algebra();
    let mut all: Vec<(f64, usize, Element)> = Vec::new();
    for (index, part) in algebra.summands().iter().enumerate() {
        let block = a.block(index).hermitian_part();
        for bv in block_spectrum(part, &block, tol)? {
            let embedded = if algebra.is_direct_sum() {
                Element::embed_block(algebra, index, &bv.projection)
            } else {
                bv.projection
            };
            all.push((bv.value, bv.multiplicity, embedded));
        }
    }
    all.sort_by(|x, y| x.0.total_cmp(&y.0));

    let width = tol.cluster_width();
    let mut data = SpectralData {
        eigenvalues: Vec::new(),
        values: Vec::new(),
        multiplicities: Vec::new(),
        projections: Vec::new(),
    };
    let mut last: Option<f64> = None;
    let mut weighted = 0.0;
    for (value, mult, proj) in all {
        let joins = last.is_some_and(|l| value - l <= width);
        if joins {
            let k = data.values.len() - 1;
            weighted += value * mult as f64;
            data.multiplicities[k] += mult;
            data.values[k] = weighted / data.multiplicities[k] as f64;
            data.projections[k] += &proj;
        } else {
            weighted = value * mult as f64;
            data.values.push(value);
            data.multiplicities.push(mult);
            data.projections.push(proj);
        }
        last = Some(value);
    }
    for (v, m) in data.values.iter().zip(&data.multiplicities) {
        data.eigenvalues.extend(std::iter::repeat_n(*v, *m));
    }
    Ok(data)
}

fn block_spectrum(
    part: &AlgebraDescriptor,
    a: &Element,
    tol: &Tolerances,
) -> Result<Vec<BlockValue>> {
    match part {
        AlgebraDescriptor::Matrix(n) => Ok(matrix_spectrum(*n, a, tol)),
        AlgebraDescriptor::Spin(_) => Ok(spin_spectrum(a, tol)),
        AlgebraDescriptor::OctonionHermitian3 => h3_spectrum(a, tol),
        AlgebraDescriptor::DirectSum(_) => unreachable!("summands are never sums"),
    }
}

fn matrix_spectrum(n: usize, a: &Element, tol: &Tolerances) -> Vec<BlockValue> {
    let m = linalg::to_matrix(n, a.coords());
    let (values, vectors) = linalg::hermitian_eigen(&m);
    let width = tol.cluster_width();
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || values[k] - values[k - 1] > width {
            let cols = vectors.columns(start, k - start);
            let proj: DMatrix<C64> = cols * cols.adjoint();
            let mean = values[start..k].iter().sum::<f64>() / (k - start) as f64;
            out.push(BlockValue {
                value: mean,
                multiplicity: k - start,
                projection: Element::raw(a.algebra().clone(), linalg::from_matrix(&proj)),
            });
            start = k;
        }
    }
    out
}

fn spin_spectrum(a: &Element, tol: &Tolerances) -> Vec<BlockValue> {
    let c = a.coords();
    let alpha = c[0].re;
    let w: Vec<f64> = c[1..].iter().map(|x| x.im).collect();
    let r = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    let algebra = a.algebra();
    if 2.0 * r <= tol.cluster_width() {
        return vec![BlockValue {
            value: alpha,
            multiplicity: 2,
            projection: Element::unit(algebra),
        }];
    }
    let half_projection = |sign: f64| {
        let mut coords = vec![ZERO; c.len()];
        coords[0] = C64::new(0.5, 0.0);
        for (k, wk) in w.iter().enumerate() {
            coords[k + 1] = I * (sign * 0.5 * wk / r);
        }
        Element::raw(algebra.clone(), coords)
    };
    vec![
        BlockValue {
            value: alpha - r,
            multiplicity: 1,
            projection: half_projection(-1.0),
        },
        BlockValue {
            value: alpha + r,
            multiplicity: 1,
            projection: half_projection(1.0),
        },
    ]
}

/// Trace of a real `h3o` element: the sum of its diagonal coordinates.
fn h3_trace(x: &Element) -> f64 {
    x.coords()[..3].iter().map(|c| c.re).sum()
}

/// Newton iteration `p ← 3p² − 2p³` towards the nearest idempotent; it stays in
/// the associative subalgebra generated by `p`.
fn purify(mut p: Element) -> Element {
    let one = Element::unit(p.algebra());
    let mut defect = f64::INFINITY;
    for _ in 0..12 {
        let p2 = p.square();
        let next = (&p2 - &p).max_abs();
        if next >= defect || next <= 4.0 * f64::EPSILON {
            break;
        }
        defect = next;
        p = p2.circ(&(&one.scale(3.0) - &p.scale(2.0))).re_part();
    }
    p
}

/// Spectral decomposition of a self-adjoint `h3o` element.
///
/// Cubic roots lose half their digits near a double root, so they are only used to
/// locate the best separated eigenvalue. The element is first shifted to trace zero
/// and scaled to unit coordinates, which keeps that separation of order one. The
/// isolated eigenvalue's projection comes from Lagrange interpolation refined to an
/// exact idempotent; the complementary rank-two corner is a spin factor and is
/// solved in closed form.
fn h3_spectrum(a: &Element, tol: &Tolerances) -> Result<Vec<BlockValue>> {
    let algebra = a.algebra();
    let one = Element::unit(algebra);
    let a = a.re_part();
    let shift = h3_trace(&a) / 3.0;
    let centred = &a - &one.scale(shift);
    let scale = centred.max_abs();
    if scale <= tol.cluster_width() {
        return Ok(vec![BlockValue {
            value: shift,
            multiplicity: 3,
            projection: one,
        }]);
    }
    let x = centred.scale(1.0 / scale);
    let parts = h3_real_parts(&x, tol)?;
    let roots = h3::cubic_roots(parts.trace(), parts.quadratic_trace(), parts.determinant());
    let lone = if roots[2] - roots[1] >= roots[1] - roots[0] {
        2
    } else {
        0
    };
    let mut lagrange = one.clone();
    for (j, r) in roots.iter().enumerate() {
        if j != lone {
            lagrange = lagrange.circ(&(&x - &one.scale(*r)).scale(1.0 / (roots[lone] - r)));
        }
    }
    let isolated = purify(lagrange);
    let rest = &one - &isolated;
    let isolated_value = h3_trace(&x.circ(&isolated));

    let corner = rest.u(&x).re_part();
    let half_trace = h3_trace(&corner) / 2.0;
    let deviation = &corner - &rest.scale(half_trace);
    let radius = (h3_trace(&deviation.square()) / 2.0).max(0.0).sqrt();
    let mut found = vec![(isolated_value, 1, isolated)];
    if 2.0 * radius * scale <= tol.cluster_width() {
        found.push((half_trace, 2, rest));
    } else {
        let direction = deviation.scale(1.0 / radius);
        found.push((half_trace - radius, 1, (&rest - &direction).scale(0.5)));
        found.push((half_trace + radius, 1, (&rest + &direction).scale(0.5)));
    }
    found.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut out: Vec<BlockValue> = Vec::with_capacity(3);
    for (value, multiplicity, projection) in found {
        let value = shift + scale * value;
        match out.last_mut() {
            Some(last) if value - last.value <= tol.cluster_width() => {
                let total = last.multiplicity + multiplicity;
                last.value = (last.value * last.multiplicity as f64 + value * multiplicity as f64)
                    / total as f64;
                last.multiplicity = total;
                last.projection = &last.projection + &projection;
            }
            _ => out.push(BlockValue {
                value,
                multiplicity,
                projection,
            }),
        }
    }
    for block in &mut out {
        block.projection = block.projection.hermitian_part();
    }
    Ok(out)
}

/// `f(a) = Σ f(λ) p_λ`.
pub fn functional_calculus(a: &Element, f: impl Fn(f64) -> f64) -> Result<Element> {
    j_spectrum(a)?.apply(f)
}

pub fn functional_calculus_with(
    a: &Element,
    tol: &Tolerances,
    f: impl Fn(f64) -> f64,
) -> Result<Element> {
    j_spectrum_with(a, tol)?.apply(f)
}

/// Positivity and invertibility read off the spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PositivityClass {
    pub positive: bool,
    pub invertible: bool,
    pub norm: f64,
    pub min_eigenvalue: f64,
    /// `‖a − 1‖`.
    pub distance_to_unit: f64,
}

pub fn classify_positive(a: &Element, tol: &Tolerances) -> Result<PositivityClass> {
    let data = j_spectrum_with(a, tol)?;
    let min = data.min();
    let positive = min >= -tol.eq_tol;
    let invertible = if positive {
        min > tol.eq_tol
    } else {
        data.values.iter().all(|v| v.abs() > tol.eq_tol)
    };
    Ok(PositivityClass {
        positive,
        invertible,
        norm: data.spectral_radius(),
        min_eigenvalue: min,
        distance_to_unit: data
            .values
            .iter()
            .map(|v| (v - 1.0).abs())
            .fold(0.0, f64::max),
    })
}

/// Smallest projection `r` with `r∘a = a`.
pub fn range_projection(a: &Element, tol: &Tolerances) -> Result<Element> {
    let data = j_spectrum_with(a, tol)?;
    if data.min() < -tol.eq_tol {
        return Err(JordanError::NotPositive {
            min_eigenvalue: data.min(),
        });
    }
    Ok(data.projection_where(|v| v > tol.spectral_tol))
}

/// Checks that `a` lies in the positive unit sphere and returns its spectrum.
pub fn require_positive_sphere(a: &Element, tol: &Tolerances) -> Result<SpectralData> {
    let data = j_spectrum_with(a, tol).map_err(|_| JordanError::NotOnPositiveSphere {
        norm: f64::NAN,
        min_eigenvalue: f64::NAN,
    })?;
    let norm = data.spectral_radius();
    if data.min() < -tol.eq_tol || (norm - 1.0).abs() > tol.eq_tol {
        return Err(JordanError::NotOnPositiveSphere {
            norm,
            min_eigenvalue: data.min(),
        });
    }
    Ok(data)
}

/// Operator norm. For `h3o` only self-adjoint elements are supported.
pub fn norm(a: &Element) -> Result<f64> {
    let tol = Tolerances::default();
    let mut best: f64 = 0.0;
    for (index, part) in a.algebra().summands().iter().enumerate() {
        let block = a.block(index);
        let value = match part {
            AlgebraDescriptor::Matrix(n) => {
                linalg::spectral_norm(&linalg::to_matrix(*n, block.coords()))
            }
            AlgebraDescriptor::Spin(_) => spin_norm(block.coords()),
            AlgebraDescriptor::OctonionHermitian3 => {
                let deviation = block
                    .coords()
                    .iter()
                    .map(|c| c.im.abs())
                    .fold(0.0, f64::max);
                if deviation > tol.eq_tol * block.max_abs().max(1.0) {
                    return Err(JordanError::NormUnsupported(part.to_string()));
                }
                h3_norm(&block.hermitian_part(), &tol)
            }
            AlgebraDescriptor::DirectSum(_) => unreachable!("summands are never sums"),
        };
        best = best.max(value);
    }
    Ok(best)
}

fn h3_norm(a: &Element, tol: &Tolerances) -> f64 {
    h3_spectrum(a, tol)
        .expect("self-adjoint by construction")
        .iter()
        .map(|b| b.value.abs())
        .fold(0.0, f64::max)
}

/// `‖a‖² = ⟨a|a⟩ + (⟨a|a⟩² − |⟨a|ā⟩|²)^{1/2}`.
pub fn spin_norm(coords: &[C64]) -> f64 {
    let aa: f64 = coords.iter().map(|c| c.norm_sqr()).sum();
    let a_abar: C64 = coords.iter().map(|c| c * c).sum();
    let radicand = (aa * aa - a_abar.norm_sqr()).max(0.0);
    (aa + radicand.sqrt()).sqrt()
}

/// Operator norm where available; `‖re a‖ + ‖im a‖` for non-self-adjoint `h3o` parts.
pub fn residual_norm(a: &Element) -> f64 {
    match norm(a) {
        Ok(v) => v,
        Err(_) => {
            let tol = Tolerances::default();
            let mut best: f64 = 0.0;
            for (index, part) in a.algebra().summands().iter().enumerate() {
                let block = a.block(index);
                let value = if matches!(part, AlgebraDescriptor::OctonionHermitian3) {
                    h3_norm(&block.re_part(), &tol)
                        + h3_norm(&block.im_part().hermitian_part(), &tol)
                } else {
                    norm(&block).expect("supported summand")
                };
                best = best.max(value);
            }
            best
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptional::{h3_element, random_box_self_adjoint};
    use crate::rng::seeded;

    fn spin3(coords: &[C64]) -> Element {
        Element::new(AlgebraDescriptor::Spin(coords.len()), coords.to_vec()).unwrap()
    }

    #[test]
    fn diagonal_matrix_spectrum_with_multiplicity() {
        let d = j_spectrum(&Element::diag(&[3.0, 1.0, 1.0])).unwrap();
        assert_eq!(d.multiplicities, vec![2, 1]);
        assert!((d.values[0] - 1.0).abs() < 1e-14 && (d.values[1] - 3.0).abs() < 1e-14);
        assert_eq!(d.eigenvalues.len(), 3);
    }

    #[test]
    fn spin_spectrum_matches_quadratic_oracle() {
        let a = spin3(&[C64::new(0.75, 0.0), C64::new(0.0, 0.25), ZERO]);
        let d = j_spectrum(&a).unwrap();
        assert!((d.values[0] - 0.5).abs() < 1e-15 && (d.values[1] - 1.0).abs() < 1e-15);
        // a² − 2αa + (α² − ‖w‖²)1 = 0
        let one = Element::unit(a.algebra());
        let q = &(&a.square() - &a.scale(1.5)) + &one.scale(0.75 * 0.75 - 0.0625);
        assert!(q.max_abs() < 1e-15);
        let c = classify_positive(&a, &Tolerances::default()).unwrap();
        assert!(c.positive && c.invertible && (c.norm - 1.0).abs() < 1e-15);
    }

    #[test]
    fn projections_have_binary_spectrum() {
        let p = Element::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let d = j_spectrum(&p).unwrap();
        assert!(d
            .values
            .iter()
            .all(|v| v.abs() < 1e-12 || (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn functional_calculus_examples() {
        let r = functional_calculus(&Element::diag(&[4.0, 1.0]), f64::sqrt).unwrap();
        assert!((&r - &Element::diag(&[2.0, 1.0])).max_abs() < 1e-14);
        let a = spin3(&[C64::new(0.2, 0.0), C64::new(0.0, 0.7), C64::new(0.0, -0.4)]);
        let sq = functional_calculus(&a, |t| t * t).unwrap();
        assert!((&sq - &a.square()).max_abs() < 1e-14);
        assert!(matches!(
            functional_calculus(&Element::diag(&[-1.0, 1.0]), f64::sqrt),
            Err(JordanError::FunctionUndefined { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let tol = Tolerances::default();
        let c = classify_positive(&Element::diag(&[1.0, 0.5]), &tol).unwrap();
        assert!(c.positive && c.invertible);
        assert!((c.distance_to_unit - 0.5).abs() < 1e-15);
        let c = classify_positive(&Element::diag(&[1.0, 0.0]), &tol).unwrap();
        assert!(c.positive && !c.invertible);
        assert!((c.distance_to_unit - 1.0).abs() < 1e-15);
    }

    #[test]
    fn range_projection_examples() {
        let tol = Tolerances::default();
        let r = range_projection(&Element::diag(&[0.5, 0.0]), &tol).unwrap();
        assert!((&r - &Element::diag(&[1.0, 0.0])).max_abs() < 1e-14);
        let r = range_projection(&Element::diag(&[0.5, 0.2]), &tol).unwrap();
        assert!((&r - &Element::diag(&[1.0, 1.0])).max_abs() < 1e-14);
        assert!(range_projection(&Element::diag(&[0.5, -0.2]), &tol).is_err());
    }

    #[test]
    fn non_self_adjoint_input_is_rejected() {
        let a = Element::from_rows(&[&[ZERO, C64::new(1.0, 0.0)], &[ZERO, ZERO]]).unwrap();
        assert!(matches!(
            j_spectrum(&a),
            Err(JordanError::NotSelfAdjoint { .. })
        ));
    }

    #[test]
    fn spin_norm_agrees_on_self_adjoint_elements() {
        let a = spin3(&[C64::new(-0.3, 0.0), C64::new(0.0, 0.4), C64::new(0.0, 1.2)]);
        let w = (0.4f64 * 0.4 + 1.2 * 1.2).sqrt();
        assert!((a.norm().unwrap() - (0.3 + w)).abs() < 1e-12);
    }

    #[test]
    fn h3_degenerate_spectra_are_clustered() {
        let tol = Tolerances::default();
        let mut rng = seeded(21);
        for _ in 0..30 {
            let x = random_box_self_adjoint(&AlgebraDescriptor::OctonionHermitian3, &mut rng);
            let d = j_spectrum(&x).unwrap();
            assert_eq!(d.values.len(), 3);
            // rank-one and rank-two projections built from it
            for p in &d.projections {
                let dp = j_spectrum(p).unwrap();
                assert_eq!(dp.values.len(), 2, "{:?}", dp.values);
                assert!((&p.square() - p).residual_norm() < 1e-10);
                let q = &Element::unit(p.algebra()) - p;
                let dq = j_spectrum_with(&q, &tol).unwrap();
                assert_eq!(dq.multiplicities.iter().sum::<usize>(), 3);
                assert_eq!(dq.values.len(), 2);
            }
            assert!((&d.reconstruct() - &x).residual_norm() < 1e-10);
        }
        let one = Element::unit(&AlgebraDescriptor::OctonionHermitian3);
        let d = j_spectrum(&one.scale(0.7)).unwrap();
        assert_eq!(d.multiplicities, vec![3]);
        let e = h3_element([1.0, 0.0, 0.0], [[0.0; 8]; 3]);
        let d = j_spectrum(&e).unwrap();
        assert_eq!(d.multiplicities, vec![2, 1]);
    }

    #[test]
    fn direct_sum_spectrum_merges_across_blocks() {
        let sum: AlgebraDescriptor = "sum:mat:2,spin:3".parse().unwrap();
        let a = &Element::block_unit(&sum, 0).scale(0.5) + &Element::block_unit(&sum, 1).scale(0.5);
        let d = j_spectrum(&a).unwrap();
        assert_eq!(d.multiplicities, vec![4]);
        assert!((&d.projections[0] - &Element::unit(&sum)).max_abs() < 1e-15);
    }

    #[test]
    fn h3_near_double_eigenvalues_stay_accurate() {
        let mut rng = seeded(31);
        let alg = AlgebraDescriptor::OctonionHermitian3;
        for gap in [0.0, 1e-12, 1e-7, 1e-3] {
            for _ in 0..10 {
                let frame = j_spectrum(&random_box_self_adjoint(&alg, &mut rng)).unwrap();
                assert_eq!(frame.projections.len(), 3);
                let weights = [0.3, 1.0 - gap, 1.0];
                let mut a = Element::zero(&alg);
                for (w, p) in weights.iter().zip(&frame.projections) {
                    a += &p.scale(*w);
                }
                let d = j_spectrum(&a).unwrap();
                assert!((&d.reconstruct() - &a).max_abs() < 1e-13 + gap, "gap {gap}");
                // eigenprojections of values a distance δ apart are determined to ε/δ
                let conditioning = if gap > 1e-9 { 1e-14 / gap } else { 0.0 };
                for p in &d.projections {
                    let defect = (&p.square() - p).max_abs();
                    assert!(defect < 1e-13 + conditioning, "gap {gap}: {defect:e}");
                }
                assert!((d.max() - 1.0).abs() < 1e-13 + gap);
                let expected = if gap < 1e-9 { 2 } else { 3 };
                assert_eq!(d.values.len(), expected, "gap {gap}: {:?}", d.values);
            }
        }
    }
}
