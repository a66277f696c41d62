//! The subalgebra generated by two projections and its canonical form.
//!
//! Every pair `p, q` splits into four corner meets and a generic part. On the generic
//! part the pair is a direct sum of 2×2 blocks
//!
//! ```text
//! p ↦ [[1, 0], [0, 0]],   q ↦ [[t, √(t(1−t))], [√(t(1−t)), 1−t]]
//! ```
//!
//! one per interior spectral value `t` of `U_p(q)`. The representation maps the
//! generated algebra onto these blocks plus one scalar per nonzero corner.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraDescriptor, Element, Tolerances, C64};
use crate::error::{JordanError, Result};
use crate::linalg::{self, Orthonormalizer};
use crate::projections::{complement, is_orthogonal, require_projection, Corner, ProjectionPair};
use crate::sampling;
use crate::spectral::j_spectrum_with;

pub use crate::maps::{verify_jordan_map, JordanMap, JordanMapResiduals};

/// Relative size below which a new product counts as dependent on the current span.
const CLOSURE_TOL: f64 = 1e-7;

/// An interior spectral value of `U_p(q)` and its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InteriorValue {
    pub t: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoProjInvariants {
    #[serde(skip)]
    pub pair: ProjectionPair,
    pub interior: Vec<InteriorValue>,
    /// Corners with nonzero meet, in [`Corner::ALL`] order.
    pub corners: Vec<Corner>,
}

impl TwoProjInvariants {
    /// `3·(distinct interior values) + (nonzero corners)`.
    pub fn expected_dimension(&self) -> usize {
        3 * self.interior.len() + self.corners.len()
    }
}

pub fn two_proj_invariants(
    p: &Element,
    q: &Element,
    tol: &Tolerances,
) -> Result<TwoProjInvariants> {
    let pair = ProjectionPair::new(p, q, tol)?;
    let data = j_spectrum_with(&p.u(q).hermitian_part(), tol)?;
    let interior = data
        .values
        .iter()
        .zip(&data.multiplicities)
        .filter(|(t, _)| **t > tol.spectral_tol && **t < 1.0 - tol.spectral_tol)
        .map(|(t, m)| InteriorValue {
            t: *t,
            multiplicity: *m,
        })
        .collect();
    let corners = pair.nonzero_corners(tol);
    Ok(TwoProjInvariants {
        pair,
        interior,
        corners,
    })
}

/// Joint Gram–Schmidt closure under `∘`, carrying a linear image for every basis
/// element. Returns the orthonormal basis and the images of its members.
fn closure(start: Vec<(Element, Element)>) -> (Vec<Element>, Vec<Element>) {
    let mut ortho = Orthonormalizer::new();
    let mut basis: Vec<Element> = Vec::new();
    let mut images: Vec<Element> = Vec::new();
    let push = |x: &Element,
                image: &Element,
                ortho: &mut Orthonormalizer,
                basis: &mut Vec<Element>,
                images: &mut Vec<Element>| {
        let before = ortho.len();
        if !ortho.push(x.coords(), CLOSURE_TOL) {
            return;
        }
        // Recompute the Gram–Schmidt coefficients to carry the image along.
        let mut residual = x.clone();
        let mut residual_image = image.clone();
        for _ in 0..2 {
            for (b, tb) in basis.iter().zip(images.iter()) {
                let c = b.inner(&residual);
                residual -= &b.scale_complex(c);
                residual_image -= &tb.scale_complex(c);
            }
        }
        let len = residual.coord_norm();
        let scale = C64::new(1.0 / len, 0.0);
        debug_assert_eq!(ortho.len(), before + 1);
        basis.push(residual.scale_complex(scale));
        images.push(residual_image.scale_complex(scale));
    };
    for (x, image) in &start {
        push(x, image, &mut ortho, &mut basis, &mut images);
    }
    let mut done = 0;
    while done < basis.len() {
        let end = basis.len();
        for i in done..end {
            for j in 0..=i {
                let x = basis[i].circ(&basis[j]);
                let image = images[i].circ(&images[j]);
                push(&x, &image, &mut ortho, &mut basis, &mut images);
            }
        }
        done = end;
    }
    (basis, images)
}

/// Orthonormal (in coordinates) basis of the subalgebra generated by `p`, `q`, and
/// optionally the unit.
pub fn generated_subalgebra(
    p: &Element,
    q: &Element,
    with_unit: bool,
    tol: &Tolerances,
) -> Result<Vec<Element>> {
    require_projection(p, tol)?;
    require_projection(q, tol)?;
    crate::algebra::check_same(p, q)?;
    let mut start = vec![(p.clone(), p.clone()), (q.clone(), q.clone())];
    if with_unit {
        let one = Element::unit(p.algebra());
        start.insert(0, (one.clone(), one));
    }
    Ok(closure(start).0)
}

/// How the representation was constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationRoute {
    /// Block basis from the eigenvectors of `p₀q₀p₀` (matrix model).
    CanonicalAngles,
    /// Words in `p`, `q`, `1` matched with the same words in the model blocks.
    WordTransfer,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RepresentationResiduals {
    pub map: JordanMapResiduals,
    /// `‖Ψ(p) − P‖` against the block form.
    pub p_form: f64,
    /// `‖Ψ(q) − Q‖` against the block form.
    pub q_form: f64,
    pub generated_dimension: usize,
    pub expected_dimension: usize,
}

impl RepresentationResiduals {
    pub fn worst(&self) -> f64 {
        self.map.worst().max(self.p_form).max(self.q_form)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoProjRepresentation {
    pub invariants: TwoProjInvariants,
    /// `t` of each 2×2 block, in codomain order.
    pub blocks: Vec<f64>,
    pub route: RepresentationRoute,
    #[serde(skip)]
    pub iso: JordanMap,
    pub residuals: RepresentationResiduals,
}

fn block_q(t: f64) -> [f64; 4] {
    let s = (t * (1.0 - t)).sqrt();
    [t, s, s, 1.0 - t]
}

/// Codomain `⊕ mat:2 ⊕ mat:1…` and the images of `p` and `q` there.
fn model(blocks: &[f64], corners: &[Corner]) -> Result<(AlgebraDescriptor, Element, Element)> {
    let mut parts = vec![AlgebraDescriptor::Matrix(2); blocks.len()];
    parts.extend(std::iter::repeat_n(
        AlgebraDescriptor::Matrix(1),
        corners.len(),
    ));
    let codomain = AlgebraDescriptor::direct_sum(parts)?;
    let mut p = Vec::with_capacity(codomain.dim());
    let mut q = Vec::with_capacity(codomain.dim());
    for t in blocks {
        p.extend([1.0, 0.0, 0.0, 0.0]);
        q.extend(block_q(*t));
    }
    for c in corners {
        let (pv, qv) = c.pattern();
        p.push(pv);
        q.push(qv);
    }
    Ok((
        codomain.clone(),
        Element::from_real(codomain.clone(), &p)?,
        Element::from_real(codomain, &q)?,
    ))
}

fn coord_row(
    m: &mut DMatrix<C64>,
    row: usize,
    n: usize,
    left: &DVector<C64>,
    right: &DVector<C64>,
) {
    // coefficient of X_{rc} in left* X right
    for r in 0..n {
        for c in 0..n {
            m[(row, r * n + c)] = left[r].conj() * right[c];
        }
    }
}

/// Block angles, codomain, change of basis, and the block forms of `p` and `q`.
type AngleModel = (Vec<f64>, AlgebraDescriptor, DMatrix<C64>, Element, Element);

fn canonical_angles(
    n: usize,
    invariants: &TwoProjInvariants,
    tol: &Tolerances,
) -> Result<AngleModel> {
    let pair = &invariants.pair;
    let p0 = linalg::to_matrix(n, pair.p0.coords());
    let q0 = linalg::to_matrix(n, pair.q0.coords());
    let (values, vectors) = linalg::hermitian_eigen(&(&p0 * &q0 * &p0));
    let identity = DMatrix::<C64>::identity(n, n);
    let mut pairs = Vec::new();
    for (k, t) in values.iter().enumerate() {
        if *t <= tol.spectral_tol || *t >= 1.0 - tol.spectral_tol {
            continue;
        }
        let v = vectors.column(k).into_owned();
        let w = (&identity - &p0) * &q0 * &v;
        let len = w.norm();
        pairs.push((*t, v, w / C64::new(len, 0.0)));
    }
    let blocks: Vec<f64> = pairs.iter().map(|(t, _, _)| *t).collect();
    let (codomain, target_p, target_q) = model(&blocks, &invariants.corners)?;
    let mut m = DMatrix::<C64>::zeros(codomain.dim(), n * n);
    for (k, (_, v, w)) in pairs.iter().enumerate() {
        coord_row(&mut m, 4 * k, n, v, v);
        coord_row(&mut m, 4 * k + 1, n, v, w);
        coord_row(&mut m, 4 * k + 2, n, w, v);
        coord_row(&mut m, 4 * k + 3, n, w, w);
    }
    let offset = 4 * pairs.len();
    for (k, corner) in invariants.corners.iter().enumerate() {
        let r = linalg::to_matrix(n, pair.corner(*corner).coords());
        let rank = r.trace().re.round().max(1.0);
        for row in 0..n {
            for col in 0..n {
                m[(offset + k, row * n + col)] = r[(col, row)] / C64::new(rank, 0.0);
            }
        }
    }
    Ok((blocks, codomain, m, target_p, target_q))
}

/// Builds the Jordan *-isomorphism from the generated subalgebra onto its block model
/// and verifies it on `samples` random elements of the subalgebra.
pub fn build_representation<R: Rng + ?Sized>(
    p: &Element,
    q: &Element,
    samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<TwoProjRepresentation> {
    let invariants = two_proj_invariants(p, q, tol)?;
    let algebra = p.algebra().clone();
    let support = generated_subalgebra(p, q, true, tol)?;
    let (blocks, route, iso, target_p, target_q) = match algebra {
        AlgebraDescriptor::Matrix(n) => {
            let (blocks, codomain, m, tp, tq) = canonical_angles(n, &invariants, tol)?;
            let iso = JordanMap::new(algebra.clone(), codomain, m)?;
            (blocks, RepresentationRoute::CanonicalAngles, iso, tp, tq)
        }
        _ => {
            let blocks: Vec<f64> = invariants.interior.iter().map(|v| v.t).collect();
            let (codomain, tp, tq) = model(&blocks, &invariants.corners)?;
            let one = Element::unit(&algebra);
            let (basis, images) = closure(vec![
                (one, Element::unit(&codomain)),
                (p.clone(), tp.clone()),
                (q.clone(), tq.clone()),
            ]);
            let mut m = DMatrix::<C64>::zeros(codomain.dim(), algebra.dim());
            for (b, tb) in basis.iter().zip(&images) {
                let col = DVector::from_column_slice(tb.coords());
                let row = DVector::from_column_slice(b.coords()).adjoint();
                m += col * row;
            }
            let iso = JordanMap::new(algebra.clone(), codomain, m)?;
            (blocks, RepresentationRoute::WordTransfer, iso, tp, tq)
        }
    };
    let iso = iso.with_support(support.clone());
    let map = verify_jordan_map(&iso, samples, rng, tol);
    let residuals = RepresentationResiduals {
        map,
        p_form: (&iso.apply(p) - &target_p).residual_norm(),
        q_form: (&iso.apply(q) - &target_q).residual_norm(),
        generated_dimension: support.len(),
        expected_dimension: invariants.expected_dimension(),
    };
    if residuals.worst() > tol.residual_tol {
        return Err(JordanError::Construction {
            what: format!("two-projection representation ({route:?})"),
            residual: residuals.worst(),
        });
    }
    Ok(TwoProjRepresentation {
        invariants,
        blocks,
        route,
        iso,
        residuals,
    })
}

/// Outcome of the orthogonality test through subprojections.
#[derive(Clone, Debug, Serialize)]
pub struct SubprojectionOutcome {
    pub orthogonal: bool,
    /// Non-orthogonal case: `‖r − s‖ < 1` for the constructed `r ≤ p`, `s ≤ q`.
    pub falsifier_distance: Option<f64>,
    #[serde(skip)]
    pub falsifier: Option<(Element, Element)>,
    pub sampled: usize,
    /// Orthogonal case: largest `|‖r − s‖ − 1|` over sampled subprojection pairs.
    pub max_deviation: Option<f64>,
}

/// `p ⟂ q` iff `‖r − s‖ = 1` for all nonzero `r ≤ p`, `s ≤ q`. For a non-orthogonal
/// pair the subprojections are `p∧q` twice, or the compressions of `p` and `q` to the
/// block with the largest interior `t`, at distance `√(1−t)`.
pub fn orthogonality_by_subprojections<R: Rng + ?Sized>(
    p: &Element,
    q: &Element,
    samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<SubprojectionOutcome> {
    let orthogonal = is_orthogonal(p, q, tol)?;
    if p.residual_norm() <= tol.eq_tol || q.residual_norm() <= tol.eq_tol {
        return Err(JordanError::Precondition(
            "subprojection test needs nonzero projections".into(),
        ));
    }
    if orthogonal {
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let r = sampling::random_subprojection(p, rng, tol)?;
            let s = sampling::random_subprojection(q, rng, tol)?;
            let d = (&r - &s).hermitian_part().norm()?;
            worst = worst.max((d - 1.0).abs());
        }
        return Ok(SubprojectionOutcome {
            orthogonal,
            falsifier_distance: None,
            falsifier: None,
            sampled: samples,
            max_deviation: Some(worst),
        });
    }
    let pair = ProjectionPair::new(p, q, tol)?;
    let (r, s) = if pair.p_and_q.residual_norm() > tol.eq_tol {
        (pair.p_and_q.clone(), pair.p_and_q.clone())
    } else {
        let gap = (p - q).hermitian_part().square();
        let data = j_spectrum_with(&gap, tol)?;
        let e = data
            .values
            .iter()
            .zip(&data.projections)
            .filter(|(v, _)| **v > tol.eq_tol && **v < 1.0 - tol.eq_tol)
            .map(|(_, e)| e)
            .next()
            .ok_or_else(|| {
                JordanError::Contradiction(
                    "non-orthogonal pair without generic part or meet".into(),
                )
            })?;
        (e.u(p).hermitian_part(), e.u(q).hermitian_part())
    };
    let d = (&r - &s).hermitian_part().norm()?;
    Ok(SubprojectionOutcome {
        orthogonal,
        falsifier_distance: Some(d),
        falsifier: Some((r, s)),
        sampled: 0,
        max_deviation: None,
    })
}

/// `[[t, √(t(1−t))], [√(t(1−t)), 1−t]]` in `mat:2`.
pub fn angle_projection(t: f64) -> Element {
    let s = (t * (1.0 - t)).sqrt();
    Element::from_real_rows(&[&[t, s], &[s, 1.0 - t]]).expect("2×2 rows")
}

/// Projection pair with prescribed interior values and corner ranks inside `mat:n`,
/// conjugated by a random unitary.
pub fn random_pair_with<R: Rng + ?Sized>(
    interior: &[f64],
    corner_ranks: [usize; 4],
    rng: &mut R,
) -> (Element, Element) {
    let n = 2 * interior.len() + corner_ranks.iter().sum::<usize>();
    let mut p = DMatrix::<C64>::zeros(n, n);
    let mut q = DMatrix::<C64>::zeros(n, n);
    let mut at = 0;
    for t in interior {
        let s = (t * (1.0 - t)).sqrt();
        p[(at, at)] = C64::new(1.0, 0.0);
        q[(at, at)] = C64::new(*t, 0.0);
        q[(at, at + 1)] = C64::new(s, 0.0);
        q[(at + 1, at)] = C64::new(s, 0.0);
        q[(at + 1, at + 1)] = C64::new(1.0 - t, 0.0);
        at += 2;
    }
    for (corner, rank) in Corner::ALL.iter().zip(corner_ranks) {
        let (pv, qv) = corner.pattern();
        for _ in 0..rank {
            p[(at, at)] = C64::new(pv, 0.0);
            q[(at, at)] = C64::new(qv, 0.0);
            at += 1;
        }
    }
    let u = linalg::random_unitary(n, rng);
    let conj = |m: &DMatrix<C64>| {
        let x = &u * m * u.adjoint();
        Element::raw(AlgebraDescriptor::Matrix(n), linalg::from_matrix(&x)).hermitian_part()
    };
    (conj(&p), conj(&q))
}

/// The complement pair `(1 − p, 1 − q)` has the same blocks with `t` unchanged.
pub fn complement_pair(p: &Element, q: &Element) -> (Element, Element) {
    (complement(p), complement(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn invariant_examples() {
        let p = Element::diag(&[1.0, 0.0]);
        let inv = two_proj_invariants(&p, &p, &tol()).unwrap();
        assert!(inv.interior.is_empty());
        assert!((&inv.pair.p_and_q - &p).residual_norm() < 1e-12);
        let inv = two_proj_invariants(&p, &angle_projection(0.5), &tol()).unwrap();
        assert!(inv.corners.is_empty());
        assert_eq!(inv.interior.len(), 1);
        assert!((inv.interior[0].t - 0.5).abs() < 1e-12);
        let inv = two_proj_invariants(&p, &complement(&p), &tol()).unwrap();
        assert_eq!(inv.corners, vec![Corner::NotPAndQ, Corner::PAndNotQ]);
        assert!(inv.interior.is_empty());
    }

    #[test]
    fn subalgebra_dimensions() {
        let p = Element::diag(&[1.0, 0.0]);
        assert_eq!(
            generated_subalgebra(&p, &p, false, &tol()).unwrap().len(),
            1
        );
        assert_eq!(generated_subalgebra(&p, &p, true, &tol()).unwrap().len(), 2);
        let q = angle_projection(0.3);
        assert_eq!(generated_subalgebra(&p, &q, true, &tol()).unwrap().len(), 3);
        assert_eq!(
            generated_subalgebra(&p, &complement(&p), true, &tol())
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn representation_examples() {
        let mut rng = seeded(71);
        let p = Element::diag(&[1.0, 0.0]);
        let rep = build_representation(&p, &complement(&p), 20, &mut rng, &tol()).unwrap();
        assert!(rep.blocks.is_empty());
        assert_eq!(rep.invariants.corners.len(), 2);
        let rep = build_representation(&p, &angle_projection(0.5), 20, &mut rng, &tol()).unwrap();
        assert_eq!(rep.blocks.len(), 1);
        let image = rep.iso.apply(&angle_projection(0.5));
        for c in image.coords() {
            assert!((c.re - 0.5).abs() < 1e-12 && c.im.abs() < 1e-12);
        }
    }

    #[test]
    fn random_pairs_in_mat4() {
        let mut rng = seeded(72);
        for _ in 0..10 {
            let alg = AlgebraDescriptor::Matrix(4);
            let p = sampling::random_nontrivial_projection(&alg, &mut rng);
            let q = sampling::random_nontrivial_projection(&alg, &mut rng);
            let rep = build_representation(&p, &q, 20, &mut rng, &tol()).unwrap();
            assert_eq!(
                rep.residuals.generated_dimension,
                rep.residuals.expected_dimension
            );
            assert!(rep.residuals.worst() < 1e-8);
        }
    }

    #[test]
    fn degenerate_blocks_and_corners() {
        let mut rng = seeded(73);
        let (p, q) = random_pair_with(&[0.25, 0.25, 0.7], [1, 0, 1, 1], &mut rng);
        let rep = build_representation(&p, &q, 20, &mut rng, &tol()).unwrap();
        assert_eq!(rep.blocks.len(), 3);
        assert_eq!(rep.invariants.interior.len(), 2);
        assert_eq!(rep.invariants.interior[0].multiplicity, 2);
        assert_eq!(rep.residuals.generated_dimension, 3 * 2 + 3);
    }

    #[test]
    fn word_transfer_in_other_models() {
        let mut rng = seeded(74);
        for text in ["spin:5", "h3o", "sum:mat:2,spin:4"] {
            let alg: AlgebraDescriptor = text.parse().unwrap();
            for _ in 0..3 {
                let p = sampling::random_nontrivial_projection(&alg, &mut rng);
                let q = sampling::random_nontrivial_projection(&alg, &mut rng);
                let rep = build_representation(&p, &q, 10, &mut rng, &tol()).unwrap();
                assert_eq!(rep.route, RepresentationRoute::WordTransfer);
                assert_eq!(
                    rep.residuals.generated_dimension, rep.residuals.expected_dimension,
                    "{text}"
                );
            }
        }
    }

    #[test]
    fn subprojection_examples() {
        let mut rng = seeded(75);
        let p = Element::diag(&[1.0, 0.0, 0.0]);
        let q = Element::diag(&[0.0, 1.0, 1.0]);
        let out = orthogonality_by_subprojections(&p, &q, 50, &mut rng, &tol()).unwrap();
        assert!(out.orthogonal && out.max_deviation.unwrap() < 1e-9);
        let out = orthogonality_by_subprojections(&q, &q, 0, &mut rng, &tol()).unwrap();
        assert_eq!(out.falsifier_distance, Some(0.0));
        let alg: AlgebraDescriptor = "sum:mat:2,mat:2".parse().unwrap();
        let pp =
            Element::from_real(alg.clone(), &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let mut qc = angle_projection(0.75).into_coords();
        qc.extend(angle_projection(0.25).into_coords());
        let qq = Element::new(alg, qc).unwrap();
        let out = orthogonality_by_subprojections(&pp, &qq, 0, &mut rng, &tol()).unwrap();
        assert!(!out.orthogonal);
        let d = out.falsifier_distance.unwrap();
        assert!((d - 0.5).abs() < 1e-9, "{d}");
    }
}
