//! Isometries between positive unit spheres and their extension to Jordan
//! *-isomorphisms.
//!
//! The pipeline only ever evaluates the sphere map. It reads off the induced
//! projection map, matches summands through the images of block units, rebuilds a
//! linear map per summand (through the unit-vector parametrization for spin factors,
//! through affine fits on Peirce corners for matrix algebras) and then checks the
//! assembled map against the sphere map on fresh samples.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraDescriptor, Element, Tolerances, C64};
use crate::error::{JordanError, Result};
use crate::linalg;
use crate::maps::{verify_jordan_map, JordanMap, JordanMapResiduals};
use crate::projections::{
    complement, is_central, is_orthogonal, is_projection, leq, require_projection,
};
use crate::sampling;
use crate::spectral::{j_spectrum_with, require_positive_sphere};
use crate::spin::{jordan_iso_from_theta, upsilon_inv_coords, ProjectionMap};

type SphereRule = Arc<dyn Fn(&Element) -> Element + Send + Sync>;

/// Where a sphere map came from.
#[derive(Clone, Debug, Default)]
pub struct Provenance {
    pub synthesized_from: Option<JordanMap>,
    pub perturbation: Option<Perturbation>,
}

/// A map between positive unit spheres, given by a rule.
#[derive(Clone)]
pub struct SphereMap {
    pub source: AlgebraDescriptor,
    pub target: AlgebraDescriptor,
    rule: SphereRule,
    pub provenance: Provenance,
}

impl fmt::Debug for SphereMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SphereMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

impl SphereMap {
    pub fn from_fn(
        source: AlgebraDescriptor,
        target: AlgebraDescriptor,
        rule: impl Fn(&Element) -> Element + Send + Sync + 'static,
    ) -> Self {
        Self {
            source,
            target,
            rule: Arc::new(rule),
            provenance: Provenance::default(),
        }
    }

    pub fn apply(&self, a: &Element) -> Element {
        assert_eq!(
            a.algebra(),
            &self.source,
            "argument outside the source sphere"
        );
        (self.rule)(a)
    }
}

/// Restriction of a verified Jordan *-isomorphism to the positive sphere.
pub fn synthesize_delta<R: Rng + ?Sized>(
    phi: &JordanMap,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<SphereMap> {
    let residuals = verify_jordan_map(phi, 20, rng, tol);
    if !residuals.verified(tol) || !residuals.unital || phi.domain.dim() != phi.codomain.dim() {
        return Err(JordanError::UnverifiedMap(format!(
            "worst residual {:.3e}, unit defect {:.3e}",
            residuals.worst(),
            residuals.unit
        )));
    }
    let map = phi.clone();
    let mut delta = SphereMap::from_fn(phi.domain.clone(), phi.codomain.clone(), move |a| {
        map.apply(a).hermitian_part()
    });
    delta.provenance.synthesized_from = Some(phi.clone());
    Ok(delta)
}

/// Non-isometric reparametrizations of the interior spectrum. Each fixes every
/// projection and preserves order between projections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Perturbation {
    /// `Δ'(a) = Δ(a²)`.
    Square,
    /// `Δ'(a) = Δ(√a)`.
    Sqrt,
}

impl FromStr for Perturbation {
    type Err = JordanError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(Self::Square),
            "sqrt" => Ok(Self::Sqrt),
            other => Err(JordanError::Precondition(format!(
                "unknown perturbation `{other}` (expected square or sqrt)"
            ))),
        }
    }
}

impl fmt::Display for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Square => "square",
            Self::Sqrt => "sqrt",
        })
    }
}

pub fn perturb(delta: &SphereMap, kind: Perturbation) -> SphereMap {
    let inner = delta.clone();
    let tol = Tolerances::default();
    let mut out = SphereMap::from_fn(delta.source.clone(), delta.target.clone(), move |a| {
        let b = match kind {
            Perturbation::Square => a.square().hermitian_part(),
            Perturbation::Sqrt => {
                crate::spectral::functional_calculus_with(a, &tol, |t| t.max(0.0).sqrt())
                    .unwrap_or_else(|_| a.clone())
            }
        };
        inner.apply(&b)
    });
    out.provenance = Provenance {
        synthesized_from: delta.provenance.synthesized_from.clone(),
        perturbation: Some(kind),
    };
    out
}

/// Evidence about the projection map induced by a sphere map.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectionMapReport {
    pub samples: usize,
    /// Largest `|‖Δa − Δb‖ − ‖a − b‖|` over sampled pairs.
    pub isometry_defect: f64,
    pub isometric: bool,
    #[serde(skip)]
    pub isometry_witness: Option<(Element, Element)>,
    /// Sampled projections whose image is not a projection.
    pub projection_failures: usize,
    /// Pairs `q ≤ p` whose images are not ordered.
    pub order_failures: usize,
    /// Orthogonal pairs whose images are not orthogonal.
    pub orthogonality_failures: usize,
    /// Pairs `(p, a)` with `a` invertible where `p ≤ a` and `Δp ≤ Δa` disagree.
    pub invertible_order_failures: usize,
    /// Images of the block units are central projections.
    pub central_images: bool,
    /// Target summand carrying the image of each source block unit.
    pub summand_matching: Vec<Option<usize>>,
    /// Matched summands agree on being spin factors or `mat:2`.
    pub type_i2_preserved: bool,
}

impl ProjectionMapReport {
    pub fn consistent(&self) -> bool {
        self.isometric
            && self.projection_failures == 0
            && self.order_failures == 0
            && self.orthogonality_failures == 0
            && self.invertible_order_failures == 0
            && self.central_images
            && self.summand_matching.iter().all(Option::is_some)
            && self.type_i2_preserved
    }
}

fn distance(a: &Element, b: &Element) -> Result<f64> {
    (a - b).hermitian_part().norm()
}

fn dominates(a: &Element, p: &Element, tol: &Tolerances) -> Result<bool> {
    Ok(j_spectrum_with(&(a - p).hermitian_part(), tol)?.min() >= -tol.eq_tol)
}

/// Samples the sphere map on projections and sphere points and records which
/// structure it preserves.
pub fn extract_projection_map<R: Rng + ?Sized>(
    delta: &SphereMap,
    samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<ProjectionMapReport> {
    let source = &delta.source;
    let target = &delta.target;
    let mut defect: f64 = 0.0;
    let mut witness = None;
    for _ in 0..samples {
        let a = sampling::random_positive_sphere(source, rng);
        let b = if rng.gen_bool(0.5) {
            sampling::random_positive_sphere(source, rng)
        } else {
            sampling::random_projection(source, rng)
        };
        if b.residual_norm() <= tol.eq_tol {
            continue;
        }
        let gap = (distance(&delta.apply(&a), &delta.apply(&b))? - distance(&a, &b)?).abs();
        if gap > defect {
            defect = gap;
            witness = Some((a, b));
        }
    }
    let isometric = defect <= tol.residual_tol;
    let mut projection_failures = 0;
    let mut order_failures = 0;
    let mut orthogonality_failures = 0;
    let mut invertible_order_failures = 0;
    let one = Element::unit(source);
    for _ in 0..samples {
        let p = sampling::random_nontrivial_projection(source, rng);
        let dp = delta.apply(&p);
        if !is_projection(&dp, tol) {
            projection_failures += 1;
            continue;
        }
        let q = sampling::random_subprojection(&p, rng, tol)?;
        let dq = delta.apply(&q);
        if !is_projection(&dq, tol) {
            projection_failures += 1;
            continue;
        }
        if !leq(&dq, &dp, tol) {
            order_failures += 1;
        }
        let r = sampling::random_subprojection(&complement(&p), rng, tol)?;
        let dr = delta.apply(&r);
        if !is_projection(&dr, tol) {
            projection_failures += 1;
        } else if !is_orthogonal(&dp, &dr, tol)? {
            orthogonality_failures += 1;
        }
        let a = if rng.gen_bool(0.5) {
            let y = sampling::random_positive_invertible(source, 0.05, rng);
            (&p + &complement(&p).u(&y)).hermitian_part()
        } else {
            sampling::random_positive_invertible(source, 0.05, rng)
        };
        if dominates(&a, &p, tol)? != dominates(&delta.apply(&a), &dp, tol)? {
            invertible_order_failures += 1;
        }
    }
    let mut central_images = true;
    let mut summand_matching = Vec::new();
    let mut type_i2_preserved = true;
    let summands = source.summands().len();
    for i in 0..summands {
        let e = if summands == 1 {
            one.clone()
        } else {
            Element::block_unit(source, i)
        };
        let image = delta.apply(&e);
        if !is_projection(&image, tol) || !is_central(&image, tol)? {
            central_images = false;
            summand_matching.push(None);
            continue;
        }
        let matched = (0..target.summands().len()).find(|j| {
            let unit = if target.summands().len() == 1 {
                Element::unit(target)
            } else {
                Element::block_unit(target, *j)
            };
            (&image - &unit).residual_norm() <= tol.residual_tol
        });
        if let Some(j) = matched {
            if source.summands()[i].is_type_i2() != target.summands()[j].is_type_i2() {
                type_i2_preserved = false;
            }
        }
        summand_matching.push(matched);
    }
    Ok(ProjectionMapReport {
        samples,
        isometry_defect: defect,
        isometric,
        isometry_witness: witness,
        projection_failures,
        order_failures,
        orthogonality_failures,
        invertible_order_failures,
        central_images,
        summand_matching,
        type_i2_preserved,
    })
}

/// Agreement of three characterizations of `q ≤ a`.
#[derive(Clone, Debug, Serialize)]
pub struct OrderRoutes {
    /// Smallest eigenvalue of `a − q` is nonnegative.
    pub spectral: bool,
    /// `U_q(a) = q`.
    pub peirce: bool,
    /// `‖1 − r − a‖ = 1` for every tested `r ≤ q`.
    pub distance: bool,
    pub min_eigenvalue: f64,
    pub peirce_residual: f64,
    /// Smallest `‖1 − r − a‖` over the tested subprojections.
    pub min_distance: f64,
    pub subprojections_tested: usize,
    pub agree: bool,
    /// The subprojection attaining `min_distance`.
    #[serde(skip)]
    pub witness: Option<Element>,
}

impl OrderRoutes {
    pub fn leq(&self) -> bool {
        self.spectral
    }
}

/// Decides `q ≤ a` for a projection `q ∉ {0, 1}` and an invertible positive
/// norm-one `a` in three ways and reports whether they agree.
///
/// The distance route tests `r = q`, `subsamples` random subprojections of `q`, and
/// the spectral projection of the compression of `a` to `q` at its smallest value.
pub fn order_routes_test<R: Rng + ?Sized>(
    q: &Element,
    a: &Element,
    subsamples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<OrderRoutes> {
    require_projection(q, tol)?;
    crate::algebra::check_same(q, a)?;
    let one = Element::unit(q.algebra());
    if q.residual_norm() <= tol.eq_tol || (&one - q).residual_norm() <= tol.eq_tol {
        return Err(JordanError::Precondition(
            "q must be neither 0 nor 1".into(),
        ));
    }
    let data = require_positive_sphere(a, tol)?;
    if data.min() <= tol.eq_tol {
        return Err(JordanError::NotInvertible {
            min_eigenvalue: data.min(),
        });
    }
    let min_eigenvalue = j_spectrum_with(&(a - q).hermitian_part(), tol)?.min();
    let spectral = min_eigenvalue >= -tol.eq_tol;
    let peirce_residual = (&q.u(a) - q).residual_norm();
    let peirce = peirce_residual <= tol.eq_tol;
    let corner = (&q.u(a) + &complement(q).scale(2.0)).hermitian_part();
    let constructed = j_spectrum_with(&corner, tol)?.projections[0].clone();
    let mut candidates = vec![q.clone(), constructed];
    for _ in 0..subsamples {
        candidates.push(sampling::random_subprojection(q, rng, tol)?);
    }
    let mut min_distance = f64::INFINITY;
    let mut witness = None;
    for r in &candidates {
        let d = distance(&(&one - r), a)?;
        if d < min_distance {
            min_distance = d;
            witness = Some(r.clone());
        }
    }
    let distance_route = min_distance >= 1.0 - tol.eq_tol;
    Ok(OrderRoutes {
        spectral,
        peirce,
        distance: distance_route,
        min_eigenvalue,
        peirce_residual,
        min_distance,
        subprojections_tested: candidates.len(),
        agree: spectral == peirce && peirce == distance_route,
        witness,
    })
}

/// Invertible positive norm-one `a` that dominates `q` about half of the time.
pub fn random_order_instance<R: Rng + ?Sized>(q: &Element, rng: &mut R) -> Element {
    let algebra = q.algebra();
    let qc = complement(q);
    let y = sampling::random_positive_invertible(algebra, 0.05, rng);
    match rng.gen_range(0..4) {
        0 | 1 => (q + &qc.u(&y)).hermitian_part(),
        2 => {
            let s = rng.gen_range(0.05..0.95);
            (&q.scale(s) + &qc).hermitian_part()
        }
        _ => y,
    }
}

/// How a summand's linear map was rebuilt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SummandRoute {
    /// One-dimensional summand: the image of its unit.
    Scalar,
    /// Spin factor: sphere isometry of the parametrizing unit vectors.
    SpinParameters,
    /// Matrix algebra: affine fits on corners below rank-one projections.
    CornerFit,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub projection_map: ProjectionMapReport,
    pub routes: Vec<SummandRoute>,
    /// Largest affinity defect of the corner maps on extra samples.
    pub affinity_defect: f64,
    /// `sup ‖Φ(x) − Δ(x)‖` over sphere samples.
    pub sup_error: f64,
    pub sup_samples: usize,
    pub map_residuals: JordanMapResiduals,
    /// Largest entry difference between two reconstructions with different corners.
    pub uniqueness_gap: f64,
    #[serde(skip)]
    pub phi: JordanMap,
}

/// Rank-one projection onto the unit vector `v`, inside `mat:n`.
fn rank_one(n: usize, v: &DVector<C64>) -> Element {
    Element::raw(
        AlgebraDescriptor::Matrix(n),
        linalg::from_matrix(&(v * v.adjoint())),
    )
}

/// Unit vectors whose rank-one projections span the matrices supported on the
/// span of `basis`.
fn spanning_vectors(basis: &[DVector<C64>]) -> Vec<DVector<C64>> {
    let mut out: Vec<DVector<C64>> = basis.to_vec();
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    for r in 0..basis.len() {
        for s in r + 1..basis.len() {
            out.push((&basis[r] + &basis[s]) * h);
            out.push((&basis[r] + &basis[s] * C64::new(0.0, 1.0)) * h);
        }
    }
    out
}

/// Pivot vectors: corners below `1 − P_v` for these `v` cover `mat:n`.
fn pivot_vectors(n: usize, rotation: &DMatrix<C64>) -> Vec<DVector<C64>> {
    let columns: Vec<DVector<C64>> = (0..n).map(|k| rotation.column(k).into_owned()).collect();
    if n == 2 {
        spanning_vectors(&columns)
    } else {
        columns
    }
}

struct CornerFit {
    /// Columns: target coordinates of fitted images.
    images: Vec<DVector<C64>>,
    /// Columns: source summand coordinates of the fitted elements.
    elements: Vec<DVector<C64>>,
    affinity_defect: f64,
}

/// Rebuilds a matrix summand from the corner maps `Δ^{p₀}(a) = Δ(p₀ + a) − Δ(p₀)`
/// with `p₀ = P_v + (1 − e_i)`, fitted on halves of rank-one projections below
/// `e_i − P_v` and checked for affinity on random corner elements.
fn corner_fit<R: Rng + ?Sized>(
    delta: &SphereMap,
    index: usize,
    n: usize,
    rotation: &DMatrix<C64>,
    affinity_samples: usize,
    rng: &mut R,
) -> Result<CornerFit> {
    let source = &delta.source;
    let part = AlgebraDescriptor::Matrix(n);
    let embed = |x: &Element| -> Element {
        if source.is_direct_sum() {
            Element::embed_block(source, index, x)
        } else {
            x.clone()
        }
    };
    let others = &Element::unit(source) - &embed(&Element::unit(&part));
    let mut fit = CornerFit {
        images: Vec::new(),
        elements: Vec::new(),
        affinity_defect: 0.0,
    };
    let identity = DMatrix::<C64>::identity(n, n);
    for v in pivot_vectors(n, rotation) {
        let p0 = &embed(&rank_one(n, &v)) + &others;
        let base = delta.apply(&p0);
        let corner_map = |x: &Element| -> Element { &delta.apply(&(&p0 + &embed(x))) - &base };
        // orthonormal basis of v⊥
        let complement_projector = &identity - &v * v.adjoint();
        let mut ortho = linalg::Orthonormalizer::new();
        for k in 0..n {
            ortho.push(complement_projector.column(k).as_slice(), 1e-8);
        }
        let basis: Vec<DVector<C64>> = ortho
            .basis()
            .iter()
            .map(|c| DVector::from_column_slice(c))
            .collect();
        let mut local_images = Vec::new();
        let mut local_elements = Vec::new();
        for u in spanning_vectors(&basis) {
            let half = rank_one(n, &u).scale(0.5);
            let image = corner_map(&half).scale(2.0);
            local_elements.push(DVector::from_column_slice(half.scale(2.0).coords()));
            local_images.push(DVector::from_column_slice(image.coords()));
        }
        // affinity: the fitted linear map must reproduce the corner map elsewhere
        let el = DMatrix::from_columns(&local_elements);
        let im = DMatrix::from_columns(&local_images);
        let local = linalg::solve_right(&el, &im, 1e-10);
        for _ in 0..affinity_samples {
            let corner_projection = rank_one(n, &v);
            let complement_part = &Element::unit(&part) - &corner_projection;
            let y = complement_part
                .u(&sampling::random_positive_sphere(&part, rng))
                .hermitian_part();
            let size = y.norm()?;
            if size <= 1e-6 {
                continue;
            }
            let y = y.scale(rng.gen_range(0.1..1.0) / size);
            let predicted = &local * DVector::from_column_slice(y.coords());
            let actual = corner_map(&y);
            let gap = Element::raw(delta.target.clone(), predicted.as_slice().to_vec());
            fit.affinity_defect = fit.affinity_defect.max((&gap - &actual).residual_norm());
        }
        fit.images.extend(local_images);
        fit.elements.extend(local_elements);
    }
    Ok(fit)
}

/// Rebuilds the full linear map; `rotation` selects the corner family for matrix
/// summands.
fn reconstruct<R: Rng + ?Sized>(
    delta: &SphereMap,
    matching: &[Option<usize>],
    rotate: bool,
    affinity_samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<(JordanMap, Vec<SummandRoute>, f64)> {
    let source = delta.source.clone();
    let target = delta.target.clone();
    let mut matrix = DMatrix::<C64>::zeros(target.dim(), source.dim());
    let mut routes = Vec::new();
    let mut affinity: f64 = 0.0;
    for (i, (offset, part)) in source.blocks().into_iter().enumerate() {
        let embed = |x: &Element| -> Element {
            if source.is_direct_sum() {
                Element::embed_block(&source, i, x)
            } else {
                x.clone()
            }
        };
        match part {
            AlgebraDescriptor::Matrix(1) => {
                let image = delta.apply(&embed(&Element::unit(part)));
                matrix.set_column(offset, &DVector::from_column_slice(image.coords()));
                routes.push(SummandRoute::Scalar);
            }
            AlgebraDescriptor::Matrix(n) => {
                let rotation = if rotate {
                    linalg::random_unitary(*n, rng)
                } else {
                    DMatrix::identity(*n, *n)
                };
                let fit = corner_fit(delta, i, *n, &rotation, affinity_samples, rng)?;
                affinity = affinity.max(fit.affinity_defect);
                let local = linalg::solve_right(
                    &DMatrix::from_columns(&fit.elements),
                    &DMatrix::from_columns(&fit.images),
                    1e-10,
                );
                matrix.columns_mut(offset, n * n).copy_from(&local);
                routes.push(SummandRoute::CornerFit);
            }
            AlgebraDescriptor::Spin(n) => {
                let j = matching[i].ok_or_else(|| {
                    JordanError::Contradiction(format!(
                        "spin summand {i} has no matching target summand"
                    ))
                })?;
                let (target_offset, target_part) = target.blocks()[j];
                let target_dim = target_part.dim();
                let d = delta.clone();
                let src = source.clone();
                let n_source = *n;
                let rule = move |b: &[f64]| -> Vec<f64> {
                    let p = upsilon_inv_coords(b);
                    let full = if src.is_direct_sum() {
                        Element::embed_block(&src, i, &p)
                    } else {
                        p
                    };
                    let image = d.apply(&full);
                    (1..target_dim)
                        .map(|k| 2.0 * image.coords()[target_offset + k].im)
                        .collect()
                };
                let mut theta = ProjectionMap::from_sphere_fn(n_source, target_dim, rule);
                let local = jordan_iso_from_theta(&mut theta, rng, tol)?;
                for c in 0..n_source {
                    for r in 0..target_dim {
                        matrix[(target_offset + r, offset + c)] = local.matrix[(r, c)];
                    }
                }
                routes.push(SummandRoute::SpinParameters);
            }
            other => {
                return Err(JordanError::Precondition(format!(
                    "extension is implemented for matrix and spin summands, not {other}"
                )))
            }
        }
    }
    Ok((JordanMap::new(source, target, matrix)?, routes, affinity))
}

/// Extends a surjective isometry of positive spheres to a Jordan *-isomorphism and
/// verifies it against the sphere map on `sup_samples` fresh points.
pub fn extend_isometry<R: Rng + ?Sized>(
    delta: &SphereMap,
    sup_samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<ExtensionReport> {
    let report = extract_projection_map(delta, 30, rng, tol)?;
    if !report.isometric {
        let (a, b) = report
            .isometry_witness
            .clone()
            .expect("a defect comes with its pair");
        let original = distance(&a, &b)?;
        let mapped = distance(&delta.apply(&a), &delta.apply(&b))?;
        return Err(JordanError::NotIsometric {
            original,
            mapped,
            witness: Box::new((a, b)),
        });
    }
    if !report.consistent() {
        return Err(JordanError::Contradiction(format!(
            "projection map evidence is inconsistent: {} projection, {} order, {} orthogonality failures",
            report.projection_failures, report.order_failures, report.orthogonality_failures
        )));
    }
    let (phi, routes, affinity) =
        reconstruct(delta, &report.summand_matching, false, 50, rng, tol)?;
    if affinity > tol.residual_tol {
        return Err(JordanError::Verification {
            what: "corner map is not affine".into(),
            residual: affinity,
            witness: None,
        });
    }
    let mut sup: f64 = 0.0;
    let mut worst = None;
    for _ in 0..sup_samples {
        let x = sampling::random_positive_sphere(&delta.source, rng);
        let err = (&phi.apply(&x) - &delta.apply(&x)).residual_norm();
        if err > sup {
            sup = err;
            worst = Some(x);
        }
    }
    if sup > tol.residual_tol {
        return Err(JordanError::Verification {
            what: "extension disagrees with the sphere map".into(),
            residual: sup,
            witness: worst.map(Box::new),
        });
    }
    let map_residuals = verify_jordan_map(&phi, 50, rng, tol);
    if !map_residuals.verified(tol) || !map_residuals.unital {
        return Err(JordanError::Verification {
            what: "extension is not a unital Jordan *-isomorphism".into(),
            residual: map_residuals.worst().max(map_residuals.unit),
            witness: None,
        });
    }
    let (second, _, _) = reconstruct(delta, &report.summand_matching, true, 0, rng, tol)?;
    let uniqueness_gap = phi.max_entry_difference(&second);
    Ok(ExtensionReport {
        projection_map: report,
        routes,
        affinity_defect: affinity,
        sup_error: sup,
        sup_samples,
        map_residuals,
        uniqueness_gap,
        phi,
    })
}

/// Random Jordan *-automorphism of `algebra`: unitary conjugation (optionally
/// composed with the transpose) on matrix summands, a rotation of the vector part on
/// spin summands, and a random permutation of identical summands.
pub fn random_jordan_automorphism<R: Rng + ?Sized>(
    algebra: &AlgebraDescriptor,
    rng: &mut R,
) -> Result<JordanMap> {
    let blocks = algebra.blocks();
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    // shuffle within groups of equal summands
    for i in 0..blocks.len() {
        let same: Vec<usize> = (0..blocks.len())
            .filter(|j| blocks[*j].1 == blocks[i].1)
            .collect();
        if same[0] == i && same.len() > 1 {
            let mut shuffled = same.clone();
            shuffled.shuffle(rng);
            for (from, to) in same.iter().zip(shuffled) {
                order[*from] = to;
            }
        }
    }
    let mut matrix = DMatrix::<C64>::zeros(algebra.dim(), algebra.dim());
    for (i, (offset, part)) in blocks.iter().enumerate() {
        let target_offset = blocks[order[i]].0;
        let local = match part {
            AlgebraDescriptor::Matrix(n) => {
                let u = linalg::random_unitary(*n, rng);
                let transpose = rng.gen_bool(0.5);
                JordanMap::from_linear_fn(part, part, |x| {
                    let m = linalg::to_matrix(*n, x.coords());
                    let m = if transpose { m.transpose() } else { m };
                    Element::raw(
                        (*part).clone(),
                        linalg::from_matrix(&(&u * m * u.adjoint())),
                    )
                })
                .matrix
            }
            AlgebraDescriptor::Spin(n) => {
                let o = linalg::random_orthogonal(n - 1, rng);
                let mut m = DMatrix::<C64>::zeros(*n, *n);
                m[(0, 0)] = C64::new(1.0, 0.0);
                for r in 1..*n {
                    for c in 1..*n {
                        m[(r, c)] = C64::new(o[(r - 1, c - 1)], 0.0);
                    }
                }
                m
            }
            AlgebraDescriptor::OctonionHermitian3 => DMatrix::identity(27, 27),
            AlgebraDescriptor::DirectSum(_) => unreachable!("summands are never sums"),
        };
        let d = part.dim();
        for r in 0..d {
            for c in 0..d {
                matrix[(target_offset + r, offset + c)] = local[(r, c)];
            }
        }
    }
    JordanMap::new(algebra.clone(), algebra.clone(), matrix)
}

/// Largest `‖Φ(x) − Φ₀(x)‖` over `samples` sphere points.
pub fn sup_distance<R: Rng + ?Sized>(
    phi: &JordanMap,
    reference: &JordanMap,
    samples: usize,
    rng: &mut R,
) -> f64 {
    (0..samples)
        .map(|_| {
            let x = sampling::random_positive_sphere(&phi.domain, rng);
            (&phi.apply(&x) - &reference.apply(&x)).residual_norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_round_trip() {
        let mut rng = seeded(81);
        let alg = AlgebraDescriptor::Matrix(2);
        let delta = synthesize_delta(&JordanMap::identity(&alg), &mut rng, &tol()).unwrap();
        let one = Element::unit(&alg);
        assert!((&delta.apply(&one) - &one).residual_norm() < 1e-15);
        let ext = extend_isometry(&delta, 50, &mut rng, &tol()).unwrap();
        assert!(ext.phi.max_entry_difference(&JordanMap::identity(&alg)) < 1e-9);
    }

    #[test]
    fn round_trips_across_models() {
        let mut rng = seeded(82);
        for text in [
            "mat:2",
            "mat:3",
            "spin:3",
            "spin:6",
            "sum:mat:2,spin:4",
            "sum:spin:4,spin:5",
            "sum:mat:1,mat:2,mat:2",
        ] {
            let alg: AlgebraDescriptor = text.parse().unwrap();
            let phi0 = random_jordan_automorphism(&alg, &mut rng).unwrap();
            let delta = synthesize_delta(&phi0, &mut rng, &tol()).unwrap();
            let ext = extend_isometry(&delta, 100, &mut rng, &tol()).unwrap();
            assert!(
                sup_distance(&ext.phi, &phi0, 100, &mut rng) < 1e-8,
                "{text}"
            );
            assert!(ext.uniqueness_gap < 1e-8, "{text}: {}", ext.uniqueness_gap);
        }
    }

    #[test]
    fn perturbations_are_rejected() {
        let mut rng = seeded(83);
        for text in ["mat:3", "spin:4"] {
            let alg: AlgebraDescriptor = text.parse().unwrap();
            let phi0 = random_jordan_automorphism(&alg, &mut rng).unwrap();
            let delta = synthesize_delta(&phi0, &mut rng, &tol()).unwrap();
            for kind in [Perturbation::Square, Perturbation::Sqrt] {
                let bad = perturb(&delta, kind);
                let p = sampling::random_nontrivial_projection(&alg, &mut rng);
                assert!((&bad.apply(&p) - &delta.apply(&p)).residual_norm() < 1e-9);
                assert!(matches!(
                    extend_isometry(&bad, 50, &mut rng, &tol()),
                    Err(JordanError::NotIsometric { .. })
                ));
            }
        }
    }

    #[test]
    fn block_swap_maps_block_units() {
        let mut rng = seeded(84);
        let alg: AlgebraDescriptor = "sum:mat:2,mat:2".parse().unwrap();
        let mut m = DMatrix::<C64>::zeros(8, 8);
        for k in 0..4 {
            m[(k, k + 4)] = C64::new(1.0, 0.0);
            m[(k + 4, k)] = C64::new(1.0, 0.0);
        }
        let swap = JordanMap::new(alg.clone(), alg.clone(), m).unwrap();
        let delta = synthesize_delta(&swap, &mut rng, &tol()).unwrap();
        let report = extract_projection_map(&delta, 20, &mut rng, &tol()).unwrap();
        assert!(report.consistent());
        assert_eq!(report.summand_matching, vec![Some(1), Some(0)]);
    }

    #[test]
    fn order_routes_examples() {
        let mut rng = seeded(85);
        let q = Element::diag(&[1.0, 0.0, 0.0]);
        let qc = complement(&q);
        let a = (&q + &qc.scale(0.5)).hermitian_part();
        let r = order_routes_test(&q, &a, 10, &mut rng, &tol()).unwrap();
        assert!(r.spectral && r.peirce && r.distance && r.agree);
        let a = (&q.scale(0.75) + &qc).hermitian_part();
        let r = order_routes_test(&q, &a, 10, &mut rng, &tol()).unwrap();
        assert!(!r.spectral && !r.peirce && !r.distance && r.agree);
        assert!(r.min_distance < 1.0);
        let q2 = Element::diag(&[1.0, 0.0]);
        let r = order_routes_test(&q2, &Element::diag(&[1.0, 0.5]), 5, &mut rng, &tol()).unwrap();
        assert!(r.leq() && r.agree);
        assert!(order_routes_test(&q2, &Element::diag(&[1.0, 0.0]), 5, &mut rng, &tol()).is_err());
    }

    #[test]
    fn order_routes_agree_on_random_instances() {
        let mut rng = seeded(86);
        for text in ["mat:3", "spin:4", "h3o"] {
            let alg: AlgebraDescriptor = text.parse().unwrap();
            let mut seen = [0usize; 2];
            for _ in 0..40 {
                let q = sampling::random_nontrivial_projection(&alg, &mut rng);
                let a = random_order_instance(&q, &mut rng);
                let r = order_routes_test(&q, &a, 3, &mut rng, &tol()).unwrap();
                assert!(r.agree, "{text}: {r:?}");
                seen[r.leq() as usize] += 1;
            }
            assert!(seen[0] > 0 && seen[1] > 0);
        }
    }
}
