//! Metric characterizations on the positive unit sphere: diametrical witnesses, the
//! double-sphere test for projections, and distance tests for invertibility, the
//! unit, order and orthogonality.
//!
//! `Sph(S)` is never materialized. Every claim about it is backed by an explicit
//! element and two norm computations.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraDescriptor, Element, Tolerances, C64};
use crate::error::{JordanError, Result};
use crate::linalg;
use crate::projections::{
    complement, is_central, is_orthogonal, leq, require_projection, ProjectionPair,
};
use crate::sampling;
use crate::spectral::{j_spectrum_with, require_positive_sphere, SpectralData};

/// A pure state realized by a minimal projection `p_ω`, with `U_{p_ω}(x) = ω(x) p_ω`.
#[derive(Clone, Debug, Serialize)]
pub struct PureStateWitness {
    #[serde(skip)]
    pub projection: Element,
    /// Summand carrying the state.
    pub summand: usize,
    /// Unit vector of the state when the summand is a matrix algebra.
    #[serde(skip)]
    pub vector: Option<Vec<C64>>,
    pub omega_a: f64,
    pub omega_b: f64,
}

impl PureStateWitness {
    /// Builds the state of a minimal projection.
    pub fn from_minimal(projection: Element) -> Self {
        let algebra = projection.algebra().clone();
        let mut summand = 0;
        let mut vector = None;
        for (index, part) in algebra.summands().iter().enumerate() {
            let block = projection.block(index);
            if block.residual_norm() > 0.5 {
                summand = index;
                if let AlgebraDescriptor::Matrix(n) = part {
                    let (_, vecs) = linalg::hermitian_eigen(&linalg::to_matrix(*n, block.coords()));
                    vector = Some(vecs.column(n - 1).iter().copied().collect());
                }
                break;
            }
        }
        Self {
            projection,
            summand,
            vector,
            omega_a: f64::NAN,
            omega_b: f64::NAN,
        }
    }

    /// `ω(x) = ⟨U_p(x), p⟩ / ⟨p, p⟩`.
    pub fn evaluate(&self, x: &Element) -> f64 {
        let p = &self.projection;
        (self.projection.u(x).inner(p) / p.inner(p)).re
    }
}

/// A minimal projection below the nonzero projection `e`, chosen deterministically.
pub fn minimal_subprojection(e: &Element, tol: &Tolerances) -> Result<Element> {
    let mut rng = crate::rng::seeded(0x6d69_6e69);
    let parts = sampling::corner_spectral_projections(e, &mut rng, tol)?;
    parts
        .into_iter()
        .min_by(|x, y| x.inner(x).re.total_cmp(&y.inner(y).re))
        .ok_or_else(|| {
            JordanError::Precondition("zero projection has no minimal subprojection".into())
        })
}

/// A pure state `ω` with `{ω(a), ω(b)} = {0, 1}`, which exists exactly when
/// `‖a − b‖ = 1` for positive norm-one `a, b`.
pub fn diametrical_witness(
    a: &Element,
    b: &Element,
    tol: &Tolerances,
) -> Result<Option<PureStateWitness>> {
    require_positive_sphere(a, tol)?;
    require_positive_sphere(b, tol)?;
    crate::algebra::check_same(a, b)?;
    let diff = (a - b).hermitian_part();
    let data = j_spectrum_with(&diff, tol)?;
    let top = if data.max() >= 1.0 - tol.eq_tol {
        data.projections.last().unwrap()
    } else if data.min() <= -1.0 + tol.eq_tol {
        &data.projections[0]
    } else {
        return Ok(None);
    };
    let mut witness = PureStateWitness::from_minimal(minimal_subprojection(top, tol)?);
    witness.omega_a = witness.evaluate(a);
    witness.omega_b = witness.evaluate(b);
    Ok(Some(witness))
}

/// Eigenspace-inclusion certificate that `b ∈ Sph(Sph(a))`: `b` vanishes where `a`
/// vanishes and equals one where `a` equals one.
#[derive(Clone, Debug, Serialize)]
pub struct SphereCertificate {
    /// `‖p₀∘b‖` for the kernel projection `p₀` of `a`.
    pub kernel_residual: f64,
    /// `‖p₁∘b − p₁‖` for the 1-eigenprojection `p₁` of `a`.
    pub top_residual: f64,
    /// `‖b − a‖`.
    pub separation: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleSphereOutcome {
    pub is_projection: bool,
    #[serde(skip)]
    pub falsifier: Option<Element>,
    pub certificate: Option<SphereCertificate>,
    /// Candidates tried by the refutation sweep (projection case).
    pub candidates: usize,
    /// Candidates for which a refuting `c ∈ Sph(a)` was constructed.
    pub refuted: usize,
    /// Largest `‖c − b‖` among refuting elements.
    pub worst_refutation_distance: f64,
}

/// Which construction produced a refuting element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Refutation {
    /// `b` itself is at distance one from `p`.
    Itself,
    /// `c = ((1−q) + U_{1−q}(b)/‖U_{1−q}(b)‖)/2` with `q ≤ p` where `b` is smallest.
    CornerMinimum,
    /// `c = p + U_{1−p}(b)/‖U_{1−p}(b)‖`, the natural choice when `U_p(b)` is close to `p`.
    Complement,
}

fn spectral_values(a: &Element, tol: &Tolerances) -> Result<SpectralData> {
    require_positive_sphere(a, tol)
}

/// Builds `c ∈ Sph(p)` with `‖c − b‖ < 1`, proving `b ∉ Sph(Sph(p))` for `b ≠ p`.
pub fn refute_membership(
    p: &Element,
    b: &Element,
    tol: &Tolerances,
) -> Result<Option<(Refutation, Element)>> {
    let algebra = p.algebra();
    let one = Element::unit(algebra);
    let near = |x: &Element, y: &Element| -> Result<f64> { (x - y).hermitian_part().norm() };
    if near(b, p)? >= 1.0 - tol.eq_tol {
        return Ok(Some((Refutation::Itself, b.clone())));
    }
    // both constructions are tried: near the boundary between their regimes one of
    // them can sit within rounding of distance one while the other has a clear margin
    let mut built: Vec<(Refutation, Element)> = Vec::with_capacity(2);
    let corner = (&p.u(b) + &complement(p).scale(2.0)).hermitian_part();
    let data = j_spectrum_with(&corner, tol)?;
    if data.min() < 1.0 - tol.eq_tol {
        let rest = &one - &data.projections[0];
        let outer = rest.u(b).hermitian_part();
        let size = outer.norm()?;
        if size > tol.eq_tol {
            built.push((
                Refutation::CornerMinimum,
                (&rest + &outer.scale(1.0 / size)).scale(0.5),
            ));
        }
    }
    let outer = complement(p).u(b).hermitian_part();
    let size = outer.norm()?;
    if size > tol.eq_tol {
        built.push((Refutation::Complement, p + &outer.scale(1.0 / size)));
    }
    let mut best: Option<(f64, (Refutation, Element))> = None;
    for (kind, c) in built {
        if near(&c, p)? < 1.0 - tol.eq_tol {
            continue;
        }
        let d = near(&c, b)?;
        if d < 1.0 - tol.eq_tol && best.as_ref().is_none_or(|(e, _)| d < *e) {
            best = Some((d, (kind, c)));
        }
    }
    Ok(best.map(|(_, found)| found))
}

/// Candidates for the refutation sweep around a projection `p`: random sphere
/// points, perturbations inside the Peirce corners, and subprojections.
fn sweep_candidate<R: Rng + ?Sized>(
    p: &Element,
    k: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<Element> {
    let algebra = p.algebra();
    let pc = complement(p);
    let has_complement = pc.residual_norm() > tol.eq_tol;
    let x = sampling::random_positive_sphere(algebra, rng);
    let raw = match k % 5 {
        0 => x,
        1 if has_complement => p + &pc.u(&x).scale(rng.gen_range(0.05..1.0)),
        2 => (&p.u(&x) + &pc).hermitian_part(),
        3 => sampling::random_subprojection(p, rng, tol)?,
        _ => {
            let s = rng.gen_range(0.01..0.5);
            (&p.scale(1.0 - s) + &x.scale(s)).hermitian_part()
        }
    };
    let raw = raw.hermitian_part();
    let norm = raw.norm()?;
    Ok(raw.scale(1.0 / norm))
}

/// Decides whether a positive norm-one element is a projection by the double-sphere
/// property.
///
/// For a non-projection the falsifier is `f(a)` with `f` zero below half the
/// largest interior spectral value `λ`, one above `λ`, and linear in between. For a
/// projection, `candidates` elements `b ≠ a` are each refuted by an explicit
/// `c ∈ Sph(a)` with `‖c − b‖ < 1`.
pub fn double_sphere_test<R: Rng + ?Sized>(
    a: &Element,
    candidates: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<DoubleSphereOutcome> {
    let data = spectral_values(a, tol)?;
    let interior: Vec<f64> = data
        .values
        .iter()
        .copied()
        .filter(|v| *v > tol.eq_tol && *v < 1.0 - tol.eq_tol)
        .collect();
    if let Some(&lambda) = interior.last() {
        let half = lambda / 2.0;
        let falsifier = data.apply(|t| {
            if t <= half {
                0.0
            } else if t >= lambda {
                1.0
            } else {
                (t - half) / half
            }
        })?;
        let kernel = data.projection_where(|v| v.abs() <= tol.eq_tol);
        let top = data.projection_where(|v| (v - 1.0).abs() <= tol.eq_tol);
        let kernel_residual = kernel.circ(&falsifier).residual_norm();
        let top_residual = (&top.circ(&falsifier) - &top).residual_norm();
        let separation = (&falsifier - a).residual_norm();
        let passed = kernel_residual <= tol.residual_tol
            && top_residual <= tol.residual_tol
            && separation > tol.eq_tol;
        return Ok(DoubleSphereOutcome {
            is_projection: false,
            falsifier: Some(falsifier),
            certificate: Some(SphereCertificate {
                kernel_residual,
                top_residual,
                separation,
                passed,
            }),
            candidates: 0,
            refuted: 0,
            worst_refutation_distance: 0.0,
        });
    }
    let p = data.projection_where(|v| v > 0.5);
    let mut refuted = 0;
    let mut tried = 0;
    let mut worst: f64 = 0.0;
    let mut k = 0;
    while tried < candidates && k < 4 * candidates {
        let b = sweep_candidate(&p, k, rng, tol)?;
        k += 1;
        if (&b - &p).residual_norm() <= tol.eq_tol {
            continue;
        }
        tried += 1;
        if let Some((_, c)) = refute_membership(&p, &b, tol)? {
            refuted += 1;
            worst = worst.max((&c - &b).hermitian_part().norm()?);
        }
    }
    Ok(DoubleSphereOutcome {
        is_projection: true,
        falsifier: None,
        certificate: None,
        candidates: tried,
        refuted,
        worst_refutation_distance: worst,
    })
}

/// Result of the order test `q ≤ p` through spheres of invertible elements.
#[derive(Clone, Debug, Serialize)]
pub struct OrderOutcome {
    pub q_leq_p: bool,
    #[serde(skip)]
    pub falsifier: Option<Element>,
    /// `‖a − p‖` and `‖a − q‖` for the falsifier.
    pub falsifier_distances: Option<(f64, f64)>,
    /// Bound the falsifier must meet: ½, or the ε-branch bound.
    pub falsifier_bound: Option<f64>,
    pub sampled: usize,
    /// Smallest `‖a − q‖` over sampled invertible `a ∈ Sph(p)` (order case).
    pub min_sampled_distance: Option<f64>,
}

/// Decides `q ≤ p` and backs the answer with sphere evidence: an invertible
/// positive norm-one `a` with `‖a − p‖ = 1` but `‖a − q‖ < 1`, or sampled
/// invertible members of `Sph(p)` that all lie in `Sph(q)`.
pub fn order_by_spheres<R: Rng + ?Sized>(
    q: &Element,
    p: &Element,
    samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<OrderOutcome> {
    require_projection(p, tol)?;
    require_projection(q, tol)?;
    crate::algebra::check_same(p, q)?;
    if p.residual_norm() <= tol.eq_tol || q.residual_norm() <= tol.eq_tol {
        return Err(JordanError::Precondition(
            "order test needs nonzero projections".into(),
        ));
    }
    let algebra = p.algebra();
    let one = Element::unit(algebra);
    if leq(q, p, tol) {
        let pc = complement(p);
        let mut min: Option<f64> = None;
        let mut sampled = 0;
        if pc.residual_norm() > tol.eq_tol {
            for _ in 0..samples {
                let r = sampling::random_minimal_subprojection(&pc, rng, tol)?;
                let rest = &one - &r;
                let y = sampling::random_positive_invertible(algebra, 0.05, rng);
                let a = (&r + &rest.u(&y)).hermitian_part();
                let d = (&a - q).hermitian_part().norm()?;
                sampled += 1;
                min = Some(min.map_or(d, |m: f64| m.min(d)));
            }
        }
        return Ok(OrderOutcome {
            q_leq_p: true,
            falsifier: None,
            falsifier_distances: None,
            falsifier_bound: None,
            sampled,
            min_sampled_distance: min,
        });
    }
    let pair = ProjectionPair::new(p, q, tol)?;
    let (a, bound) = if pair.not_p_and_q.residual_norm() > tol.eq_tol {
        ((&one + &pair.not_p_and_q).scale(0.5), 0.5)
    } else {
        let gap = (p - q).hermitian_part().square();
        let data = j_spectrum_with(&gap, tol)?;
        let (index, value) = data
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v > tol.eq_tol && **v < 1.0 - tol.eq_tol)
            .max_by(|x, y| x.1.total_cmp(y.1))
            .map(|(i, v)| (i, *v))
            .ok_or_else(|| {
                JordanError::Contradiction(
                    "q is not below p yet the pair has no generic part".into(),
                )
            })?;
        let e = &data.projections[index];
        let t = 1.0 - value;
        let eps = (1.0 - t.sqrt()) / 2.0;
        let ep = e.u(p).hermitian_part();
        let a = &(&(&one - e).scale(0.5) + &ep.scale(eps)) + &(e - &ep);
        let bound = (eps + (eps * eps + 4.0 * t * (1.0 - eps)).sqrt()) / 2.0;
        (a.hermitian_part(), bound.max(0.5))
    };
    let dp = (&a - p).hermitian_part().norm()?;
    let dq = (&a - q).hermitian_part().norm()?;
    Ok(OrderOutcome {
        q_leq_p: false,
        falsifier: Some(a),
        falsifier_distances: Some((dp, dq)),
        falsifier_bound: Some(bound),
        sampled: 0,
        min_sampled_distance: None,
    })
}

/// `‖1 − a‖ < 1` for positive norm-one `a`.
pub fn invertible_by_distance(a: &Element, tol: &Tolerances) -> Result<bool> {
    require_positive_sphere(a, tol)?;
    let d = (&Element::unit(a.algebra()) - a).hermitian_part().norm()?;
    Ok(d < 1.0 - tol.eq_tol)
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitReport {
    pub is_unit: bool,
    pub samples: usize,
    /// Non-unit case: sampled `a` lying in `Sph(p) ∪ Sph(1−p)`.
    pub covered: usize,
    /// Unit case: largest `max(‖c − 1‖, ‖c − a‖)` over midpoints `c = (1+a)/2`.
    pub worst_midpoint_distance: Option<f64>,
}

/// Distinguishes the unit among nonzero central projections: for `p ≠ 1` the
/// spheres of `p` and `1 − p` cover the positive sphere, while for `p = 1` the
/// midpoint `(1 + a)/2` lies within ½ of both `1` and `a`.
pub fn unit_characterization<R: Rng + ?Sized>(
    p: &Element,
    samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<UnitReport> {
    if !is_central(p, tol)? {
        return Err(JordanError::Precondition(
            "projection is not central".into(),
        ));
    }
    if p.residual_norm() <= tol.eq_tol {
        return Err(JordanError::Precondition(
            "the zero projection is out of scope".into(),
        ));
    }
    let algebra = p.algebra();
    let one = Element::unit(algebra);
    let is_unit = (&one - p).residual_norm() <= tol.eq_tol;
    let pc = complement(p);
    let mut covered = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a = sampling::random_positive_sphere(algebra, rng);
        if is_unit {
            let c = (&one + &a).scale(0.5);
            let d1 = (&c - &one).hermitian_part().norm()?;
            let d2 = (&c - &a).hermitian_part().norm()?;
            worst = worst.max(d1.max(d2));
        } else {
            let to_p = (&a - p).hermitian_part().norm()?;
            let to_pc = (&a - &pc).hermitian_part().norm()?;
            if to_p >= 1.0 - tol.eq_tol || to_pc >= 1.0 - tol.eq_tol {
                covered += 1;
            }
        }
    }
    Ok(UnitReport {
        is_unit,
        samples,
        covered,
        worst_midpoint_distance: is_unit.then_some(worst),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CornerSphereOutcome {
    pub orthogonal: bool,
    pub sampled: usize,
    /// Orthogonal case: largest `|‖a − b‖ − 1|` over sampled corner pairs.
    pub max_deviation: Option<f64>,
    /// Non-orthogonal case: `‖a − b‖` of the constructed pair and its bound `√(1−δ)`.
    pub witness_distance: Option<f64>,
    pub witness_bound: Option<f64>,
    #[serde(skip)]
    pub witness: Option<(Element, Element)>,
}

fn corner_sphere_point<R: Rng + ?Sized>(p: &Element, rng: &mut R) -> Result<Element> {
    loop {
        let x = p
            .u(&sampling::random_positive_sphere(p.algebra(), rng))
            .hermitian_part();
        let n = x.norm()?;
        if n > 1e-3 {
            return Ok(x.scale(1.0 / n));
        }
    }
}

/// Orthogonality of projections through positive norm-one elements of their corners:
/// `p ⟂ q` iff `‖a − b‖ = 1` whenever `a = U_p(a)` and `b = U_q(b)`.
pub fn orthogonality_by_corner_spheres<R: Rng + ?Sized>(
    p: &Element,
    q: &Element,
    samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<CornerSphereOutcome> {
    let orthogonal = is_orthogonal(p, q, tol)?;
    if p.residual_norm() <= tol.eq_tol || q.residual_norm() <= tol.eq_tol {
        return Err(JordanError::Precondition(
            "corner test needs nonzero projections".into(),
        ));
    }
    if orthogonal {
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let a = corner_sphere_point(p, rng)?;
            let b = corner_sphere_point(q, rng)?;
            let d = (&a - &b).hermitian_part().norm()?;
            worst = worst.max((d - 1.0).abs());
        }
        return Ok(CornerSphereOutcome {
            orthogonal,
            sampled: samples,
            max_deviation: Some(worst),
            witness_distance: None,
            witness_bound: None,
            witness: None,
        });
    }
    let pair = ProjectionPair::new(p, q, tol)?;
    let (a, b, bound) = if pair.p_and_q.residual_norm() > tol.eq_tol {
        (pair.p_and_q.clone(), pair.p_and_q.clone(), 0.0)
    } else {
        let gap = (p - q).hermitian_part().square();
        let data = j_spectrum_with(&gap, tol)?;
        let mut z = Element::zero(p.algebra());
        let mut t0 = f64::INFINITY;
        for (v, e) in data.values.iter().zip(&data.projections) {
            if *v > tol.eq_tol && *v < 1.0 - tol.eq_tol {
                z += e;
                t0 = t0.min(1.0 - v);
            }
        }
        if !t0.is_finite() {
            return Err(JordanError::Contradiction(
                "non-orthogonal pair without generic part or meet".into(),
            ));
        }
        let delta = t0.min(0.8) / 2.0;
        (
            z.u(p).hermitian_part(),
            z.u(q).hermitian_part(),
            (1.0 - delta).sqrt(),
        )
    };
    let d = (&a - &b).hermitian_part().norm()?;
    Ok(CornerSphereOutcome {
        orthogonal,
        sampled: 0,
        max_deviation: None,
        witness_distance: Some(d),
        witness_bound: Some(bound),
        witness: Some((a, b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use crate::spectral::classify_positive;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn half_matrix() -> Element {
        Element::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap()
    }

    #[test]
    fn witness_examples() {
        let p = Element::diag(&[1.0, 0.0]);
        let w = diametrical_witness(&p, &complement(&p), &tol())
            .unwrap()
            .unwrap();
        assert!((w.omega_a - 1.0).abs() < 1e-12 && w.omega_b.abs() < 1e-12);
        let v = w.vector.unwrap();
        assert!((v[0].norm() - 1.0).abs() < 1e-12);
        assert!(diametrical_witness(
            &Element::diag(&[1.0, 0.3]),
            &Element::diag(&[0.2, 1.0]),
            &tol()
        )
        .unwrap()
        .is_none());
        let w = diametrical_witness(
            &Element::diag(&[1.0, 0.5]),
            &Element::diag(&[0.0, 1.0]),
            &tol(),
        )
        .unwrap()
        .unwrap();
        assert!((w.omega_a - 1.0).abs() < 1e-12 && w.omega_b.abs() < 1e-12);
        assert!(diametrical_witness(&Element::diag(&[1.0, 2.0]), &p, &tol()).is_err());
    }

    #[test]
    fn double_sphere_examples() {
        let mut rng = seeded(61);
        let p = Element::diag(&[1.0, 0.0, 0.0]);
        let out = double_sphere_test(&p, 100, &mut rng, &tol()).unwrap();
        assert!(out.is_projection);
        assert_eq!(out.refuted, out.candidates);
        assert_eq!(out.candidates, 100);
        let out = double_sphere_test(&Element::diag(&[1.0, 0.5]), 0, &mut rng, &tol()).unwrap();
        assert!(!out.is_projection);
        assert!(out.certificate.unwrap().passed);
        let b = out.falsifier.unwrap();
        assert!((&b - &Element::diag(&[1.0, 1.0])).residual_norm() < 1e-12);
        let one = Element::unit(&AlgebraDescriptor::Matrix(2));
        let out = double_sphere_test(&one, 50, &mut rng, &tol()).unwrap();
        assert!(out.is_projection && out.refuted == out.candidates);
    }

    #[test]
    fn order_examples() {
        let mut rng = seeded(62);
        let q = Element::diag(&[1.0, 0.0]);
        let p = half_matrix();
        let out = order_by_spheres(&q, &q, 20, &mut rng, &tol()).unwrap();
        assert!(out.q_leq_p && out.min_sampled_distance.unwrap() >= 1.0 - 1e-9);
        let out = order_by_spheres(&q, &p, 20, &mut rng, &tol()).unwrap();
        assert!(!out.q_leq_p);
        let (dp, dq) = out.falsifier_distances.unwrap();
        assert!(dp >= 1.0 - 1e-9);
        assert!(dq <= out.falsifier_bound.unwrap() + 1e-9 && dq < 1.0);
        assert!(
            classify_positive(&out.falsifier.unwrap(), &tol())
                .unwrap()
                .invertible
        );
        let alg: AlgebraDescriptor = "sum:mat:2,mat:2".parse().unwrap();
        let block = Element::block_unit(&alg, 0);
        let sub = Element::embed_block(&alg, 0, &q);
        assert!(
            order_by_spheres(&sub, &block, 20, &mut rng, &tol())
                .unwrap()
                .q_leq_p
        );
        // corner branch: q has a part orthogonal to p
        let q = Element::diag(&[0.0, 1.0, 1.0]);
        let p = Element::diag(&[1.0, 1.0, 0.0]);
        let out = order_by_spheres(&q, &p, 0, &mut rng, &tol()).unwrap();
        let (dp, dq) = out.falsifier_distances.unwrap();
        assert!(dp >= 1.0 - 1e-9 && (dq - 0.5).abs() < 1e-9);
    }

    #[test]
    fn invertibility_and_unit() {
        let mut rng = seeded(63);
        let alg = AlgebraDescriptor::Matrix(2);
        assert!(invertible_by_distance(&Element::unit(&alg), &tol()).unwrap());
        assert!(!invertible_by_distance(&Element::diag(&[1.0, 0.0]), &tol()).unwrap());
        assert!(invertible_by_distance(&Element::diag(&[1.0, 0.2]), &tol()).unwrap());
        let r = unit_characterization(&Element::unit(&alg), 30, &mut rng, &tol()).unwrap();
        assert!(r.is_unit && r.worst_midpoint_distance.unwrap() <= 0.5 + 1e-12);
        let sum: AlgebraDescriptor = "sum:mat:2,mat:2".parse().unwrap();
        let r = unit_characterization(&Element::block_unit(&sum, 1), 40, &mut rng, &tol()).unwrap();
        assert!(!r.is_unit && r.covered == 40);
        assert!(unit_characterization(&Element::zero(&alg), 1, &mut rng, &tol()).is_err());
        assert!(unit_characterization(&Element::diag(&[1.0, 0.0]), 1, &mut rng, &tol()).is_err());
    }

    #[test]
    fn corner_spheres() {
        let mut rng = seeded(64);
        let p = Element::diag(&[1.0, 0.0, 0.0]);
        let q = Element::diag(&[0.0, 1.0, 0.0]);
        let out = orthogonality_by_corner_spheres(&p, &q, 50, &mut rng, &tol()).unwrap();
        assert!(out.orthogonal && out.max_deviation.unwrap() <= 1e-9);
        let p = Element::diag(&[1.0, 0.0]);
        let out = orthogonality_by_corner_spheres(&p, &half_matrix(), 0, &mut rng, &tol()).unwrap();
        assert!(!out.orthogonal);
        assert!(out.witness_distance.unwrap() <= out.witness_bound.unwrap() + 1e-12);
        assert!((out.witness_distance.unwrap() - 0.5f64.sqrt()).abs() < 1e-9);
    }
}
