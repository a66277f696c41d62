//! Projection predicates, the projection lattice, Peirce parts, centrality and
//! Abelian projections.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{commutator_defect, Element, Tolerances};
use crate::error::{JordanError, Result};
use crate::linalg::Orthonormalizer;
use crate::sampling;
use crate::spectral::{j_spectrum_with, range_projection};

pub fn is_projection(a: &Element, tol: &Tolerances) -> bool {
    let idempotence = (&a.square() - a).residual_norm();
    let adjointness = (&a.star() - a).residual_norm();
    idempotence <= tol.residual_tol && adjointness <= tol.residual_tol
}

pub fn require_projection(a: &Element, tol: &Tolerances) -> Result<()> {
    let idempotence = (&a.square() - a).residual_norm();
    let adjointness = (&a.star() - a).residual_norm();
    if idempotence <= tol.residual_tol && adjointness <= tol.residual_tol {
        Ok(())
    } else {
        Err(JordanError::NotProjection {
            idempotence,
            adjointness,
        })
    }
}

/// `q ≤ p` for projections: `p∘q = q`.
pub fn leq(q: &Element, p: &Element, tol: &Tolerances) -> bool {
    (&p.circ(q) - q).residual_norm() <= tol.residual_tol
}

pub fn complement(p: &Element) -> Element {
    &Element::unit(p.algebra()) - p
}

#[derive(Clone, Debug)]
pub struct Lattice {
    pub join: Element,
    pub meet: Element,
}

/// Join `r(p+q)` and meet `1 − r((1−p)+(1−q))`.
pub fn lattice(p: &Element, q: &Element, tol: &Tolerances) -> Result<Lattice> {
    require_projection(p, tol)?;
    require_projection(q, tol)?;
    crate::algebra::check_same(p, q)?;
    Ok(Lattice {
        join: join(p, q, tol)?,
        meet: meet(p, q, tol)?,
    })
}

pub fn join(p: &Element, q: &Element, tol: &Tolerances) -> Result<Element> {
    range_projection(&(p + q).hermitian_part(), tol)
}

pub fn meet(p: &Element, q: &Element, tol: &Tolerances) -> Result<Element> {
    let r = range_projection(&(&complement(p) + &complement(q)).hermitian_part(), tol)?;
    Ok(complement(&r))
}

pub fn is_orthogonal(p: &Element, q: &Element, tol: &Tolerances) -> Result<bool> {
    require_projection(p, tol)?;
    require_projection(q, tol)?;
    crate::algebra::check_same(p, q)?;
    Ok(p.circ(q).residual_norm() <= tol.residual_tol)
}

/// The four corner meets of a pair and the generic parts `p₀`, `q₀`.
#[derive(Clone, Debug)]
pub struct ProjectionPair {
    pub p: Element,
    pub q: Element,
    pub p_and_q: Element,
    pub p_and_not_q: Element,
    pub not_p_and_q: Element,
    pub not_p_and_not_q: Element,
    /// `p − p∧q − p∧q⊥`.
    pub p0: Element,
    /// `q − p∧q − p⊥∧q`.
    pub q0: Element,
}

/// Labels of the four corners, in the order used by representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Corner {
    PAndQ,
    NotPAndQ,
    PAndNotQ,
    NotPAndNotQ,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::PAndQ,
        Corner::NotPAndQ,
        Corner::PAndNotQ,
        Corner::NotPAndNotQ,
    ];

    /// Values of `(p, q)` on this corner.
    pub fn pattern(self) -> (f64, f64) {
        match self {
            Corner::PAndQ => (1.0, 1.0),
            Corner::NotPAndQ => (0.0, 1.0),
            Corner::PAndNotQ => (1.0, 0.0),
            Corner::NotPAndNotQ => (0.0, 0.0),
        }
    }
}

impl ProjectionPair {
    pub fn new(p: &Element, q: &Element, tol: &Tolerances) -> Result<Self> {
        require_projection(p, tol)?;
        require_projection(q, tol)?;
        crate::algebra::check_same(p, q)?;
        let (pc, qc) = (complement(p), complement(q));
        let p_and_q = meet(p, q, tol)?;
        let p_and_not_q = meet(p, &qc, tol)?;
        let not_p_and_q = meet(&pc, q, tol)?;
        let not_p_and_not_q = meet(&pc, &qc, tol)?;
        let p0 = &(p - &p_and_q) - &p_and_not_q;
        let q0 = &(q - &p_and_q) - &not_p_and_q;
        Ok(Self {
            p: p.clone(),
            q: q.clone(),
            p_and_q,
            p_and_not_q,
            not_p_and_q,
            not_p_and_not_q,
            p0,
            q0,
        })
    }

    pub fn corner(&self, which: Corner) -> &Element {
        match which {
            Corner::PAndQ => &self.p_and_q,
            Corner::NotPAndQ => &self.not_p_and_q,
            Corner::PAndNotQ => &self.p_and_not_q,
            Corner::NotPAndNotQ => &self.not_p_and_not_q,
        }
    }

    /// Corners whose meet is nonzero.
    pub fn nonzero_corners(&self, tol: &Tolerances) -> Vec<Corner> {
        Corner::ALL
            .into_iter()
            .filter(|c| self.corner(*c).residual_norm() > tol.eq_tol)
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct PeirceParts {
    pub part2: Element,
    pub part1: Element,
    pub part0: Element,
}

/// `a = U_p(a) + (mixed part) + U_{1−p}(a)`.
pub fn peirce_decompose(a: &Element, p: &Element, tol: &Tolerances) -> Result<PeirceParts> {
    require_projection(p, tol)?;
    crate::algebra::check_same(a, p)?;
    let part2 = p.u(a);
    let part0 = complement(p).u(a);
    let part1 = &(a - &part2) - &part0;
    Ok(PeirceParts {
        part2,
        part1,
        part0,
    })
}

/// Self-adjoint element of `elements` (or of their real/imaginary parts) that does
/// not operator commute with `p`.
fn non_commuting_partner(p: &Element, elements: &[Element], tol: &Tolerances) -> Option<Element> {
    elements
        .iter()
        .flat_map(|b| [b.re_part(), b.im_part()])
        .filter(|x| x.max_abs() > tol.eq_tol)
        .max_by(|x, y| commutator_defect(p, x).total_cmp(&commutator_defect(p, y)))
        .filter(|x| commutator_defect(p, x) > tol.residual_tol)
}

/// Spectral projection above ½ of `r + ε x`: a projection close to `r`, distinct from
/// it when `x` does not operator commute with `r`.
fn tilted_projection(r: &Element, x: &Element, tol: &Tolerances) -> Result<Element> {
    let eps = 0.2 / x.norm()?.max(1e-12);
    let y = (r + &x.scale(eps)).hermitian_part();
    Ok(j_spectrum_with(&y, tol)?.projection_where(|v| v > 0.5))
}

/// Whether `p` operator commutes with every canonical basis element.
pub fn is_central(p: &Element, tol: &Tolerances) -> Result<bool> {
    require_projection(p, tol)?;
    let basis = Element::canonical_basis(p.algebra());
    Ok(basis
        .iter()
        .all(|b| commutator_defect(p, b) <= tol.residual_tol))
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralityReport {
    pub central: bool,
    /// Number of sampled projections compared against `p` (central case).
    pub sampled: usize,
    /// Smallest `‖p − q‖` over sampled `q ≠ p` (central case).
    pub min_sampled_distance: Option<f64>,
    /// Distance to the witness projection (non-central case).
    pub witness_distance: Option<f64>,
    #[serde(skip)]
    pub witness: Option<Element>,
    /// Whether the distance evidence agrees with the algebraic decision.
    pub consistent: bool,
}

/// Centrality decision with its distance evidence.
pub fn centrality_report<R: Rng + ?Sized>(
    p: &Element,
    samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<CentralityReport> {
    let central = is_central(p, tol)?;
    let algebra = p.algebra();
    if central {
        let mut min: Option<f64> = None;
        let mut sampled = 0;
        for _ in 0..samples {
            let q = sampling::random_projection(algebra, rng);
            let d = (p - &q).norm()?;
            if d <= tol.eq_tol {
                continue;
            }
            sampled += 1;
            min = Some(min.map_or(d, |m: f64| m.min(d)));
        }
        let consistent = min.is_none_or(|m| m >= 1.0 - tol.eq_tol);
        return Ok(CentralityReport {
            central,
            sampled,
            min_sampled_distance: min,
            witness_distance: None,
            witness: None,
            consistent,
        });
    }
    let basis = Element::canonical_basis(algebra);
    let x = non_commuting_partner(p, &basis, tol).ok_or_else(|| {
        JordanError::Contradiction(
            "non-central projection commutes with every basis element".into(),
        )
    })?;
    let q = tilted_projection(p, &x, tol)?;
    let d = (p - &q).norm()?;
    Ok(CentralityReport {
        central,
        sampled: 0,
        min_sampled_distance: None,
        witness_distance: Some(d),
        consistent: d > tol.eq_tol && d < 1.0 - tol.eq_tol,
        witness: Some(q),
    })
}

/// Orthonormal (in coordinates) spanning set of the corner `U_p(A)`.
pub fn corner_basis(p: &Element) -> Vec<Element> {
    let algebra = p.algebra();
    let mut ortho = Orthonormalizer::new();
    for b in Element::canonical_basis(algebra) {
        ortho.push(p.u(&b).coords(), 1e-10);
    }
    ortho
        .basis()
        .iter()
        .map(|c| Element::raw(algebra.clone(), c.clone()))
        .collect()
}

/// Whether the corner `U_p(A)` is associative.
pub fn is_abelian(p: &Element, tol: &Tolerances) -> Result<bool> {
    require_projection(p, tol)?;
    let span = corner_basis(p);
    for (i, x) in span.iter().enumerate() {
        for y in &span[i + 1..] {
            if commutator_defect(x, y) > tol.residual_tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelianReport {
    pub abelian: bool,
    pub sampled_pairs: usize,
    /// Largest distance of a sampled `‖q − r‖` from `{0, 1}` (Abelian case).
    pub max_deviation_from_binary: Option<f64>,
    pub witness_distance: Option<f64>,
    #[serde(skip)]
    pub witness: Option<(Element, Element)>,
    pub consistent: bool,
}

/// Abelian decision with distance evidence: binary distances between sampled
/// subprojections, or a witness pair `r, q ≤ p` with `0 < ‖q − r‖ < 1`.
pub fn abelian_report<R: Rng + ?Sized>(
    p: &Element,
    samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<AbelianReport> {
    let abelian = is_abelian(p, tol)?;
    if p.residual_norm() <= tol.eq_tol {
        return Ok(AbelianReport {
            abelian,
            sampled_pairs: 0,
            max_deviation_from_binary: None,
            witness_distance: None,
            witness: None,
            consistent: true,
        });
    }
    if abelian {
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let q = sampling::random_subprojection(p, rng, tol)?;
            let r = sampling::random_subprojection(p, rng, tol)?;
            let d = (&q - &r).norm()?;
            worst = worst.max(d.min((1.0 - d).abs()));
        }
        return Ok(AbelianReport {
            abelian,
            sampled_pairs: samples,
            max_deviation_from_binary: Some(worst),
            witness_distance: None,
            witness: None,
            consistent: worst <= tol.eq_tol,
        });
    }
    let span = corner_basis(p);
    for _ in 0..8 {
        let r = sampling::random_minimal_subprojection(p, rng, tol)?;
        if let Some(x) = non_commuting_partner(&r, &span, tol) {
            let q = tilted_projection(&r, &x, tol)?;
            let d = (&q - &r).norm()?;
            if d > tol.eq_tol && d < 1.0 - tol.eq_tol {
                return Ok(AbelianReport {
                    abelian,
                    sampled_pairs: 0,
                    max_deviation_from_binary: None,
                    witness_distance: Some(d),
                    witness: Some((r, q)),
                    consistent: true,
                });
            }
        }
    }
    Ok(AbelianReport {
        abelian,
        sampled_pairs: 0,
        max_deviation_from_binary: None,
        witness_distance: None,
        witness: None,
        consistent: false,
    })
}
