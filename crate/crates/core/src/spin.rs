//! Spin factors: the parametrization of minimal projections by real unit vectors,
//! distances between them, the hemisphere counterexample and the linear extension of
//! sphere isometries.
//!
//! A minimal projection of `spin:n` is `(e1 + i b)/2` with `b` a real unit vector in
//! the span of `e2..en`. Throughout, `b` is stored as its `n − 1` coordinates in that
//! span.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraDescriptor, Element, Tolerances, C64, I};
use crate::error::{JordanError, Result};
use crate::linalg;
use crate::maps::{verify_jordan_map, JordanMap};
use crate::projections::{is_projection, leq};

/// A projection of `spin:n`.
#[derive(Clone, Debug, PartialEq)]
pub enum SpinProjection {
    Zero {
        n: usize,
    },
    Unit {
        n: usize,
    },
    /// `(e1 + i b)/2` with `b` a real unit vector of length `n − 1`.
    Minimal {
        b: Vec<f64>,
    },
}

impl SpinProjection {
    pub fn dim(&self) -> usize {
        match self {
            Self::Zero { n } | Self::Unit { n } => *n,
            Self::Minimal { b } => b.len() + 1,
        }
    }

    pub fn to_element(&self) -> Element {
        let algebra = AlgebraDescriptor::Spin(self.dim());
        match self {
            Self::Zero { .. } => Element::zero(&algebra),
            Self::Unit { .. } => Element::unit(&algebra),
            Self::Minimal { b } => upsilon_inv_coords(b),
        }
    }

    /// Classifies a projection of a spin factor.
    pub fn from_element(p: &Element, tol: &Tolerances) -> Result<Self> {
        let n = match p.algebra() {
            AlgebraDescriptor::Spin(n) => *n,
            other => {
                return Err(JordanError::DescriptorMismatch {
                    left: other.to_string(),
                    right: "spin:n".into(),
                })
            }
        };
        crate::projections::require_projection(p, tol)?;
        let first = p.coords()[0].re;
        if first.abs() <= tol.eq_tol {
            return Ok(Self::Zero { n });
        }
        if (first - 1.0).abs() <= tol.eq_tol {
            return Ok(Self::Unit { n });
        }
        let mut b: Vec<f64> = p.coords()[1..].iter().map(|c| 2.0 * c.im).collect();
        let len = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut b {
            *x /= len;
        }
        Ok(Self::Minimal { b })
    }

    /// `1 − p`.
    pub fn complement(&self) -> Self {
        match self {
            Self::Zero { n } => Self::Unit { n: *n },
            Self::Unit { n } => Self::Zero { n: *n },
            Self::Minimal { b } => Self::Minimal {
                b: b.iter().map(|x| -x).collect(),
            },
        }
    }
}

/// `(e1 + i b)/2` for a tail vector `b` of length `n − 1`.
pub(crate) fn upsilon_inv_coords(b: &[f64]) -> Element {
    let mut coords = vec![C64::new(0.5, 0.0)];
    coords.extend(b.iter().map(|x| I * (0.5 * x)));
    Element::raw(AlgebraDescriptor::Spin(b.len() + 1), coords)
}

/// `Υ(p) = b` for a minimal projection `p = (e1 + i b)/2`.
pub fn upsilon(p: &SpinProjection) -> Result<Vec<f64>> {
    match p {
        SpinProjection::Minimal { b } => Ok(b.clone()),
        _ => Err(JordanError::Precondition(
            "Υ is defined on minimal projections only".into(),
        )),
    }
}

/// Inverse of [`upsilon`] on `spin:n`. Accepts `b` either as its `n − 1` tail
/// coordinates or as a full vector of length `n` whose `e1` coordinate vanishes.
pub fn upsilon_inv(n: usize, b: &[f64]) -> Result<SpinProjection> {
    let tail = if b.len() == n {
        if b[0].abs() > 1e-12 {
            return Err(JordanError::Precondition(
                "b is not orthogonal to the unit".into(),
            ));
        }
        &b[1..]
    } else if b.len() + 1 == n {
        b
    } else {
        return Err(JordanError::DimensionMismatch(format!(
            "vector of length {} does not parametrize spin:{n}",
            b.len()
        )));
    };
    let len = tail.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (len - 1.0).abs() > 1e-12 {
        return Err(JordanError::Precondition(format!(
            "b has length {len}, not 1"
        )));
    }
    Ok(SpinProjection::Minimal { b: tail.to_vec() })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// `‖p − q‖ = ½‖Υ(p) − Υ(q)‖` for minimal projections.
pub fn min_proj_distance(p: &SpinProjection, q: &SpinProjection) -> Result<f64> {
    let (bp, bq) = (upsilon(p)?, upsilon(q)?);
    if bp.len() != bq.len() {
        return Err(JordanError::DimensionMismatch(
            "projections of different spin factors".into(),
        ));
    }
    Ok(0.5 * euclid(&bp, &bq))
}

fn random_hemisphere_point<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    let mut v = linalg::random_real_unit_vector(d, rng);
    if !in_upper_hemisphere(&v) {
        for x in &mut v {
            *x = -*x;
        }
    }
    v
}

/// First nonzero coordinate positive.
pub fn in_upper_hemisphere(x: &[f64]) -> bool {
    x.iter().find(|v| **v != 0.0).is_some_and(|v| *v > 0.0)
}

fn key(x: &[f64]) -> Vec<u64> {
    x.iter().map(|v| v.to_bits()).collect()
}

/// The hemisphere bijection: an injective assignment of upper-hemisphere points of
/// the source sphere to upper-hemisphere points of the target sphere, drawn lazily
/// and remembered, extended to the lower hemisphere by `g(−x) = −g(x)`.
///
/// Only finitely many points are ever assigned; the map is total on queried points.
#[derive(Debug)]
pub struct HemisphereBijection {
    source_dim: usize,
    target_dim: usize,
    rng: crate::rng::StreamRng,
    forward: HashMap<Vec<u64>, Vec<f64>>,
    backward: HashMap<Vec<u64>, Vec<f64>>,
}

impl HemisphereBijection {
    pub fn new(source_dim: usize, target_dim: usize, seed: u64) -> Self {
        Self {
            source_dim,
            target_dim,
            rng: crate::rng::seeded(seed),
            forward: HashMap::new(),
            backward: HashMap::new(),
        }
    }

    pub fn apply(&mut self, x: &[f64]) -> Vec<f64> {
        if in_upper_hemisphere(x) {
            self.upper(x)
        } else {
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            self.upper(&neg).into_iter().map(|v| -v).collect()
        }
    }

    fn upper(&mut self, x: &[f64]) -> Vec<f64> {
        if let Some(y) = self.forward.get(&key(x)) {
            return y.clone();
        }
        let y = loop {
            let candidate = random_hemisphere_point(self.target_dim, &mut self.rng);
            if !self.backward.contains_key(&key(&candidate)) {
                break candidate;
            }
        };
        self.forward.insert(key(x), y.clone());
        self.backward.insert(key(&y), x.to_vec());
        y
    }

    /// Preimage of an already assigned point.
    pub fn inverse(&self, y: &[f64]) -> Option<Vec<f64>> {
        if in_upper_hemisphere(y) {
            self.backward.get(&key(y)).cloned()
        } else {
            let neg: Vec<f64> = y.iter().map(|v| -v).collect();
            self.backward
                .get(&key(&neg))
                .map(|x| x.iter().map(|v| -v).collect())
        }
    }

    pub fn assigned(&self) -> usize {
        self.forward.len()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }
}

type SphereRule = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

enum Rule {
    Hemisphere(Box<HemisphereBijection>),
    Sphere(SphereRule),
}

/// A map between projection lattices of spin factors, acting on minimal projections
/// through their parametrizing unit vectors and fixing 0 and 1.
///
/// Evaluation takes `&mut self` because the hemisphere rule memoizes.
pub struct ProjectionMap {
    pub source: usize,
    pub target: usize,
    rule: Rule,
}

impl std::fmt::Debug for ProjectionMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProjectionMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .finish_non_exhaustive()
    }
}

impl ProjectionMap {
    /// Map induced by a rule on the unit sphere of the parameter space
    /// (`R^{source−1} → R^{target−1}`).
    pub fn from_sphere_fn(
        source: usize,
        target: usize,
        rule: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            source,
            target,
            rule: Rule::Sphere(Arc::new(rule)),
        }
    }

    /// Map induced by an orthogonal matrix acting on the parameter space.
    pub fn from_orthogonal(n: usize, o: DMatrix<f64>) -> Self {
        Self::from_sphere_fn(n, n, move |b| {
            let v = &o * nalgebra::DVector::from_column_slice(b);
            v.as_slice().to_vec()
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_sphere_fn(n, n, |b| b.to_vec())
    }

    pub fn apply(&mut self, p: &SpinProjection) -> Result<SpinProjection> {
        if p.dim() != self.source {
            return Err(JordanError::DimensionMismatch(format!(
                "projection of spin:{} given to a map from spin:{}",
                p.dim(),
                self.source
            )));
        }
        Ok(match p {
            SpinProjection::Zero { .. } => SpinProjection::Zero { n: self.target },
            SpinProjection::Unit { .. } => SpinProjection::Unit { n: self.target },
            SpinProjection::Minimal { b } => {
                let image = match &mut self.rule {
                    Rule::Hemisphere(g) => g.apply(b),
                    Rule::Sphere(f) => f(b),
                };
                SpinProjection::Minimal { b: image }
            }
        })
    }

    /// Parameter-space rule `Υ ∘ Θ ∘ Υ⁻¹`.
    pub fn apply_vector(&mut self, b: &[f64]) -> Vec<f64> {
        match &mut self.rule {
            Rule::Hemisphere(g) => g.apply(b),
            Rule::Sphere(f) => f(b),
        }
    }

    /// Stored inverse, available for the hemisphere rule on assigned points.
    pub fn inverse(&self, q: &SpinProjection) -> Option<SpinProjection> {
        match (&self.rule, q) {
            (_, SpinProjection::Zero { .. }) => Some(SpinProjection::Zero { n: self.source }),
            (_, SpinProjection::Unit { .. }) => Some(SpinProjection::Unit { n: self.source }),
            (Rule::Hemisphere(g), SpinProjection::Minimal { b }) => {
                g.inverse(b).map(|x| SpinProjection::Minimal { b: x })
            }
            (Rule::Sphere(_), _) => None,
        }
    }
}

/// The order isomorphism `P(spin:3) → P(spin:4)` built from the hemisphere bijection.
/// It preserves order and diametrical pairs but is not induced by any Jordan map.
pub fn counterexample_theta(seed: u64) -> ProjectionMap {
    ProjectionMap {
        source: 3,
        target: 4,
        rule: Rule::Hemisphere(Box::new(HemisphereBijection::new(2, 3, seed))),
    }
}

fn random_spin_projection<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SpinProjection {
    match rng.gen_range(0..10) {
        0 => SpinProjection::Zero { n },
        1 => SpinProjection::Unit { n },
        _ => SpinProjection::Minimal {
            b: linalg::random_real_unit_vector(n - 1, rng),
        },
    }
}

/// Evidence gathered on sampled pairs for a projection map.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectionMapEvidence {
    pub pairs: usize,
    pub order_preserving: bool,
    pub order_failures: usize,
    pub diametrical_preserving: bool,
    pub diametrical_failures: usize,
    /// Whether a pair at distance √2/2 was found whose images are not at √2/2.
    pub sqrt2_violation_found: bool,
    pub sqrt2_trials: usize,
    /// `|⟨Υ(Θp) | Υ(Θq)⟩|` of the violating pair.
    pub sqrt2_violation_inner: Option<f64>,
}

/// Samples pairs of projections and checks that `theta` preserves `≤` and
/// diametrical pairs in both directions; then searches for orthogonal parameter pairs
/// whose images are not orthogonal (|inner product| above 0.01).
pub fn projection_map_evidence<R: Rng + ?Sized>(
    theta: &mut ProjectionMap,
    pairs: usize,
    sqrt2_trials: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<ProjectionMapEvidence> {
    let n = theta.source;
    let mut order_failures = 0;
    let mut diametrical_failures = 0;
    for k in 0..pairs {
        let p = random_spin_projection(n, rng);
        // every other pair is antipodal so the diametrical check has positive cases
        let q = if k % 2 == 0 {
            p.complement()
        } else {
            random_spin_projection(n, rng)
        };
        let (tp, tq) = (theta.apply(&p)?, theta.apply(&q)?);
        let (ep, eq, etp, etq) = (
            p.to_element(),
            q.to_element(),
            tp.to_element(),
            tq.to_element(),
        );
        if leq(&ep, &eq, tol) != leq(&etp, &etq, tol) || leq(&eq, &ep, tol) != leq(&etq, &etp, tol)
        {
            order_failures += 1;
        }
        let far = (&ep - &eq).norm()? >= 1.0 - tol.eq_tol;
        let far_image = (&etp - &etq).norm()? >= 1.0 - tol.eq_tol;
        if far != far_image {
            diametrical_failures += 1;
        }
    }
    let mut found = None;
    let mut trials = 0;
    for _ in 0..sqrt2_trials {
        trials += 1;
        let b = linalg::random_real_unit_vector(n - 1, rng);
        let c = orthogonal_unit_vector(&b, rng);
        let (tb, tc) = (theta.apply_vector(&b), theta.apply_vector(&c));
        let inner = dot(&tb, &tc).abs();
        if inner > 0.01 {
            found = Some(inner);
            break;
        }
    }
    Ok(ProjectionMapEvidence {
        pairs,
        order_preserving: order_failures == 0,
        order_failures,
        diametrical_preserving: diametrical_failures == 0,
        diametrical_failures,
        sqrt2_violation_found: found.is_some(),
        sqrt2_trials: trials,
        sqrt2_violation_inner: found,
    })
}

/// Random unit vector orthogonal to the unit vector `b`.
pub fn orthogonal_unit_vector<R: Rng + ?Sized>(b: &[f64], rng: &mut R) -> Vec<f64> {
    loop {
        let v = linalg::random_real_unit_vector(b.len(), rng);
        let d = dot(&v, b);
        let w: Vec<f64> = v.iter().zip(b).map(|(x, y)| x - d * y).collect();
        let len = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len > 1e-3 {
            return w.into_iter().map(|x| x / len).collect();
        }
    }
}

/// Linear extension of a surjective isometry of the unit sphere of `R^d`: the matrix
/// with columns `T(e_i)`, checked to be orthogonal and to agree with `T` on 100
/// random sphere points.
pub fn sphere_isometry_extension<R: Rng + ?Sized>(
    mut t: impl FnMut(&[f64]) -> Vec<f64>,
    d: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(d, d);
    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        let image = t(&e);
        if image.len() != d {
            return Err(JordanError::DimensionMismatch(format!(
                "isometry maps R^{d} into R^{}",
                image.len()
            )));
        }
        for (r, v) in image.iter().enumerate() {
            m[(r, i)] = *v;
        }
    }
    let orth = (m.transpose() * &m - DMatrix::<f64>::identity(d, d)).amax();
    if orth > tol.residual_tol {
        return Err(JordanError::Verification {
            what: "extension matrix is not orthogonal".into(),
            residual: orth,
            witness: None,
        });
    }
    let mut worst = (0.0, Vec::new());
    for _ in 0..100 {
        let x = linalg::random_real_unit_vector(d, rng);
        let mx = &m * nalgebra::DVector::from_column_slice(&x);
        let tx = t(&x);
        let err = euclid(mx.as_slice(), &tx);
        if err > worst.0 {
            worst = (err, x);
        }
    }
    if worst.0 > tol.residual_tol {
        let witness = upsilon_inv_coords(&worst.1);
        return Err(JordanError::Verification {
            what: "linear extension disagrees with the sphere map".into(),
            residual: worst.0,
            witness: Some(Box::new(witness)),
        });
    }
    Ok(m)
}

/// Jordan *-isomorphism `spin:n → spin:n` agreeing with an isometric order
/// isomorphism `theta` on projections.
pub fn jordan_iso_from_theta<R: Rng + ?Sized>(
    theta: &mut ProjectionMap,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<JordanMap> {
    let n = theta.source;
    if theta.target != n {
        return Err(JordanError::DimensionMismatch(format!(
            "projection lattices of spin:{} and spin:{} are not related by a Jordan *-isomorphism",
            theta.source, theta.target
        )));
    }
    let t_hat = sphere_isometry_extension(|b| theta.apply_vector(b), n - 1, rng, tol)?;
    let mut matrix = DMatrix::<C64>::zeros(n, n);
    matrix[(0, 0)] = C64::new(1.0, 0.0);
    for r in 1..n {
        for c in 1..n {
            matrix[(r, c)] = C64::new(t_hat[(r - 1, c - 1)], 0.0);
        }
    }
    let algebra = AlgebraDescriptor::Spin(n);
    let phi = JordanMap::new(algebra.clone(), algebra, matrix)?;
    let residuals = verify_jordan_map(&phi, 50, rng, tol);
    if !residuals.verified(tol) {
        return Err(JordanError::Verification {
            what: "extended map is not a Jordan *-isomorphism".into(),
            residual: residuals.worst(),
            witness: None,
        });
    }
    for _ in 0..100 {
        let p = random_spin_projection(n, rng);
        let image = theta.apply(&p)?.to_element();
        let err = (&phi.apply(&p.to_element()) - &image).residual_norm();
        if err > tol.residual_tol {
            return Err(JordanError::Verification {
                what: "extension disagrees with the projection map".into(),
                residual: err,
                witness: Some(Box::new(p.to_element())),
            });
        }
    }
    Ok(phi)
}

/// Whether `p` is a projection of norm exactly one under the closed-form spin norm.
pub fn is_norm_one_projection(p: &SpinProjection, tol: &Tolerances) -> bool {
    let e = p.to_element();
    is_projection(&e, tol) && (crate::spectral::spin_norm(e.coords()) - 1.0).abs() <= 1e-12
}
