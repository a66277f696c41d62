//! Linear maps between algebras, stored as matrices over the canonical bases.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraDescriptor, Element, Tolerances, C64};
use crate::error::{JordanError, Result};
use crate::linalg;
use crate::sampling;

/// A complex-linear map `domain → codomain`.
///
/// `support`, when present, is an orthonormal basis of the subspace the map is meant
/// to be a homomorphism on; verification then samples from that subspace only.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanMap {
    pub domain: AlgebraDescriptor,
    pub codomain: AlgebraDescriptor,
    pub matrix: DMatrix<C64>,
    pub support: Option<Vec<Element>>,
}

impl JordanMap {
    pub fn new(
        domain: AlgebraDescriptor,
        codomain: AlgebraDescriptor,
        matrix: DMatrix<C64>,
    ) -> Result<Self> {
        if matrix.nrows() != codomain.dim() || matrix.ncols() != domain.dim() {
            return Err(JordanError::DimensionMismatch(format!(
                "a {}x{} matrix cannot map {domain} to {codomain}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
            support: None,
        })
    }

    pub fn identity(algebra: &AlgebraDescriptor) -> Self {
        let n = algebra.dim();
        Self {
            domain: algebra.clone(),
            codomain: algebra.clone(),
            matrix: DMatrix::identity(n, n),
            support: None,
        }
    }

    /// Matrix of a linear rule, read off from the images of the canonical basis.
    pub fn from_linear_fn(
        domain: &AlgebraDescriptor,
        codomain: &AlgebraDescriptor,
        f: impl Fn(&Element) -> Element,
    ) -> Self {
        let mut matrix = DMatrix::zeros(codomain.dim(), domain.dim());
        for k in 0..domain.dim() {
            let image = f(&Element::basis(domain, k));
            assert_eq!(image.algebra(), codomain, "rule left the codomain");
            matrix.set_column(k, &DVector::from_column_slice(image.coords()));
        }
        Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix,
            support: None,
        }
    }

    pub fn with_support(mut self, basis: Vec<Element>) -> Self {
        self.support = Some(basis);
        self
    }

    pub fn apply(&self, x: &Element) -> Element {
        assert_eq!(x.algebra(), &self.domain, "argument outside the domain");
        let v = &self.matrix * DVector::from_column_slice(x.coords());
        Element::raw(self.codomain.clone(), v.as_slice().to_vec())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &JordanMap) -> Result<JordanMap> {
        if inner.codomain != self.domain {
            return Err(JordanError::DescriptorMismatch {
                left: inner.codomain.to_string(),
                right: self.domain.to_string(),
            });
        }
        JordanMap::new(
            inner.domain.clone(),
            self.codomain.clone(),
            &self.matrix * &inner.matrix,
        )
    }

    /// Largest entrywise difference from another map with the same shape.
    pub fn max_entry_difference(&self, other: &JordanMap) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        match &self.support {
            Some(basis) => {
                let mut x = Element::zero(&self.domain);
                for b in basis {
                    x += &b.scale_complex(linalg::complex_gaussian(rng));
                }
                x
            }
            None => sampling::random_element(&self.domain, rng),
        }
    }
}

/// Worst residuals of a map over a sample set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JordanMapResiduals {
    /// Zero: maps are stored as matrices.
    pub linearity: f64,
    pub multiplicativity: f64,
    pub involution: f64,
    pub isometry: f64,
    /// `‖Φ(1) − 1‖`.
    pub unit: f64,
    pub unital: bool,
    pub samples: usize,
}

impl JordanMapResiduals {
    pub fn worst(&self) -> f64 {
        self.multiplicativity
            .max(self.involution)
            .max(self.isometry)
    }

    pub fn verified(&self, tol: &Tolerances) -> bool {
        self.worst() <= tol.residual_tol
    }
}

/// Measures how far `m` is from a Jordan *-homomorphism that is isometric on
/// self-adjoint elements. Samples are complex Gaussian combinations of the support
/// basis (or of the canonical basis).
pub fn verify_jordan_map<R: Rng + ?Sized>(
    m: &JordanMap,
    samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> JordanMapResiduals {
    let mut res = JordanMapResiduals {
        linearity: 0.0,
        multiplicativity: 0.0,
        involution: 0.0,
        isometry: 0.0,
        unit: 0.0,
        unital: false,
        samples,
    };
    for _ in 0..samples {
        let a = m.sample(rng);
        let b = m.sample(rng);
        let (fa, fb) = (m.apply(&a), m.apply(&b));
        let mult = (&m.apply(&a.circ(&b)) - &fa.circ(&fb)).residual_norm();
        let inv = (&m.apply(&a.star()) - &fa.star()).residual_norm();
        let h = a.re_part();
        let fh = m.apply(&h).hermitian_part();
        let iso = match (fh.norm(), h.norm()) {
            (Ok(x), Ok(y)) => (x - y).abs(),
            _ => f64::INFINITY,
        };
        res.multiplicativity = res.multiplicativity.max(mult);
        res.involution = res.involution.max(inv);
        res.isometry = res.isometry.max(iso);
    }
    let one = Element::unit(&m.domain);
    res.unit = (&m.apply(&one) - &Element::unit(&m.codomain)).residual_norm();
    res.unital = res.unit <= tol.residual_tol;
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn identity_has_zero_residuals() {
        let alg: AlgebraDescriptor = "sum:mat:2,spin:3".parse().unwrap();
        let r = verify_jordan_map(
            &JordanMap::identity(&alg),
            20,
            &mut seeded(1),
            &Tolerances::default(),
        );
        assert_eq!(r.worst(), 0.0);
        assert!(r.unital);
    }

    #[test]
    fn transpose_is_a_jordan_automorphism() {
        let alg = AlgebraDescriptor::Matrix(3);
        let t = JordanMap::from_linear_fn(&alg, &alg, |x| x.star().conj_coords());
        let r = verify_jordan_map(&t, 30, &mut seeded(2), &Tolerances::default());
        assert!(r.worst() < 1e-12, "{r:?}");
        assert!(r.unital);
    }

    #[test]
    fn doubling_breaks_isometry() {
        let alg = AlgebraDescriptor::Matrix(2);
        let m = JordanMap::new(
            alg.clone(),
            alg.clone(),
            DMatrix::identity(4, 4) * C64::new(2.0, 0.0),
        )
        .unwrap();
        let r = verify_jordan_map(&m, 10, &mut seeded(3), &Tolerances::default());
        assert!(!r.verified(&Tolerances::default()));
        assert!(r.isometry > 0.1);
        assert!(!r.unital);
    }

    #[test]
    fn shape_is_checked() {
        let a = AlgebraDescriptor::Matrix(2);
        let b = AlgebraDescriptor::Spin(3);
        assert!(JordanMap::new(a, b, DMatrix::zeros(4, 4)).is_err());
    }
}
