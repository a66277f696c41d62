//! Algebra descriptors, elements and the Jordan primitives.
//!
//! Every element is a coordinate vector over a fixed canonical basis:
//!
//! * `mat:n` uses the matrix units in row-major order and the product `(ab + ba)/2`;
//! * `spin:n` uses an orthonormal basis `e1..en` with `e1` the unit, the product
//!   `a1 b + b1 a - (sum a_k b_k) e1` and componentwise conjugation;
//! * `h3o` uses `[d1, d2, d3, o1, o2, o3]`, three diagonal slots followed by three
//!   complexified octonions (see [`crate::exceptional`] for the layout);
//! * `sum:...` concatenates the coordinates of its summands.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{JordanError, Result};
use crate::exceptional::h3;
use crate::linalg;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// A finite-dimensional Jordan *-algebra model.
///
/// Build sums through [`AlgebraDescriptor::direct_sum`] or by parsing; both flatten
/// nested sums and collapse a one-element sum to its summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraDescriptor {
    Matrix(usize),
    Spin(usize),
    OctonionHermitian3,
    DirectSum(Arc<[AlgebraDescriptor]>),
}

impl AlgebraDescriptor {
    pub fn matrix(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(JordanError::Descriptor {
                input: format!("mat:{n}"),
                reason: "matrix size must be at least 1".into(),
            });
        }
        Ok(Self::Matrix(n))
    }

    pub fn spin(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(JordanError::Descriptor {
                input: format!("spin:{n}"),
                reason: "spin factors need dimension at least 3".into(),
            });
        }
        Ok(Self::Spin(n))
    }

    pub fn direct_sum(parts: Vec<AlgebraDescriptor>) -> Result<Self> {
        let mut flat = Vec::new();
        for part in parts {
            match part {
                Self::DirectSum(inner) => flat.extend(inner.iter().cloned()),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Err(JordanError::Descriptor {
                input: "sum:".into(),
                reason: "a direct sum needs at least one summand".into(),
            }),
            1 => Ok(flat.pop().unwrap()),
            _ => Ok(Self::DirectSum(flat.into())),
        }
    }

    /// Complex dimension.
    pub fn dim(&self) -> usize {
        match self {
            Self::Matrix(n) => n * n,
            Self::Spin(n) => *n,
            Self::OctonionHermitian3 => h3::DIM,
            Self::DirectSum(parts) => parts.iter().map(Self::dim).sum(),
        }
    }

    /// Number of mutually orthogonal minimal projections summing to the unit.
    pub fn rank(&self) -> usize {
        match self {
            Self::Matrix(n) => *n,
            Self::Spin(_) => 2,
            Self::OctonionHermitian3 => 3,
            Self::DirectSum(parts) => parts.iter().map(Self::rank).sum(),
        }
    }

    /// The simple summands; a simple algebra is its own single summand.
    pub fn summands(&self) -> &[AlgebraDescriptor] {
        match self {
            Self::DirectSum(parts) => parts,
            other => std::slice::from_ref(other),
        }
    }

    /// `(offset, summand)` pairs locating each summand inside the coordinate vector.
    pub fn blocks(&self) -> Vec<(usize, &AlgebraDescriptor)> {
        let mut offset = 0;
        self.summands()
            .iter()
            .map(|s| {
                let here = offset;
                offset += s.dim();
                (here, s)
            })
            .collect()
    }

    pub fn is_direct_sum(&self) -> bool {
        matches!(self, Self::DirectSum(_))
    }

    /// Spin factors and `mat:2` (which is the spin factor of dimension 4).
    pub fn is_type_i2(&self) -> bool {
        matches!(self, Self::Spin(_) | Self::Matrix(2))
    }

    pub fn contains_exceptional(&self) -> bool {
        self.summands()
            .iter()
            .any(|s| matches!(s, Self::OctonionHermitian3))
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Matrix(n) => write!(f, "mat:{n}"),
            Self::Spin(n) => write!(f, "spin:{n}"),
            Self::OctonionHermitian3 => f.write_str("h3o"),
            Self::DirectSum(parts) => {
                f.write_str("sum:")?;
                for (k, part) in parts.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for AlgebraDescriptor {
    type Err = JordanError;

    fn from_str(s: &str) -> Result<Self> {
        let input = s.trim();
        let bad = |reason: &str| JordanError::Descriptor {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if let Some(rest) = input.strip_prefix("sum:") {
            let parts = rest
                .split(',')
                .map(|item| item.trim().trim_start_matches("sum:").parse::<Self>())
                .collect::<Result<Vec<_>>>()?;
            return Self::direct_sum(parts);
        }
        if input == "h3o" {
            return Ok(Self::OctonionHermitian3);
        }
        let (kind, size) = input
            .split_once(':')
            .ok_or_else(|| bad("expected mat:n, spin:n, h3o or sum:..."))?;
        let n: usize = size
            .trim()
            .parse()
            .map_err(|_| bad("size is not a non-negative integer"))?;
        match kind.trim() {
            "mat" => Self::matrix(n),
            "spin" => Self::spin(n),
            _ => Err(bad("unknown algebra kind")),
        }
    }
}

impl Serialize for AlgebraDescriptor {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlgebraDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Numerical tolerances shared by every decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eq_tol: f64,
    pub residual_tol: f64,
    pub spectral_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eq_tol: 1e-9,
            residual_tol: 1e-8,
            spectral_tol: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn new(eq_tol: f64, residual_tol: f64, spectral_tol: f64) -> Result<Self> {
        let tol = Self {
            eq_tol,
            residual_tol,
            spectral_tol,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.eq_tol, self.residual_tol, self.spectral_tol];
        if all.iter().any(|t| !t.is_finite() || *t <= 0.0) {
            return Err(JordanError::Tolerances(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.eq_tol < self.spectral_tol {
            return Err(JordanError::Tolerances(
                "eq_tol must be at least spectral_tol".into(),
            ));
        }
        Ok(())
    }

    /// Width used to group eigenvalues into one spectral value.
    pub fn cluster_width(&self) -> f64 {
        10.0 * self.spectral_tol
    }
}

/// A value of an algebra: coordinates tagged with their descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    algebra: AlgebraDescriptor,
    coords: Vec<C64>,
}

impl Element {
    pub fn new(algebra: AlgebraDescriptor, coords: Vec<C64>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(JordanError::CoordinateLength {
                algebra: algebra.to_string(),
                expected: algebra.dim(),
                got: coords.len(),
            });
        }
        if coords
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(JordanError::NonFinite(algebra.to_string()));
        }
        Ok(Self { algebra, coords })
    }

    pub fn from_real(algebra: AlgebraDescriptor, coords: &[f64]) -> Result<Self> {
        Self::new(algebra, coords.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Internal constructor for coordinates produced by the primitives themselves.
    pub(crate) fn raw(algebra: AlgebraDescriptor, coords: Vec<C64>) -> Self {
        debug_assert_eq!(coords.len(), algebra.dim());
        Self { algebra, coords }
    }

    pub fn zero(algebra: &AlgebraDescriptor) -> Self {
        Self::raw(algebra.clone(), vec![ZERO; algebra.dim()])
    }

    pub fn unit(algebra: &AlgebraDescriptor) -> Self {
        let mut coords = vec![ZERO; algebra.dim()];
        for (offset, part) in algebra.blocks() {
            unit_block(part, &mut coords[offset..offset + part.dim()]);
        }
        Self::raw(algebra.clone(), coords)
    }

    /// The `k`-th canonical basis element.
    pub fn basis(algebra: &AlgebraDescriptor, k: usize) -> Self {
        let mut coords = vec![ZERO; algebra.dim()];
        coords[k] = ONE;
        Self::raw(algebra.clone(), coords)
    }

    pub fn canonical_basis(algebra: &AlgebraDescriptor) -> Vec<Self> {
        (0..algebra.dim())
            .map(|k| Self::basis(algebra, k))
            .collect()
    }

    /// A diagonal matrix in `mat:n`.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut coords = vec![ZERO; n * n];
        for (k, v) in values.iter().enumerate() {
            coords[k * n + k] = C64::new(*v, 0.0);
        }
        Self::raw(AlgebraDescriptor::Matrix(n), coords)
    }

    /// Row-major complex matrix in `mat:n`.
    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let n = rows.len();
        let coords: Vec<C64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        let algebra = AlgebraDescriptor::matrix(n)?;
        Self::new(algebra, coords)
    }

    /// Row-major real matrix in `mat:n`.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let coords: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_real(AlgebraDescriptor::matrix(n)?, &coords)
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<C64> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Component in summand `index`, as an element of that summand.
    pub fn block(&self, index: usize) -> Element {
        let (offset, part) = self.algebra.blocks()[index];
        Self::raw(
            part.clone(),
            self.coords[offset..offset + part.dim()].to_vec(),
        )
    }

    /// Places `part` into summand `index` of `algebra`, zero elsewhere.
    pub fn embed_block(algebra: &AlgebraDescriptor, index: usize, part: &Element) -> Element {
        let (offset, summand) = algebra.blocks()[index];
        assert_eq!(summand, part.algebra(), "summand descriptor mismatch");
        let mut coords = vec![ZERO; algebra.dim()];
        coords[offset..offset + summand.dim()].copy_from_slice(part.coords());
        Self::raw(algebra.clone(), coords)
    }

    /// Unit of summand `index`, as an element of the whole algebra.
    pub fn block_unit(algebra: &AlgebraDescriptor, index: usize) -> Element {
        let part = Element::unit(&algebra.summands()[index]);
        Self::embed_block(algebra, index, &part)
    }

    fn assert_same(&self, other: &Element) {
        assert!(
            self.algebra == other.algebra,
            "descriptor mismatch: {} vs {}",
            self.algebra,
            other.algebra
        );
    }

    /// Jordan product. Panics on descriptor mismatch; see [`jordan_product`] for the
    /// fallible form.
    pub fn circ(&self, other: &Element) -> Element {
        self.assert_same(other);
        let mut out = vec![ZERO; self.dim()];
        for (offset, part) in self.algebra.blocks() {
            let r = offset..offset + part.dim();
            product_block(
                part,
                &self.coords[r.clone()],
                &other.coords[r.clone()],
                &mut out[r],
            );
        }
        Self::raw(self.algebra.clone(), out)
    }

    pub fn square(&self) -> Element {
        self.circ(self)
    }

    /// Left-nested power `a∘(a∘(...∘a))`; `pow(0)` is the unit.
    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::unit(&self.algebra);
        for _ in 0..n {
            acc = self.circ(&acc);
        }
        acc
    }

    /// The involution `a*`.
    pub fn star(&self) -> Element {
        let mut out = vec![ZERO; self.dim()];
        for (offset, part) in self.algebra.blocks() {
            let r = offset..offset + part.dim();
            star_block(part, &self.coords[r.clone()], &mut out[r]);
        }
        Self::raw(self.algebra.clone(), out)
    }

    /// Triple product `{self, y, z}`.
    pub fn triple(&self, y: &Element, z: &Element) -> Element {
        let ys = y.star();
        let a = self.circ(&ys).circ(z);
        let b = z.circ(&ys).circ(self);
        let c = self.circ(z).circ(&ys);
        &(&a + &b) - &c
    }

    /// `U_{self,c}(b) = (self∘b)∘c + (b∘c)∘self − (self∘c)∘b`.
    pub fn u2(&self, c: &Element, b: &Element) -> Element {
        let x = self.circ(b).circ(c);
        let y = b.circ(c).circ(self);
        let z = self.circ(c).circ(b);
        &(&x + &y) - &z
    }

    /// `U_self(b)`, the analogue of `self · b · self`.
    pub fn u(&self, b: &Element) -> Element {
        let ab = self.circ(b);
        let two_ab_a = ab.circ(self).scale(2.0);
        &two_ab_a - &self.square().circ(b)
    }

    pub fn scale(&self, s: f64) -> Element {
        Self::raw(
            self.algebra.clone(),
            self.coords.iter().map(|c| c * s).collect(),
        )
    }

    pub fn scale_complex(&self, s: C64) -> Element {
        Self::raw(
            self.algebra.clone(),
            self.coords.iter().map(|c| c * s).collect(),
        )
    }

    /// Complex conjugate of every coordinate (not the involution).
    pub fn conj_coords(&self) -> Element {
        Self::raw(
            self.algebra.clone(),
            self.coords.iter().map(|c| c.conj()).collect(),
        )
    }

    /// Coordinate inner product `sum conj(a_k) b_k`.
    pub fn inner(&self, other: &Element) -> C64 {
        self.assert_same(other);
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Euclidean norm of the coordinate vector.
    pub fn coord_norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `(a + a*)/2`.
    pub fn re_part(&self) -> Element {
        (self + &self.star()).scale(0.5)
    }

    /// `(a − a*)/(2i)`, so that `a = re + i·im` with both parts self-adjoint.
    pub fn im_part(&self) -> Element {
        (self - &self.star()).scale_complex(C64::new(0.0, -0.5))
    }

    /// Size of `a − a*` measured coordinatewise.
    pub fn self_adjoint_deviation(&self) -> f64 {
        (self - &self.star()).max_abs()
    }

    pub fn is_self_adjoint(&self, tol: &Tolerances) -> bool {
        self.self_adjoint_deviation() <= tol.eq_tol
    }

    /// Self-adjoint part with the skew part dropped; used to clean up round-off.
    pub fn hermitian_part(&self) -> Element {
        self.re_part()
    }

    /// Operator norm; errors for non-self-adjoint elements of `h3o`.
    pub fn norm(&self) -> Result<f64> {
        crate::spectral::norm(self)
    }

    /// Norm used for residuals: the operator norm where available and
    /// `‖re‖ + ‖im‖` otherwise, which bounds it from above.
    pub fn residual_norm(&self) -> f64 {
        crate::spectral::residual_norm(self)
    }

    /// Whether every coordinate is within `tol` of zero.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }
}

fn unit_block(part: &AlgebraDescriptor, out: &mut [C64]) {
    match part {
        AlgebraDescriptor::Matrix(n) => {
            for k in 0..*n {
                out[k * n + k] = ONE;
            }
        }
        AlgebraDescriptor::Spin(_) => out[0] = ONE,
        AlgebraDescriptor::OctonionHermitian3 => {
            out[0] = ONE;
            out[1] = ONE;
            out[2] = ONE;
        }
        AlgebraDescriptor::DirectSum(_) => unreachable!("summands are never sums"),
    }
}

fn product_block(part: &AlgebraDescriptor, a: &[C64], b: &[C64], out: &mut [C64]) {
    match part {
        AlgebraDescriptor::Matrix(n) => {
            let ma = linalg::to_matrix(*n, a);
            let mb = linalg::to_matrix(*n, b);
            let m = (&ma * &mb + &mb * &ma) * C64::new(0.5, 0.0);
            linalg::write_row_major(&m, out);
        }
        AlgebraDescriptor::Spin(_) => {
            let dot: C64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            for k in 0..a.len() {
                out[k] = a[0] * b[k] + b[0] * a[k];
            }
            out[0] -= dot;
        }
        AlgebraDescriptor::OctonionHermitian3 => h3::product(a, b, out),
        AlgebraDescriptor::DirectSum(_) => unreachable!("summands are never sums"),
    }
}

fn star_block(part: &AlgebraDescriptor, a: &[C64], out: &mut [C64]) {
    match part {
        AlgebraDescriptor::Matrix(n) => {
            let n = *n;
            for r in 0..n {
                for c in 0..n {
                    out[r * n + c] = a[c * n + r].conj();
                }
            }
        }
        AlgebraDescriptor::Spin(_) => {
            // 2<1|a>1 − ā: keeps the unit coordinate conjugated, flips the rest
            out[0] = a[0].conj();
            for k in 1..a.len() {
                out[k] = -a[k].conj();
            }
        }
        AlgebraDescriptor::OctonionHermitian3 => {
            for (o, x) in out.iter_mut().zip(a) {
                *o = x.conj();
            }
        }
        AlgebraDescriptor::DirectSum(_) => unreachable!("summands are never sums"),
    }
}

pub(crate) fn check_same(a: &Element, b: &Element) -> Result<()> {
    if a.algebra != b.algebra {
        return Err(JordanError::DescriptorMismatch {
            left: a.algebra.to_string(),
            right: b.algebra.to_string(),
        });
    }
    Ok(())
}

/// Jordan product `a∘b`.
pub fn jordan_product(a: &Element, b: &Element) -> Result<Element> {
    check_same(a, b)?;
    Ok(a.circ(b))
}

/// The involution `a*`.
pub fn involution(a: &Element) -> Element {
    a.star()
}

/// `{x,y,z} = (x∘y*)∘z + (z∘y*)∘x − (x∘z)∘y*`.
pub fn triple_product(x: &Element, y: &Element, z: &Element) -> Result<Element> {
    check_same(x, y)?;
    check_same(x, z)?;
    Ok(x.triple(y, z))
}

/// `U_{a,c}(b)`.
pub fn u_operator(a: &Element, c: &Element, b: &Element) -> Result<Element> {
    check_same(a, c)?;
    check_same(a, b)?;
    Ok(a.u2(c, b))
}

/// Largest `‖(a∘c)∘b − a∘(c∘b)‖` over the canonical basis `c`.
pub fn commutator_defect(a: &Element, b: &Element) -> f64 {
    let algebra = a.algebra();
    (0..algebra.dim())
        .map(|k| {
            let c = Element::basis(algebra, k);
            (&a.circ(&c).circ(b) - &a.circ(&c.circ(b))).residual_norm()
        })
        .fold(0.0, f64::max)
}

/// Whether `a` and `b` operator commute, tested on the canonical basis.
pub fn operator_commute(a: &Element, b: &Element, tol: &Tolerances) -> bool {
    a.algebra() == b.algebra() && commutator_defect(a, b) <= tol.residual_tol
}

macro_rules! binary_op {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.assert_same(rhs);
                Element::raw(
                    self.algebra.clone(),
                    self.coords.iter().zip(&rhs.coords).map(|(a, b)| a $op b).collect(),
                )
            }
        }
        impl $tr<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                (&self).$method(rhs)
            }
        }
        impl $tr<Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                self.$method(&rhs)
            }
        }
    };
}

binary_op!(Add, add, +);
binary_op!(Sub, sub, -);

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        self.assert_same(rhs);
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        self.assert_same(rhs);
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a -= b;
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, s: f64) -> Element {
        self.scale(s)
    }
}

impl Mul<f64> for Element {
    type Output = Element;
    fn mul(self, s: f64) -> Element {
        self.scale(s)
    }
}

impl Mul<C64> for &Element {
    type Output = Element;
    fn mul(self, s: C64) -> Element {
        self.scale_complex(s)
    }
}

impl Mul<C64> for Element {
    type Output = Element;
    fn mul(self, s: C64) -> Element {
        self.scale_complex(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in [
            "mat:3",
            "spin:5",
            "h3o",
            "sum:mat:2,spin:4",
            "sum:spin:3,h3o,mat:1",
        ] {
            let d: AlgebraDescriptor = text.parse().unwrap();
            assert_eq!(d.to_string(), text);
        }
    }

    #[test]
    fn parse_flattens_and_collapses() {
        let d: AlgebraDescriptor = "sum:mat:2,sum:spin:3,spin:4".parse().unwrap();
        assert_eq!(d.to_string(), "sum:mat:2,spin:3,spin:4");
        let single: AlgebraDescriptor = "sum:mat:3".parse().unwrap();
        assert_eq!(single, AlgebraDescriptor::Matrix(3));
    }

    #[test]
    fn parse_rejects_bad_input() {
        for text in ["bogus:9", "spin:2", "mat:0", "mat:x", "sum:", "h3", ""] {
            assert!(text.parse::<AlgebraDescriptor>().is_err(), "{text}");
        }
    }

    #[test]
    fn dimensions() {
        let d: AlgebraDescriptor = "sum:mat:3,spin:5,h3o".parse().unwrap();
        assert_eq!(d.dim(), 9 + 5 + 27);
        assert_eq!(d.rank(), 3 + 2 + 3);
    }

    #[test]
    fn orthogonal_diagonal_projections_multiply_to_zero() {
        let p = Element::diag(&[1.0, 0.0]);
        let q = Element::diag(&[0.0, 1.0]);
        assert!(p.circ(&q).is_zero(0.0));
    }

    #[test]
    fn matrix_product_matches_hand_computation() {
        let e11 = Element::diag(&[1.0, 0.0]);
        let half = Element::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let expected = Element::from_real_rows(&[&[0.5, 0.25], &[0.25, 0.0]]).unwrap();
        assert!((&e11.circ(&half) - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn spin_unit_is_neutral() {
        let alg = AlgebraDescriptor::Spin(4);
        let a = Element::new(
            alg.clone(),
            vec![c(0.3, 1.0), c(-2.0, 0.5), c(0.0, 0.7), c(1.5, -1.0)],
        )
        .unwrap();
        let one = Element::unit(&alg);
        assert_eq!(one.circ(&a), a);
    }

    #[test]
    fn matrix_involution_is_conjugate_transpose() {
        let a = Element::from_rows(&[&[ZERO, c(1.0, 2.0)], &[ZERO, ZERO]]).unwrap();
        let expected = Element::from_rows(&[&[ZERO, ZERO], &[c(1.0, -2.0), ZERO]]).unwrap();
        assert_eq!(a.star(), expected);
    }

    #[test]
    fn spin_self_adjoint_elements_are_fixed() {
        let alg = AlgebraDescriptor::Spin(3);
        let a = Element::new(alg, vec![c(0.4, 0.0), c(0.0, 0.3), c(0.0, -1.2)]).unwrap();
        assert_eq!(a.star(), a);
    }

    #[test]
    fn u_operator_on_matrices_is_sandwich() {
        let e11 = Element::diag(&[1.0, 0.0]);
        let half = Element::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let expected = Element::diag(&[0.5, 0.0]);
        assert!((&e11.u(&half) - &expected).max_abs() < 1e-15);
        assert!((&e11.u2(&e11, &half) - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn operator_commute_examples() {
        let tol = Tolerances::default();
        let e11 = Element::diag(&[1.0, 0.0]);
        let half = Element::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        assert!(!operator_commute(&e11, &half, &tol));
        assert!(operator_commute(&half, &half, &tol));
        let sum: AlgebraDescriptor = "sum:mat:2,spin:3".parse().unwrap();
        let e = Element::block_unit(&sum, 1);
        let x = Element::new(
            sum.clone(),
            (0..7).map(|k| c(k as f64, 1.0 - k as f64)).collect(),
        )
        .unwrap();
        assert!(operator_commute(&e, &x, &tol));
    }

    #[test]
    fn mismatched_descriptors_error() {
        let a = Element::unit(&AlgebraDescriptor::Matrix(2));
        let b = Element::unit(&AlgebraDescriptor::Spin(4));
        assert!(matches!(
            jordan_product(&a, &b),
            Err(JordanError::DescriptorMismatch { .. })
        ));
        assert!(triple_product(&a, &a, &b).is_err());
        assert!(u_operator(&a, &b, &a).is_err());
    }

    #[test]
    fn new_validates_length_and_finiteness() {
        let alg = AlgebraDescriptor::Matrix(2);
        assert!(Element::new(alg.clone(), vec![ONE; 3]).is_err());
        assert!(Element::new(alg, vec![ONE, ONE, ONE, c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn block_embedding_round_trip() {
        let sum: AlgebraDescriptor = "sum:mat:2,spin:3".parse().unwrap();
        let part = Element::unit(&AlgebraDescriptor::Spin(3));
        let whole = Element::embed_block(&sum, 1, &part);
        assert_eq!(whole.block(1), part);
        assert!(whole.block(0).is_zero(0.0));
        let one = Element::unit(&sum);
        assert_eq!(
            &Element::block_unit(&sum, 0) + &Element::block_unit(&sum, 1),
            one
        );
    }

    #[test]
    fn tolerances_validate() {
        assert!(Tolerances::new(1e-9, 1e-8, 1e-10).is_ok());
        assert!(Tolerances::new(1e-12, 1e-8, 1e-10).is_err());
        assert!(Tolerances::new(0.0, 1e-8, 1e-10).is_err());
    }
}
