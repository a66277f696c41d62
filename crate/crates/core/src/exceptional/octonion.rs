//! Octonions over a generic scalar ring.
//!
//! Basis `1, i1, ..., i7`. The imaginary units multiply along the lines of the Fano
//! plane
//!
//! ```text
//! (1,2,4) (2,3,5) (3,4,6) (4,5,7) (5,6,1) (6,7,2) (7,1,3)
//! ```
//!
//! meaning `ia·ib = ic`, `ib·ic = ia`, `ic·ia = ib` for each line `(a,b,c)`, with the
//! opposite sign for reversed order and `ik·ik = −1`. Conjugation negates the seven
//! imaginary coordinates and is linear over the scalars (no complex conjugation).

use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::C64;

/// Lines of the Fano plane used by the multiplication table.
pub const FANO_LINES: [[usize; 3]; 7] = [
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 7],
    [5, 6, 1],
    [6, 7, 2],
    [7, 1, 3],
];

/// Scalars an octonion can be built over: `f64` or `C64`.
pub trait Scalar:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
}

impl Scalar for C64 {
    fn from_f64(x: f64) -> Self {
        C64::new(x, 0.0)
    }
}

/// `(sign, index)` of `e_i · e_j` for basis indices `0..8`.
const fn build_table() -> [[(i8, u8); 8]; 8] {
    let mut t = [[(0i8, 0u8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        t[0][i] = (1, i as u8);
        t[i][0] = (1, i as u8);
        i += 1;
    }
    let mut k = 1;
    while k < 8 {
        t[k][k] = (-1, 0);
        k += 1;
    }
    let mut l = 0;
    while l < 7 {
        let [a, b, c] = FANO_LINES[l];
        t[a][b] = (1, c as u8);
        t[b][c] = (1, a as u8);
        t[c][a] = (1, b as u8);
        t[b][a] = (-1, c as u8);
        t[c][b] = (-1, a as u8);
        t[a][c] = (-1, b as u8);
        l += 1;
    }
    t
}

pub const TABLE: [[(i8, u8); 8]; 8] = build_table();

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Octonion<T>(pub [T; 8]);

impl<T: Scalar> Default for Octonion<T> {
    fn default() -> Self {
        Self([T::default(); 8])
    }
}

impl<T: Scalar> Octonion<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn real(x: T) -> Self {
        let mut o = Self::zero();
        o.0[0] = x;
        o
    }

    /// Basis unit `e_k` (`e_0 = 1`).
    pub fn unit(k: usize) -> Self {
        let mut o = Self::zero();
        o.0[k] = T::from_f64(1.0);
        o
    }

    pub fn from_slice(s: &[T]) -> Self {
        let mut o = Self::zero();
        o.0.copy_from_slice(&s[..8]);
        o
    }

    pub fn conj(&self) -> Self {
        let mut o = *self;
        for x in &mut o.0[1..] {
            *x = -*x;
        }
        o
    }

    pub fn re(&self) -> T {
        self.0[0]
    }

    /// Quadratic norm form `sum x_k²` (equals `x · conj(x)` as a scalar).
    pub fn norm_form(&self) -> T {
        self.0.iter().fold(T::default(), |acc, &x| acc + x * x)
    }

    /// Bilinear form `re(x · conj(y))`.
    pub fn dot(&self, other: &Self) -> T {
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::default(), |acc, (&a, &b)| acc + a * b)
    }

    pub fn scale(&self, s: T) -> Self {
        let mut o = *self;
        for x in &mut o.0 {
            *x = *x * s;
        }
        o
    }
}

impl Octonion<f64> {
    pub fn abs(&self) -> f64 {
        self.norm_form().sqrt()
    }
}

impl<T: Scalar> Mul for Octonion<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [T::default(); 8];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in rhs.0.iter().enumerate() {
                let (sign, k) = TABLE[i][j];
                let ab = a * b;
                out[k as usize] = if sign > 0 {
                    out[k as usize] + ab
                } else {
                    out[k as usize] - ab
                };
            }
        }
        Self(out)
    }
}

impl<T: Scalar> Add for Octonion<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut o = self;
        for (x, y) in o.0.iter_mut().zip(rhs.0) {
            *x = *x + y;
        }
        o
    }
}

impl<T: Scalar> Sub for Octonion<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut o = self;
        for (x, y) in o.0.iter_mut().zip(rhs.0) {
            *x = *x - y;
        }
        o
    }
}

impl<T: Scalar> Neg for Octonion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(T::from_f64(-1.0))
    }
}

/// Octonion product; the named form of `x * y`.
pub fn octonion_mul<T: Scalar>(x: Octonion<T>, y: Octonion<T>) -> Octonion<T> {
    x * y
}
