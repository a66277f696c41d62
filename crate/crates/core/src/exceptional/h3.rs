//! The complexified Albert algebra `H3(O^C)`.
//!
//! Coordinates `[d1, d2, d3, o1(8), o2(8), o3(8)]` stand for the octonionic matrix
//!
//! ```text
//! | d1    o3    ō2 |
//! | ō3    d2    o1 |
//! | o2    ō1    d3 |
//! ```
//!
//! and the product is `(XY + YX)/2`. Octonion conjugation `ō` is linear over the
//! complex scalars, so the layout stays Hermitian under products and the involution
//! of the algebra is plain complex conjugation of every coordinate.

use super::octonion::{Octonion, Scalar};
use crate::algebra::C64;

pub const DIM: usize = 27;

/// Diagonal entries and the three off-diagonal octonions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H3Parts<T> {
    pub diag: [T; 3],
    pub off: [Octonion<T>; 3],
}

impl<T: Scalar> H3Parts<T> {
    pub fn from_coords(c: &[T]) -> Self {
        Self {
            diag: [c[0], c[1], c[2]],
            off: [
                Octonion::from_slice(&c[3..11]),
                Octonion::from_slice(&c[11..19]),
                Octonion::from_slice(&c[19..27]),
            ],
        }
    }

    pub fn write(&self, out: &mut [T]) {
        out[..3].copy_from_slice(&self.diag);
        for (k, o) in self.off.iter().enumerate() {
            out[3 + 8 * k..11 + 8 * k].copy_from_slice(&o.0);
        }
    }

    pub fn to_coords(&self) -> Vec<T> {
        let mut out = vec![T::default(); DIM];
        self.write(&mut out);
        out
    }

    /// Entry `(r, c)` of the octonionic matrix, zero-based.
    pub fn entry(&self, r: usize, c: usize) -> Octonion<T> {
        let [o1, o2, o3] = self.off;
        match (r, c) {
            (0, 0) | (1, 1) | (2, 2) => Octonion::real(self.diag[r]),
            (0, 1) => o3,
            (1, 0) => o3.conj(),
            (1, 2) => o1,
            (2, 1) => o1.conj(),
            (2, 0) => o2,
            (0, 2) => o2.conj(),
            _ => unreachable!(),
        }
    }

    pub fn trace(&self) -> T {
        self.diag[0] + self.diag[1] + self.diag[2]
    }

    /// Quadratic trace `d1d2 + d2d3 + d3d1 − n(o1) − n(o2) − n(o3)`.
    pub fn quadratic_trace(&self) -> T {
        let [d1, d2, d3] = self.diag;
        let [o1, o2, o3] = self.off;
        d1 * d2 + d2 * d3 + d3 * d1 - o1.norm_form() - o2.norm_form() - o3.norm_form()
    }

    /// Freudenthal determinant
    /// `d1d2d3 − d1 n(o1) − d2 n(o2) − d3 n(o3) + 2 re((o1 o2) o3)`.
    pub fn determinant(&self) -> T {
        let [d1, d2, d3] = self.diag;
        let [o1, o2, o3] = self.off;
        let two = T::from_f64(2.0);
        d1 * d2 * d3 - d1 * o1.norm_form() - d2 * o2.norm_form() - d3 * o3.norm_form()
            + two * ((o1 * o2) * o3).re()
    }
}

/// Jordan product on raw coordinates.
pub fn product(a: &[C64], b: &[C64], out: &mut [C64]) {
    let x = H3Parts::from_coords(a);
    let y = H3Parts::from_coords(b);
    // P = XY; YX is the octonionic conjugate transpose of P for Hermitian layouts
    let p = |r: usize, c: usize| {
        (0..3).fold(Octonion::<C64>::zero(), |acc, k| {
            acc + x.entry(r, k) * y.entry(k, c)
        })
    };
    let half = C64::new(0.5, 0.0);
    let sym = |r: usize, c: usize| (p(r, c) + p(c, r).conj()).scale(half);
    let parts = H3Parts {
        diag: [p(0, 0).re(), p(1, 1).re(), p(2, 2).re()],
        off: [sym(1, 2), sym(2, 0), sym(0, 1)],
    };
    parts.write(out);
}

/// Real roots of `λ³ − tλ² + sλ − n`, ascending, by the trigonometric method on the
/// depressed cubic followed by a Newton polish.
pub fn cubic_roots(t: f64, s: f64, n: f64) -> [f64; 3] {
    let shift = t / 3.0;
    let p = s - t * t / 3.0;
    let q = -2.0 * t * t * t / 27.0 + t * s / 3.0 - n;
    let scale = 1.0 + t.abs() + s.abs().sqrt() + n.abs().cbrt();
    let mut roots = if p >= -1e-14 * scale * scale {
        let x = (-q).cbrt();
        [x + shift; 3]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        [
            m * theta.cos() + shift,
            m * (theta - tau).cos() + shift,
            m * (theta - 2.0 * tau).cos() + shift,
        ]
    };
    for r in &mut roots {
        for _ in 0..2 {
            let f = ((*r - t) * *r + s) * *r - n;
            let df = (3.0 * *r - 2.0 * t) * *r + s;
            if df.abs() > 1e-6 * scale * scale {
                let step = f / df;
                if step.abs() < 1e-6 * scale {
                    *r -= step;
                }
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_roots_of_known_polynomials() {
        let r = cubic_roots(6.0, 11.0, 6.0);
        for (a, b) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-13);
        }
        let r = cubic_roots(3.0, 3.0, 1.0);
        for a in r {
            assert!((a - 1.0).abs() < 1e-5);
        }
        let r = cubic_roots(0.0, -4.0, 0.0);
        for (a, b) in r.iter().zip([-2.0, 0.0, 2.0]) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn layout_round_trip() {
        let coords: Vec<f64> = (0..DIM).map(|k| k as f64 * 0.5 - 3.0).collect();
        let parts = H3Parts::from_coords(&coords);
        assert_eq!(parts.to_coords(), coords);
        assert_eq!(parts.entry(1, 2), parts.entry(2, 1).conj());
        assert_eq!(parts.entry(0, 2), parts.off[1].conj());
    }
}
