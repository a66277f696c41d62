//! Dense linear-algebra helpers over `nalgebra`.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::{C64, ZERO};

/// Row-major coordinates to an `n × n` matrix.
pub fn to_matrix(n: usize, coords: &[C64]) -> DMatrix<C64> {
    DMatrix::from_row_slice(n, n, coords)
}

pub fn write_row_major(m: &DMatrix<C64>, out: &mut [C64]) {
    let n = m.ncols();
    for r in 0..m.nrows() {
        for c in 0..n {
            out[r * n + c] = m[(r, c)];
        }
    }
}

pub fn from_matrix(m: &DMatrix<C64>) -> Vec<C64> {
    let mut out = vec![ZERO; m.nrows() * m.ncols()];
    write_row_major(m, &mut out);
    out
}

/// Eigen-decomposition of the Hermitian part of `m`, eigenvalues ascending.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let n = h.nrows();
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Largest singular value.
pub fn spectral_norm(m: &DMatrix<C64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_complex_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DVector<C64> {
    DVector::from_fn(n, |_, _| complex_gaussian(rng))
}

pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DVector<C64> {
    loop {
        let v = random_complex_vector(n, rng);
        let norm = v.norm();
        if norm > 1e-6 {
            return v / C64::new(norm, 0.0);
        }
    }
}

pub fn random_real_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of
/// `R`'s diagonal moved into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<C64> {
    let g = DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..n {
        let d = r[(c, c)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for row in 0..n {
            q[(row, c)] *= phase;
        }
    }
    q
}

/// Haar-distributed real orthogonal matrix, reflections included.
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..n {
        if r[(c, c)] < 0.0 {
            for row in 0..n {
                q[(row, c)] = -q[(row, c)];
            }
        }
    }
    q
}

/// Least-squares solution `X` of `X · a = b` via the pseudo-inverse of `a`.
pub fn solve_right(a: &DMatrix<C64>, b: &DMatrix<C64>, eps: f64) -> DMatrix<C64> {
    let pinv = a
        .clone()
        .pseudo_inverse(eps)
        .expect("pseudo-inverse of a finite matrix");
    b * pinv
}

/// Incremental Gram–Schmidt on coordinate vectors.
#[derive(Debug, Default, Clone)]
pub struct Orthonormalizer {
    basis: Vec<Vec<C64>>,
}

impl Orthonormalizer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    /// Component of `v` orthogonal to the current span (two passes for stability).
    pub fn residual(&self, v: &[C64]) -> Vec<C64> {
        let mut r = v.to_vec();
        for _ in 0..2 {
            for b in &self.basis {
                let proj: C64 = b.iter().zip(&r).map(|(x, y)| x.conj() * y).sum();
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri -= proj * bi;
                }
            }
        }
        r
    }

    /// Adds `v` if its residual is longer than `rel_tol · ‖v‖`; returns whether it did.
    pub fn push(&mut self, v: &[C64], rel_tol: f64) -> bool {
        let scale = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if scale == 0.0 {
            return false;
        }
        let r = self.residual(v);
        let len = r.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if len <= rel_tol * scale.max(1.0) {
            return false;
        }
        self.basis.push(r.into_iter().map(|c| c / len).collect());
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn row_major_round_trip() {
        let coords: Vec<C64> = (0..9).map(|k| C64::new(k as f64, -(k as f64))).collect();
        let m = to_matrix(3, &coords);
        assert_eq!(m[(0, 1)], coords[1]);
        assert_eq!(m[(1, 0)], coords[3]);
        assert_eq!(from_matrix(&m), coords);
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_unitary(4, &mut rng);
        let err = (&u.adjoint() * &u - DMatrix::<C64>::identity(4, 4)).norm();
        assert!(err < 1e-12);
        let o = random_orthogonal(5, &mut rng);
        assert!((o.transpose() * &o - DMatrix::<f64>::identity(5, 5)).norm() < 1e-12);
    }

    #[test]
    fn hermitian_eigen_sorted_and_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = DMatrix::from_fn(4, 4, |_, _| complex_gaussian(&mut rng));
        let h = &g + g.adjoint();
        let (vals, vecs) = hermitian_eigen(&h);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            4,
            vals.iter().map(|&v| C64::new(v, 0.0)),
        ));
        let rebuilt = &vecs * d * vecs.adjoint();
        assert!((rebuilt - h).norm() < 1e-12);
    }

    #[test]
    fn orthonormalizer_detects_dependence() {
        let mut o = Orthonormalizer::new();
        let one = C64::new(1.0, 0.0);
        assert!(o.push(&[one, ZERO], 1e-10));
        assert!(!o.push(&[C64::new(3.0, 1.0), ZERO], 1e-10));
        assert!(o.push(&[one, one], 1e-10));
        assert_eq!(o.len(), 2);
    }
}
