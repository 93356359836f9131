//! One-sided (Hestenes) Jacobi SVD for small dense matrices over ℝ or ℂ.
//!
//! The tall case `m ≥ n` orthogonalizes the columns of a working copy of `M`
//! with plane rotations accumulated into `V`; the wide case runs on `M*` and
//! swaps the factors. Complex pairs are handled by first rotating the phase
//! of the second column so the pair's inner product is real.

use alloc::vec::Vec;

use crate::linalg::extend_orthonormal;
use crate::matrix::Matrix;
use crate::scalar::{inner, norm, Scalar};
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

const MAX_SWEEPS: usize = 80;
const ROTATION_EPS: f64 = 1e-15;

/// Thin SVD `M = U · diag(S) · V*` with `k = min(rows, cols)` singular values
/// in descending order.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub u: Matrix<T>,
    pub s: Vec<f64>,
    pub v: Matrix<T>,
}

impl<T: Scalar> Svd<T> {
    pub fn reconstruct(&self) -> Matrix<T> {
        let k = self.s.len();
        let mut us = self.u.clone();
        for j in 0..k {
            for i in 0..us.rows() {
                us[(i, j)] = us[(i, j)].scale(self.s[j]);
            }
        }
        us.matmul(&self.v.adjoint()).expect("svd factor shapes")
    }
}

pub fn svd<T: Scalar>(m: &Matrix<T>) -> Svd<T> {
    if m.rows() >= m.cols() {
        jacobi_tall(m)
    } else {
        let Svd { u, s, v } = jacobi_tall(&m.adjoint());
        Svd { u: v, s, v: u }
    }
}

/// Singular values only, descending.
pub fn singular_values<T: Scalar>(m: &Matrix<T>) -> Vec<f64> {
    svd(m).s
}

fn jacobi_tall<T: Scalar>(m: &Matrix<T>) -> Svd<T> {
    let rows = m.rows();
    let n = m.cols();
    let mut cols = m.columns();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let alpha: f64 = cols[i].iter().map(|x| x.abs_sqr()).sum();
                let beta: f64 = cols[j].iter().map(|x| x.abs_sqr()).sum();
                let gamma = inner(&cols[i], &cols[j]);
                let g = gamma.abs();
                if g == 0.0 || g <= ROTATION_EPS * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // e^{-iφ} with γ = |γ| e^{iφ}
                let phase = gamma.conj().scale(1.0 / g);
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, i, j, c, s, phase);
                rotate(&mut v, i, j, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let sigma: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    order.sort_by(|&a, &b| sigma[b].total_cmp(&sigma[a]));

    let mut u = Matrix::zeros(rows, n);
    let mut v_out = Matrix::zeros(n, n);
    let mut s = Vec::with_capacity(n);
    let mut missing = Vec::new();
    for (k, &j) in order.iter().enumerate() {
        let sj = sigma[j];
        s.push(sj);
        v_out.set_column(k, &v[j]);
        if sj > f64::MIN_POSITIVE {
            let col: Vec<T> = cols[j].iter().map(|x| x.scale(1.0 / sj)).collect();
            u.set_column(k, &col);
        } else {
            missing.push(k);
        }
    }
    if !missing.is_empty() {
        let present: Vec<usize> = (0..n).filter(|k| !missing.contains(k)).collect();
        let basis = extend_orthonormal(&u.select_columns(&present), rows);
        for (slot, &k) in missing.iter().enumerate() {
            u.set_column(k, &basis.column(present.len() + slot));
        }
    }
    Svd { u, s, v: v_out }
}

/// Applies `(x_i, x_j) ← (c x_i − s e^{-iφ} x_j, s x_i + c e^{-iφ} x_j)`.
fn rotate<T: Scalar>(cols: &mut [Vec<T>], i: usize, j: usize, c: f64, s: f64, phase: T) {
    let (left, right) = cols.split_at_mut(j);
    let a = &mut left[i];
    let b = &mut right[0];
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let yp = phase * *y;
        let xi = *x;
        *x = xi.scale(c) - yp.scale(s);
        *y = xi.scale(s) + yp.scale(c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random<T: Scalar>(rows: usize, cols: usize, seed: u64) -> Matrix<T> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Matrix::from_fn(rows, cols, |_, _| T::sample_gaussian(&mut rng))
    }

    fn orthonormality_defect<T: Scalar>(q: &Matrix<T>) -> f64 {
        (&q.adjoint_mul(q) - &Matrix::identity(q.cols())).max_abs()
    }

    #[test]
    fn diagonal_gives_sorted_absolute_values() {
        let m = Matrix::diagonal(3, &[1.0, -3.0, 2.0]);
        let d = svd(&m);
        assert_eq!(d.s.len(), 3);
        for (got, want) in d.s.iter().zip([3.0, 2.0, 1.0]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_matrix_has_zero_values_and_orthonormal_factors() {
        let m = Matrix::<Complex64>::zeros(4, 2);
        let d = svd(&m);
        assert_eq!(d.s, vec![0.0, 0.0]);
        assert!(orthonormality_defect(&d.u) < 1e-15);
        assert!(orthonormality_defect(&d.v) < 1e-15);
    }

    #[test]
    fn complex_reconstruction_tall_and_wide() {
        for (r, c, seed) in [(4, 3, 1), (3, 4, 2), (6, 6, 3), (1, 5, 4)] {
            let m: Matrix<Complex64> = random(r, c, seed);
            let d = svd(&m);
            let err = (&m - &d.reconstruct()).max_abs();
            assert!(err <= 1e-10 * m.frobenius_norm(), "{r}x{c}: {err}");
            assert!(orthonormality_defect(&d.u) < 1e-12);
            assert!(orthonormality_defect(&d.v) < 1e-12);
            assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rank_deficient_real() {
        // rank 1
        let m = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]]).unwrap();
        let d = svd(&m);
        assert!((d.s[0] - (14.0f64 * 5.0).sqrt()).abs() < 1e-12);
        assert!(d.s[1] < 1e-12);
        assert!(orthonormality_defect(&d.u) < 1e-12);
    }
}
