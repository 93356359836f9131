//! Determinants, block-determinant identities, linear solves and
//! orthonormalization.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multiindex::{multi_indices, MultiIndex};
use crate::scalar::{inner, norm, Scalar};
use crate::svd::singular_values;

/// Numerical thresholds shared by every computation.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerance {
    /// Relative singular-value cutoff used for rank decisions.
    pub rank_eps: f64,
    /// Pass threshold for identity residuals.
    pub residual_eps: f64,
}

impl Tolerance {
    pub const DEFAULT_RANK_EPS: f64 = 1e-10;
    pub const DEFAULT_RESIDUAL_EPS: f64 = 1e-8;

    pub fn new(rank_eps: f64, residual_eps: f64) -> Result<Self> {
        let ok = |x: f64| x > 0.0 && x < 1.0;
        if !ok(rank_eps) {
            return Err(Error::Tolerance(format!(
                "rank_eps {rank_eps} not in (0, 1)"
            )));
        }
        if !ok(residual_eps) {
            return Err(Error::Tolerance(format!(
                "residual_eps {residual_eps} not in (0, 1)"
            )));
        }
        Ok(Self {
            rank_eps,
            residual_eps,
        })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rank_eps: Self::DEFAULT_RANK_EPS,
            residual_eps: Self::DEFAULT_RESIDUAL_EPS,
        }
    }
}

/// LU factorization with partial pivoting, `P·M = L·U`.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
    sign: f64,
}

impl<T: Scalar> Lu<T> {
    pub fn factor(m: &Matrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "LU needs a square matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let pivot_row = (k..n)
                .max_by(|&a, &b| lu[(a, k)].abs().total_cmp(&lu[(b, k)].abs()))
                .unwrap_or(k);
            if pivot_row != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                perm.swap(k, pivot_row);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            if pivot == T::zero() {
                continue;
            }
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= factor * u;
                }
            }
        }
        Ok(Self { lu, perm, sign })
    }

    pub fn det(&self) -> T {
        let n = self.lu.rows();
        (0..n).fold(T::from_real(self.sign), |acc, i| acc * self.lu[(i, i)])
    }

    pub fn is_singular(&self) -> bool {
        (0..self.lu.rows()).any(|i| self.lu[(i, i)] == T::zero())
    }

    /// Solves `M·X = rhs` column by column.
    pub fn solve(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        let n = self.lu.rows();
        if rhs.rows() != n {
            return Err(Error::Dimension(format!(
                "right-hand side has {} rows, system has {n}",
                rhs.rows()
            )));
        }
        if self.is_singular() {
            return Err(Error::Singular);
        }
        let mut x = Matrix::zeros(n, rhs.cols());
        for c in 0..rhs.cols() {
            let mut y: Vec<T> = self.perm.iter().map(|&p| rhs[(p, c)]).collect();
            for i in 0..n {
                for k in 0..i {
                    let l = self.lu[(i, k)];
                    let yk = y[k];
                    y[i] -= l * yk;
                }
            }
            for i in (0..n).rev() {
                for k in i + 1..n {
                    let u = self.lu[(i, k)];
                    let yk = y[k];
                    y[i] -= u * yk;
                }
                y[i] = y[i] / self.lu[(i, i)];
            }
            x.set_column(c, &y);
        }
        Ok(x)
    }
}

/// Determinant by pivoted LU. The 0×0 determinant is 1.
pub fn det<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    Ok(Lu::factor(m)?.det())
}

pub fn solve<T: Scalar>(a: &Matrix<T>, rhs: &Matrix<T>) -> Result<Matrix<T>> {
    Lu::factor(a)?.solve(rhs)
}

/// Determinant by Laplace expansion along the column set `J`:
/// `det M = Σ_I (−1)^{|I|+|J|} det M_{I,J} · det M_{Î,Ĵ}`.
///
/// Minors are themselves expanded recursively by cofactors, so this never
/// touches the LU path and can serve as an independent check of [`det`].
pub fn laplace_expand_det<T: Scalar>(m: &Matrix<T>, columns: &MultiIndex) -> Result<T> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "Laplace expansion needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let q = m.rows();
    let p = columns.len();
    if columns.ambient() != q || p == 0 || p >= q {
        return Err(Error::Index(format!(
            "column index {columns} must lie in I_p^{q} with 1 <= p < {q}"
        )));
    }
    let jc = columns.zero_based();
    let jh = columns.complement().zero_based();
    let mut total = T::zero();
    for rows in multi_indices(p, q) {
        let ic = rows.zero_based();
        let ih = rows.complement().zero_based();
        let term = cofactor_det(&m.select(&ic, &jc)) * cofactor_det(&m.select(&ih, &jh));
        if (rows.weight() + columns.weight()) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// First-column cofactor expansion. Exponential cost; only for small oracles.
pub(crate) fn cofactor_det<T: Scalar>(m: &Matrix<T>) -> T {
    let n = m.rows();
    match n {
        0 => T::one(),
        1 => m[(0, 0)],
        2 => m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        _ => {
            let cols: Vec<usize> = (1..n).collect();
            let mut total = T::zero();
            for i in 0..n {
                let a = m[(i, 0)];
                if a == T::zero() {
                    continue;
                }
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let minor = cofactor_det(&m.select(&rows, &cols));
                if i % 2 == 0 {
                    total += a * minor;
                } else {
                    total -= a * minor;
                }
            }
            total
        }
    }
}

/// Which diagonal block the Schur complement is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchurPivot {
    /// `det M = det A · det(D − C A⁻¹ B)`.
    A,
    /// `det M = det D · det(A − B D⁻¹ C)`.
    D,
}

/// Determinant of `[[A, B], [C, D]]` through a Schur complement, using the
/// default [`Tolerance`] to decide whether the pivot block is invertible.
pub fn schur_det<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    c: &Matrix<T>,
    d: &Matrix<T>,
    pivot: SchurPivot,
) -> Result<T> {
    schur_det_with(a, b, c, d, pivot, &Tolerance::default())
}

pub fn schur_det_with<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    c: &Matrix<T>,
    d: &Matrix<T>,
    pivot: SchurPivot,
    tol: &Tolerance,
) -> Result<T> {
    if !a.is_square() || !d.is_square() {
        return Err(Error::Dimension("diagonal blocks must be square".into()));
    }
    // validates conformability
    Matrix::block(a, b, c, d)?;
    let (p, rest, x, y) = match pivot {
        SchurPivot::A => (a, d, c, b),
        SchurPivot::D => (d, a, b, c),
    };
    if p.rows() > 0 {
        let s = singular_values(p);
        let largest = s[0];
        let smallest = s[s.len() - 1];
        if !(smallest > tol.rank_eps * largest) {
            return Err(Error::SingularPivot);
        }
    }
    // rest − x · p⁻¹ · y
    let solved = solve(p, y)?;
    let complement = rest - &x.matmul(&solved)?;
    Ok(det(p)? * det(&complement)?)
}

/// Gram matrix `G_ij = ⟨a_i, b_j⟩`.
pub fn gram<T: Scalar, V: AsRef<[T]>>(a: &[V], b: &[V]) -> Matrix<T> {
    Matrix::from_fn(a.len(), b.len(), |i, j| inner(a[i].as_ref(), b[j].as_ref()))
}

/// Orthonormalizes the columns by modified Gram–Schmidt with one
/// re-orthogonalization pass. A column is dropped when what remains of it
/// is at most `rank_eps` times the largest input column norm.
///
/// Returns the `n × rank` orthonormal matrix and the rank. Column `i` of
/// the output lies in the span of the first `i + 1` independent inputs.
pub fn orthonormalize<T: Scalar>(columns: &Matrix<T>, tol: &Tolerance) -> (Matrix<T>, usize) {
    let scale = (0..columns.cols())
        .map(|j| norm(&columns.column(j)))
        .fold(0.0, f64::max);
    orthonormalize_scaled(columns, tol, scale)
}

/// As [`orthonormalize`], with the reference scale for the rank cutoff
/// supplied by the caller.
pub fn orthonormalize_scaled<T: Scalar>(
    columns: &Matrix<T>,
    tol: &Tolerance,
    scale: f64,
) -> (Matrix<T>, usize) {
    let n = columns.rows();
    let cutoff = tol.rank_eps * scale;
    let mut basis: Vec<Vec<T>> = Vec::new();
    for j in 0..columns.cols() {
        let mut v = columns.column(j);
        for _ in 0..2 {
            for q in &basis {
                let c = inner(q, &v);
                for (vi, &qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let r = norm(&v);
        if r > cutoff && r > 0.0 {
            basis.push(v.into_iter().map(|x| x.scale(1.0 / r)).collect());
        }
    }
    let rank = basis.len();
    (
        Matrix::from_columns(n, &basis).expect("column lengths"),
        rank,
    )
}

/// `p`-volume of the parallelotope spanned by `vectors`, as the product of
/// the diagonal of a QR factorization (Gram–Schmidt with one
/// re-orthogonalization pass). Equal to `√det(Gram)` but accurate to
/// rounding even when the vectors are nearly dependent, where the Gram
/// determinant route only resolves volumes down to about `√ε`.
pub fn volume<T: Scalar, V: AsRef<[T]>>(vectors: &[V]) -> f64 {
    let mut basis: Vec<Vec<T>> = Vec::new();
    let mut vol = 1.0;
    for v in vectors {
        let mut v = v.as_ref().to_vec();
        for _ in 0..2 {
            for q in &basis {
                let c = inner(q, &v);
                for (vi, &qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let r = norm(&v);
        vol *= r;
        if r == 0.0 {
            return 0.0;
        }
        basis.push(v.into_iter().map(|x| x.scale(1.0 / r)).collect());
    }
    vol
}

/// Extends orthonormal columns to an orthonormal basis of the whole
/// `n`-dimensional space by sweeping the standard basis.
pub fn extend_orthonormal<T: Scalar>(q: &Matrix<T>, n: usize) -> Matrix<T> {
    let tol = Tolerance {
        rank_eps: 1e-8,
        residual_eps: Tolerance::DEFAULT_RESIDUAL_EPS,
    };
    let mut all = q.clone();
    if all.rows() != n {
        all = Matrix::zeros(n, 0);
    }
    let full = all.hcat(&Matrix::identity(n)).expect("row counts");
    let (out, _) = orthonormalize_scaled(&full, &tol, 1.0);
    out
}

/// `‖Q*Q − I‖_max`.
pub fn orthonormality_defect<T: Scalar>(q: &Matrix<T>) -> f64 {
    (&q.adjoint_mul(q) - &Matrix::identity(q.cols())).max_abs()
}

/// `|a − b| / max(1, |a|, |b|)`.
pub fn relative_diff<T: Scalar>(a: T, b: T) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}
