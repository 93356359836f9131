#![allow(dead_code)]

use grassmann_core::linalg::Tolerance;
use grassmann_core::sampling::Sampler;
use grassmann_core::scalar::Scalar;
use grassmann_core::subspace::Subspace;
use grassmann_core::Matrix;

pub fn tol() -> Tolerance {
    Tolerance::default()
}

/// Random subspace given through a random non-orthonormal basis.
pub fn random_pair<T: Scalar>(s: &mut Sampler, n: usize, p: usize) -> (Subspace<T>, Vec<Vec<T>>) {
    let sub = s.subspace::<T>(n, p).unwrap();
    let basis = s.basis_of(&sub);
    (sub, basis)
}

/// Subspace spanned by the given columns of an orthonormal matrix.
pub fn span_of<T: Scalar>(m: &Matrix<T>, cols: &[usize]) -> Subspace<T> {
    Subspace::from_orthonormal(m.select_columns(cols)).unwrap()
}
